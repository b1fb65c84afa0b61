use super::matrix::{Matrix, Ring};

/// `u * m * v == s` with `s` diagonal, nonnegative, and each diagonal
/// entry dividing the next. `u_inv` and `v_inv` are tracked alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm<T> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: Ring> SmithNormalForm<T> {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Work<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Ring> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[target] += k * row[source]`.
    fn add_row(&mut self, target: usize, source: usize, k: &T) {
        self.a.add_row(target, source, k);
        self.u.add_row(target, source, k);
        self.u_inv.add_col(source, target, &-k.clone());
    }

    /// `col[target] += k * col[source]`.
    fn add_col(&mut self, target: usize, source: usize, k: &T) {
        self.a.add_col(target, source, k);
        self.v.add_col(target, source, k);
        self.v_inv.add_row(source, target, &-k.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the smallest nonzero entry (by absolute value) in the
    /// lower-right block starting at `t`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let cells = (t..self.a.rows())
            .map(|i| (i, t))
            .chain((t + 1..self.a.cols()).map(|j| (t, j)));
        for (i, j) in cells {
            let v = &self.a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < self.a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
        best
    }
}

/// Smith normal form over a Euclidean ring of integers.
pub fn smith_normal_form<T: Ring>(m: &Matrix<T>) -> SmithNormalForm<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.min_entry(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let pivot = w.a[(t, t)].clone();
            let mut residue = false;
            for i in t + 1..rows {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&pivot);
                w.add_row(i, t, &-q);
                residue |= !w.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&pivot);
                w.add_col(j, t, &-q);
                residue |= !w.a[(t, j)].is_zero();
            }
            if residue {
                let (i, j) = w.min_in_cross(t).expect("a residue is nonzero");
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => w.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SmithNormalForm {
        s: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
    }
}
