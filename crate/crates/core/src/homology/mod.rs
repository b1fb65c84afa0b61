//! Cellular chain complex, Smith normal form and first homology.
//!
//! Everything here is generic over an exact integer [`Ring`]; the crate
//! root fixes [`num_bigint::BigInt`] as the default scalar.

mod matrix;
mod snf;

pub use matrix::{Matrix, Ring};
pub use snf::{smith_normal_form, SmithNormalForm};

use std::collections::HashMap;

use crate::complex::{CubeComplex, CubeIdx, CubicalMap, Sign};
use crate::error::{Error, Result};
use crate::hyperplane::{hyperplanes, HyperplaneIdx};

/// Position of every cube inside the chain group of its dimension.
fn chain_positions(x: &CubeComplex, dim: usize) -> HashMap<CubeIdx, usize> {
    x.cubes_of_dim(dim).enumerate().map(|(p, c)| (c, p)).collect()
}

/// Orientation of a facet map: parity of the induced permutation of the
/// retained coordinates times the product of its signs.
fn facet_orientation(map: &crate::complex::SignedPermMap) -> i64 {
    let targets: Vec<(usize, Sign)> = map.images().iter().flatten().map(|sc| (sc.coord, sc.sign)).collect();
    let mut sign = 1i64;
    for a in 0..targets.len() {
        if !targets[a].1.is_plus() {
            sign = -sign;
        }
        for b in a + 1..targets.len() {
            if targets[a].0 > targets[b].0 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Matrix of the boundary map from `dim`-chains to `(dim - 1)`-chains,
/// rows and columns in cube order.
pub fn boundary_matrix<T: Ring>(x: &CubeComplex, dim: usize) -> Matrix<T> {
    assert!(dim >= 1, "no boundary below dimension 1");
    let rows = chain_positions(x, dim - 1);
    let cols: Vec<CubeIdx> = x.cubes_of_dim(dim).collect();
    let mut m = Matrix::<T>::zeros(rows.len(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for (coord, sign, f) in x.cube(c).facets() {
            let alternating = if coord % 2 == 0 { 1 } else { -1 };
            let coeff = alternating * sign.to_i64() * facet_orientation(&f.map);
            let i = rows[&f.target];
            m[(i, j)] = m[(i, j)].clone() + T::from(coeff);
        }
    }
    m
}

/// Ranks of every boundary map, then Betti numbers in each dimension.
pub fn betti_numbers<T: Ring>(x: &CubeComplex) -> Vec<usize> {
    let top = x.dimension();
    let counts = x.counts();
    let mut ranks = vec![0; top + 2];
    for (k, rank) in ranks.iter_mut().enumerate().take(top + 1).skip(1) {
        *rank = smith_normal_form(&boundary_matrix::<T>(x, k)).rank;
    }
    (0..=top).map(|k| counts[k] - ranks[k] - ranks[k + 1]).collect()
}

/// Smith normal form data that lets a cycle be written in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfData<T> {
    /// Rank of the edge boundary.
    pub rank_d1: usize,
    /// Inverse of the column transform of the edge boundary.
    pub v1_inv: Matrix<T>,
    /// Rank of the square boundary in cycle coordinates.
    pub rank_d2: usize,
    /// Row transform of the square boundary in cycle coordinates.
    pub u2: Matrix<T>,
    /// Invariant factors of the square boundary in cycle coordinates.
    pub factors: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Summary<T> {
    pub betti1: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<T>,
    /// Integral cycles over the edges (in edge order) whose classes form
    /// a basis of the free part.
    pub cycle_basis: Vec<Vec<T>>,
    pub edges: Vec<CubeIdx>,
    pub snf: SnfData<T>,
}

impl<T: Ring> H1Summary<T> {
    /// Coordinates of the class of `cycle` in the free basis.
    pub fn express(&self, cycle: &[T]) -> Result<Vec<T>> {
        let w = self.snf.v1_inv.mul_vec(cycle);
        if w[..self.snf.rank_d1].iter().any(|v| !v.is_zero()) {
            return Err(Error::NotACycle);
        }
        let y = self.snf.u2.mul_vec(&w[self.snf.rank_d1..]);
        Ok(y[self.snf.rank_d2..].to_vec())
    }

    /// Edge chain of a closed edge path given as `(edge, forward)` steps.
    pub fn chain_of_path(&self, path: &[(CubeIdx, bool)]) -> Vec<T> {
        let pos: HashMap<CubeIdx, usize> = self.edges.iter().enumerate().map(|(p, e)| (*e, p)).collect();
        let mut chain = vec![T::zero(); self.edges.len()];
        for &(e, forward) in path {
            let delta = if forward { T::one() } else { -T::one() };
            chain[pos[&e]] = chain[pos[&e]].clone() + delta;
        }
        chain
    }
}

/// First homology of a connected complex.
pub fn h1<T: Ring>(x: &CubeComplex) -> Result<H1Summary<T>> {
    if !x.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let edges = x.edges();
    let d1 = if edges.is_empty() {
        Matrix::zeros(x.vertices().len(), 0)
    } else {
        boundary_matrix::<T>(x, 1)
    };
    let squares = x.cubes_of_dim(2).count();
    let d2 = if squares == 0 {
        Matrix::zeros(edges.len(), 0)
    } else {
        boundary_matrix::<T>(x, 2)
    };
    let snf1 = smith_normal_form(&d1);
    let r1 = snf1.rank;
    let kernel = snf1.v.cols_from(r1);
    let coords = snf1.v_inv.mul(&d2);
    if (0..r1).any(|i| (0..coords.cols()).any(|j| !coords[(i, j)].is_zero())) {
        return Err(Error::InvariantViolated("boundary of a square is not a cycle".to_string()));
    }
    let b = coords.rows_from(r1);
    let snf2 = smith_normal_form(&b);
    let r2 = snf2.rank;
    let factors = snf2.invariant_factors();
    let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
    let free = kernel.mul(&snf2.u_inv.cols_from(r2));
    let cycle_basis = (0..free.cols()).map(|j| free.column(j)).collect();
    Ok(H1Summary {
        betti1: kernel.cols() - r2,
        torsion,
        cycle_basis,
        edges,
        snf: SnfData {
            rank_d1: r1,
            v1_inv: snf1.v_inv,
            rank_d2: r2,
            u2: snf2.u,
            factors,
        },
    })
}

/// Cochain counting signed crossings of a two-sided hyperplane.
pub fn cocycle<T: Ring>(x: &CubeComplex, h: HyperplaneIdx) -> Result<Vec<T>> {
    let hs = hyperplanes(x);
    let hyp = hs.get(h)?;
    if !hyp.two_sided {
        return Err(Error::OneSidedHyperplane(h));
    }
    let edges = x.edges();
    let weights: Vec<T> = edges
        .iter()
        .map(|&e| {
            if hs.dual_to(e) == h {
                T::from(hs.co_orientation(e).to_i64())
            } else {
                T::zero()
            }
        })
        .collect();
    if x.cubes_of_dim(2).next().is_some() {
        let d2 = boundary_matrix::<T>(x, 2);
        if !d2.transpose().mul_vec(&weights).iter().all(|v| v.is_zero()) {
            return Err(Error::InvariantViolated(format!("cocycle of hyperplane {h} is not closed")));
        }
    }
    Ok(weights)
}

/// Evaluates a cochain on a 1-cycle.
pub fn pair<T: Ring>(x: &CubeComplex, weights: &[T], chain: &[T]) -> Result<T> {
    if x.vertices().len() > 0 && !chain.is_empty() {
        let d1 = boundary_matrix::<T>(x, 1);
        if !d1.mul_vec(chain).iter().all(|v| v.is_zero()) {
            return Err(Error::NotACycle);
        }
    }
    Ok(weights
        .iter()
        .zip(chain)
        .fold(T::zero(), |acc, (w, c)| acc + w.clone() * c.clone()))
}

/// Matrix of the action of an automorphism on the free part of H1, in
/// the cycle basis of `summary`; column `j` is the image of basis cycle `j`.
pub fn induced_h1_map<T: Ring>(x: &CubeComplex, f: &CubicalMap, summary: &H1Summary<T>) -> Result<Matrix<T>> {
    f.check(x, x).map_err(Error::NotAnAutomorphism)?;
    if !f.is_bijective(x) {
        return Err(Error::NotAnAutomorphism("not bijective".to_string()));
    }
    let pos: HashMap<CubeIdx, usize> = summary.edges.iter().enumerate().map(|(p, e)| (*e, p)).collect();
    let mut columns = Vec::with_capacity(summary.betti1);
    for cycle in &summary.cycle_basis {
        let mut image = vec![T::zero(); summary.edges.len()];
        for (p, coeff) in cycle.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (target, sign) = f.edge_action(summary.edges[p]);
            let q = pos[&target];
            image[q] = image[q].clone() + T::from(sign.to_i64()) * coeff.clone();
        }
        let coords = summary.express(&image).map_err(|_| Error::ExpressionFailure)?;
        columns.push(coords);
    }
    Ok(Matrix::from_columns(summary.betti1, &columns))
}
