//! Hyperplane genus: the largest family of pairwise disjoint hyperplanes
//! whose union leaves the 1-skeleton connected.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{CubeComplex, CubeIdx, Sign};
use crate::error::{Error, Result};
use crate::hyperplane::{hyperplanes, HyperplaneIdx, Hyperplanes};

/// Largest hyperplane count the exhaustive oracle accepts.
pub const ORACLE_LIMIT: usize = 20;

/// Closed edge path as `(edge, traversed forward)` steps.
pub type EdgeLoop = Vec<(CubeIdx, bool)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusResult {
    pub genus: usize,
    /// Sorted; lexicographically least among maximum witnesses.
    pub witness: Vec<HyperplaneIdx>,
    /// Loop `i` crosses witness hyperplane `i` once, positively, and
    /// misses the other witness hyperplanes.
    pub witness_loops: Vec<EdgeLoop>,
}

fn check_preconditions(x: &CubeComplex) -> Result<std::sync::Arc<Hyperplanes>> {
    if !x.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let hs = hyperplanes(x);
    for h in hs.iter() {
        if !h.two_sided {
            return Err(Error::OneSidedHyperplane(h.index));
        }
        if h.self_intersecting {
            return Err(Error::SelfIntersectingHyperplane(h.index));
        }
    }
    Ok(hs)
}

fn complement_connected(x: &CubeComplex, hs: &Hyperplanes, set: &[HyperplaneIdx]) -> bool {
    x.components_without(&|e| set.contains(&hs.dual_to(e))).len() == 1
}

fn pairwise_disjoint(hs: &Hyperplanes, set: &[HyperplaneIdx]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, a)| set[i + 1..].iter().all(|b| !hs.crosses(*a, *b)))
}

/// Pairwise disjoint with connected complement.
pub fn is_feasible(x: &CubeComplex, set: &[HyperplaneIdx]) -> Result<bool> {
    let hs = hyperplanes(x);
    for &h in set {
        hs.get(h)?;
    }
    let distinct: BTreeSet<_> = set.iter().collect();
    Ok(distinct.len() == set.len() && pairwise_disjoint(&hs, set) && complement_connected(x, &hs, set))
}

/// Exhaustive maximum over all subsets.
pub fn genus_oracle(x: &CubeComplex) -> Result<usize> {
    let hs = check_preconditions(x)?;
    let n = hs.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooManyHyperplanes(n));
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let set: Vec<HyperplaneIdx> = (0..n).filter(|h| mask >> h & 1 == 1).collect();
        if pairwise_disjoint(&hs, &set) && complement_connected(x, &hs, &set) {
            best = size;
        }
    }
    Ok(best)
}

struct Search<'a> {
    x: &'a CubeComplex,
    hs: &'a Hyperplanes,
    order: Vec<HyperplaneIdx>,
    best: usize,
}

impl Search<'_> {
    /// Maximum feasible extension of `chosen` using `order[from..]`.
    fn maximise(&mut self, chosen: &mut Vec<HyperplaneIdx>, from: usize) {
        self.best = self.best.max(chosen.len());
        let open: Vec<usize> = (from..self.order.len())
            .filter(|&k| chosen.iter().all(|c| !self.hs.crosses(*c, self.order[k])))
            .collect();
        for (pos, &k) in open.iter().enumerate() {
            if chosen.len() + open.len() - pos <= self.best {
                return;
            }
            chosen.push(self.order[k]);
            if complement_connected(self.x, self.hs, chosen) {
                self.maximise(chosen, k + 1);
            }
            chosen.pop();
        }
    }

    /// Lexicographically least feasible set of size `target` extending
    /// `chosen` with indices above its last element.
    fn least(&self, chosen: &mut Vec<HyperplaneIdx>, target: usize) -> bool {
        if chosen.len() == target {
            return true;
        }
        let start = chosen.last().map_or(0, |l| l + 1);
        let open: Vec<HyperplaneIdx> = (start..self.hs.len())
            .filter(|h| chosen.iter().all(|c| !self.hs.crosses(*c, *h)))
            .collect();
        for (pos, &h) in open.iter().enumerate() {
            if chosen.len() + open.len() - pos < target {
                return false;
            }
            chosen.push(h);
            if complement_connected(self.x, self.hs, chosen) && self.least(chosen, target) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Branch and bound over independent sets of the crossing graph. Feasibility
/// is inherited by subsets, so an infeasible partial set prunes its subtree.
pub fn genus_exact(x: &CubeComplex) -> Result<GenusResult> {
    let hs = check_preconditions(x)?;
    let mut order: Vec<HyperplaneIdx> = (0..hs.len()).collect();
    order.sort_by_key(|&h| (hs.crossing_set(h).len(), h));
    let mut search = Search {
        x,
        hs: &hs,
        order,
        best: 0,
    };
    search.maximise(&mut Vec::new(), 0);
    let mut witness = Vec::new();
    let found = search.least(&mut witness, search.best);
    debug_assert!(found, "a set of the maximum size exists");
    let witness_loops = witness_loops(x, &witness)?;
    Ok(GenusResult {
        genus: witness.len(),
        witness,
        witness_loops,
    })
}

/// One loop per witness hyperplane: its first dual edge, crossed from the
/// negative to the positive side, closed up in the complement of the witness.
pub fn witness_loops(x: &CubeComplex, witness: &[HyperplaneIdx]) -> Result<Vec<EdgeLoop>> {
    if !is_feasible(x, witness)? {
        return Err(Error::InfeasibleWitness(format!("{witness:?}")));
    }
    let hs = hyperplanes(x);
    let mut loops = Vec::new();
    for &h in witness {
        let e = hs.get(h)?.dual_edges[0];
        let forward = hs.co_orientation(e) == Sign::Plus;
        let (start, end) = if forward {
            (x.endpoint(e, Sign::Minus), x.endpoint(e, Sign::Plus))
        } else {
            (x.endpoint(e, Sign::Plus), x.endpoint(e, Sign::Minus))
        };
        let back = x
            .shortest_path(end, start, &|f| witness.contains(&hs.dual_to(f)))
            .ok_or_else(|| Error::InfeasibleWitness(format!("{witness:?}")))?;
        let mut path = vec![(e, forward)];
        path.extend(back);
        loops.push(path);
    }
    Ok(loops)
}

/// A letter of the free group on the witness: `(generator, exponent sign)`.
pub type FreeLetter = (usize, Sign);

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce<T: PartialEq + Copy>(word: &[(T, Sign)]) -> Vec<(T, Sign)> {
    let mut out: Vec<(T, Sign)> = Vec::with_capacity(word.len());
    for &(g, s) in word {
        match out.last() {
            Some(&(h, t)) if h == g && t == -s => {
                out.pop();
            }
            _ => out.push((g, s)),
        }
    }
    out
}

/// Edge labelling that maps the complex onto a rose with one petal per
/// witness hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeQuotient {
    /// Label of every edge in edge order; `None` is the trivial letter.
    pub labels: Vec<(CubeIdx, Option<FreeLetter>)>,
    /// Reduced image of every witness loop; loop `i` maps to `[(i, +)]`.
    pub loop_words: Vec<Vec<FreeLetter>>,
}

impl FreeQuotient {
    fn label(&self, edge: CubeIdx) -> Option<FreeLetter> {
        self.labels
            .iter()
            .find(|(e, _)| *e == edge)
            .and_then(|(_, l)| *l)
    }

    /// Reduced word read along an edge path.
    pub fn read(&self, path: &[(CubeIdx, bool)]) -> Vec<FreeLetter> {
        let word: Vec<FreeLetter> = path
            .iter()
            .filter_map(|&(e, forward)| {
                self.label(e)
                    .map(|(g, s)| (g, if forward { s } else { -s }))
            })
            .collect();
        free_reduce(&word)
    }
}

/// Boundary of a square as a closed edge path, counterclockwise from the
/// corner where both coordinates are negative.
pub fn square_boundary(x: &CubeComplex, square: CubeIdx) -> EdgeLoop {
    let step = |coord: usize, sign: Sign, along_plus: bool| {
        let f = x.facet(square, coord, sign);
        let other = 1 - coord;
        let forward = f.map.image(other).expect("square edge keeps the other coordinate").sign.is_plus();
        (f.target, forward == along_plus)
    };
    vec![
        step(1, Sign::Minus, true),
        step(0, Sign::Plus, true),
        step(1, Sign::Plus, false),
        step(0, Sign::Minus, false),
    ]
}

pub fn free_quotient(x: &CubeComplex, witness: &[HyperplaneIdx]) -> Result<FreeQuotient> {
    let loops = witness_loops(x, witness)?;
    let hs = hyperplanes(x);
    let labels = x
        .edges()
        .into_iter()
        .map(|e| {
            let h = hs.dual_to(e);
            let label = witness.iter().position(|w| *w == h).map(|i| (i, hs.co_orientation(e)));
            (e, label)
        })
        .collect();
    let mut quotient = FreeQuotient {
        labels,
        loop_words: Vec::new(),
    };
    for sq in x.cubes_of_dim(2) {
        if !quotient.read(&square_boundary(x, sq)).is_empty() {
            return Err(Error::InvariantViolated(format!(
                "square `{}` does not map to a null-homotopic word",
                x.id(sq)
            )));
        }
    }
    quotient.loop_words = loops.iter().map(|l| quotient.read(l)).collect();
    for (i, w) in quotient.loop_words.iter().enumerate() {
        if w != &vec![(i, Sign::Plus)] {
            return Err(Error::InvariantViolated(format!("witness loop {i} does not map to its generator")));
        }
    }
    Ok(quotient)
}
