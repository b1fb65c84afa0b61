//! Cubical automorphisms, their action on first homology, and the
//! nontriviality criterion built on hyperplane cocycles.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::complex::{CubeComplex, CubeIdx, CubeImage, CubicalMap, Sign, SignedCoord, SignedPermMap};
use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::homology::{cocycle, h1, induced_h1_map, pair};
use crate::hyperplane::{complement_components, hyperplanes, specialness, HyperplaneIdx};
use crate::whitehead::{blowup, WhiteheadPartition};
use crate::Integer;

/// Node budget for a single search.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// All signed permutations of `n` coordinates, identity first.
pub fn signed_permutations(n: usize) -> Vec<SignedPermMap> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for c in 0..n {
                if !p.contains(&c) {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in crate::complex::all_sign_vectors(n) {
            let signs: Vec<Sign> = signs.iter().map(|s| -*s).collect();
            let images = p.iter().zip(&signs).map(|(c, s)| Some(SignedCoord::new(*c, *s))).collect();
            out.push(SignedPermMap::new(images, n));
        }
    }
    out
}

/// Invariant of a cube that any isomorphism preserves: its dimension and
/// how many facet slots of each dimension point at it.
fn signatures(x: &CubeComplex) -> Vec<(usize, Vec<usize>)> {
    let top = x.dimension();
    let mut sig: Vec<(usize, Vec<usize>)> = (0..x.len()).map(|c| (x.dim(c), vec![0; top + 1])).collect();
    for c in 0..x.len() {
        for (_, _, f) in x.cube(c).facets() {
            sig[f.target].1[x.dim(c)] += 1;
        }
    }
    sig
}

struct Search<'a> {
    source: &'a CubeComplex,
    target: &'a CubeComplex,
    src_sig: Vec<(usize, Vec<usize>)>,
    tgt_sig: Vec<(usize, Vec<usize>)>,
    /// Cubes that are nobody's facet, in branching order.
    maximal: Vec<CubeIdx>,
    perms: Vec<Vec<SignedPermMap>>,
    budget: usize,
    nodes: usize,
    first_only: bool,
    found: Vec<CubicalMap>,
}

type Partial = Vec<Option<CubeImage>>;

impl Search<'_> {
    /// Assigns `cube -> image` and everything it forces on faces; returns
    /// the cubes newly assigned, or `None` on a conflict.
    fn assign(&self, partial: &mut Partial, used: &mut [bool], cube: CubeIdx, image: CubeImage) -> Option<Vec<CubeIdx>> {
        let mut added = Vec::new();
        let mut stack = vec![(cube, image)];
        while let Some((c, img)) = stack.pop() {
            if let Some(existing) = &partial[c] {
                if *existing != img {
                    self.undo(partial, used, &added);
                    return None;
                }
                continue;
            }
            if used[img.cube] || self.src_sig[c] != self.tgt_sig[img.cube] {
                self.undo(partial, used, &added);
                return None;
            }
            used[img.cube] = true;
            partial[c] = Some(img.clone());
            added.push(c);
            for (i, eps, f) in self.source.cube(c).facets() {
                let to = img.map.image(i).expect("total");
                let g = self.target.facet(img.cube, to.coord, to.sign * eps);
                let map = f.map.inverse().then(&img.map).then(&g.map);
                stack.push((f.target, CubeImage { cube: g.target, map }));
            }
        }
        Some(added)
    }

    fn undo(&self, partial: &mut Partial, used: &mut [bool], added: &[CubeIdx]) {
        for &c in added {
            if let Some(img) = partial[c].take() {
                used[img.cube] = false;
            }
        }
    }

    fn next_branch(&self, partial: &Partial) -> Option<CubeIdx> {
        // Prefer a maximal cube touching the assigned part.
        let open = self.maximal.iter().copied().filter(|c| partial[*c].is_none());
        let mut fallback = None;
        for c in open {
            if fallback.is_none() {
                fallback = Some(c);
            }
            if self.source.corners(c).iter().any(|(_, v)| partial[*v].is_some()) {
                return Some(c);
            }
        }
        fallback
    }

    fn run(&mut self, partial: &mut Partial, used: &mut [bool]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let Some(c) = self.next_branch(partial) else {
            if partial.iter().all(Option::is_some) {
                self.found.push(CubicalMap {
                    images: partial.iter().map(|i| i.clone().expect("complete")).collect(),
                });
            }
            return Ok(());
        };
        let n = self.source.dim(c);
        for d in 0..self.target.len() {
            if used[d] || self.tgt_sig[d] != self.src_sig[c] {
                continue;
            }
            for k in 0..self.perms[n].len() {
                let image = CubeImage {
                    cube: d,
                    map: self.perms[n][k].clone(),
                };
                if let Some(added) = self.assign(partial, used, c, image) {
                    self.run(partial, used)?;
                    self.undo(partial, used, &added);
                    if self.first_only && !self.found.is_empty() {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }
}

fn search(source: &CubeComplex, target: &CubeComplex, first_only: bool, budget: usize) -> Result<Vec<CubicalMap>> {
    if source.counts() != target.counts() {
        return Ok(Vec::new());
    }
    let mut is_facet = vec![false; source.len()];
    for c in 0..source.len() {
        for (_, _, f) in source.cube(c).facets() {
            is_facet[f.target] = true;
        }
    }
    let mut maximal: Vec<CubeIdx> = (0..source.len()).filter(|c| !is_facet[*c]).collect();
    maximal.sort_by_key(|c| std::cmp::Reverse(source.dim(*c)));
    let top = source.dimension();
    let mut s = Search {
        source,
        target,
        src_sig: signatures(source),
        tgt_sig: signatures(target),
        maximal,
        perms: (0..=top).map(signed_permutations).collect(),
        budget,
        nodes: 0,
        first_only,
        found: Vec::new(),
    };
    let mut partial: Partial = vec![None; source.len()];
    let mut used = vec![false; target.len()];
    s.run(&mut partial, &mut used)?;
    Ok(s.found)
}

/// Every automorphism, identity first and the rest sorted. The list is
/// checked to be closed under composition and inverse.
pub fn automorphisms(x: &CubeComplex) -> Result<Vec<CubicalMap>> {
    automorphisms_with_budget(x, DEFAULT_BUDGET)
}

pub fn automorphisms_with_budget(x: &CubeComplex, budget: usize) -> Result<Vec<CubicalMap>> {
    let mut found = search(x, x, false, budget)?;
    found.sort();
    let id = CubicalMap::identity(x);
    let pos = found
        .iter()
        .position(|f| *f == id)
        .ok_or_else(|| Error::InvariantViolated("identity missing from automorphisms".to_string()))?;
    let id = found.remove(pos);
    found.insert(0, id);
    let set: HashSet<&CubicalMap> = found.iter().collect();
    for f in &found {
        if !set.contains(&f.inverse()) {
            return Err(Error::InvariantViolated("automorphisms not closed under inverse".to_string()));
        }
        for g in &found {
            if !set.contains(&f.then(g)) {
                return Err(Error::InvariantViolated("automorphisms not closed under composition".to_string()));
            }
        }
    }
    Ok(found)
}

/// Some cube-structure isomorphism from `a` to `b`, if any.
pub fn isomorphism(a: &CubeComplex, b: &CubeComplex) -> Result<Option<CubicalMap>> {
    Ok(search(a, b, true, DEFAULT_BUDGET)?.into_iter().next())
}

/// Image of every hyperplane under an automorphism.
pub fn hyperplane_action(x: &CubeComplex, f: &CubicalMap) -> Vec<HyperplaneIdx> {
    let hs = hyperplanes(x);
    hs.iter()
        .map(|h| hs.dual_to(f.edge_action(h.dual_edges[0]).0))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    /// First crossing pair no basis cycle tells apart.
    pub condition1_failure: Option<(HyperplaneIdx, HyperplaneIdx)>,
    /// First separating disjoint pair with a component lacking a
    /// non-separating disjoint hyperplane, and that component.
    pub condition2_failure: Option<(HyperplaneIdx, HyperplaneIdx, usize)>,
    /// Position in the automorphism list of a non-identity automorphism
    /// fixing every hyperplane.
    pub condition3_strict_witness: Option<usize>,
    /// Same, restricted to automorphisms acting trivially on H1.
    pub condition3_homological_witness: Option<usize>,
    pub automorphisms: usize,
}

impl CriterionReport {
    pub fn condition1(&self) -> bool {
        self.condition1_failure.is_none()
    }

    pub fn condition2(&self) -> bool {
        self.condition2_failure.is_none()
    }

    pub fn condition3_strict(&self) -> bool {
        self.condition3_strict_witness.is_none()
    }

    pub fn condition3_homological(&self) -> bool {
        self.condition3_homological_witness.is_none()
    }

    pub fn verdict(&self) -> bool {
        self.condition1() && self.condition2() && self.condition3_homological()
    }
}

pub fn criterion_check(x: &CubeComplex) -> Result<CriterionReport> {
    let autos = automorphisms(x)?;
    criterion_check_with(x, &autos)
}

/// Criterion check against a precomputed automorphism list.
pub fn criterion_check_with(x: &CubeComplex, autos: &[CubicalMap]) -> Result<CriterionReport> {
    if !specialness(x).is_special() {
        return Err(Error::InvariantViolated("criterion requires a special complex".to_string()));
    }
    let summary = h1::<Integer>(x)?;
    let hs = hyperplanes(x);
    let cocycles: Vec<Vec<Integer>> = (0..hs.len()).map(|h| cocycle(x, h)).collect::<Result<_>>()?;
    let pairings: Vec<Vec<Integer>> = cocycles
        .iter()
        .map(|w| summary.cycle_basis.iter().map(|c| pair(x, w, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let mut condition1_failure = None;
    'c1: for a in 0..hs.len() {
        for &b in hs.crossing_set(a).iter().filter(|b| **b > a) {
            if pairings[a] == pairings[b] {
                condition1_failure = Some((a, b));
                break 'c1;
            }
        }
    }

    let mut condition2_failure = None;
    'c2: for a in 0..hs.len() {
        for b in a + 1..hs.len() {
            if hs.crosses(a, b) {
                continue;
            }
            let comps = complement_components(x, &BTreeSet::from([a, b]))?;
            if comps.components.len() < 2 {
                continue;
            }
            for (k, comp) in comps.components.iter().enumerate() {
                let comp_set: BTreeSet<CubeIdx> = comp.iter().copied().collect();
                let witness = (0..hs.len()).any(|h| {
                    if h == a || h == b || hs.crosses(h, a) || hs.crosses(h, b) {
                        return false;
                    }
                    if comps.assign(x, h).ok() != Some(k) {
                        return false;
                    }
                    let after = x.components_without(&|e| [a, b, h].contains(&hs.dual_to(e)));
                    after.iter().filter(|c| comp_set.contains(&c[0])).count() == 1
                });
                if !witness {
                    condition2_failure = Some((a, b, k));
                    break 'c2;
                }
            }
        }
    }

    let mut condition3_strict_witness = None;
    let mut condition3_homological_witness = None;
    for (k, f) in autos.iter().enumerate().filter(|(_, f)| !f.is_identity()) {
        let fixes_all = hyperplane_action(x, f).iter().enumerate().all(|(h, g)| h == *g);
        if !fixes_all {
            continue;
        }
        condition3_strict_witness.get_or_insert(k);
        if induced_h1_map(x, f, &summary)?.is_identity() {
            condition3_homological_witness.get_or_insert(k);
        }
    }
    Ok(CriterionReport {
        condition1_failure,
        condition2_failure,
        condition3_strict_witness,
        condition3_homological_witness,
        automorphisms: autos.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorelliReport {
    pub automorphisms: usize,
    /// Non-identity automorphisms acting nontrivially on H1.
    pub nontrivial: usize,
    pub criterion: CriterionReport,
}

impl TorelliReport {
    pub fn passes(&self) -> bool {
        self.nontrivial + 1 == self.automorphisms && self.criterion.verdict()
    }
}

/// Builds the blow-up and checks that only the identity acts trivially
/// on its first homology.
pub fn torelli_torsion_check(g: &SimplicialGraph, pi: &[WhiteheadPartition]) -> Result<TorelliReport> {
    let b = blowup(g, pi)?;
    let x = &b.complex;
    let autos = automorphisms(x)?;
    let summary = h1::<Integer>(x)?;
    let mut nontrivial = 0;
    for f in autos.iter().skip(1) {
        if !induced_h1_map(x, f, &summary)?.is_identity() {
            nontrivial += 1;
        }
    }
    Ok(TorelliReport {
        automorphisms: autos.len(),
        nontrivial,
        criterion: criterion_check_with(x, &autos)?,
    })
}
