//! Cutting and collapsing along hyperplanes.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::complex::{npc_check, ComplexBuilder, CubeComplex, CubeIdx, Sign, SignedPermMap};
use crate::error::{Error, Result};
use crate::hyperplane::{hyperplanes, is_separating, parallelism, specialness, HyperplaneIdx};

/// Outcome of asking whether a hyperplane has an embedded closed
/// neighbourhood isomorphic to `H x [-1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub hyperplane: HyperplaneIdx,
    pub passes: bool,
    pub self_intersecting: bool,
    pub directly_self_osculating: bool,
    pub indirectly_self_osculating: bool,
    /// Side cubes reached from more than one midcube side.
    pub repeated_sides: Vec<String>,
    /// Side cubes that themselves carry a midcube of the hyperplane.
    pub sides_in_carrier: Vec<String>,
}

/// The two side facets of every midcube: `(carrier cube, coordinate,
/// negative side, positive side)`.
fn side_facets(x: &CubeComplex, h: HyperplaneIdx) -> Result<Vec<(CubeIdx, usize, CubeIdx, CubeIdx)>> {
    let hs = hyperplanes(x);
    let hyp = hs.get(h)?;
    if !hyp.two_sided {
        return Err(Error::OneSidedHyperplane(h));
    }
    Ok(hyp
        .midcubes
        .iter()
        .map(|&(c, i, label)| (c, i, x.facet(c, i, -label).target, x.facet(c, i, label).target))
        .collect())
}

pub fn product_neighborhood_check(x: &CubeComplex, h: HyperplaneIdx) -> Result<ProductCheck> {
    let sides = side_facets(x, h)?;
    let hs = hyperplanes(x);
    let hyp = hs.get(h)?;
    let carrier: HashSet<CubeIdx> = hyp.carrier.iter().copied().collect();
    let mut seen: HashMap<CubeIdx, usize> = HashMap::new();
    for &(_, _, neg, pos) in &sides {
        *seen.entry(neg).or_default() += 1;
        *seen.entry(pos).or_default() += 1;
    }
    let mut repeated: Vec<CubeIdx> = seen.iter().filter(|(_, n)| **n > 1).map(|(c, _)| *c).collect();
    repeated.sort();
    let mut in_carrier: Vec<CubeIdx> = seen.keys().filter(|c| carrier.contains(c)).copied().collect();
    in_carrier.sort();
    let report = specialness(x);
    let passes = !hyp.self_intersecting && repeated.is_empty() && in_carrier.is_empty();
    Ok(ProductCheck {
        hyperplane: h,
        passes,
        self_intersecting: hyp.self_intersecting,
        directly_self_osculating: report.direct_self_osculation.iter().any(|o| o.hyperplane == h),
        indirectly_self_osculating: report.indirect_self_osculation.iter().any(|o| o.hyperplane == h),
        repeated_sides: repeated.iter().map(|c| x.id(*c).to_string()).collect(),
        sides_in_carrier: in_carrier.iter().map(|c| x.id(*c).to_string()).collect(),
    })
}

/// Union-find over cubes where every link carries the coordinate map
/// from a cube to its parent.
struct AlignedClasses {
    parent: Vec<CubeIdx>,
    to_parent: Vec<SignedPermMap>,
}

impl AlignedClasses {
    fn new(x: &CubeComplex) -> Self {
        AlignedClasses {
            parent: (0..x.len()).collect(),
            to_parent: (0..x.len()).map(|c| SignedPermMap::identity(x.dim(c))).collect(),
        }
    }

    fn find(&mut self, c: CubeIdx) -> (CubeIdx, SignedPermMap) {
        let p = self.parent[c];
        if p == c {
            return (c, self.to_parent[c].clone());
        }
        let (root, up) = self.find(p);
        let direct = self.to_parent[c].then(&up);
        self.parent[c] = root;
        self.to_parent[c] = direct.clone();
        (root, direct)
    }

    /// Identifies `a` with `b` along `align: a -> b`. Returns `false` when
    /// they were already identified compatibly.
    fn union(&mut self, x: &CubeComplex, a: CubeIdx, b: CubeIdx, align: &SignedPermMap) -> Result<bool> {
        let (ra, ma) = self.find(a);
        let (rb, mb) = self.find(b);
        let via_b = align.then(&mb);
        if ra == rb {
            if via_b != ma {
                return Err(Error::FoldingDetected(x.id(ra).to_string()));
            }
            return Ok(false);
        }
        if ra < rb {
            self.parent[rb] = ra;
            self.to_parent[rb] = mb.inverse().then(&align.inverse()).then(&ma);
        } else {
            self.parent[ra] = rb;
            self.to_parent[ra] = ma.inverse().then(&via_b);
        }
        Ok(true)
    }
}

/// Fate of an input cube under a quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeFate {
    Surviving { id: String, map: SignedPermMap },
    Deleted { image: String },
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: CubeComplex,
    pub cube_map: Vec<CubeFate>,
}

/// Glues cubes along the given alignments, closes the identification
/// under facets, drops `deleted` cubes and rebuilds the complex on class
/// representatives (the smallest cube of each class keeps its id).
pub fn identify(
    x: &CubeComplex,
    seeds: &[(CubeIdx, CubeIdx, SignedPermMap)],
    deleted: &BTreeSet<CubeIdx>,
    deleted_image: &dyn Fn(CubeIdx) -> CubeIdx,
) -> Result<Quotient> {
    let mut classes = AlignedClasses::new(x);
    let mut queue: VecDeque<(CubeIdx, CubeIdx, SignedPermMap)> = seeds.iter().cloned().collect();
    while let Some((a, b, align)) = queue.pop_front() {
        if !classes.union(x, a, b, &align)? {
            continue;
        }
        for (i, eps, fa) in x.cube(a).facets() {
            let img = align.image(i).expect("alignment is total");
            let fb = x.facet(b, img.coord, img.sign * eps);
            let induced = fa.map.inverse().then(&align).then(&fb.map);
            queue.push_back((fa.target, fb.target, induced));
        }
    }
    let mut roots = Vec::with_capacity(x.len());
    for c in 0..x.len() {
        roots.push(classes.find(c));
    }
    let deleted_roots: HashSet<CubeIdx> = deleted.iter().map(|c| roots[*c].0).collect();
    for c in 0..x.len() {
        if !deleted.contains(&c) && deleted_roots.contains(&roots[c].0) {
            return Err(Error::InvariantViolated(format!(
                "cube `{}` is identified with a deleted cube",
                x.id(c)
            )));
        }
    }
    let mut builder = ComplexBuilder::new();
    for c in 0..x.len() {
        if roots[c].0 == c && !deleted.contains(&c) {
            builder.add_cube(x.id(c), x.dim(c))?;
        }
    }
    for c in 0..x.len() {
        if roots[c].0 != c || deleted.contains(&c) {
            continue;
        }
        for (i, eps, f) in x.cube(c).facets() {
            let (root, to_root) = &roots[f.target];
            builder.set_facet(x.id(c), i, eps, x.id(*root), f.map.then(to_root))?;
        }
    }
    let complex = builder.build()?;
    let cube_map = (0..x.len())
        .map(|c| {
            if deleted.contains(&c) {
                CubeFate::Deleted {
                    image: x.id(roots[deleted_image(c)].0).to_string(),
                }
            } else {
                CubeFate::Surviving {
                    id: x.id(roots[c].0).to_string(),
                    map: roots[c].1.clone(),
                }
            }
        })
        .collect();
    Ok(Quotient { complex, cube_map })
}

/// Collapses the closed neighbourhood of `h` onto one of its sides.
pub fn collapse(x: &CubeComplex, h: HyperplaneIdx) -> Result<Quotient> {
    let check = product_neighborhood_check(x, h)?;
    if !check.passes {
        return Err(Error::NoProductNeighborhood(h));
    }
    let mut seeds = Vec::new();
    let mut sides = HashMap::new();
    for (c, i, _, _) in side_facets(x, h)? {
        let minus = x.facet(c, i, Sign::Minus);
        let plus = x.facet(c, i, Sign::Plus);
        seeds.push((minus.target, plus.target, minus.map.inverse().then(&plus.map)));
        sides.insert(c, minus.target);
    }
    let deleted: BTreeSet<CubeIdx> = sides.keys().copied().collect();
    identify(x, &seeds, &deleted, &|c| sides[&c])
}

/// Collapses separating hyperplanes, lowest index first, until none is
/// left. Returns the result and the names of the collapsed hyperplanes.
pub fn collapse_all_separating(x: &CubeComplex) -> Result<(CubeComplex, Vec<String>)> {
    let mut current = x.clone();
    let mut log = Vec::new();
    loop {
        let hs = hyperplanes(&current);
        let mut target = None;
        for h in 0..hs.len() {
            if is_separating(&current, h)? {
                target = Some(h);
                break;
            }
        }
        let Some(h) = target else { break };
        log.push(hs.get(h)?.name.clone());
        current = collapse(&current, h)?.complex;
    }
    Ok((current, log))
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub complex: CubeComplex,
    /// Ids of the cubes of the boundary copy on the negative side.
    pub h_minus: Vec<String>,
    pub h_plus: Vec<String>,
}

fn half_id(c: &str, side: Sign) -> String {
    format!("{c}~{side}")
}

fn mid_id(c: &str, side: Sign) -> String {
    format!("{c}~m{side}")
}

/// Cuts the complex open along `h`: every carrier cube is split into its
/// two halves and the hyperplane appears twice as boundary.
pub fn split(x: &CubeComplex, h: HyperplaneIdx) -> Result<SplitResult> {
    let hs = hyperplanes(x);
    let hyp = hs.get(h)?;
    if !hyp.two_sided {
        return Err(Error::OneSidedHyperplane(h));
    }
    if hyp.self_intersecting {
        return Err(Error::SelfIntersectingHyperplane(h));
    }
    let midcube: HashMap<CubeIdx, (usize, Sign)> = hyp.midcubes.iter().map(|&(c, i, l)| (c, (i, l))).collect();
    let mut b = ComplexBuilder::new();
    let mut h_minus = Vec::new();
    let mut h_plus = Vec::new();
    for c in 0..x.len() {
        let id = x.id(c);
        match midcube.get(&c) {
            None => b.add_cube(id, x.dim(c))?,
            Some(_) => {
                for side in Sign::BOTH {
                    b.add_cube(half_id(id, side), x.dim(c))?;
                    b.add_cube(mid_id(id, side), x.dim(c) - 1)?;
                }
                h_minus.push(mid_id(id, Sign::Minus));
                h_plus.push(mid_id(id, Sign::Plus));
            }
        }
    }
    let target_id = |d: CubeIdx, side: Sign| -> String {
        if midcube.contains_key(&d) {
            half_id(x.id(d), side)
        } else {
            x.id(d).to_string()
        }
    };
    for c in 0..x.len() {
        let id = x.id(c);
        let n = x.dim(c);
        let Some(&(i, label)) = midcube.get(&c) else {
            for (j, eps, f) in x.cube(c).facets() {
                b.set_facet(id, j, eps, x.id(f.target), f.map.clone())?;
            }
            continue;
        };
        for side in Sign::BOTH {
            let half = half_id(id, side);
            for (j, eps, f) in x.cube(c).facets() {
                if j != i {
                    b.set_facet(&half, j, eps, target_id(f.target, side), f.map.clone())?;
                } else if eps == side * label {
                    b.set_facet(&half, j, eps, x.id(f.target), f.map.clone())?;
                } else {
                    b.set_facet(&half, j, eps, mid_id(id, side), SignedPermMap::facet_standard(n, i))?;
                }
            }
            // Midcube copy: coordinates of `c` other than `i`, in order.
            let mid = mid_id(id, side);
            for (j, eps, f) in x.cube(c).facets() {
                if j == i {
                    continue;
                }
                let k = f.map.image(i).expect("midcube coordinate survives").coord;
                let images = (0..n)
                    .filter(|&l| l != i)
                    .map(|l| {
                        if l == j {
                            None
                        } else {
                            let img = f.map.image(l).expect("retained coordinate");
                            let pos = if img.coord > k { img.coord - 1 } else { img.coord };
                            Some(crate::complex::SignedCoord::new(pos, img.sign))
                        }
                    })
                    .collect();
                let local = if j > i { j - 1 } else { j };
                b.set_facet(&mid, local, eps, mid_id(x.id(f.target), side), SignedPermMap::new(images, n - 2))?;
            }
        }
    }
    Ok(SplitResult {
        complex: b.build()?,
        h_minus,
        h_plus,
    })
}

/// Glues the two boundary copies of a split back together.
pub fn reglue(split: &SplitResult) -> Result<CubeComplex> {
    let x = &split.complex;
    let seeds: Vec<(CubeIdx, CubeIdx, SignedPermMap)> = split
        .h_minus
        .iter()
        .zip(&split.h_plus)
        .map(|(m, p)| {
            let a = x.lookup(m).expect("boundary copy exists");
            let b = x.lookup(p).expect("boundary copy exists");
            (a, b, SignedPermMap::identity(x.dim(a)))
        })
        .collect();
    Ok(identify(x, &seeds, &BTreeSet::new(), &|c| c)?.complex)
}

#[derive(Clone, Debug)]
pub struct NormalizeResult {
    pub complex: CubeComplex,
    /// Names of collapsed hyperplanes, in order.
    pub log: Vec<String>,
    pub covering_degree: usize,
}

/// Reduces a genus-one special complex to one whose hyperplanes pairwise
/// cross, by collapsing all but one hyperplane of every ultra-parallel
/// class; the result covers the Salvetti complex of its crossing graph.
pub fn genus1_normalize(x: &CubeComplex) -> Result<NormalizeResult> {
    let g = crate::genus::genus_exact(x)?.genus;
    if g != 1 {
        return Err(Error::GenusNotOne(g));
    }
    let (mut current, mut log) = collapse_all_separating(x)?;
    loop {
        let par = parallelism(&current);
        let Some(class) = par.classes.iter().find(|c| c.len() >= 2) else { break };
        let retained = class[0];
        let members: BTreeSet<usize> = class.iter().copied().collect();
        let cuts = par.delta.cut_vertices_within(&members);
        let victim = class
            .iter()
            .copied()
            .find(|h| *h != retained && !cuts.contains(h))
            .ok_or_else(|| Error::InvariantViolated("ultra-parallel class without a non-cut vertex".to_string()))?;
        let mut rest = members.clone();
        rest.remove(&victim);
        if par.delta.components_within(&rest).len() != 1 {
            return Err(Error::InvariantViolated("deleting a non-cut vertex disconnected the class".to_string()));
        }
        if !product_neighborhood_check(&current, victim)?.passes {
            return Err(Error::ProductCheckFailed(victim));
        }
        log.push(hyperplanes(&current).get(victim)?.name.clone());
        current = collapse(&current, victim)?.complex;
        if !npc_check(&current).passes() {
            return Err(Error::InvariantViolated("normalisation step broke nonpositive curvature".to_string()));
        }
    }
    if !specialness(&current).is_special() {
        return Err(Error::InvariantViolated("normal form is not special".to_string()));
    }
    if !crate::hyperplane::crossing_graph(&current).is_complete() {
        return Err(Error::InvariantViolated("crossing graph of the normal form is not complete".to_string()));
    }
    let canonical = crate::raag::canonical_salvetti_map(&current)?;
    if !crate::raag::covering_check(&current, &canonical.salvetti, &canonical.map) {
        return Err(Error::InvariantViolated("normal form does not cover the Salvetti complex".to_string()));
    }
    let covering_degree = current.vertices().len() / canonical.salvetti.vertices().len();
    Ok(NormalizeResult {
        complex: current,
        log,
        covering_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HierarchyStep {
    CollapseSeparating { hyperplanes: Vec<String> },
    Split { hyperplane: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyLevel {
    pub steps: Vec<HierarchyStep>,
    pub counts: Vec<usize>,
}

/// A hierarchy of a connected special complex: splitting a
/// non-separating hyperplane keeps the complex connected, so the tree is
/// a chain of levels ending in a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hierarchy {
    pub root_counts: Vec<usize>,
    pub levels: Vec<HierarchyLevel>,
}

impl Hierarchy {
    pub fn leaf_counts(&self) -> &[usize] {
        self.levels.last().map_or(&self.root_counts, |l| &l.counts)
    }
}

pub fn hierarchy(x: &CubeComplex) -> Result<Hierarchy> {
    if !specialness(x).is_special() {
        return Err(Error::InvariantViolated("hierarchy requires a special complex".to_string()));
    }
    let (mut current, collapsed) = collapse_all_separating(x)?;
    let mut levels = vec![HierarchyLevel {
        steps: vec![HierarchyStep::CollapseSeparating { hyperplanes: collapsed }],
        counts: current.counts(),
    }];
    loop {
        let hs = hyperplanes(&current);
        if hs.is_empty() {
            break;
        }
        let mut chosen = None;
        for h in 0..hs.len() {
            if !is_separating(&current, h)? {
                chosen = Some(h);
                break;
            }
        }
        let h = chosen.ok_or_else(|| Error::InvariantViolated("only separating hyperplanes remain".to_string()))?;
        let before = current.len();
        let name = hs.get(h)?.name.clone();
        let cut = split(&current, h)?;
        let (next, collapsed) = collapse_all_separating(&cut.complex)?;
        if next.len() >= before {
            return Err(Error::InvariantViolated("hierarchy round did not shrink the complex".to_string()));
        }
        current = next;
        levels.push(HierarchyLevel {
            steps: vec![
                HierarchyStep::Split { hyperplane: name },
                HierarchyStep::CollapseSeparating { hyperplanes: collapsed },
            ],
            counts: current.counts(),
        });
    }
    if current.len() != 1 {
        return Err(Error::InvariantViolated("hierarchy leaf is not a point".to_string()));
    }
    Ok(Hierarchy {
        root_counts: x.counts(),
        levels,
    })
}

/// A path that joins two vertices on one side of `hyperplane`, never
/// crosses it, crosses each hyperplane at most once and crosses a
/// hyperplane in the same ultra-parallel class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicWitness {
    pub hyperplane: HyperplaneIdx,
    pub path: Vec<String>,
}

/// Exhaustive search for such paths up to `max_len` edges. Vertices that
/// lie on both sides of a hyperplane are not used as endpoints.
pub fn parallel_geodesic_witnesses(x: &CubeComplex, max_len: usize) -> Vec<GeodesicWitness> {
    let hs = hyperplanes(x);
    let par = parallelism(x);
    let adj = x.one_skeleton();
    let mut out = Vec::new();
    for class in par.classes.iter().filter(|c| c.len() >= 2) {
        for &l in class {
            let hyp = &hs.get(l).expect("index in range");
            if !hyp.two_sided {
                continue;
            }
            let mut sides: HashMap<CubeIdx, BTreeSet<Sign>> = HashMap::new();
            for &e in &hyp.dual_edges {
                for end in Sign::BOTH {
                    let side = end * hs.co_orientation(e);
                    sides.entry(x.endpoint(e, end)).or_default().insert(side);
                }
            }
            let one_sided: HashMap<CubeIdx, Sign> = sides
                .iter()
                .filter(|(_, s)| s.len() == 1)
                .map(|(v, s)| (*v, *s.iter().next().expect("one side")))
                .collect();
            let mut starts: Vec<CubeIdx> = one_sided.keys().copied().collect();
            starts.sort();
            for start in starts {
                let side = one_sided[&start];
                let mut stack: Vec<(CubeIdx, Vec<CubeIdx>, BTreeSet<HyperplaneIdx>)> =
                    vec![(start, Vec::new(), BTreeSet::new())];
                while let Some((v, path, crossed)) = stack.pop() {
                    if !path.is_empty()
                        && one_sided.get(&v) == Some(&side)
                        && crossed.iter().any(|k| *k != l && class.contains(k))
                    {
                        out.push(GeodesicWitness {
                            hyperplane: l,
                            path: path.iter().map(|e| x.id(*e).to_string()).collect(),
                        });
                    }
                    if path.len() == max_len {
                        continue;
                    }
                    for &(e, _, w) in &adj[&v] {
                        let k = hs.dual_to(e);
                        if k == l || crossed.contains(&k) {
                            continue;
                        }
                        let mut p = path.clone();
                        p.push(e);
                        let mut c = crossed.clone();
                        c.insert(k);
                        stack.push((w, p, c));
                    }
                }
            }
        }
    }
    out
}
