//! Cube complexes glued from standard cubes `[-1, 1]^n` along signed
//! coordinate maps.
//!
//! A cube of dimension `n` has `2n` facets, addressed by a coordinate
//! `i` in `0..n` and a [`Sign`]. Each facet names a target cube of
//! dimension `n - 1` together with a [`SignedPermMap`] that sends every
//! retained coordinate of the source to a coordinate of the target,
//! possibly reversing it. Coordinates are zero-based in memory and
//! one-based in the text format.
//!
//! Cubes live in a dense vector sorted by `(dim, id)`, so a [`CubeIdx`]
//! is stable for the lifetime of a complex and iteration order is
//! deterministic.

mod format;
mod link;
mod map;
mod presets;
mod validate;

pub use format::{parse, serialize};
pub use link::{npc_check, vertex_link, vertex_links, EdgeEnd, LinkSimplex, NpcReport, NpcViolation, VertexLink};
pub use map::{CubeImage, CubicalMap};
pub use presets::{product, subdivide, Preset};
pub use validate::{validate, ValidationEntry, ValidationReport};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::hyperplane::Hyperplanes;

/// Dense index of a cube inside one [`CubeComplex`].
pub type CubeIdx = usize;

/// Orientation of a coordinate or an end of an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn from_i64(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A coordinate of some cube together with an orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedCoord {
    pub coord: usize,
    pub sign: Sign,
}

impl SignedCoord {
    pub fn new(coord: usize, sign: Sign) -> Self {
        SignedCoord { coord, sign }
    }
}

/// Partial signed map from the coordinates of one cube to those of
/// another. `images[j] == None` marks a coordinate that was fixed
/// (omitted); every other coordinate lands on a distinct target
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermMap {
    images: Vec<Option<SignedCoord>>,
    target_dim: usize,
}

impl SignedPermMap {
    pub fn new(images: Vec<Option<SignedCoord>>, target_dim: usize) -> Self {
        SignedPermMap { images, target_dim }
    }

    pub fn identity(dim: usize) -> Self {
        SignedPermMap {
            images: (0..dim).map(|j| Some(SignedCoord::new(j, Sign::Plus))).collect(),
            target_dim: dim,
        }
    }

    /// Order-preserving, orientation-preserving map that drops `omitted`.
    pub fn facet_standard(source_dim: usize, omitted: usize) -> Self {
        let images = (0..source_dim)
            .map(|j| match j.cmp(&omitted) {
                std::cmp::Ordering::Less => Some(SignedCoord::new(j, Sign::Plus)),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(SignedCoord::new(j - 1, Sign::Plus)),
            })
            .collect();
        SignedPermMap {
            images,
            target_dim: source_dim.saturating_sub(1),
        }
    }

    /// Builds a map from one-based signed integers with `0` at omitted
    /// coordinates, as used by the text format.
    pub fn from_signed_ints(values: &[i64], target_dim: usize) -> Option<Self> {
        let mut images = Vec::with_capacity(values.len());
        for &v in values {
            if v == 0 {
                images.push(None);
            } else {
                let coord = usize::try_from(v.unsigned_abs()).ok()? - 1;
                images.push(Some(SignedCoord::new(coord, Sign::from_i64(v.signum())?)));
            }
        }
        Some(SignedPermMap { images, target_dim })
    }

    pub fn to_signed_ints(&self) -> Vec<i64> {
        self.images
            .iter()
            .map(|img| match img {
                None => 0,
                Some(sc) => (sc.coord as i64 + 1) * sc.sign.to_i64(),
            })
            .collect()
    }

    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn image(&self, coord: usize) -> Option<SignedCoord> {
        self.images.get(coord).copied().flatten()
    }

    pub fn images(&self) -> &[Option<SignedCoord>] {
        &self.images
    }

    pub fn omitted(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, img)| img.is_none())
            .map(|(j, _)| j)
    }

    /// Source coordinate that lands on target coordinate `coord`.
    pub fn preimage(&self, coord: usize) -> Option<SignedCoord> {
        self.images.iter().enumerate().find_map(|(j, img)| match img {
            Some(sc) if sc.coord == coord => Some(SignedCoord::new(j, sc.sign)),
            _ => None,
        })
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &SignedPermMap) -> SignedPermMap {
        let images = self
            .images
            .iter()
            .map(|img| {
                img.and_then(|sc| {
                    then.image(sc.coord)
                        .map(|next| SignedCoord::new(next.coord, sc.sign * next.sign))
                })
            })
            .collect();
        SignedPermMap {
            images,
            target_dim: then.target_dim,
        }
    }

    /// Inverse of a total bijection.
    pub fn inverse(&self) -> SignedPermMap {
        let mut images = vec![None; self.target_dim];
        for (j, img) in self.images.iter().enumerate() {
            if let Some(sc) = img {
                images[sc.coord] = Some(SignedCoord::new(j, sc.sign));
            }
        }
        SignedPermMap {
            images,
            target_dim: self.images.len(),
        }
    }

    /// True when every retained coordinate lands on a distinct target
    /// coordinate and the target coordinates are exactly covered.
    pub fn is_bijective_on_retained(&self) -> bool {
        let mut seen = vec![false; self.target_dim];
        let mut count = 0;
        for sc in self.images.iter().flatten() {
            if sc.coord >= self.target_dim || seen[sc.coord] {
                return false;
            }
            seen[sc.coord] = true;
            count += 1;
        }
        count == self.target_dim
    }

    pub fn is_identity(&self) -> bool {
        self.target_dim == self.images.len()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(j, img)| *img == Some(SignedCoord::new(j, Sign::Plus)))
    }

    /// Drops the source coordinates listed as `None` in a face pattern
    /// and renumbers the remaining ones consecutively.
    pub fn restrict_to_free(&self, pattern: &[Option<Sign>]) -> SignedPermMap {
        let images = self
            .images
            .iter()
            .zip(pattern)
            .filter(|(_, p)| p.is_none())
            .map(|(img, _)| *img)
            .collect();
        SignedPermMap {
            images,
            target_dim: self.target_dim,
        }
    }
}

/// One facet slot of a cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub target: CubeIdx,
    pub map: SignedPermMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    id: String,
    dim: usize,
    facets: Vec<Facet>,
}

impl Cube {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet(&self, coord: usize, sign: Sign) -> &Facet {
        &self.facets[facet_slot(coord, sign)]
    }

    /// `(coord, sign, facet)` in coordinate-major order, minus first.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Sign, &Facet)> {
        self.facets
            .iter()
            .enumerate()
            .map(|(slot, f)| (slot / 2, if slot % 2 == 0 { Sign::Minus } else { Sign::Plus }, f))
    }
}

fn facet_slot(coord: usize, sign: Sign) -> usize {
    2 * coord + usize::from(sign.is_plus())
}

/// A finite cube complex. Immutable once built.
pub struct CubeComplex {
    cubes: Vec<Cube>,
    index: HashMap<String, CubeIdx>,
    hyperplanes: OnceLock<Arc<Hyperplanes>>,
}

impl Clone for CubeComplex {
    fn clone(&self) -> Self {
        CubeComplex {
            cubes: self.cubes.clone(),
            index: self.index.clone(),
            hyperplanes: OnceLock::new(),
        }
    }
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.cubes == other.cubes
    }
}

impl Eq for CubeComplex {}

impl fmt::Debug for CubeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubeComplex")
            .field("counts", &self.counts())
            .finish()
    }
}

impl CubeComplex {
    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn cube(&self, idx: CubeIdx) -> &Cube {
        &self.cubes[idx]
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn id(&self, idx: CubeIdx) -> &str {
        &self.cubes[idx].id
    }

    pub fn dim(&self, idx: CubeIdx) -> usize {
        self.cubes[idx].dim
    }

    pub fn lookup(&self, id: &str) -> Option<CubeIdx> {
        self.index.get(id).copied()
    }

    pub fn dimension(&self) -> usize {
        self.cubes.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// Indices of cubes of dimension `dim`, sorted by id.
    pub fn cubes_of_dim(&self, dim: usize) -> impl Iterator<Item = CubeIdx> + '_ {
        self.cubes
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.dim == dim)
            .map(|(i, _)| i)
    }

    pub fn vertices(&self) -> Vec<CubeIdx> {
        self.cubes_of_dim(0).collect()
    }

    pub fn edges(&self) -> Vec<CubeIdx> {
        self.cubes_of_dim(1).collect()
    }

    /// Number of cubes in each dimension.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dimension() + 1];
        for c in &self.cubes {
            counts[c.dim] += 1;
        }
        if self.cubes.is_empty() {
            counts.clear();
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cubes
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn facet(&self, idx: CubeIdx, coord: usize, sign: Sign) -> &Facet {
        self.cubes[idx].facet(coord, sign)
    }

    /// Endpoint of an edge: `Minus` is the tail, `Plus` the head.
    pub fn endpoint(&self, edge: CubeIdx, end: Sign) -> CubeIdx {
        self.facet(edge, 0, end).target
    }

    /// Descends through the fixed coordinates of `pattern` and returns
    /// the face together with the map from the free coordinates of
    /// `idx` (fixed ones become `None`) to the face's coordinates.
    /// Returns `None` when the complex is malformed along the way.
    pub fn try_face(&self, idx: CubeIdx, pattern: &[Option<Sign>]) -> Option<(CubeIdx, SignedPermMap)> {
        let mut current = idx;
        let mut map = SignedPermMap::identity(self.dim(idx));
        for (j, fixed) in pattern.iter().enumerate() {
            let Some(eps) = fixed else { continue };
            let img = map.image(j)?;
            let cube = self.cubes.get(current)?;
            if img.coord >= cube.dim {
                return None;
            }
            let facet = cube.facet(img.coord, img.sign * *eps);
            if facet.map.source_dim() != cube.dim {
                return None;
            }
            let mut next = map.then(&facet.map);
            next.target_dim = facet.map.target_dim();
            map = next;
            current = facet.target;
        }
        Some((current, map))
    }

    pub fn face(&self, idx: CubeIdx, pattern: &[Option<Sign>]) -> (CubeIdx, SignedPermMap) {
        self.try_face(idx, pattern)
            .expect("face of a well-formed complex")
    }

    /// Vertex at the corner `signs` of cube `idx`.
    pub fn corner(&self, idx: CubeIdx, signs: &[Sign]) -> CubeIdx {
        let pattern: Vec<Option<Sign>> = signs.iter().map(|s| Some(*s)).collect();
        self.face(idx, &pattern).0
    }

    /// All vertices of a cube, in corner order (first coordinate slowest).
    pub fn corners(&self, idx: CubeIdx) -> Vec<(Vec<Sign>, CubeIdx)> {
        all_sign_vectors(self.dim(idx))
            .into_iter()
            .map(|s| {
                let v = self.corner(idx, &s);
                (s, v)
            })
            .collect()
    }

    /// Adjacency lists of the 1-skeleton: `(edge, end at this vertex, other vertex)`.
    pub fn one_skeleton(&self) -> HashMap<CubeIdx, Vec<(CubeIdx, Sign, CubeIdx)>> {
        let mut adj: HashMap<CubeIdx, Vec<(CubeIdx, Sign, CubeIdx)>> =
            self.vertices().into_iter().map(|v| (v, Vec::new())).collect();
        for e in self.edges() {
            let tail = self.endpoint(e, Sign::Minus);
            let head = self.endpoint(e, Sign::Plus);
            adj.entry(tail).or_default().push((e, Sign::Minus, head));
            adj.entry(head).or_default().push((e, Sign::Plus, tail));
        }
        adj
    }

    /// Connected components of the 1-skeleton after deleting `removed`
    /// edges; each component is a sorted vertex list, components ordered
    /// by their smallest vertex.
    pub fn components_without(&self, removed: &dyn Fn(CubeIdx) -> bool) -> Vec<Vec<CubeIdx>> {
        let vertices = self.vertices();
        let mut parent: HashMap<CubeIdx, CubeIdx> = vertices.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut HashMap<CubeIdx, CubeIdx>, x: CubeIdx) -> CubeIdx {
            let mut root = x;
            while parent[&root] != root {
                root = parent[&root];
            }
            let mut cur = x;
            while parent[&cur] != root {
                let next = parent[&cur];
                parent.insert(cur, root);
                cur = next;
            }
            root
        }
        for e in self.edges() {
            if removed(e) {
                continue;
            }
            let a = find(&mut parent, self.endpoint(e, Sign::Minus));
            let b = find(&mut parent, self.endpoint(e, Sign::Plus));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent.insert(hi, lo);
            }
        }
        let mut groups: std::collections::BTreeMap<CubeIdx, Vec<CubeIdx>> = Default::default();
        for &v in &vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<CubeIdx>> = groups.into_values().collect();
        for c in &mut comps {
            c.sort_by(|a, b| self.id(*a).cmp(self.id(*b)));
        }
        comps.sort_by(|a, b| self.id(a[0]).cmp(self.id(b[0])));
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&|_| false).len() <= 1 && !self.vertices().is_empty()
    }

    /// Shortest edge path between two vertices avoiding `removed` edges,
    /// as `(edge, traversed forward)` steps. Ties broken by adjacency order.
    pub fn shortest_path(
        &self,
        from: CubeIdx,
        to: CubeIdx,
        removed: &dyn Fn(CubeIdx) -> bool,
    ) -> Option<Vec<(CubeIdx, bool)>> {
        let adj = self.one_skeleton();
        let mut prev: HashMap<CubeIdx, (CubeIdx, CubeIdx, bool)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = std::collections::HashSet::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &(e, end, w) in &adj[&v] {
                if removed(e) || seen.contains(&w) {
                    continue;
                }
                seen.insert(w);
                prev.insert(w, (v, e, end == Sign::Minus));
                queue.push_back(w);
            }
        }
        if !seen.contains(&to) {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, e, forward) = prev[&cur];
            path.push((e, forward));
            cur = p;
        }
        path.reverse();
        Some(path)
    }

    pub(crate) fn hyperplane_cache(&self) -> &OnceLock<Arc<Hyperplanes>> {
        &self.hyperplanes
    }
}

/// All sign vectors of length `n`, first coordinate varying slowest,
/// minus before plus.
pub fn all_sign_vectors(n: usize) -> Vec<Vec<Sign>> {
    (0..(1usize << n))
        .map(|bits| {
            (0..n)
                .map(|j| {
                    if bits >> (n - 1 - j) & 1 == 1 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect()
        })
        .collect()
}

/// All face patterns of an `n`-cube: each coordinate is free or fixed
/// at one of its two ends.
pub fn all_face_patterns(n: usize) -> Vec<Vec<Option<Sign>>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for p in &out {
            for choice in [None, Some(Sign::Minus), Some(Sign::Plus)] {
                let mut q = p.clone();
                q.push(choice);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Collects cubes by id and resolves facet targets into a [`CubeComplex`].
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    cubes: Vec<(String, usize, Vec<Option<(String, SignedPermMap)>>)>,
    index: HashMap<String, usize>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn add_cube(&mut self, id: impl Into<String>, dim: usize) -> Result<()> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateId(id));
        }
        self.index.insert(id.clone(), self.cubes.len());
        self.cubes.push((id, dim, vec![None; 2 * dim]));
        Ok(())
    }

    pub fn set_facet(
        &mut self,
        id: &str,
        coord: usize,
        sign: Sign,
        target: impl Into<String>,
        map: SignedPermMap,
    ) -> Result<()> {
        let slot = *self
            .index
            .get(id)
            .ok_or_else(|| Error::UnknownTargetId(id.to_string()))?;
        let (_, dim, facets) = &mut self.cubes[slot];
        if coord >= *dim {
            return Err(Error::Malformed(format!(
                "facet coordinate {} out of range for `{}` of dimension {}",
                coord + 1,
                id,
                dim
            )));
        }
        facets[facet_slot(coord, sign)] = Some((target.into(), map));
        Ok(())
    }

    /// Sets both facets of coordinate `coord` with the standard
    /// order-preserving map.
    pub fn set_standard_facets(&mut self, id: &str, coord: usize, minus: &str, plus: &str) -> Result<()> {
        let dim = self.cubes[self.index[id]].1;
        let map = SignedPermMap::facet_standard(dim, coord);
        self.set_facet(id, coord, Sign::Minus, minus, map.clone())?;
        self.set_facet(id, coord, Sign::Plus, plus, map)
    }

    pub fn build(self) -> Result<CubeComplex> {
        let mut order: Vec<usize> = (0..self.cubes.len()).collect();
        order.sort_by(|&a, &b| {
            (self.cubes[a].1, &self.cubes[a].0).cmp(&(self.cubes[b].1, &self.cubes[b].0))
        });
        let mut new_index = HashMap::with_capacity(order.len());
        for (pos, &old) in order.iter().enumerate() {
            new_index.insert(self.cubes[old].0.clone(), pos);
        }
        let mut cubes = Vec::with_capacity(order.len());
        for &old in &order {
            let (id, dim, facets) = &self.cubes[old];
            let mut resolved = Vec::with_capacity(facets.len());
            for (slot, f) in facets.iter().enumerate() {
                let (target, map) = f.as_ref().ok_or_else(|| {
                    Error::Malformed(format!(
                        "cube `{}` lacks facet ({}, {})",
                        id,
                        slot / 2 + 1,
                        if slot % 2 == 0 { "-" } else { "+" }
                    ))
                })?;
                let t = *new_index
                    .get(target)
                    .ok_or_else(|| Error::UnknownTargetId(target.clone()))?;
                resolved.push(Facet {
                    target: t,
                    map: map.clone(),
                });
            }
            cubes.push(Cube {
                id: id.clone(),
                dim: *dim,
                facets: resolved,
            });
        }
        Ok(CubeComplex {
            cubes,
            index: new_index,
            hyperplanes: OnceLock::new(),
        })
    }
}

impl CubeComplex {
    /// Builder seeded with every cube of `self`, for local edits.
    pub fn to_builder(&self) -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        for c in &self.cubes {
            b.add_cube(c.id.clone(), c.dim).expect("ids are unique");
        }
        for c in &self.cubes {
            for (coord, sign, f) in c.facets() {
                b.set_facet(&c.id, coord, sign, self.cubes[f.target].id.clone(), f.map.clone())
                    .expect("coordinate in range");
            }
        }
        b
    }
}
