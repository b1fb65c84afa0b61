//! Whitehead pairs and partitions over a defining graph, the automorphisms
//! they induce on words, and blow-ups of Salvetti complexes along
//! compatible collections of partitions.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::complex::{npc_check, ComplexBuilder, CubeComplex, CubeIdx, Sign, SignedPermMap};
use crate::error::{Error, Result};
use crate::genus::free_reduce;
use crate::graph::SimplicialGraph;
use crate::raag::{dominates, salvetti, star};

/// A generator or its inverse. Ordered `a, a^-1, b, b^-1, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedGen {
    pub vertex: usize,
    pub sign: Sign,
}

impl SignedGen {
    pub fn new(vertex: usize, sign: Sign) -> Self {
        SignedGen { vertex, sign }
    }

    pub fn inverse(self) -> Self {
        SignedGen::new(self.vertex, -self.sign)
    }

    fn key(self) -> (usize, bool) {
        (self.vertex, !self.sign.is_plus())
    }

    pub fn display(self, g: &SimplicialGraph) -> String {
        match self.sign {
            Sign::Plus => g.name(self.vertex).to_string(),
            Sign::Minus => format!("{}^-1", g.name(self.vertex)),
        }
    }
}

impl PartialOrd for SignedGen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedGen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

pub type GenSet = BTreeSet<SignedGen>;

/// All signed generators of a graph, in order.
pub fn signed_generators(g: &SimplicialGraph) -> Vec<SignedGen> {
    (0..g.len())
        .flat_map(|v| [SignedGen::new(v, Sign::Plus), SignedGen::new(v, Sign::Minus)])
        .collect()
}

fn doubled(vertices: impl IntoIterator<Item = usize>) -> GenSet {
    vertices
        .into_iter()
        .flat_map(|v| [SignedGen::new(v, Sign::Plus), SignedGen::new(v, Sign::Minus)])
        .collect()
}

/// A Whitehead pair `(P, m)` together with the rest of its partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadPartition {
    pub m: SignedGen,
    pub p: GenSet,
    pub lk: GenSet,
    pub p_star: GenSet,
}

impl WhiteheadPartition {
    /// Builds the partition of `(P, m)`; `P` is not validated.
    pub fn from_pair(g: &SimplicialGraph, p: GenSet, m: SignedGen) -> Self {
        let lk = doubled(g.neighbours(m.vertex).iter().copied());
        let p_star = signed_generators(g)
            .into_iter()
            .filter(|x| !p.contains(x) && !lk.contains(x))
            .collect();
        WhiteheadPartition { m, p, lk, p_star }
    }

    pub fn single(&self) -> GenSet {
        self.p.iter().copied().filter(|v| !self.p.contains(&v.inverse())).collect()
    }

    pub fn double(&self) -> GenSet {
        self.p.iter().copied().filter(|v| self.p.contains(&v.inverse())).collect()
    }

    /// Singles equivalent to the basepoint.
    pub fn max(&self, g: &SimplicialGraph) -> GenSet {
        self.single()
            .into_iter()
            .filter(|v| crate::raag::equivalent(g, v.vertex, self.m.vertex))
            .collect()
    }

    /// The same partition seen from its other side.
    pub fn flipped(&self) -> Self {
        WhiteheadPartition {
            m: self.m.inverse(),
            p: self.p_star.clone(),
            lk: self.lk.clone(),
            p_star: self.p.clone(),
        }
    }

    /// Sides as an unordered pair, smaller first.
    pub fn sides(&self) -> (GenSet, GenSet) {
        let (a, b) = (self.p.clone(), self.p_star.clone());
        if side_key(&a) <= side_key(&b) {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn display(&self, g: &SimplicialGraph) -> String {
        let set = |s: &GenSet| s.iter().map(|v| v.display(g)).collect::<Vec<_>>().join(",");
        format!("P={{{}}} m={} P*={{{}}}", set(&self.p), self.m.display(g), set(&self.p_star))
    }
}

fn side_key(s: &GenSet) -> Vec<SignedGen> {
    s.iter().copied().collect()
}

/// Checks the defining conditions of a Whitehead pair directly.
pub fn is_whitehead_pair(g: &SimplicialGraph, p: &GenSet, m: SignedGen) -> bool {
    if p.len() < 2 || !p.contains(&m) || p.contains(&m.inverse()) {
        return false;
    }
    if p.iter().any(|v| g.adjacent(v.vertex, m.vertex)) {
        return false;
    }
    let st = star(g, m.vertex);
    let outside: BTreeSet<usize> = (0..g.len()).filter(|v| !st.contains(v)).collect();
    let components = g.components_within(&outside);
    for v in p {
        let double = p.contains(&v.inverse());
        if !double && !dominates(g, m.vertex, v.vertex) {
            return false;
        }
        if double {
            let comp = components.iter().find(|c| c.contains(&v.vertex));
            let Some(comp) = comp else { return false };
            if !comp.iter().all(|w| p.contains(&SignedGen::new(*w, Sign::Plus)) && p.contains(&SignedGen::new(*w, Sign::Minus))) {
                return false;
            }
        }
    }
    true
}

/// Every Whitehead pair with both sides of size at least two, one from
/// each `(P, m) ~ (P*, m^-1)` pair (the one whose side is smaller), sorted.
pub fn enumerate_pairs(g: &SimplicialGraph) -> Vec<WhiteheadPartition> {
    let mut out = BTreeSet::new();
    for m in signed_generators(g) {
        let st = star(g, m.vertex);
        let outside: BTreeSet<usize> = (0..g.len()).filter(|v| !st.contains(v)).collect();
        let components = g.components_within(&outside);
        // Each component is doubled, or each of its vertices is absent or
        // a single of either sign (singles must be dominated by `m`).
        let mut partial: Vec<GenSet> = vec![GenSet::from([m])];
        for comp in &components {
            let mut next = Vec::new();
            for base in &partial {
                let mut with_double = base.clone();
                with_double.extend(doubled(comp.iter().copied()));
                next.push(with_double);
                let mut singles: Vec<GenSet> = vec![base.clone()];
                for &v in comp {
                    let mut grown = Vec::new();
                    for s in &singles {
                        grown.push(s.clone());
                        if dominates(g, m.vertex, v) {
                            for sign in Sign::BOTH {
                                let mut t = s.clone();
                                t.insert(SignedGen::new(v, sign));
                                grown.push(t);
                            }
                        }
                    }
                    singles = grown;
                }
                next.extend(singles);
            }
            partial = next;
        }
        for p in partial {
            let part = WhiteheadPartition::from_pair(g, p, m);
            if part.p.len() < 2 || part.p_star.len() < 2 {
                continue;
            }
            let canonical = if side_key(&part.p) <= side_key(&part.p_star) {
                part
            } else {
                part.flipped()
            };
            out.insert(canonical);
        }
    }
    let mut list: Vec<WhiteheadPartition> = out.into_iter().collect();
    list.sort_by(|a, b| (side_key(&a.p), a.m).cmp(&(side_key(&b.p), b.m)));
    list
}

/// Distinct partitions: pairs sharing their sides collapse to the first.
pub fn enumerate_partitions(g: &SimplicialGraph) -> Vec<WhiteheadPartition> {
    let mut seen = BTreeSet::new();
    enumerate_pairs(g)
        .into_iter()
        .filter(|p| seen.insert(p.sides()))
        .collect()
}

/// Image of a word under the automorphism of the pair, freely reduced.
pub fn whitehead_word_map(pair: &WhiteheadPartition, word: &[SignedGen]) -> Vec<SignedGen> {
    let m = pair.m;
    let mut out = Vec::new();
    for &letter in word {
        let positive = SignedGen::new(letter.vertex, Sign::Plus);
        let image: Vec<SignedGen> = if positive.vertex == m.vertex {
            vec![positive.inverse()]
        } else {
            let (plus, minus) = (pair.p.contains(&positive), pair.p.contains(&positive.inverse()));
            match (plus, minus) {
                (true, false) => vec![positive, m.inverse()],
                (false, true) => vec![m, positive],
                (true, true) => vec![m, positive, m.inverse()],
                (false, false) => vec![positive],
            }
        };
        if letter.sign.is_plus() {
            out.extend(image);
        } else {
            out.extend(image.into_iter().rev().map(SignedGen::inverse));
        }
    }
    let pairs: Vec<(usize, Sign)> = out.iter().map(|l| (l.vertex, l.sign)).collect();
    free_reduce(&pairs)
        .into_iter()
        .map(|(v, s)| SignedGen::new(v, s))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Compatibility {
    Commuting,
    CompatibleDisjoint,
    Incompatible,
}

/// Max sets are compared as vertex sets; commuting needs them distinct
/// and elementwise adjacent.
pub fn compatibility(g: &SimplicialGraph, a: &WhiteheadPartition, b: &WhiteheadPartition) -> Result<Compatibility> {
    let universe: GenSet = signed_generators(g).into_iter().collect();
    for part in [a, b] {
        let all: GenSet = part.p.union(&part.lk).chain(&part.p_star).copied().collect();
        if all != universe || part.p.len() + part.lk.len() + part.p_star.len() != universe.len() {
            return Err(Error::GraphMismatch(part.display(g)));
        }
    }
    let va: BTreeSet<usize> = a.max(g).iter().map(|v| v.vertex).collect();
    let vb: BTreeSet<usize> = b.max(g).iter().map(|v| v.vertex).collect();
    if va != vb && va.iter().all(|x| vb.iter().all(|y| g.adjacent(*x, *y))) {
        return Ok(Compatibility::Commuting);
    }
    let empties = [(&a.p, &b.p), (&a.p_star, &b.p), (&a.p, &b.p_star), (&a.p_star, &b.p_star)]
        .iter()
        .filter(|(x, y)| x.is_disjoint(y))
        .count();
    match empties {
        0 => Ok(Compatibility::Incompatible),
        1 => Ok(Compatibility::CompatibleDisjoint),
        _ => Err(Error::InvariantViolated(format!(
            "{} side intersections of compatible partitions are empty",
            empties
        ))),
    }
}

/// A side choice for every partition of a collection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    /// `false` picks `P_i`, `true` picks `P_i*`.
    pub coords: Vec<bool>,
    /// Intersection of the chosen sides, each enlarged by its link.
    pub interior: GenSet,
}

impl Region {
    pub fn label(&self) -> String {
        let bits: String = self.coords.iter().map(|b| if *b { '1' } else { '0' }).collect();
        format!("x{bits}")
    }
}

fn side(p: &WhiteheadPartition, star: bool) -> &GenSet {
    if star {
        &p.p_star
    } else {
        &p.p
    }
}

fn commute_table(g: &SimplicialGraph, pi: &[WhiteheadPartition]) -> Result<Vec<Vec<bool>>> {
    let mut table = vec![vec![false; pi.len()]; pi.len()];
    for i in 0..pi.len() {
        for j in i + 1..pi.len() {
            if pi[i].sides() == pi[j].sides() {
                return Err(Error::InvalidPartition(format!("partition {i} is repeated as {j}")));
            }
            match compatibility(g, &pi[i], &pi[j])? {
                Compatibility::Commuting => {
                    table[i][j] = true;
                    table[j][i] = true;
                }
                Compatibility::CompatibleDisjoint => {}
                Compatibility::Incompatible => {
                    return Err(Error::InvalidPartition(format!("partitions {i} and {j} are incompatible")));
                }
            }
        }
    }
    Ok(table)
}

pub fn regions(g: &SimplicialGraph, pi: &[WhiteheadPartition]) -> Result<Vec<Region>> {
    let commute = commute_table(g, pi)?;
    let k = pi.len();
    let mut out = Vec::new();
    for bits in 0..(1usize << k) {
        let coords: Vec<bool> = (0..k).map(|i| bits >> (k - 1 - i) & 1 == 1).collect();
        let ok = (0..k).all(|i| {
            (i + 1..k).all(|j| commute[i][j] || !side(&pi[i], coords[i]).is_disjoint(side(&pi[j], coords[j])))
        });
        if !ok {
            continue;
        }
        let mut interior: GenSet = signed_generators(g).into_iter().collect();
        for (i, part) in pi.iter().enumerate() {
            let closed: GenSet = side(part, coords[i]).union(&part.lk).copied().collect();
            interior = interior.intersection(&closed).copied().collect();
        }
        out.push(Region { coords, interior });
    }
    Ok(out)
}

/// Label of a blow-up edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum EdgeLabel {
    Partition(usize),
    Generator(usize),
}

#[derive(Clone, Debug)]
pub struct Blowup {
    pub complex: CubeComplex,
    pub graph: SimplicialGraph,
    pub partitions: Vec<WhiteheadPartition>,
    pub regions: Vec<Region>,
    /// Label of every edge, keyed by edge index.
    pub edge_labels: BTreeMap<CubeIdx, EdgeLabel>,
    /// Region of every vertex, keyed by vertex index.
    pub region_of_vertex: BTreeMap<CubeIdx, usize>,
}

impl Blowup {
    pub fn label_name(&self, label: EdgeLabel) -> String {
        match label {
            EdgeLabel::Partition(i) => format!("P{i}"),
            EdgeLabel::Generator(v) => self.graph.name(v).to_string(),
        }
    }
}

fn labels_commute(g: &SimplicialGraph, pi: &[WhiteheadPartition], commute: &[Vec<bool>], a: EdgeLabel, b: EdgeLabel) -> bool {
    match (a, b) {
        (EdgeLabel::Generator(v), EdgeLabel::Generator(w)) => v != w && g.adjacent(v, w),
        (EdgeLabel::Generator(v), EdgeLabel::Partition(i)) | (EdgeLabel::Partition(i), EdgeLabel::Generator(v)) => {
            pi[i].lk.contains(&SignedGen::new(v, Sign::Plus))
        }
        (EdgeLabel::Partition(i), EdgeLabel::Partition(j)) => i != j && commute[i][j],
    }
}

/// Partitions whose chosen side in `region` holds `v` as a single.
fn singles_of(pi: &[WhiteheadPartition], region: &Region, v: SignedGen) -> Vec<usize> {
    (0..pi.len())
        .filter(|&i| {
            let s = side(&pi[i], region.coords[i]);
            s.contains(&v) && !s.contains(&v.inverse())
        })
        .collect()
}

/// Abstract edge before ids are assigned.
#[derive(Clone, Debug)]
struct RawEdge {
    id: String,
    tail: usize,
    head: usize,
    label: EdgeLabel,
}

/// A cube of the blow-up as its labels (in coordinate order) and the
/// vertices and edges at every corner, indexed by sign vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Frame {
    labels: Vec<EdgeLabel>,
    /// Region index per corner; corners enumerated with the first
    /// coordinate slowest, minus before plus.
    vertices: Vec<usize>,
    /// `edges[j][corner]`: edge along coordinate `j` leaving `corner`
    /// (only meaningful where that coordinate is minus).
    edges: Vec<Vec<usize>>,
}

fn corner_index(signs: &[bool]) -> usize {
    signs.iter().fold(0, |acc, s| acc * 2 + usize::from(*s))
}

/// Builds the blow-up of the Salvetti complex of `g` along `pi`; the
/// empty collection gives the Salvetti complex itself.
pub fn blowup(g: &SimplicialGraph, pi: &[WhiteheadPartition]) -> Result<Blowup> {
    let commute = commute_table(g, pi)?;
    let regs = regions(g, pi)?;
    let region_index: HashMap<Vec<bool>, usize> = regs.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
    for v in signed_generators(g) {
        if !regs.iter().any(|r| r.interior.contains(&v)) {
            return Err(Error::InvariantViolated(format!("{} lies in no region", v.display(g))));
        }
    }
    let bits = |r: usize| regs[r].label()[1..].to_string();
    let mut edges: Vec<RawEdge> = Vec::new();
    for (r, reg) in regs.iter().enumerate() {
        for i in 0..pi.len() {
            if reg.coords[i] {
                continue;
            }
            let mut flipped = reg.coords.clone();
            flipped[i] = true;
            if let Some(&s) = region_index.get(&flipped) {
                edges.push(RawEdge {
                    id: format!("P{i}:{}", bits(r)),
                    tail: r,
                    head: s,
                    label: EdgeLabel::Partition(i),
                });
            }
        }
    }
    let mut arrivals: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (r, reg) in regs.iter().enumerate() {
        for v in 0..g.len() {
            let plus = SignedGen::new(v, Sign::Plus);
            if !reg.interior.contains(&plus) {
                continue;
            }
            let head = if reg.interior.contains(&plus.inverse()) {
                r
            } else {
                let mut coords = reg.coords.clone();
                for i in singles_of(pi, reg, plus) {
                    coords[i] = !coords[i];
                }
                let s = *region_index.get(&coords).ok_or_else(|| {
                    Error::InvariantViolated(format!("flipping the singles of {} leaves the regions", plus.display(g)))
                })?;
                if !regs[s].interior.contains(&plus.inverse()) {
                    return Err(Error::InvariantViolated(format!(
                        "{} is missing from the far region",
                        plus.inverse().display(g)
                    )));
                }
                s
            };
            arrivals.insert((head, v));
            edges.push(RawEdge {
                id: format!("{}:{}", g.name(v), bits(r)),
                tail: r,
                head,
                label: EdgeLabel::Generator(v),
            });
        }
    }
    for (r, reg) in regs.iter().enumerate() {
        for v in 0..g.len() {
            let minus = SignedGen::new(v, Sign::Minus);
            if reg.interior.contains(&minus) && !arrivals.contains(&(r, v)) {
                return Err(Error::InvariantViolated(format!(
                    "{} at region {} is not the reverse of a generator edge",
                    minus.display(g),
                    reg.label()
                )));
            }
        }
    }

    // Edge-ends at each region: (edge, end sign).
    let mut ends: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); regs.len()];
    for (e, edge) in edges.iter().enumerate() {
        ends[edge.tail].push((e, Sign::Minus));
        ends[edge.head].push((e, Sign::Plus));
    }
    let endpoints: Vec<(usize, usize)> = edges.iter().map(|e| (e.tail, e.head)).collect();
    // Unique edge with `label` having `region` at end `end`.
    let transport = |region: usize, label: EdgeLabel, end: Sign| -> Result<usize> {
        let found: Vec<usize> = ends[region]
            .iter()
            .filter(|(e, s)| *s == end && edges[*e].label == label)
            .map(|(e, _)| *e)
            .collect();
        match found.len() {
            1 => Ok(found[0]),
            0 => Err(Error::SquareClosureFailed {
                region: regs[region].label(),
                labels: format!("{label:?}"),
            }),
            _ => Err(Error::AmbiguousClosure(regs[region].label())),
        }
    };

    let mut frames: Vec<Vec<Frame>> = vec![Vec::new(), Vec::new()];
    let mut frame_ids: Vec<HashMap<Frame, usize>> = vec![HashMap::new(), HashMap::new()];
    for (e, edge) in edges.iter().enumerate() {
        let f = Frame {
            labels: vec![edge.label],
            vertices: vec![edge.tail, edge.head],
            edges: vec![vec![e, usize::MAX]],
        };
        frame_ids[1].insert(f.clone(), e);
        frames[1].push(f);
    }
    let mut k = 2;
    loop {
        let mut found: Vec<Frame> = Vec::new();
        let mut seen: HashMap<Frame, usize> = HashMap::new();
        for r in 0..regs.len() {
            // Choose one end per label at `r`, labels increasing.
            let mut options: BTreeMap<EdgeLabel, Vec<(usize, Sign)>> = BTreeMap::new();
            for &(e, s) in &ends[r] {
                options.entry(edges[e].label).or_default().push((e, s));
            }
            let labels: Vec<EdgeLabel> = options.keys().copied().collect();
            for subset in commuting_subsets(&labels, k, &|a, b| labels_commute(g, pi, &commute, a, b)) {
                let mut choices: Vec<Vec<(usize, Sign)>> = vec![Vec::new()];
                for l in &subset {
                    let mut next = Vec::new();
                    for c in &choices {
                        for &opt in &options[l] {
                            let mut c2 = c.clone();
                            c2.push(opt);
                            next.push(c2);
                        }
                    }
                    choices = next;
                }
                for choice in choices {
                    let frame = close_frame(r, &subset, &choice, &endpoints, &transport)?;
                    if !seen.contains_key(&frame) {
                        seen.insert(frame.clone(), found.len());
                        found.push(frame);
                    }
                }
            }
        }
        if found.is_empty() {
            break;
        }
        frame_ids.push(seen);
        frames.push(found);
        k += 1;
    }

    let mut b = ComplexBuilder::new();
    for reg in &regs {
        b.add_cube(reg.label(), 0)?;
    }
    for edge in &edges {
        b.add_cube(edge.id.clone(), 1)?;
        b.set_facet(&edge.id, 0, Sign::Minus, regs[edge.tail].label(), SignedPermMap::new(vec![None], 0))?;
        b.set_facet(&edge.id, 0, Sign::Plus, regs[edge.head].label(), SignedPermMap::new(vec![None], 0))?;
    }
    let cube_id = |dim: usize, n: usize| format!("c{dim}.{n}");
    for (dim, list) in frames.iter().enumerate().skip(2) {
        for n in 0..list.len() {
            b.add_cube(cube_id(dim, n), dim)?;
        }
    }
    for (dim, list) in frames.iter().enumerate().skip(2) {
        for (n, frame) in list.iter().enumerate() {
            for j in 0..dim {
                for sign in Sign::BOTH {
                    let facet = restrict_frame(frame, j, sign.is_plus());
                    let &idx = frame_ids[dim - 1].get(&facet).ok_or_else(|| Error::SquareClosureFailed {
                        region: regs[frame.vertices[0]].label(),
                        labels: format!("{:?}", facet.labels),
                    })?;
                    let target = if dim - 1 == 1 {
                        edges[idx].id.clone()
                    } else {
                        cube_id(dim - 1, idx)
                    };
                    b.set_facet(&cube_id(dim, n), j, sign, target, SignedPermMap::facet_standard(dim, j))?;
                }
            }
        }
    }
    let complex = b.build()?;
    let mut edge_labels = BTreeMap::new();
    for edge in &edges {
        edge_labels.insert(complex.lookup(&edge.id).expect("edge exists"), edge.label);
    }
    let region_of_vertex = regs
        .iter()
        .enumerate()
        .map(|(r, reg)| (complex.lookup(&reg.label()).expect("vertex exists"), r))
        .collect();
    let result = Blowup {
        complex,
        graph: g.clone(),
        partitions: pi.to_vec(),
        regions: regs,
        edge_labels,
        region_of_vertex,
    };
    verify_blowup(&result)?;
    Ok(result)
}

fn commuting_subsets(
    labels: &[EdgeLabel],
    k: usize,
    commute: &dyn Fn(EdgeLabel, EdgeLabel) -> bool,
) -> Vec<Vec<EdgeLabel>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<EdgeLabel>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() == k {
            out.push(chosen);
            continue;
        }
        for i in start..labels.len() {
            if chosen.iter().all(|c| commute(*c, labels[i])) {
                let mut next = chosen.clone();
                next.push(labels[i]);
                stack.push((i + 1, next));
            }
        }
    }
    out.sort();
    out
}

/// Closes a corner into a full cube frame by parallel transport of labels.
fn close_frame(
    corner: usize,
    labels: &[EdgeLabel],
    choice: &[(usize, Sign)],
    endpoints: &[(usize, usize)],
    transport: &dyn Fn(usize, EdgeLabel, Sign) -> Result<usize>,
) -> Result<Frame> {
    let k = labels.len();
    // Corner signs of the starting vertex: it sits at end `s` of edge j.
    let start: Vec<bool> = choice.iter().map(|(_, s)| s.is_plus()).collect();
    let mut vertices: Vec<Option<usize>> = vec![None; 1 << k];
    vertices[corner_index(&start)] = Some(corner);
    let mut edges_at: Vec<Vec<Option<usize>>> = vec![vec![None; 1 << k]; k];
    let mut queue = VecDeque::from([start]);
    while let Some(signs) = queue.pop_front() {
        let here = vertices[corner_index(&signs)].expect("queued corners are resolved");
        for j in 0..k {
            let end = if signs[j] { Sign::Plus } else { Sign::Minus };
            let e = transport(here, labels[j], end)?;
            let mut other = signs.clone();
            other[j] = !other[j];
            let low = if signs[j] { &other } else { &signs };
            let slot = &mut edges_at[j][corner_index(low)];
            match slot {
                Some(prev) if *prev != e => {
                    return Err(Error::AmbiguousClosure(format!("corner {corner}")));
                }
                _ => *slot = Some(e),
            }
            let far = if end.is_plus() { endpoints[e].0 } else { endpoints[e].1 };
            let idx = corner_index(&other);
            match vertices[idx] {
                Some(v) if v != far => {
                    return Err(Error::SquareClosureFailed {
                        region: format!("corner {corner}"),
                        labels: format!("{labels:?}"),
                    });
                }
                Some(_) => {}
                None => {
                    vertices[idx] = Some(far);
                    queue.push_back(other);
                }
            }
        }
    }
    Ok(Frame {
        labels: labels.to_vec(),
        vertices: vertices.into_iter().map(|v| v.expect("every corner reached")).collect(),
        edges: edges_at
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.unwrap_or(usize::MAX)).collect())
            .collect(),
    })
}

/// Facet of a frame with coordinate `j` fixed.
fn restrict_frame(frame: &Frame, j: usize, plus: bool) -> Frame {
    let k = frame.labels.len();
    let mut labels = frame.labels.clone();
    labels.remove(j);
    let keep = |corner: usize| -> bool { (corner >> (k - 1 - j) & 1 == 1) == plus };
    let squeeze = |corner: usize| -> usize {
        let high = corner >> (k - j);
        let low = corner & ((1 << (k - 1 - j)) - 1);
        (high << (k - 1 - j)) | low
    };
    let mut vertices = vec![0; 1 << (k - 1)];
    for c in (0..1 << k).filter(|c| keep(*c)) {
        vertices[squeeze(c)] = frame.vertices[c];
    }
    let mut edges = Vec::new();
    for (l, row) in frame.edges.iter().enumerate() {
        if l == j {
            continue;
        }
        let mut out = vec![usize::MAX; 1 << (k - 1)];
        for c in (0..1 << k).filter(|c| keep(*c)) {
            out[squeeze(c)] = row[c];
        }
        edges.push(out);
    }
    let mut f = Frame { labels, vertices, edges };
    normalise_frame(&mut f);
    f
}

/// Keeps only the entries of `edges` at corners where the coordinate is
/// minus, so equal cubes have equal frames.
fn normalise_frame(f: &mut Frame) {
    let k = f.labels.len();
    for (j, row) in f.edges.iter_mut().enumerate() {
        for (c, e) in row.iter_mut().enumerate() {
            if c >> (k - 1 - j) & 1 == 1 {
                *e = usize::MAX;
            }
        }
    }
}

fn verify_blowup(b: &Blowup) -> Result<()> {
    let x = &b.complex;
    if !npc_check(x).passes() {
        return Err(Error::InvariantViolated("blow-up is not nonpositively curved".to_string()));
    }
    let h1 = crate::homology::h1::<crate::Integer>(x)?;
    if h1.betti1 != b.graph.len() || !h1.torsion.is_empty() {
        return Err(Error::InvariantViolated(format!(
            "blow-up has first Betti number {} and torsion {:?}",
            h1.betti1, h1.torsion
        )));
    }
    let base = salvetti(&b.graph);
    if x.euler_characteristic() != base.euler_characteristic() {
        return Err(Error::InvariantViolated("blow-up changes the Euler characteristic".to_string()));
    }
    Ok(())
}

/// Closed path that starts along the generator edge of `v` at `region`
/// and returns through partition edges only.
pub fn characteristic_loop(b: &Blowup, v: SignedGen, region: usize) -> Result<Vec<(CubeIdx, bool)>> {
    let reg = &b.regions[region];
    if !reg.interior.contains(&v) {
        return Err(Error::InvalidPartition(format!(
            "{} is not in region {}",
            v.display(&b.graph),
            reg.label()
        )));
    }
    let x = &b.complex;
    let here = x.lookup(&reg.label()).expect("region vertex");
    let gen_edges: Vec<CubeIdx> = b
        .edge_labels
        .iter()
        .filter(|(_, l)| **l == EdgeLabel::Generator(v.vertex))
        .map(|(e, _)| *e)
        .collect();
    // Leave `here` along the edge of `v`: forward from its tail for a
    // positive letter, backward from its head for a negative one.
    let leave_end = if v.sign.is_plus() { Sign::Minus } else { Sign::Plus };
    let first = gen_edges
        .iter()
        .copied()
        .find(|&e| x.endpoint(e, leave_end) == here)
        .ok_or_else(|| Error::NoValidFlipOrder(v.display(&b.graph)))?;
    let far = x.endpoint(first, -leave_end);
    let mut path = vec![(first, v.sign.is_plus())];
    if far == here {
        return Ok(path);
    }
    let flips: BTreeSet<usize> = singles_of(&b.partitions, reg, v).into_iter().collect();
    let back = x
        .shortest_path(far, here, &|e| match b.edge_labels.get(&e) {
            Some(EdgeLabel::Partition(i)) => !flips.contains(i),
            _ => true,
        })
        .ok_or_else(|| Error::NoValidFlipOrder(v.display(&b.graph)))?;
    path.extend(back);
    Ok(path)
}
