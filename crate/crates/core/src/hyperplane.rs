//! Hyperplanes as equivalence classes of midcubes, with their
//! co-orientations, crossing pattern and the pathologies that obstruct
//! specialness.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{vertex_links, CubeComplex, CubeIdx, EdgeEnd, Sign};
use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;

/// Index of a hyperplane; hyperplanes are ordered by their smallest dual edge id.
pub type HyperplaneIdx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub index: HyperplaneIdx,
    /// Id of the smallest dual edge.
    pub name: String,
    pub two_sided: bool,
    pub self_intersecting: bool,
    /// `(cube, coordinate, co-orientation label)`; labels are meaningful
    /// only when `two_sided`.
    pub midcubes: Vec<(CubeIdx, usize, Sign)>,
    pub dual_edges: Vec<CubeIdx>,
    /// Cubes containing a midcube, sorted.
    pub carrier: Vec<CubeIdx>,
}

/// All hyperplanes of a complex together with the midcube membership table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplanes {
    list: Vec<Hyperplane>,
    membership: Vec<Vec<(HyperplaneIdx, Sign)>>,
    crossing: Vec<BTreeSet<HyperplaneIdx>>,
}

impl Hyperplanes {
    fn compute(x: &CubeComplex) -> Hyperplanes {
        let mut offset = Vec::with_capacity(x.len() + 1);
        let mut total = 0;
        for c in 0..x.len() {
            offset.push(total);
            total += x.dim(c);
        }
        offset.push(total);
        let node = |c: CubeIdx, i: usize| offset[c] + i;
        let mut owner = vec![(0usize, 0usize); total];
        let mut adj: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); total];
        for c in 0..x.len() {
            for i in 0..x.dim(c) {
                owner[node(c, i)] = (c, i);
            }
            for (j, _, f) in x.cube(c).facets() {
                for i in 0..x.dim(c) {
                    if i == j {
                        continue;
                    }
                    let img = f.map.image(i).expect("retained coordinate");
                    let (a, b) = (node(c, i), node(f.target, img.coord));
                    adj[a].push((b, img.sign));
                    adj[b].push((a, img.sign));
                }
            }
        }
        let mut label: Vec<Option<Sign>> = vec![None; total];
        let mut class = vec![usize::MAX; total];
        let mut list = Vec::new();
        for e in x.edges() {
            let start = node(e, 0);
            if label[start].is_some() {
                continue;
            }
            let h = list.len();
            label[start] = Some(Sign::Plus);
            class[start] = h;
            let mut two_sided = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                let la = label[a].expect("visited");
                for &(b, s) in &adj[a] {
                    match label[b] {
                        None => {
                            label[b] = Some(la * s);
                            class[b] = h;
                            members.push(b);
                            queue.push_back(b);
                        }
                        Some(lb) => {
                            if lb != la * s {
                                two_sided = false;
                            }
                        }
                    }
                }
            }
            members.sort();
            let midcubes: Vec<(CubeIdx, usize, Sign)> = members
                .iter()
                .map(|&m| (owner[m].0, owner[m].1, label[m].expect("visited")))
                .collect();
            let mut carrier: Vec<CubeIdx> = midcubes.iter().map(|m| m.0).collect();
            carrier.dedup();
            let self_intersecting = carrier.len() < midcubes.len();
            let dual_edges: Vec<CubeIdx> = midcubes
                .iter()
                .filter(|m| x.dim(m.0) == 1)
                .map(|m| m.0)
                .collect();
            list.push(Hyperplane {
                index: h,
                name: x.id(dual_edges[0]).to_string(),
                two_sided,
                self_intersecting,
                midcubes,
                dual_edges,
                carrier,
            });
        }
        let membership: Vec<Vec<(HyperplaneIdx, Sign)>> = (0..x.len())
            .map(|c| {
                (0..x.dim(c))
                    .map(|i| (class[node(c, i)], label[node(c, i)].expect("every midcube meets an edge")))
                    .collect()
            })
            .collect();
        let mut crossing = vec![BTreeSet::new(); list.len()];
        for row in &membership {
            for (a, (ha, _)) in row.iter().enumerate() {
                for (hb, _) in &row[a + 1..] {
                    if ha != hb {
                        crossing[*ha].insert(*hb);
                        crossing[*hb].insert(*ha);
                    }
                }
            }
        }
        Hyperplanes {
            list,
            membership,
            crossing,
        }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, h: HyperplaneIdx) -> Result<&Hyperplane> {
        self.list.get(h).ok_or(Error::UnknownHyperplane(h))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hyperplane> {
        self.list.iter()
    }

    /// Hyperplane through coordinate `coord` of `cube`, with the label
    /// of that midcube.
    pub fn of(&self, cube: CubeIdx, coord: usize) -> (HyperplaneIdx, Sign) {
        self.membership[cube][coord]
    }

    /// Hyperplane dual to an edge.
    pub fn dual_to(&self, edge: CubeIdx) -> HyperplaneIdx {
        self.membership[edge][0].0
    }

    /// Co-orientation of a dual edge: `Plus` when the positive side of
    /// its hyperplane is at the edge's head.
    pub fn co_orientation(&self, edge: CubeIdx) -> Sign {
        self.membership[edge][0].1
    }

    /// Side of the hyperplane dual to `end.edge` on which the vertex at
    /// that end lies.
    pub fn side_of(&self, end: EdgeEnd) -> Sign {
        end.end * self.co_orientation(end.edge)
    }

    pub fn crosses(&self, a: HyperplaneIdx, b: HyperplaneIdx) -> bool {
        self.crossing[a].contains(&b)
    }

    pub fn crossing_set(&self, h: HyperplaneIdx) -> &BTreeSet<HyperplaneIdx> {
        &self.crossing[h]
    }

    /// Vertex names used for hyperplanes in derived graphs; zero-padded
    /// so that lexicographic order matches index order.
    pub fn vertex_name(&self, h: HyperplaneIdx) -> String {
        let width = self.len().saturating_sub(1).to_string().len();
        format!("h{h:0width$}")
    }

    fn graph_with(&self, edge: impl Fn(HyperplaneIdx, HyperplaneIdx) -> bool) -> SimplicialGraph {
        let names = (0..self.len()).map(|h| self.vertex_name(h)).collect();
        let mut edges = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if edge(a, b) {
                    edges.push((a, b));
                }
            }
        }
        SimplicialGraph::from_indices(names, &edges)
    }

    /// Vertices are hyperplanes; edges join crossing pairs.
    pub fn crossing_graph(&self) -> SimplicialGraph {
        self.graph_with(|a, b| self.crosses(a, b))
    }
}

/// Cached hyperplane structure of a complex.
pub fn hyperplanes(x: &CubeComplex) -> Arc<Hyperplanes> {
    x.hyperplane_cache()
        .get_or_init(|| Arc::new(Hyperplanes::compute(x)))
        .clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Osculation {
    pub hyperplane: HyperplaneIdx,
    pub other: HyperplaneIdx,
    pub vertex: String,
    pub ends: (String, String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpecialnessReport {
    pub one_sided: Vec<HyperplaneIdx>,
    pub self_intersecting: Vec<HyperplaneIdx>,
    pub direct_self_osculation: Vec<Osculation>,
    pub indirect_self_osculation: Vec<Osculation>,
    pub interosculating: Vec<Osculation>,
}

impl SpecialnessReport {
    /// Indirect self-osculation is recorded but tolerated.
    pub fn is_special(&self) -> bool {
        self.one_sided.is_empty()
            && self.self_intersecting.is_empty()
            && self.direct_self_osculation.is_empty()
            && self.interosculating.is_empty()
    }
}

/// Classifies every hyperplane pathology. One-sided hyperplanes are
/// reported as such and skipped in the osculation analysis.
pub fn specialness(x: &CubeComplex) -> SpecialnessReport {
    let hs = hyperplanes(x);
    let mut report = SpecialnessReport::default();
    for h in hs.iter() {
        if !h.two_sided {
            report.one_sided.push(h.index);
        }
        if h.self_intersecting {
            report.self_intersecting.push(h.index);
        }
    }
    let mut direct: BTreeMap<HyperplaneIdx, Osculation> = BTreeMap::new();
    let mut indirect: BTreeMap<HyperplaneIdx, Osculation> = BTreeMap::new();
    let mut inter: BTreeMap<(HyperplaneIdx, HyperplaneIdx), Osculation> = BTreeMap::new();
    let label = |e: EdgeEnd| format!("{}{}", x.id(e.edge), e.end);
    for (v, link) in vertex_links(x) {
        let adj = link.adjacency();
        for (ia, &a) in link.vertices.iter().enumerate() {
            for &b in &link.vertices[ia + 1..] {
                if adj[&a].contains(&b) {
                    continue;
                }
                let (ha, hb) = (hs.dual_to(a.edge), hs.dual_to(b.edge));
                let witness = |h: HyperplaneIdx, k: HyperplaneIdx| Osculation {
                    hyperplane: h,
                    other: k,
                    vertex: x.id(v).to_string(),
                    ends: (label(a), label(b)),
                };
                if ha == hb {
                    if !hs.list[ha].two_sided {
                        continue;
                    }
                    if hs.side_of(a) == hs.side_of(b) {
                        direct.entry(ha).or_insert_with(|| witness(ha, ha));
                    } else {
                        indirect.entry(ha).or_insert_with(|| witness(ha, ha));
                    }
                } else if hs.crosses(ha, hb) {
                    let key = (ha.min(hb), ha.max(hb));
                    inter.entry(key).or_insert_with(|| witness(key.0, key.1));
                }
            }
        }
    }
    report.direct_self_osculation = direct.into_values().collect();
    report.indirect_self_osculation = indirect.into_values().collect();
    report.interosculating = inter.into_values().collect();
    report
}

pub fn crossing_graph(x: &CubeComplex) -> SimplicialGraph {
    hyperplanes(x).crossing_graph()
}

/// Whether deleting the dual edges of `h` disconnects the 1-skeleton.
pub fn is_separating(x: &CubeComplex, h: HyperplaneIdx) -> Result<bool> {
    if !x.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let hs = hyperplanes(x);
    hs.get(h)?;
    Ok(x.components_without(&|e| hs.dual_to(e) == h).len() > 1)
}

/// Components of the 1-skeleton after deleting the dual edges of a set
/// of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementComponents {
    pub deleted: BTreeSet<HyperplaneIdx>,
    pub components: Vec<Vec<CubeIdx>>,
    component_of: BTreeMap<CubeIdx, usize>,
}

impl ComplementComponents {
    pub fn component_of_vertex(&self, v: CubeIdx) -> usize {
        self.component_of[&v]
    }

    /// Component holding the hyperplane `h`, which must be disjoint from
    /// every deleted hyperplane.
    pub fn assign(&self, x: &CubeComplex, h: HyperplaneIdx) -> Result<usize> {
        let hs = hyperplanes(x);
        let hyp = hs.get(h)?;
        if self.deleted.contains(&h) || self.deleted.iter().any(|d| hs.crosses(*d, h)) {
            return Err(Error::AssignmentAmbiguous(h));
        }
        let e = hyp.dual_edges[0];
        Ok(self.component_of[&x.endpoint(e, Sign::Minus)])
    }
}

pub fn complement_components(x: &CubeComplex, deleted: &BTreeSet<HyperplaneIdx>) -> Result<ComplementComponents> {
    let hs = hyperplanes(x);
    for &h in deleted {
        hs.get(h)?;
    }
    let components = x.components_without(&|e| deleted.contains(&hs.dual_to(e)));
    let mut component_of = BTreeMap::new();
    for (k, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of.insert(v, k);
        }
    }
    Ok(ComplementComponents {
        deleted: deleted.clone(),
        components,
        component_of,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parallelism {
    /// Joins distinct hyperplanes that share no cube.
    pub delta: SimplicialGraph,
    /// Components of `delta`, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<HyperplaneIdx>>,
}

impl Parallelism {
    pub fn class_of(&self, h: HyperplaneIdx) -> &[HyperplaneIdx] {
        self.classes
            .iter()
            .find(|c| c.contains(&h))
            .expect("every hyperplane lies in a class")
    }
}

pub fn parallelism(x: &CubeComplex) -> Parallelism {
    let hs = hyperplanes(x);
    let delta = hs.graph_with(|a, b| !hs.crosses(a, b));
    let classes = delta.components();
    Parallelism { delta, classes }
}
