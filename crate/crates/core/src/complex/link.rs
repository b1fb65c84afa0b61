use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{all_sign_vectors, CubeComplex, CubeIdx, Sign};

/// One end of an edge; the vertices of a vertex link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: CubeIdx,
    pub end: Sign,
}

/// The simplex contributed by one corner of one cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSimplex {
    pub cube: CubeIdx,
    pub corner: Vec<Sign>,
    /// Edge-ends in coordinate order of `cube`.
    pub ends: Vec<EdgeEnd>,
}

impl LinkSimplex {
    pub fn vertex_set(&self) -> BTreeSet<EdgeEnd> {
        self.ends.iter().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLink {
    pub vertex: CubeIdx,
    /// Sorted by `(edge, end)`, which is lexicographic on edge ids.
    pub vertices: Vec<EdgeEnd>,
    /// Simplices of dimension at least 1 (from cubes of dimension >= 2)
    /// and the 0-simplices from edges.
    pub simplices: Vec<LinkSimplex>,
}

impl VertexLink {
    /// Pairs of link vertices joined by a 1-simplex.
    pub fn adjacency(&self) -> HashMap<EdgeEnd, BTreeSet<EdgeEnd>> {
        let mut adj: HashMap<EdgeEnd, BTreeSet<EdgeEnd>> =
            self.vertices.iter().map(|v| (*v, BTreeSet::new())).collect();
        for s in self.simplices.iter().filter(|s| s.ends.len() == 2) {
            let (a, b) = (s.ends[0], s.ends[1]);
            if a != b {
                adj.entry(a).or_default().insert(b);
                adj.entry(b).or_default().insert(a);
            }
        }
        adj
    }

    pub fn adjacent(&self, a: EdgeEnd, b: EdgeEnd) -> bool {
        self.simplices
            .iter()
            .any(|s| s.ends.len() == 2 && ((s.ends[0] == a && s.ends[1] == b) || (s.ends[0] == b && s.ends[1] == a)))
    }
}

/// Edge-ends spanned by the corner `signs` of `cube`.
pub(crate) fn corner_ends(x: &CubeComplex, cube: CubeIdx, signs: &[Sign]) -> Vec<EdgeEnd> {
    (0..signs.len())
        .map(|i| {
            let pattern: Vec<Option<Sign>> = signs
                .iter()
                .enumerate()
                .map(|(j, s)| if j == i { None } else { Some(*s) })
                .collect();
            let (edge, map) = x.face(cube, &pattern);
            let img = map.image(i).expect("free coordinate survives");
            EdgeEnd {
                edge,
                end: img.sign * signs[i],
            }
        })
        .collect()
}

/// Links of every vertex, keyed by vertex index.
pub fn vertex_links(x: &CubeComplex) -> BTreeMap<CubeIdx, VertexLink> {
    let mut links: BTreeMap<CubeIdx, VertexLink> = x
        .vertices()
        .into_iter()
        .map(|v| {
            (
                v,
                VertexLink {
                    vertex: v,
                    vertices: Vec::new(),
                    simplices: Vec::new(),
                },
            )
        })
        .collect();
    for cube in 0..x.len() {
        let n = x.dim(cube);
        if n == 0 {
            continue;
        }
        for signs in all_sign_vectors(n) {
            let v = x.corner(cube, &signs);
            let ends = corner_ends(x, cube, &signs);
            let link = links.get_mut(&v).expect("corner is a vertex");
            if n == 1 {
                link.vertices.push(ends[0]);
            }
            link.simplices.push(LinkSimplex {
                cube,
                corner: signs,
                ends,
            });
        }
    }
    for link in links.values_mut() {
        link.vertices.sort();
        link.vertices.dedup();
    }
    links
}

pub fn vertex_link(x: &CubeComplex, vertex: CubeIdx) -> VertexLink {
    vertex_links(x)
        .remove(&vertex)
        .expect("vertex index refers to a 0-cube")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NpcViolation {
    /// A corner spans the same edge-end twice.
    RepeatedVertex { vertex: String, cube: String },
    /// Two corners of the same dimension span the same vertex set.
    DuplicateSimplex { vertex: String, cubes: Vec<String>, ends: Vec<String> },
    /// A clique of the link's 1-skeleton spans no simplex.
    MissingSimplex { vertex: String, clique: Vec<String> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NpcReport {
    pub violations: Vec<NpcViolation>,
}

impl NpcReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub(crate) fn end_label(x: &CubeComplex, e: EdgeEnd) -> String {
    format!("{}{}", x.id(e.edge), e.end)
}

fn extend_cliques(
    clique: &mut Vec<EdgeEnd>,
    candidates: &[EdgeEnd],
    adj: &HashMap<EdgeEnd, BTreeSet<EdgeEnd>>,
    out: &mut Vec<Vec<EdgeEnd>>,
) {
    for (k, &c) in candidates.iter().enumerate() {
        clique.push(c);
        if clique.len() >= 3 {
            out.push(clique.clone());
        }
        let rest: Vec<EdgeEnd> = candidates[k + 1..]
            .iter()
            .copied()
            .filter(|d| adj[&c].contains(d))
            .collect();
        extend_cliques(clique, &rest, adj, out);
        clique.pop();
    }
}

/// Gromov's link condition: every vertex link is a flag simplicial complex.
pub fn npc_check(x: &CubeComplex) -> NpcReport {
    let mut violations = Vec::new();
    for (v, link) in vertex_links(x) {
        let vid = x.id(v).to_string();
        let mut by_set: BTreeMap<(usize, BTreeSet<EdgeEnd>), Vec<CubeIdx>> = BTreeMap::new();
        for s in &link.simplices {
            let set = s.vertex_set();
            if set.len() != s.ends.len() {
                violations.push(NpcViolation::RepeatedVertex {
                    vertex: vid.clone(),
                    cube: x.id(s.cube).to_string(),
                });
                continue;
            }
            by_set.entry((s.ends.len(), set)).or_default().push(s.cube);
        }
        for ((_, set), cubes) in &by_set {
            if cubes.len() > 1 {
                violations.push(NpcViolation::DuplicateSimplex {
                    vertex: vid.clone(),
                    cubes: cubes.iter().map(|c| x.id(*c).to_string()).collect(),
                    ends: set.iter().map(|e| end_label(x, *e)).collect(),
                });
            }
        }
        let adj = link.adjacency();
        let mut cliques = Vec::new();
        extend_cliques(&mut Vec::new(), &link.vertices, &adj, &mut cliques);
        for clique in cliques {
            let set: BTreeSet<EdgeEnd> = clique.iter().copied().collect();
            if !by_set.contains_key(&(set.len(), set)) {
                violations.push(NpcViolation::MissingSimplex {
                    vertex: vid.clone(),
                    clique: clique.iter().map(|e| end_label(x, *e)).collect(),
                });
            }
        }
    }
    NpcReport { violations }
}
