//! Right-angled Artin groups: domination, Salvetti complexes and cubical
//! maps into them.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{npc_check, vertex_links, ComplexBuilder, CubeComplex, CubeIdx, EdgeEnd, SignedCoord, SignedPermMap};
use crate::complex::{CubeImage, CubicalMap};
use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::hyperplane::hyperplanes;

/// Closed star of `v`: the vertex and its neighbours.
pub fn star(g: &SimplicialGraph, v: usize) -> BTreeSet<usize> {
    let mut s = g.neighbours(v).clone();
    s.insert(v);
    s
}

/// `v <= w` when the link of `v` lies in the star of `w`.
pub fn dominates(g: &SimplicialGraph, w: usize, v: usize) -> bool {
    g.neighbours(v).is_subset(&star(g, w))
}

/// Mutual domination.
pub fn equivalent(g: &SimplicialGraph, v: usize, w: usize) -> bool {
    dominates(g, w, v) && dominates(g, v, w)
}

/// Id of the Salvetti cube of a clique: vertex names in a bracket.
pub fn clique_id(g: &SimplicialGraph, clique: &[usize]) -> String {
    let names: Vec<&str> = clique.iter().map(|v| g.name(*v)).collect();
    format!("[{}]", names.join(","))
}

/// One cube per clique; the facets at the coordinate of `v` both drop `v`.
pub fn salvetti(g: &SimplicialGraph) -> CubeComplex {
    let cliques = g.cliques();
    let mut b = ComplexBuilder::new();
    for k in &cliques {
        b.add_cube(clique_id(g, k), k.len()).expect("clique ids are distinct");
    }
    for k in &cliques {
        let id = clique_id(g, k);
        for p in 0..k.len() {
            let mut rest = k.clone();
            rest.remove(p);
            let target = clique_id(g, &rest);
            for sign in crate::complex::Sign::BOTH {
                b.set_facet(&id, p, sign, &target, SignedPermMap::facet_standard(k.len(), p))
                    .expect("coordinate in range");
            }
        }
    }
    let x = b.build().expect("Salvetti construction is well formed");
    debug_assert!(npc_check(&x).passes());
    x
}

#[derive(Clone, Debug)]
pub struct CanonicalMap {
    pub graph: SimplicialGraph,
    pub salvetti: CubeComplex,
    pub map: CubicalMap,
}

/// Sends each cube to the Salvetti cube of the clique of hyperplanes
/// through it, with coordinate signs given by the co-orientations.
pub fn canonical_salvetti_map(x: &CubeComplex) -> Result<CanonicalMap> {
    let hs = hyperplanes(x);
    for h in hs.iter() {
        if !h.two_sided {
            return Err(Error::OneSidedHyperplane(h.index));
        }
    }
    let graph = hs.crossing_graph();
    let target = salvetti(&graph);
    let mut images = Vec::with_capacity(x.len());
    for c in 0..x.len() {
        let through: Vec<_> = (0..x.dim(c)).map(|i| hs.of(c, i)).collect();
        let mut clique: Vec<usize> = through.iter().map(|(h, _)| *h).collect();
        clique.sort();
        if clique.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::SelfIntersectingHyperplane(clique[0]));
        }
        let cube = target
            .lookup(&clique_id(&graph, &clique))
            .expect("hyperplanes through a cube pairwise cross");
        let map = SignedPermMap::new(
            through
                .iter()
                .map(|(h, label)| Some(SignedCoord::new(clique.binary_search(h).expect("member"), *label)))
                .collect(),
            clique.len(),
        );
        images.push(CubeImage { cube, map });
    }
    let map = CubicalMap { images };
    map.check(x, &target).map_err(Error::InvariantViolated)?;
    Ok(CanonicalMap {
        graph,
        salvetti: target,
        map,
    })
}

/// Image of an edge-end under a cubical map.
pub fn map_end(map: &CubicalMap, end: EdgeEnd) -> EdgeEnd {
    let (edge, sign) = map.edge_action(end.edge);
    EdgeEnd {
        edge,
        end: sign * end.end,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkViolation {
    /// Two edge-ends at `vertex` with the same image.
    NotInjective { vertex: String, ends: (String, String) },
    /// Non-adjacent edge-ends at `vertex` with adjacent images.
    NotFull { vertex: String, ends: (String, String) },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LocalIsometryReport {
    pub violations: Vec<LinkViolation>,
}

impl LocalIsometryReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn end_label(x: &CubeComplex, e: EdgeEnd) -> String {
    format!("{}{}", x.id(e.edge), e.end)
}

pub fn local_isometry_check(source: &CubeComplex, target: &CubeComplex, map: &CubicalMap) -> LocalIsometryReport {
    let target_links = vertex_links(target);
    let mut report = LocalIsometryReport::default();
    for (v, link) in vertex_links(source) {
        let vertex = source.id(v).to_string();
        let image_link = &target_links[&map.image(v).cube];
        let adj = link.adjacency();
        let image_adj = image_link.adjacency();
        for (i, &a) in link.vertices.iter().enumerate() {
            for &b in &link.vertices[i + 1..] {
                let (fa, fb) = (map_end(map, a), map_end(map, b));
                let ends = (end_label(source, a), end_label(source, b));
                if fa == fb {
                    report.violations.push(LinkViolation::NotInjective {
                        vertex: vertex.clone(),
                        ends,
                    });
                } else if !adj[&a].contains(&b) && image_adj.get(&fa).is_some_and(|s| s.contains(&fb)) {
                    report.violations.push(LinkViolation::NotFull {
                        vertex: vertex.clone(),
                        ends,
                    });
                }
            }
        }
    }
    report
}

/// Local isometry whose link maps are onto and which hits every cube.
pub fn covering_check(source: &CubeComplex, target: &CubeComplex, map: &CubicalMap) -> bool {
    if map.check(source, target).is_err() || !local_isometry_check(source, target, map).passes() {
        return false;
    }
    let target_links = vertex_links(target);
    for (v, link) in vertex_links(source) {
        let hit: BTreeSet<EdgeEnd> = link.vertices.iter().map(|e| map_end(map, *e)).collect();
        let image_link = &target_links[&map.image(v).cube];
        if hit.len() != image_link.vertices.len() {
            return false;
        }
    }
    let hit: BTreeSet<CubeIdx> = map.images.iter().map(|i| i.cube).collect();
    hit.len() == target.len()
}

/// Cubical map sending each cube to the cube with the same id, identity
/// on coordinates. Used for subcomplex inclusions.
pub fn inclusion_by_id(source: &CubeComplex, target: &CubeComplex) -> Result<CubicalMap> {
    let ids: HashMap<&str, CubeIdx> = (0..target.len()).map(|c| (target.id(c), c)).collect();
    let images = (0..source.len())
        .map(|c| {
            let cube = *ids
                .get(source.id(c))
                .ok_or_else(|| Error::UnknownTargetId(source.id(c).to_string()))?;
            Ok(CubeImage {
                cube,
                map: SignedPermMap::identity(source.dim(c)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CubicalMap { images })
}
