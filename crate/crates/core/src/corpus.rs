//! Named complexes used by the test suites and the command line: a
//! corpus of connected special complexes and small pathological fixtures.

use std::collections::BTreeSet;

use crate::complex::{product, subdivide, ComplexBuilder, CubeComplex, Preset, Sign, SignedPermMap};
use crate::error::Result;
use crate::graph::SimplicialGraph;
use crate::raag::salvetti;
use crate::whitehead::{blowup, compatibility, enumerate_partitions, Compatibility, WhiteheadPartition};

fn vertex_map() -> SignedPermMap {
    SignedPermMap::new(vec![None], 0)
}

/// `facet_standard` with the sign of the kept coordinate flipped.
fn reversed_edge_map() -> SignedPermMap {
    SignedPermMap::from_signed_ints(&[0, -1], 1).expect("valid map")
}

fn add_edge(b: &mut ComplexBuilder, id: &str, tail: &str, head: &str) -> Result<()> {
    b.add_cube(id, 1)?;
    b.set_facet(id, 0, Sign::Minus, tail, vertex_map())?;
    b.set_facet(id, 0, Sign::Plus, head, vertex_map())
}

/// Square with `[left, right, bottom, top]` facets, all standard.
fn add_square(b: &mut ComplexBuilder, id: &str, sides: [&str; 4]) -> Result<()> {
    b.add_cube(id, 2)?;
    b.set_standard_facets(id, 0, sides[0], sides[1])?;
    b.set_standard_facets(id, 1, sides[2], sides[3])
}

/// A path of `k` edges.
pub fn path(k: usize) -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    for i in 0..=k {
        b.add_cube(format!("v{i}"), 0)?;
    }
    for i in 0..k {
        add_edge(&mut b, &format!("e{i}"), &format!("v{i}"), &format!("v{}", i + 1))?;
    }
    b.build()
}

/// Rose with `n` petals and a stem of `stem` edges hanging off the base.
pub fn rose_with_stem(n: usize, stem: usize) -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    b.add_cube("s0", 0)?;
    for i in 0..n {
        add_edge(&mut b, &format!("a{i}"), "s0", "s0")?;
    }
    for i in 0..stem {
        b.add_cube(format!("s{}", i + 1), 0)?;
        add_edge(&mut b, &format!("t{i}"), &format!("s{i}"), &format!("s{}", i + 1))?;
    }
    b.build()
}

/// Two squares on the same four edges: the link at each corner has a
/// doubled edge.
pub fn doubled_page() -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    for v in ["p", "q", "r", "s"] {
        b.add_cube(v, 0)?;
    }
    add_edge(&mut b, "bottom", "p", "q")?;
    add_edge(&mut b, "top", "s", "r")?;
    add_edge(&mut b, "left", "p", "s")?;
    add_edge(&mut b, "right", "q", "r")?;
    add_square(&mut b, "page0", ["left", "right", "bottom", "top"])?;
    add_square(&mut b, "page1", ["left", "right", "bottom", "top"])?;
    b.build()
}

/// The Salvetti complex of a triangle with its 3-cube removed: the link
/// of the vertex has an empty triangle.
pub fn hollow_triangle_salvetti() -> Result<CubeComplex> {
    let g = SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])?;
    let full = salvetti(&g);
    let mut b = ComplexBuilder::new();
    let keep: Vec<usize> = (0..full.len()).filter(|c| full.dim(*c) < 3).collect();
    for &c in &keep {
        b.add_cube(full.id(c), full.dim(c))?;
    }
    for &c in &keep {
        for (i, s, f) in full.cube(c).facets() {
            b.set_facet(full.id(c), i, s, full.id(f.target), f.map.clone())?;
        }
    }
    b.build()
}

/// One square with two opposite corners identified; its two hyperplanes
/// cross in the square and osculate at the shared corner.
pub fn interosculating_square() -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    for v in ["p", "q", "r"] {
        b.add_cube(v, 0)?;
    }
    add_edge(&mut b, "bottom", "p", "r")?;
    add_edge(&mut b, "right", "r", "p")?;
    add_edge(&mut b, "top", "q", "p")?;
    add_edge(&mut b, "left", "p", "q")?;
    add_square(&mut b, "sq", ["left", "right", "bottom", "top"])?;
    b.build()
}

/// One square whose bottom edge is a loop; the hyperplane dual to the
/// vertical edges directly self-osculates at the loop's vertex.
pub fn self_osculating_square() -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    for v in ["p", "q", "r"] {
        b.add_cube(v, 0)?;
    }
    add_edge(&mut b, "bottom", "p", "p")?;
    add_edge(&mut b, "top", "q", "r")?;
    add_edge(&mut b, "left", "p", "q")?;
    add_edge(&mut b, "right", "p", "r")?;
    add_square(&mut b, "sq", ["left", "right", "bottom", "top"])?;
    b.build()
}

/// A square with its left and right sides glued with a flip.
pub fn mobius_square() -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    for v in ["a", "b"] {
        b.add_cube(v, 0)?;
    }
    add_edge(&mut b, "side", "a", "b")?;
    add_edge(&mut b, "bottom", "a", "b")?;
    add_edge(&mut b, "top", "b", "a")?;
    b.add_cube("sq", 2)?;
    b.set_facet("sq", 0, Sign::Minus, "side", SignedPermMap::facet_standard(2, 0))?;
    b.set_facet("sq", 0, Sign::Plus, "side", reversed_edge_map())?;
    b.set_standard_facets("sq", 1, "bottom", "top")?;
    b.build()
}

/// `product(interval, interval)` with one facet map's sign flipped, which
/// breaks codimension-2 consistency at that side.
pub fn codim2_inconsistent() -> Result<CubeComplex> {
    let x = product(&Preset::Interval.build()?, &Preset::Interval.build()?)?;
    let mut b = x.to_builder();
    let sq = x.cubes_of_dim(2).next().expect("one square");
    let f = x.facet(sq, 0, Sign::Minus);
    b.set_facet(x.id(sq), 0, Sign::Minus, x.id(f.target), reversed_edge_map())?;
    b.build()
}

/// Square with a facet retargeted to a vertex.
pub fn dimension_mismatch() -> Result<CubeComplex> {
    let x = product(&Preset::Interval.build()?, &Preset::Interval.build()?)?;
    let mut b = x.to_builder();
    let sq = x.cubes_of_dim(2).next().expect("one square");
    let v = x.vertices()[0];
    b.set_facet(x.id(sq), 1, Sign::Plus, x.id(v), SignedPermMap::facet_standard(2, 1))?;
    b.build()
}

/// Vertex names used for enumerated graphs.
const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// One graph from each isomorphism class on `n` vertices, named
/// `a, b, ...`, ordered by edge count then canonical code.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<SimplicialGraph> {
    assert!(n <= NAMES.len(), "graph enumeration is limited to {} vertices", NAMES.len());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen: BTreeSet<(usize, u32)> = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canonical = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &(a, b))| {
                        let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                        1u32 << pairs.iter().position(|q| *q == (x, y)).expect("pair")
                    })
                    .sum::<u32>()
            })
            .min()
            .expect("at least the identity");
        seen.insert((canonical.count_ones() as usize, canonical));
    }
    seen.into_iter()
        .map(|(_, code)| {
            let edges: Vec<(&str, &str)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, &(a, b))| (NAMES[a], NAMES[b]))
                .collect();
            SimplicialGraph::new(&NAMES[..n], &edges).expect("valid graph")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|p| (0..n).filter(|c| !p.contains(c)).map(move |c| {
                let mut q = p.clone();
                q.push(c);
                q
            }))
            .collect();
    }
    out
}

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> SimplicialGraph {
    let edges: Vec<(&str, &str)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (NAMES[a], NAMES[b])))
        .collect();
    SimplicialGraph::new(&NAMES[..n], &edges).expect("valid graph")
}

/// Collections of at most `max_size` distinct, pairwise compatible
/// partitions (including the empty collection), as partition indices.
pub fn admissible_collections(g: &SimplicialGraph, partitions: &[WhiteheadPartition], max_size: usize) -> Vec<Vec<usize>> {
    let n = partitions.len();
    let mut ok = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = compatibility(g, &partitions[i], &partitions[j]).expect("same graph");
            ok[i][j] = c != Compatibility::Incompatible;
            ok[j][i] = ok[i][j];
        }
    }
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for c in &frontier {
            let start = c.last().map_or(0, |l| l + 1);
            for i in start..n {
                if c.iter().all(|j| ok[*j][i]) {
                    let mut d = c.clone();
                    d.push(i);
                    next.push(d);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A blow-up named by its graph and partition indices.
pub struct BlowupCase {
    pub name: String,
    pub graph: SimplicialGraph,
    pub partitions: Vec<WhiteheadPartition>,
}

fn graph_label(g: &SimplicialGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(a, b)| format!("{}{}", g.name(*a), g.name(*b))).collect();
    format!("{}[{}]", g.names().join(""), edges.join(","))
}

/// Every blow-up over graphs with at most `max_vertices` vertices along
/// nonempty admissible collections of at most `max_size` partitions.
pub fn blowup_cases(max_vertices: usize, max_size: usize) -> Vec<BlowupCase> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for g in graphs_up_to_isomorphism(n) {
            let parts = enumerate_partitions(&g);
            for coll in admissible_collections(&g, &parts, max_size).into_iter().skip(1) {
                let ids: Vec<String> = coll.iter().map(|i| format!("P{i}")).collect();
                out.push(BlowupCase {
                    name: format!("blowup {} {}", graph_label(&g), ids.join(",")),
                    partitions: coll.iter().map(|i| parts[*i].clone()).collect(),
                    graph: g.clone(),
                });
            }
        }
    }
    out
}

/// Connected special complexes: presets, products, Salvetti complexes of
/// every graph on at most three vertices, and every blow-up over those
/// graphs along at most two partitions.
pub fn special_corpus() -> Result<Vec<(String, CubeComplex)>> {
    let mut out: Vec<(String, CubeComplex)> = Vec::new();
    for expr in [
        "interval", "rose:1", "rose:2", "rose:3", "cycle:1", "cycle:2", "cycle:3", "cycle:4", "torus", "surface:1",
        "surface:2",
    ] {
        out.push((expr.to_string(), Preset::parse(expr)?.build()?));
    }
    let interval = Preset::Interval.build()?;
    let c2 = Preset::Cycle(2).build()?;
    let c3 = Preset::Cycle(3).build()?;
    out.push(("product(interval,interval)".into(), product(&interval, &interval)?));
    out.push(("product(cycle:2,cycle:2)".into(), product(&c2, &c2)?));
    out.push(("product(cycle:3,cycle:2)".into(), product(&c3, &c2)?));
    out.push(("product(cycle:2,interval)".into(), product(&c2, &interval)?));
    out.push(("subdivide(torus)".into(), subdivide(&Preset::Torus.build()?)));
    out.push(("path:3".into(), path(3)?));
    out.push(("strip".into(), product(&path(2)?, &interval)?));
    out.push(("rose:2+stem:2".into(), rose_with_stem(2, 2)?));
    for n in 1..=3 {
        for g in graphs_up_to_isomorphism(n) {
            out.push((format!("salvetti {}", graph_label(&g)), salvetti(&g)));
        }
    }
    for case in blowup_cases(3, 2) {
        out.push((case.name, blowup(&case.graph, &case.partitions)?.complex));
    }
    Ok(out)
}

/// Small complexes with hyperplane or link pathologies.
pub fn pathological_fixtures() -> Result<Vec<(String, CubeComplex)>> {
    Ok(vec![
        ("interosculating square".into(), interosculating_square()?),
        ("self-osculating square".into(), self_osculating_square()?),
        ("mobius square".into(), mobius_square()?),
        ("doubled page".into(), doubled_page()?),
        ("hollow triangle salvetti".into(), hollow_triangle_salvetti()?),
    ])
}
