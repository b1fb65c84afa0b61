mod common;

use proptest::prelude::*;

use cubeforge::autos::isomorphism;
use cubeforge::complex::{npc_check, CubeImage, CubicalMap, Preset};
use cubeforge::corpus::{complete_graph, interosculating_square, pathological_fixtures, special_corpus};
use cubeforge::homology::h1;
use cubeforge::hyperplane::{hyperplanes, specialness};
use cubeforge::raag::{
    canonical_salvetti_map, covering_check, dominates, equivalent, inclusion_by_id, local_isometry_check, salvetti,
    star, LinkViolation,
};
use cubeforge::{CubeComplex, Integer, SignedPermMap, SimplicialGraph};

fn preset(expr: &str) -> CubeComplex {
    Preset::parse(expr).and_then(|p| p.build()).expect("preset builds")
}

fn graph(names: &[&str], edges: &[(&str, &str)]) -> SimplicialGraph {
    SimplicialGraph::new(names, edges).unwrap()
}

fn isomorphic(a: &CubeComplex, b: &CubeComplex) -> bool {
    isomorphism(a, b).unwrap().is_some()
}

/// Every cube of `source` sent to the unique cube of its dimension in
/// `target`, with edge signs chosen so that the map commutes with facets.
fn fold_onto_one_loop(source: &CubeComplex, target: &CubeComplex) -> Option<CubicalMap> {
    let edges = source.edges();
    for mask in 0u32..(1 << edges.len()) {
        let images = (0..source.len())
            .map(|c| {
                let dim = source.dim(c);
                let cube = target.cubes_of_dim(dim).next().unwrap();
                let map = match edges.iter().position(|e| *e == c) {
                    Some(i) if mask >> i & 1 == 1 => SignedPermMap::from_signed_ints(&[-1], 1).unwrap(),
                    _ => SignedPermMap::identity(dim),
                };
                CubeImage { cube, map }
            })
            .collect();
        let f = CubicalMap { images };
        if f.check(source, target).is_ok() {
            return Some(f);
        }
    }
    None
}

#[test]
fn salvetti_of_small_graphs() {
    let single = salvetti(&graph(&["a"], &[]));
    assert!(isomorphic(&single, &preset("rose:1")));
    let edge = salvetti(&graph(&["a", "b"], &[("a", "b")]));
    assert!(isomorphic(&edge, &preset("torus")));
    let triangle = salvetti(&complete_graph(3));
    assert_eq!(triangle.counts(), vec![1, 3, 3, 1]);
    assert_eq!(h1::<Integer>(&triangle).unwrap().betti1, 3);
}

#[test]
fn canonical_maps_of_presets() {
    let t = preset("torus");
    let m = canonical_salvetti_map(&t).unwrap();
    assert!(m.graph.is_complete() && m.graph.len() == 2);
    assert!(m.map.is_bijective(&m.salvetti));

    let r = preset("rose:2");
    let m = canonical_salvetti_map(&r).unwrap();
    assert!(m.graph.edges().is_empty());
    assert!(m.map.is_bijective(&m.salvetti));

    let c = preset("cycle:2");
    let m = canonical_salvetti_map(&c).unwrap();
    assert_eq!(m.salvetti.counts(), vec![1, 2]);
    let hs = hyperplanes(&c);
    for e in c.edges() {
        let (image, _) = m.map.edge_action(e);
        assert_eq!(m.salvetti.id(image), format!("[{}]", hs.vertex_name(hs.dual_to(e))));
    }
}

#[test]
fn local_isometry_examples() {
    for expr in ["torus", "rose:1"] {
        let x = preset(expr);
        let m = canonical_salvetti_map(&x).unwrap();
        assert!(local_isometry_check(&x, &m.salvetti, &m.map).passes(), "{expr}");
    }
    let x = interosculating_square().unwrap();
    let m = canonical_salvetti_map(&x).unwrap();
    let report = local_isometry_check(&x, &m.salvetti, &m.map);
    assert!(report.violations.iter().any(|v| matches!(v, LinkViolation::NotFull { .. })));
    let osculating = &specialness(&x).interosculating[0].vertex;
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, LinkViolation::NotFull { vertex, .. } if vertex == osculating)));
}

#[test]
fn coverings() {
    let s = preset("surface:2");
    assert!(covering_check(&s, &s, &CubicalMap::identity(&s)));
    let c2 = preset("cycle:2");
    let r1 = preset("rose:1");
    let fold = fold_onto_one_loop(&c2, &r1).expect("the digon folds onto a loop");
    assert!(covering_check(&c2, &r1, &fold));
    let inclusion = inclusion_by_id(&r1, &preset("rose:2")).unwrap();
    assert!(local_isometry_check(&r1, &preset("rose:2"), &inclusion).passes());
    assert!(!covering_check(&r1, &preset("rose:2"), &inclusion));
}

#[test]
fn dominance_on_a_path() {
    let g = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
    let (a, b, c) = (0, 1, 2);
    assert_eq!(star(&g, b).len(), 3);
    // lk(a) = {b} lies in st(c) and st(b).
    assert!(dominates(&g, c, a) && dominates(&g, b, a));
    assert!(!dominates(&g, a, b));
    assert!(equivalent(&g, a, c));
    assert!(!equivalent(&g, a, b));
}

#[test]
fn special_iff_local_isometry_on_corpus_and_fixtures() {
    let all = special_corpus().unwrap().into_iter().chain(pathological_fixtures().unwrap());
    for (name, x) in all {
        let hs = hyperplanes(&x);
        if hs.iter().any(|h| !h.two_sided || h.self_intersecting) {
            continue;
        }
        let m = canonical_salvetti_map(&x).unwrap();
        assert_eq!(
            specialness(&x).is_special(),
            local_isometry_check(&x, &m.salvetti, &m.map).passes(),
            "{name}"
        );
    }
}

fn random_graph() -> impl Strategy<Value = SimplicialGraph> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| *p).collect();
            let names = (0..n).map(|v| format!("v{v}")).collect();
            SimplicialGraph::from_indices(names, &edges)
        })
    })
}

/// Cliques of each size, counted over vertex subsets.
fn clique_counts(g: &SimplicialGraph) -> Vec<usize> {
    let n = g.len();
    let mut counts = vec![0; n + 1];
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if members.iter().all(|a| members.iter().all(|b| a == b || g.adjacent(*a, *b))) {
            counts[members.len()] += 1;
        }
    }
    while counts.len() > 1 && counts[counts.len() - 1] == 0 {
        counts.pop();
    }
    counts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn salvetti_cubes_are_cliques(g in random_graph()) {
        let x = salvetti(&g);
        prop_assert_eq!(x.counts(), clique_counts(&g));
        prop_assert!(npc_check(&x).passes());
        prop_assert!(specialness(&x).is_special());
        let s = h1::<Integer>(&x).unwrap();
        prop_assert_eq!(s.betti1, g.len());
        prop_assert!(s.torsion.is_empty());
        prop_assert_eq!(common::euler(&x.counts()), x.euler_characteristic());
    }

    #[test]
    fn salvetti_maps_to_itself_isomorphically(g in random_graph()) {
        let x = salvetti(&g);
        let m = canonical_salvetti_map(&x).unwrap();
        prop_assert!(covering_check(&x, &m.salvetti, &m.map));
        prop_assert!(m.map.is_bijective(&m.salvetti));
        prop_assert_eq!(m.graph.edges(), g.edges());
    }

    #[test]
    fn dominance_is_a_preorder(g in random_graph()) {
        let n = g.len();
        for u in 0..n {
            prop_assert!(dominates(&g, u, u));
            for v in 0..n {
                for w in 0..n {
                    if dominates(&g, v, u) && dominates(&g, w, v) {
                        prop_assert!(dominates(&g, w, u));
                    }
                }
                prop_assert_eq!(equivalent(&g, u, v), equivalent(&g, v, u));
            }
        }
    }

    #[test]
    fn canonical_maps_of_special_complexes_are_local_isometries(x in common::small_complex()) {
        let m = canonical_salvetti_map(&x).unwrap();
        prop_assert!(m.map.check(&x, &m.salvetti).is_ok());
        prop_assert!(local_isometry_check(&x, &m.salvetti, &m.map).passes());
    }
}

