mod common;

use proptest::prelude::*;

use cubeforge::complex::{
    all_face_patterns, all_sign_vectors, npc_check, parse, serialize, product, subdivide, validate, vertex_link, NpcViolation,
    Preset, ValidationEntry,
};
use cubeforge::corpus::{codim2_inconsistent, dimension_mismatch, doubled_page, hollow_triangle_salvetti};
use cubeforge::homology::h1;
use cubeforge::{CubeComplex, Error, Integer, Sign};

fn preset(expr: &str) -> CubeComplex {
    Preset::parse(expr).and_then(|p| p.build()).expect("preset builds")
}

fn link_edges(x: &CubeComplex, v: usize) -> usize {
    vertex_link(x, v).simplices.iter().filter(|s| s.ends.len() == 2).count()
}

#[test]
fn rose_has_an_empty_validation_report() {
    assert!(validate(&preset("rose:2")).is_valid());
}

#[test]
fn retargeted_facet_is_a_dimension_mismatch() {
    let report = validate(&dimension_mismatch().unwrap());
    assert!(report
        .entries
        .iter()
        .any(|e| matches!(e, ValidationEntry::DimensionMismatch { .. })));
}

#[test]
fn flipped_facet_sign_breaks_codim2_consistency() {
    let report = validate(&codim2_inconsistent().unwrap());
    let entry = report
        .entries
        .iter()
        .find(|e| matches!(e, ValidationEntry::Codim2Inconsistent { .. }))
        .expect("consistency entry");
    let ValidationEntry::Codim2Inconsistent { first, second, .. } = entry else { unreachable!() };
    assert_ne!(first.0, second.0, "the entry names two distinct coordinates");
}

#[test]
fn interval_endpoint_links_are_single_points() {
    let x = preset("interval");
    for v in x.vertices() {
        let link = vertex_link(&x, v);
        assert_eq!(link.vertices.len(), 1);
        assert_eq!(link_edges(&x, v), 0);
    }
}

#[test]
fn torus_link_is_a_four_cycle() {
    let x = preset("torus");
    let v = x.vertices()[0];
    let link = vertex_link(&x, v);
    assert_eq!(link.vertices.len(), 4);
    assert_eq!(link_edges(&x, v), 4);
    let adj = link.adjacency();
    assert!(adj.values().all(|n| n.len() == 2));
}

#[test]
fn rose_link_is_discrete() {
    let x = preset("rose:2");
    let v = x.vertices()[0];
    assert_eq!(vertex_link(&x, v).vertices.len(), 4);
    assert_eq!(link_edges(&x, v), 0);
}

#[test]
fn torus_is_nonpositively_curved() {
    assert!(npc_check(&preset("torus")).passes());
}

#[test]
fn doubled_page_has_a_multi_edge_link() {
    let report = npc_check(&doubled_page().unwrap());
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, NpcViolation::DuplicateSimplex { .. })));
}

#[test]
fn hollow_triangle_salvetti_has_an_empty_link_triangle() {
    let report = npc_check(&hollow_triangle_salvetti().unwrap());
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, NpcViolation::MissingSimplex { clique, .. } if clique.len() == 3)));
}

#[test]
fn preset_cell_counts() {
    assert_eq!(preset("interval").counts(), vec![2, 1]);
    assert_eq!(preset("rose:3").counts(), vec![1, 3]);
    assert_eq!(preset("cycle:4").counts(), vec![4, 4]);
    assert_eq!(preset("torus").counts(), vec![1, 2, 1]);
    assert_eq!(preset("product(interval,interval)").counts(), vec![4, 4, 1]);
    assert_eq!(h1::<Integer>(&preset("rose:3")).unwrap().betti1, 3);
}

#[test]
fn surfaces_have_the_right_euler_characteristic() {
    for g in 1..=3usize {
        let x = preset(&format!("surface:{g}"));
        assert_eq!(x.euler_characteristic(), 2 - 2 * g as i64, "surface:{g}");
        assert!(validate(&x).is_valid());
        assert!(npc_check(&x).passes());
    }
}

#[test]
fn surface_two_cell_counts_are_pinned() {
    // Polygon-quotient model; see the README for why the coned octagon is
    // not used.
    assert_eq!(preset("surface:2").counts(), vec![8, 20, 10]);
}

#[test]
fn bad_preset_names_are_rejected() {
    assert!(matches!(Preset::parse("klein"), Err(Error::UnknownPreset(_))));
    assert!(Preset::parse("rose:x").is_err());
}

#[test]
fn subdivision_counts() {
    assert_eq!(subdivide(&preset("interval")).counts(), vec![3, 2]);
    assert_eq!(subdivide(&preset("product(interval,interval)")).counts(), vec![9, 12, 4]);
    let t = subdivide(&preset("torus"));
    assert_eq!(t.counts(), vec![4, 8, 4]);
    assert_eq!(h1::<Integer>(&t).unwrap().betti1, 2);
}

#[test]
fn serialized_interval_has_three_records() {
    let text = serialize(&preset("interval"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["cubes"].as_array().unwrap().len(), 3);
}

#[test]
fn surface_round_trips_through_the_text_format() {
    let x = preset("surface:2");
    assert_eq!(parse(&serialize(&x)).unwrap(), x);
}

#[test]
fn out_of_range_facet_coordinate_is_a_parse_error() {
    let text = r#"{"cubes": [
        {"id": "v", "dim": 0},
        {"id": "e", "dim": 1, "facets": [
            {"coord": 1, "sign": -1, "target": "v", "map": [0]},
            {"coord": 1, "sign": 1, "target": "v", "map": [0]}]},
        {"id": "s", "dim": 2, "facets": [
            {"coord": 3, "sign": 1, "target": "e", "map": [1, 0]}]}
    ]}"#;
    assert!(matches!(parse(text), Err(Error::Parse { .. })));
}

#[test]
fn unknown_targets_are_named() {
    let text = r#"{"cubes": [
        {"id": "e", "dim": 1, "facets": [
            {"coord": 1, "sign": -1, "target": "nowhere", "map": [0]}]}
    ]}"#;
    assert_eq!(parse(text), Err(Error::UnknownTargetId("nowhere".into())));
}

#[test]
fn malformed_json_reports_a_position() {
    match parse("{\"cubes\": [") {
        Err(Error::Parse { line, .. }) => assert!(line >= 1),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn corners_do_not_depend_on_descent_order(x in common::small_complex()) {
        for c in 0..x.len() {
            let n = x.dim(c);
            for signs in all_sign_vectors(n) {
                let direct = x.corner(c, &signs);
                // Fix any subset of coordinates first, then resolve the
                // rest of the corner inside the resulting face.
                for subset in 0..(1u32 << n) {
                    let pattern: Vec<Option<Sign>> = (0..n)
                        .map(|j| (subset >> j & 1 == 1).then_some(signs[j]))
                        .collect();
                    let (face, map) = x.face(c, &pattern);
                    let mut rest = vec![Sign::Plus; x.dim(face)];
                    for (j, sign) in signs.iter().enumerate() {
                        if let Some(img) = map.image(j) {
                            rest[img.coord] = *sign * img.sign;
                        }
                    }
                    prop_assert_eq!(x.corner(face, &rest), direct);
                }
            }
            for pattern in all_face_patterns(n) {
                prop_assert!(x.try_face(c, &pattern).is_some());
            }
        }
    }

    #[test]
    fn subdivision_preserves_curvature_and_euler_characteristic(x in common::small_complex()) {
        let s = subdivide(&x);
        prop_assert!(validate(&s).is_valid());
        prop_assert!(npc_check(&x).passes());
        prop_assert!(npc_check(&s).passes());
        prop_assert_eq!(s.euler_characteristic(), x.euler_characteristic());
        prop_assert_eq!(common::euler(&s.counts()), s.euler_characteristic());
    }

    #[test]
    fn euler_characteristic_is_multiplicative(a in common::small_complex(), b in common::small_complex()) {
        prop_assume!(a.len() * b.len() < 400);
        let p = product(&a, &b).unwrap();
        prop_assert!(validate(&p).is_valid());
        prop_assert_eq!(p.euler_characteristic(), a.euler_characteristic() * b.euler_characteristic());
    }

    #[test]
    fn text_format_round_trips(x in common::small_complex()) {
        prop_assert_eq!(parse(&serialize(&x)).unwrap(), x);
    }
}
