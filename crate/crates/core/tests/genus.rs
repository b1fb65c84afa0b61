mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;

use cubeforge::complex::{product, Preset};
use cubeforge::corpus::{mobius_square, special_corpus};
use cubeforge::genus::{free_quotient, free_reduce, genus_exact, genus_oracle, is_feasible, square_boundary, witness_loops, ORACLE_LIMIT};
use cubeforge::homology::{cocycle, h1, pair};
use cubeforge::hyperplane::{hyperplanes, is_separating};
use cubeforge::raag::salvetti;
use cubeforge::{CubeComplex, Error, Integer, Sign, SimplicialGraph};

fn preset(expr: &str) -> CubeComplex {
    Preset::parse(expr).and_then(|p| p.build()).expect("preset builds")
}

fn path_abc() -> CubeComplex {
    salvetti(&SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap())
}

#[test]
fn rose_genus_is_its_petal_count() {
    for n in 1..=5 {
        let x = preset(&format!("rose:{n}"));
        assert_eq!(genus_oracle(&x).unwrap(), n);
        assert_eq!(genus_exact(&x).unwrap().genus, n);
    }
}

#[test]
fn contractible_square_has_genus_zero() {
    let x = preset("product(interval,interval)");
    assert_eq!(genus_oracle(&x).unwrap(), 0);
    let r = genus_exact(&x).unwrap();
    assert_eq!(r.genus, 0);
    assert!(r.witness.is_empty() && r.witness_loops.is_empty());
}

#[test]
fn path_salvetti_genus_and_witness() {
    let x = path_abc();
    assert_eq!(genus_oracle(&x).unwrap(), 2);
    let r = genus_exact(&x).unwrap();
    assert_eq!(r.witness, vec![0, 2]);
    assert_eq!(common::genus_brute_force(&x), 2);
}

#[test]
fn torus_witness_is_one_loop() {
    let x = preset("torus");
    let r = genus_exact(&x).unwrap();
    assert_eq!((r.genus, r.witness.clone()), (1, vec![0]));
    let e = hyperplanes(&x).get(0).unwrap().dual_edges[0];
    assert_eq!(r.witness_loops, vec![vec![(e, true)]]);
}

#[test]
fn surface_genus() {
    for g in 1..=3 {
        let x = preset(&format!("surface:{g}"));
        assert_eq!(genus_exact(&x).unwrap().genus, g);
        assert_eq!(common::genus_brute_force(&x), g);
    }
}

#[test]
fn cycles_have_genus_one() {
    for k in 1..=6 {
        let x = preset(&format!("cycle:{k}"));
        assert_eq!(genus_oracle(&x).unwrap(), 1);
        assert_eq!(genus_exact(&x).unwrap().genus, 1);
    }
}

#[test]
fn oracle_limits_and_preconditions() {
    let big = preset(&format!("rose:{}", ORACLE_LIMIT + 1));
    assert_eq!(genus_oracle(&big), Err(Error::TooManyHyperplanes(ORACLE_LIMIT + 1)));
    assert_eq!(genus_exact(&big).unwrap().genus, ORACLE_LIMIT + 1);
    let mut b = preset("interval").to_builder();
    b.add_cube("stray", 0).unwrap();
    assert_eq!(genus_exact(&b.build().unwrap()).err(), Some(Error::DisconnectedInput));
    assert!(matches!(genus_exact(&mobius_square().unwrap()), Err(Error::OneSidedHyperplane(_))));
}

#[test]
fn crossing_witness_is_infeasible() {
    let x = preset("torus");
    assert!(!is_feasible(&x, &[0, 1]).unwrap());
    assert!(matches!(witness_loops(&x, &[0, 1]), Err(Error::InfeasibleWitness(_))));
    assert!(matches!(free_quotient(&x, &[0, 1]), Err(Error::InfeasibleWitness(_))));
}

#[test]
fn free_reduction_cancels_inverse_pairs() {
    let word = [(0, Sign::Plus), (1, Sign::Plus), (1, Sign::Minus), (0, Sign::Minus), (2, Sign::Plus)];
    assert_eq!(free_reduce(&word), vec![(2, Sign::Plus)]);
}

#[test]
fn free_quotients() {
    let rose = preset("rose:2");
    let q = free_quotient(&rose, &[0, 1]).unwrap();
    for (i, (e, label)) in q.labels.iter().enumerate() {
        assert_eq!(*e, rose.edges()[i]);
        assert_eq!(label.map(|l| l.0), Some(i));
    }
    let x = path_abc();
    let q = free_quotient(&x, &[0, 2]).unwrap();
    assert_eq!(q.loop_words, vec![vec![(0, Sign::Plus)], vec![(1, Sign::Plus)]]);
    // Squares read trivially, so the labelling factors through the free group.
    for sq in x.cubes_of_dim(2) {
        assert!(q.read(&square_boundary(&x, sq)).is_empty());
    }
    let t = preset("torus");
    assert_eq!(free_quotient(&t, &[0]).unwrap().loop_words, vec![vec![(0, Sign::Plus)]]);
}

#[test]
fn corpus_genus_agrees_with_brute_force_and_homology() {
    for (name, x) in special_corpus().unwrap() {
        if hyperplanes(&x).len() > 14 {
            continue;
        }
        let r = genus_exact(&x).unwrap();
        assert_eq!(r.genus, common::genus_brute_force(&x), "{name}");
        let s = h1::<Integer>(&x).unwrap();
        assert!(r.genus <= s.betti1, "{name}");
        let acyclic = s.betti1 == 0 && s.torsion.is_empty();
        let all_separating = (0..hyperplanes(&x).len()).all(|h| is_separating(&x, h).unwrap());
        assert_eq!(r.genus == 0, acyclic, "{name}");
        assert_eq!(acyclic, all_separating, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_matches_the_oracles(x in common::small_complex()) {
        prop_assume!(hyperplanes(&x).len() <= 12);
        let g = genus_exact(&x).unwrap().genus;
        prop_assert_eq!(g, genus_oracle(&x).unwrap());
        prop_assert_eq!(g, common::genus_brute_force(&x));
        prop_assert!(g <= h1::<Integer>(&x).unwrap().betti1);
    }

    #[test]
    fn witnesses_are_hereditary_and_dual_to_their_loops(x in common::small_complex(), pick in any::<u32>()) {
        let r = genus_exact(&x).unwrap();
        let subset: Vec<usize> = r.witness.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, h)| *h).collect();
        prop_assert!(is_feasible(&x, &subset).unwrap());
        let s = h1::<Integer>(&x).unwrap();
        for (i, &h) in r.witness.iter().enumerate() {
            let phi = cocycle::<Integer>(&x, h).unwrap();
            for (j, l) in r.witness_loops.iter().enumerate() {
                let value = pair(&x, &phi, &s.chain_of_path(l)).unwrap();
                let expected = if i == j { value.is_one() } else { value.is_zero() };
                prop_assert!(expected);
            }
        }
        let q = free_quotient(&x, &r.witness).unwrap();
        for (i, l) in r.witness_loops.iter().enumerate() {
            prop_assert_eq!(q.read(l), vec![(i, Sign::Plus)]);
        }
        for sq in x.cubes_of_dim(2) {
            prop_assert!(q.read(&square_boundary(&x, sq)).is_empty());
        }
    }
}

#[test]
fn products_of_cycles_have_genus_one() {
    let x = product(&preset("cycle:3"), &preset("cycle:2")).unwrap();
    assert_eq!(genus_exact(&x).unwrap().genus, 1);
}
