mod common;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use cubeforge::autos::automorphisms;
use cubeforge::complex::{product, CubicalMap, Preset};
use cubeforge::corpus::special_corpus;
use cubeforge::homology::{betti_numbers, boundary_matrix, cocycle, h1, induced_h1_map, pair, smith_normal_form};
use cubeforge::hyperplane::{hyperplanes, is_separating};
use cubeforge::{CubeComplex, Error, IntMatrix, Integer, SmallIntMatrix};

fn preset(expr: &str) -> CubeComplex {
    Preset::parse(expr).and_then(|p| p.build()).expect("preset builds")
}

fn int(v: i64) -> Integer {
    Integer::from(v)
}

fn entries(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| i64::try_from(v).unwrap()).collect())
        .collect()
}

#[test]
fn interval_boundary_is_a_single_signed_column() {
    let d1 = boundary_matrix::<Integer>(&preset("interval"), 1);
    assert_eq!((d1.rows(), d1.cols()), (2, 1));
    let mut col: Vec<i64> = entries(&d1).into_iter().map(|r| r[0]).collect();
    col.sort();
    assert_eq!(col, vec![-1, 1]);
}

#[test]
fn torus_boundaries_vanish() {
    let t = preset("torus");
    assert!(boundary_matrix::<Integer>(&t, 1).is_zero());
    assert!(boundary_matrix::<Integer>(&t, 2).is_zero());
}

#[test]
fn solid_square_boundary() {
    let sq = product(&preset("interval"), &preset("interval")).unwrap();
    let d2 = boundary_matrix::<Integer>(&sq, 2);
    let col: Vec<i64> = entries(&d2).into_iter().map(|r| r[0]).collect();
    assert_eq!(col.iter().filter(|v| v.abs() == 1).count(), 4);
    assert!(boundary_matrix::<Integer>(&sq, 1).mul(&d2).is_zero());
}

#[test]
fn smith_normal_form_examples() {
    let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(smith_normal_form(&m).invariant_factors(), vec![int(2), int(4)]);

    let zero = IntMatrix::zeros(3, 2);
    let snf = smith_normal_form(&zero);
    assert!(snf.s.is_zero() && snf.u.is_identity() && snf.v.is_identity());
    assert_eq!(snf.rank, 0);

    let id = IntMatrix::identity(3);
    assert!(smith_normal_form(&id).s.is_identity());
}

#[test]
fn small_scalar_agrees_with_big_integers() {
    let rows = vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]];
    let small = smith_normal_form(&SmallIntMatrix::from_rows(&rows)).invariant_factors();
    let big = smith_normal_form(&IntMatrix::from_rows(&rows)).invariant_factors();
    let small: Vec<Integer> = small.into_iter().map(Integer::from).collect();
    assert_eq!(small, big);
}

#[test]
fn first_homology_of_presets() {
    for n in 1..=4 {
        let s = h1::<Integer>(&preset(&format!("rose:{n}"))).unwrap();
        assert_eq!(s.betti1, n);
        assert!(s.torsion.is_empty());
    }
    let t = h1::<Integer>(&preset("torus")).unwrap();
    assert_eq!((t.betti1, t.torsion.len()), (2, 0));
    let s2 = h1::<Integer>(&preset("surface:2")).unwrap();
    assert_eq!((s2.betti1, s2.torsion.len()), (4, 0));
}

#[test]
fn disconnected_complexes_have_no_h1_summary() {
    let mut b = preset("interval").to_builder();
    b.add_cube("stray", 0).unwrap();
    assert_eq!(h1::<Integer>(&b.build().unwrap()), Err(Error::DisconnectedInput));
}

#[test]
fn torus_cocycle_and_pairing() {
    let t = preset("torus");
    let s = h1::<Integer>(&t).unwrap();
    let hs = hyperplanes(&t);
    let a = t.edges()[0];
    let b = t.edges()[1];
    let ha = hs.dual_to(a);
    let phi = cocycle::<Integer>(&t, ha).unwrap();
    let pos_a = s.edges.iter().position(|e| *e == a).unwrap();
    let pos_b = s.edges.iter().position(|e| *e == b).unwrap();
    assert!(phi[pos_a].is_one());
    assert!(phi[pos_b].is_zero());
    let loop_a = s.chain_of_path(&[(a, true)]);
    let loop_b = s.chain_of_path(&[(b, true)]);
    assert!(pair(&t, &phi, &loop_a).unwrap().is_one());
    assert!(pair(&t, &phi, &loop_b).unwrap().is_zero());
}

#[test]
fn cycle_cocycle_has_a_single_unit_weight() {
    let c = preset("cycle:2");
    for h in 0..2 {
        let phi = cocycle::<Integer>(&c, h).unwrap();
        assert_eq!(phi.iter().filter(|w| w.abs().is_one()).count(), 1);
        assert_eq!(phi.iter().filter(|w| w.is_zero()).count(), 1);
    }
}

#[test]
fn pairing_rejects_non_cycles() {
    let x = preset("interval");
    let s = h1::<Integer>(&x).unwrap();
    let phi = cocycle::<Integer>(&x, 0).unwrap();
    let open = s.chain_of_path(&[(x.edges()[0], true)]);
    assert_eq!(pair(&x, &phi, &open), Err(Error::NotACycle));
}

#[test]
fn cocycles_vanish_on_square_boundaries() {
    for (name, x) in special_corpus().unwrap() {
        if x.cubes_of_dim(2).next().is_none() {
            continue;
        }
        let d2 = boundary_matrix::<Integer>(&x, 2);
        for h in 0..hyperplanes(&x).len() {
            let phi = cocycle::<Integer>(&x, h).unwrap();
            for j in 0..d2.cols() {
                assert!(pair(&x, &phi, &d2.column(j)).unwrap().is_zero(), "{name} / {h}");
            }
        }
    }
}

#[test]
fn separating_cocycles_pair_trivially_with_cycles() {
    for (name, x) in special_corpus().unwrap() {
        let s = h1::<Integer>(&x).unwrap();
        for h in 0..hyperplanes(&x).len() {
            if !is_separating(&x, h).unwrap() {
                continue;
            }
            let phi = cocycle::<Integer>(&x, h).unwrap();
            for z in &s.cycle_basis {
                assert!(pair(&x, &phi, z).unwrap().is_zero(), "{name} / {h}");
            }
        }
    }
}

#[test]
fn identity_acts_as_the_identity_matrix() {
    let x = preset("surface:2");
    let s = h1::<Integer>(&x).unwrap();
    assert!(induced_h1_map(&x, &CubicalMap::identity(&x), &s).unwrap().is_identity());
}

#[test]
fn torus_symmetries_act_as_signed_permutation_matrices() {
    let t = preset("torus");
    let s = h1::<Integer>(&t).unwrap();
    let found: BTreeSet<Vec<Vec<i64>>> = automorphisms(&t)
        .unwrap()
        .iter()
        .map(|f| entries(&induced_h1_map(&t, f, &s).unwrap()))
        .collect();
    // Every signed 2x2 permutation matrix, including the swap and -I.
    let mut expected = BTreeSet::new();
    for a in [-1, 1] {
        for b in [-1, 1] {
            expected.insert(vec![vec![a, 0], vec![0, b]]);
            expected.insert(vec![vec![0, a], vec![b, 0]]);
        }
    }
    assert!(expected.contains(&vec![vec![0, 1], vec![1, 0]]));
    assert!(expected.contains(&vec![vec![-1, 0], vec![0, -1]]));
    assert_eq!(found, expected);
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_normal_form_reconstructs(rows in small_matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
        prop_assert!(snf.u.mul(&snf.u_inv).is_identity());
        prop_assert!(snf.v.mul(&snf.v_inv).is_identity());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        prop_assert_eq!(snf.rank, common::rational_rank(&rows));
        let d = snf.invariant_factors();
        prop_assert!(d.iter().all(|v| v.is_positive()));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn square_determinant_is_the_product_of_invariant_factors(rows in (1usize..=5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), n))) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        let product: Integer = if snf.rank == rows.len() {
            snf.invariant_factors().iter().product()
        } else {
            Integer::zero()
        };
        prop_assert_eq!(m.determinant().abs(), product);
    }

    #[test]
    fn boundary_squares_to_zero_and_betti_numbers_sum_to_euler(x in common::small_complex()) {
        for k in 2..=x.dimension() {
            prop_assert!(boundary_matrix::<Integer>(&x, k - 1).mul(&boundary_matrix::<Integer>(&x, k)).is_zero());
        }
        let b = betti_numbers::<Integer>(&x);
        let alternating: i64 = b.iter().enumerate().map(|(k, v)| if k % 2 == 0 { *v as i64 } else { -(*v as i64) }).sum();
        prop_assert_eq!(alternating, x.euler_characteristic());
        prop_assert_eq!(b[0], 1);
        if x.dimension() >= 1 {
            prop_assert_eq!(b[1], h1::<Integer>(&x).unwrap().betti1);
        }
    }

    #[test]
    fn automorphisms_act_unimodularly(x in common::small_complex()) {
        prop_assume!(x.len() <= 40);
        let s = h1::<Integer>(&x).unwrap();
        for f in automorphisms(&x).unwrap().iter().take(16) {
            let m = induced_h1_map(&x, f, &s).unwrap();
            if s.betti1 > 0 {
                prop_assert!(m.determinant().abs().is_one());
            }
        }
    }
}
