//! Library routines against the brute-force reference implementations.

#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use edss::metrics::{negative_eigenvalues, negativity, Bipartition};
use edss::tensor::{eig_hermitian, kron, spectrum, ComplexOperator, C64};
use proptest::prelude::*;

fn herm_from(entries: &[f64], d: usize) -> Mat {
    let mut m: Mat = vec![vec![C64::new(0.0, 0.0); d]; d];
    let mut k = 0;
    for i in 0..d {
        m[i][i] = C64::new(entries[k], 0.0);
        k += 1;
        for j in i + 1..d {
            m[i][j] = C64::new(entries[k], entries[k + 1]);
            m[j][i] = m[i][j].conj();
            k += 2;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reference_eigensolvers_agree(entries in proptest::collection::vec(-1.0f64..1.0, 64)) {
        let m = herm_from(&entries, 8);
        let j = jacobi_values(&m);
        let b = bisection_values(&m);
        for (x, y) in j.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn spectrum_matches_reference(entries in proptest::collection::vec(-1.0f64..1.0, 64)) {
        let m = herm_from(&entries, 8);
        let lib = spectrum(&from_mat(&m)).unwrap();
        let lib_full = eig_hermitian(&from_mat(&m)).unwrap().values;
        let roots = bisection_values(&m);
        for ((a, b), c) in lib.iter().zip(&lib_full).zip(&roots) {
            prop_assert!((a - c).abs() < 1e-9 && (b - c).abs() < 1e-9);
        }
    }

    #[test]
    fn kron_matches_index_formula(
        a in proptest::collection::vec(-1.0f64..1.0, 8),
        b in proptest::collection::vec(-1.0f64..1.0, 8),
    ) {
        let to = |v: &[f64]| -> Mat {
            (0..2).map(|i| (0..2).map(|j| C64::new(v[2 * (2 * i + j)], v[2 * (2 * i + j) + 1])).collect()).collect()
        };
        let (ma, mb) = (to(&a), to(&b));
        let lib = to_mat(&kron(&from_mat(&ma), &from_mat(&mb)).unwrap());
        for i in 0..2 { for j in 0..2 { for k in 0..2 { for l in 0..2 {
            prop_assert_eq!(lib[2 * i + k][2 * j + l], ma[i][j] * mb[k][l]);
        }}}}
        prop_assert!(max_diff(&lib, &oracle_kron(&ma, &mb)) == 0.0);
    }

    #[test]
    fn partial_transpose_matches_reference((rho, side) in arb_state_and_side(4)) {
        let n = rho.register().len();
        let lib = to_mat(&rho.partial_transpose(&masked_labels(&rho, &side)).unwrap());
        let reference = oracle_partial_transpose(&to_mat(rho.op()), n, &side);
        prop_assert!(max_diff(&lib, &reference) == 0.0);
    }

    #[test]
    fn partial_trace_matches_reference((rho, keep) in arb_state_and_side(4)) {
        let n = rho.register().len();
        let lib = rho.partial_trace(&masked_labels(&rho, &keep)).unwrap();
        let reference = oracle_partial_trace(&to_mat(rho.op()), n, &keep);
        prop_assert!(max_diff(&to_mat(lib.op()), &reference) < 1e-14);
    }

    #[test]
    fn negativity_matches_reference((rho, side) in arb_state_and_side(4)) {
        let n = rho.register().len();
        let cut = Bipartition::new(rho.register(), &masked_labels(&rho, &side)).unwrap();
        let pt = oracle_partial_transpose(&to_mat(rho.op()), n, &side);
        let values = jacobi_values(&pt);
        let reference_neg: f64 = (values.iter().map(|v| v.abs()).sum::<f64>() - 1.0) / 2.0;
        prop_assert!((negativity(&rho, &cut).unwrap() - reference_neg.max(0.0)).abs() < 1e-12);
        let lib_list = negative_eigenvalues(&rho, &cut).unwrap();
        prop_assert!(lists_match(&lib_list, &negatives(&values, 1e-10), 1e-12));
    }
}

#[test]
fn bell_partial_trace_is_maximally_mixed() {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    let bell = to_mat(&ComplexOperator::outer(&[h, z, z, h]));
    let reduced = oracle_partial_trace(&bell, 2, &[true, false]);
    assert!(max_diff(&reduced, &to_mat(&ComplexOperator::identity(2).scaled(0.5))) < 1e-15);
}

#[test]
fn jacobi_vectors_diagonalize() {
    let entries: Vec<f64> = (0..64).map(|k| ((k * 37 % 17) as f64 - 8.0) / 9.0).collect();
    let m = herm_from(&entries, 8);
    let (values, v) = jacobi_eigen(&m);
    let d = mat_mul(&adjoint(&v), &mat_mul(&m, &v));
    for i in 0..8 {
        for j in 0..8 {
            let expected = if i == j { values[i] } else { 0.0 };
            assert!((d[i][j] - C64::new(expected, 0.0)).norm() < 1e-10);
        }
    }
}
