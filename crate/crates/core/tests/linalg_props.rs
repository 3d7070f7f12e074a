mod common;

use common::minor_gcd;
use congruence_core::linalg::{hnf, kernel_basis, saturate, snf, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(m, n)| prop::collection::vec(prop::collection::vec(-bound..=bound, n), m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_invariants(rows in matrix_strategy(5, 20)) {
        let a = IntMatrix::from_i64(&rows);
        let s = snf(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        let d = s.invariant_factors();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!(w[0].is_positive());
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let mut prod = BigInt::one();
        for k in 1..=rows.len().min(rows[0].len()) {
            let expected = if k <= s.rank {
                prod *= &d[k - 1];
                prod.clone()
            } else {
                BigInt::zero()
            };
            prop_assert_eq!(BigInt::from(minor_gcd(&rows, k)), expected);
        }
    }

    #[test]
    fn hermite_form_is_canonical(rows in matrix_strategy(4, 9), ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8)) {
        let a = IntMatrix::from_i64(&rows);
        let m = a.rows();
        // random unimodular left factor from elementary row operations
        let mut u = IntMatrix::identity(m);
        for (i, j, c) in ops {
            let (i, j) = (i % m, j % m);
            if i != j {
                let mut e = IntMatrix::identity(m);
                e[(i, j)] = BigInt::from(c);
                u = &e * &u;
            }
        }
        let h1 = hnf(&a);
        let h2 = hnf(&(&u * &a));
        prop_assert_eq!(h1.basis(), h2.basis());
        prop_assert_eq!(&h1.t * &a, h1.h.clone());
        prop_assert!(h1.t.det().unwrap().abs().is_one());
    }

    #[test]
    fn left_kernel_is_saturated(rows in matrix_strategy(5, 6)) {
        let a = IntMatrix::from_i64(&rows);
        let k = kernel_basis(&a);
        let rank = snf(&a).rank;
        prop_assert_eq!(k.rows(), a.rows() - rank);
        if k.rows() > 0 {
            prop_assert!((&k * &a).is_zero());
            prop_assert!(snf(&k).invariant_factors().iter().all(|d| d.is_one()));
        }
    }

    #[test]
    fn saturation_contains_and_is_primitive(rows in matrix_strategy(3, 12)) {
        let b = IntMatrix::from_i64(&rows);
        if snf(&b).rank == b.rows() {
            let s = saturate(&b).unwrap();
            prop_assert_eq!(s.rows(), b.rows());
            prop_assert!(snf(&s).invariant_factors().iter().all(|d| d.is_one()));
            // every row of b is an integral combination of s
            let joined = s.vstack(&b).unwrap();
            prop_assert_eq!(hnf(&joined).basis(), hnf(&s).basis());
        }
    }
}

#[test]
fn saturating_a_scaled_lattice() {
    let b = IntMatrix::from_i64(&[[2, 2], [0, 4]]);
    assert_eq!(saturate(&b).unwrap(), IntMatrix::identity(2));
    let c = IntMatrix::from_i64(&[[2, 4, 6]]);
    assert_eq!(saturate(&c).unwrap(), IntMatrix::from_i64(&[[1, 2, 3]]));
}
