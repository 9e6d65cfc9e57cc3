//! Randomized properties of the kernels and the walk.

use proptest::prelude::*;
use qw2d::fourier::{build_u_kxi, build_u_kxi_diag};
use qw2d::ito::{check_prop2_local, plane_wave, Axis};
use qw2d::linalg::{adjoint, frobenius_distance, is_unitary, mat_mul, tensor_product, CMat};
use qw2d::paths::{weight_1d, PathPair};
use qw2d::position::{distribution, evolve, init_state};
use qw2d::{build_walk_operators, coin_random, Qubit4, C64};

fn mat2() -> impl Strategy<Value = CMat> {
    prop::collection::vec(-2.0f64..2.0, 8).prop_map(|v| {
        let e: Vec<C64> = v.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
        CMat::from_row_major(&e).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixed_product(a in mat2(), b in mat2(), c in mat2(), d in mat2()) {
        let left = mat_mul(&tensor_product(&a, &b).unwrap(), &tensor_product(&c, &d).unwrap()).unwrap();
        let right = tensor_product(&mat_mul(&a, &c).unwrap(), &mat_mul(&b, &d).unwrap()).unwrap();
        prop_assert!(frobenius_distance(&left, &right).unwrap() < 1e-12);
    }

    #[test]
    fn adjoint_reverses_products(a in mat2(), b in mat2()) {
        let left = adjoint(&mat_mul(&a, &b).unwrap());
        let right = mat_mul(&adjoint(&b), &adjoint(&a)).unwrap();
        prop_assert!(frobenius_distance(&left, &right).unwrap() < 1e-13);
    }

    #[test]
    fn seeded_coins_are_unitary(seed in any::<u64>()) {
        let coin = coin_random(seed);
        prop_assert!(is_unitary(&coin.matrix(), 1e-12));
        prop_assert!(coin.constraint_violation() < 1e-12);
    }

    #[test]
    fn momentum_operator_two_ways(seed in any::<u64>(), xi in -4.0f64..4.0, eta in -4.0f64..4.0) {
        let coin = coin_random(seed);
        let a = build_u_kxi(&coin, xi, eta);
        prop_assert!(frobenius_distance(&a, &build_u_kxi_diag(&coin, xi, eta)).unwrap() < 1e-14);
        prop_assert!(is_unitary(&a, 1e-12));
    }

    #[test]
    fn walk_conserves_probability(seed in any::<u64>(), state_seed in any::<u64>(), n in 0usize..25) {
        let ops = build_walk_operators(&coin_random(seed));
        let dist = distribution(&evolve(&init_state(&Qubit4::random(state_seed)), &ops, n));
        prop_assert!((dist.total() - 1.0).abs() < 1e-12);
        // Sites reachable at time n have x + y of the same parity as n.
        prop_assert!(dist.probs.keys().all(|&(x, y)| (x + y - n as i64).rem_euclid(2) == 0));
    }

    #[test]
    fn path_weights_sum_to_power(seed in any::<u64>(), n in 0usize..9) {
        let coin = coin_random(seed);
        let mut total = CMat::zeros(qw2d::linalg::Dim::Two);
        for k in 0..1u64 << n {
            let path = qw2d::paths::path_from_index(n, k).unwrap();
            total += weight_1d(&coin, &path);
        }
        let power = qw2d::linalg::mat_power(&coin.matrix(), n as u32);
        prop_assert!(frobenius_distance(&total, &power).unwrap() < 1e-12);
    }

    #[test]
    fn ito_step_holds_for_plane_waves(
        xi in -3.5f64..3.5, eta in -3.5f64..3.5,
        k in 0u64..64, kp in 0u64..32, m in 0usize..6, mp in 0usize..5, second in any::<bool>(),
    ) {
        let pair = PathPair::from_indices(6, k, 5, kp).unwrap();
        let axis = if second { Axis::Second } else { Axis::First };
        let r = check_prop2_local(&plane_wave("pw", xi, eta), &pair, m, mp, axis).unwrap();
        prop_assert!(r.residual < 1e-12);
    }
}
