// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{angles, conjugate, density, diag_state, qubit_unitary};
use photonloss_core::lossmodels::{fock_decay_state, lambda_coeff, FiberParams};
use photonloss_core::matrix::{hermitian_eigenvalues, kron};
use photonloss_core::metrics::{chsh_max, purity, von_neumann_entropy};
use photonloss_core::states::{bell_state, composite_state, BellKind};
use photonloss_core::BellKind as Kind;
use proptest::prelude::*;

#[test]
fn every_bell_state_reduces_to_maximally_mixed() {
    let half = diag_state(&[0.5, 0.5]);
    for kind in Kind::ALL {
        let rho = bell_state::<f64>(kind);
        for keep in [0, 1] {
            let r = rho.reduce(&[keep]).unwrap();
            assert!(r.matrix().max_abs_diff(half.matrix()) <= 1e-15, "{kind} keep {keep}");
        }
    }
}

#[test]
fn density_json_layout() {
    let v = serde_json::to_value(bell_state::<f64>(BellKind::PhiPlus)).unwrap();
    assert_eq!(v["dims"], serde_json::json!([2, 2]));
    assert_eq!(v["re"].as_array().unwrap().len(), 4);
    assert!((v["re"][0][3].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(v["im"][0][3], 0.0);
}

proptest! {
    #[test]
    fn composite_purity_is_multiplicative(pol in density(vec![2, 2]), fs in density(vec![2]), fi in density(vec![2])) {
        let c = composite_state(&pol, &fs, &fi).unwrap();
        prop_assert!((purity(&c) - purity(&pol) * purity(&fs) * purity(&fi)).abs() <= 1e-12);
    }

    #[test]
    fn purity_matches_eigenvalue_route(rho in density(vec![2, 2])) {
        let ev = hermitian_eigenvalues(rho.matrix()).unwrap();
        let by_eigen: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((purity(&rho) - by_eigen).abs() <= 1e-10);
        prop_assert!(purity(&rho) >= 0.25 - 1e-12 && purity(&rho) <= 1.0 + 1e-10);
    }

    #[test]
    fn entropy_is_additive(a in density(vec![2]), b in density(vec![3])) {
        let ab = a.tensor(&b).unwrap();
        let s = von_neumann_entropy(&ab).unwrap();
        let sa = von_neumann_entropy(&a).unwrap();
        let sb = von_neumann_entropy(&b).unwrap();
        prop_assert!((s - sa - sb).abs() <= 1e-8);
        prop_assert!(s <= 6f64.log2() + 1e-9);
    }

    #[test]
    fn chsh_is_local_unitary_invariant(rho in density(vec![2, 2]), ua in angles(), ub in angles()) {
        let u = kron(&qubit_unitary(ua.0, ua.1, ua.2), &qubit_unitary(ub.0, ub.1, ub.2)).unwrap();
        let rotated = conjugate(&u, &rho);
        let before = chsh_max(&rho).unwrap();
        let after = chsh_max(&rotated).unwrap();
        prop_assert!((before - after).abs() <= 1e-8);
        prop_assert!(before <= 2.0 * 2f64.sqrt() + 1e-9);
    }

    #[test]
    fn product_states_never_violate(a in density(vec![2]), b in density(vec![2])) {
        prop_assert!(chsh_max(&a.tensor(&b).unwrap()).unwrap() <= 2.0 + 1e-12);
    }

    #[test]
    fn chsh_of_rotated_bell_states_is_maximal(kind in prop::sample::select(BellKind::ALL.to_vec()), ua in angles()) {
        let u = kron(&qubit_unitary(ua.0, ua.1, ua.2), &qubit_unitary(0.0, 0.0, 0.0)).unwrap();
        let s = chsh_max(&conjugate(&u, &bell_state(kind))).unwrap();
        prop_assert!((s - 2.0 * 2f64.sqrt()).abs() <= 1e-9);
    }
}

#[test]
fn fock_decay_purity_and_entropy_extrema_coincide() {
    // N = 1: purity q² + (1−q)² bottoms out and entropy peaks at q = ½.
    let alpha = 0.2;
    let lambda = lambda_coeff(alpha).unwrap();
    let l_star = std::f64::consts::LN_2 / lambda;
    let step = 0.01;
    let grid: Vec<f64> = (0..=((3.0 * l_star) / step) as usize).map(|k| k as f64 * step).collect();
    let mut purities = Vec::new();
    let mut entropies = Vec::new();
    for &l in &grid {
        let rho = fock_decay_state(&FiberParams::new(alpha, l, 1).unwrap());
        purities.push(purity(&rho));
        entropies.push(von_neumann_entropy(&rho).unwrap());
    }
    let argmin = (0..grid.len()).min_by(|&a, &b| purities[a].partial_cmp(&purities[b]).unwrap()).unwrap();
    let argmax = (0..grid.len()).max_by(|&a, &b| entropies[a].partial_cmp(&entropies[b]).unwrap()).unwrap();
    assert!((grid[argmin] - grid[argmax]).abs() <= step);
    assert!((grid[argmin] - l_star).abs() <= step);
    assert!((purities[argmin] - 0.5).abs() < 1e-8);
    assert!((entropies[argmax] - 1.0).abs() < 1e-8);
    // Decreasing then increasing purity; rising then falling entropy.
    assert!(purities[..=argmin].windows(2).all(|w| w[1] <= w[0] + 1e-15));
    assert!(purities[argmin..].windows(2).all(|w| w[1] >= w[0] - 1e-15));
    assert!(entropies[..=argmax].windows(2).all(|w| w[1] >= w[0] - 1e-15));
    assert!(entropies[argmax..].windows(2).all(|w| w[1] <= w[0] + 1e-15));
}
