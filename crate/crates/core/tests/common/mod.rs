// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use photonloss_core::{Complex, ComplexMatrix, DensityMatrix, DimList};
use proptest::prelude::*;

pub type C = Complex<f64>;

pub fn complex_entries(n: usize) -> impl Strategy<Value = Vec<C>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C::new(re, im)), n)
}

/// Random full-rank-ish density matrix `G G† / Tr(G G†)`.
pub fn density(dims: Vec<usize>) -> impl Strategy<Value = DensityMatrix<f64>> {
    let n: usize = dims.iter().product();
    complex_entries(n * n).prop_map(move |g| {
        let g = ComplexMatrix::new(n, n, g).unwrap();
        let m = g.matmul(&g.adjoint()).unwrap();
        let tr = m.trace().re.max(1e-12);
        DensityMatrix::unchecked(m.scale(1.0 / tr), DimList::new(dims.clone()).unwrap()).unwrap()
    })
}

/// Random Hermitian matrix with entries in the unit box.
pub fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix<f64>> {
    complex_entries(n * n).prop_map(move |g| {
        let g = ComplexMatrix::new(n, n, g).unwrap();
        g.add(&g.adjoint()).unwrap().scale(0.5)
    })
}

/// `U(θ, φ, λ)`, a generic single-qubit unitary.
pub fn qubit_unitary(theta: f64, phi: f64, lambda: f64) -> ComplexMatrix<f64> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::new(
        2,
        2,
        vec![C::new(c, 0.0), -C::from_polar(s, lambda), C::from_polar(s, phi), C::from_polar(c, phi + lambda)],
    )
    .unwrap()
}

pub fn angles() -> impl Strategy<Value = (f64, f64, f64)> {
    let tau = std::f64::consts::TAU;
    (0.0..tau, 0.0..tau, 0.0..tau)
}

pub fn conjugate(u: &ComplexMatrix<f64>, rho: &DensityMatrix<f64>) -> DensityMatrix<f64> {
    let m = u.matmul(rho.matrix()).unwrap().matmul(&u.adjoint()).unwrap();
    DensityMatrix::unchecked(m, rho.dims().clone()).unwrap()
}

pub fn diag_state(p: &[f64]) -> DensityMatrix<f64> {
    DensityMatrix::unchecked(ComplexMatrix::diag(p), DimList::new(vec![p.len()]).unwrap()).unwrap()
}
