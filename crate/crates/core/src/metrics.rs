// SPDX-License-Identifier: Apache-2.0

//! Scalar diagnostics: purity, von Neumann entropy, maximal CHSH value.

use num_complex::Complex;
use serde::Serialize;

use crate::channels::pauli;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues, kron, ComplexMatrix};
use crate::states::DensityMatrix;
use crate::Real;

/// `Tr ρ²`.
pub fn purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    let m = rho.matrix();
    let n = m.rows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + (m.get(i, j) * m.get(j, i)).re;
        }
    }
    acc
}

/// Eigenvalues of a density matrix, ascending. Diagonal matrices are read
/// off directly, which lifts the eigensolver's dimension cap for them.
pub fn spectrum<T: Real>(rho: &DensityMatrix<T>) -> Result<Vec<T>> {
    let m = rho.matrix();
    let n = m.rows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j).norm() == T::zero()));
    if diagonal {
        let mut ev: Vec<T> = (0..n).map(|i| m.get(i, i).re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
        Ok(ev)
    } else {
        hermitian_eigenvalues(m)
    }
}

/// `−Σ λ log₂ λ` in bits. Eigenvalues below the scalar's floor count as zero.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(entropy_bits(&spectrum(rho)?))
}

pub(crate) fn entropy_bits<T: Real>(eigenvalues: &[T]) -> T {
    eigenvalues.iter().filter(|&&l| l > T::EIGEN_FLOOR).map(|&l| -l * l.log2()).sum::<T>().max(T::zero())
}

/// `t[i][j] = Tr[ρ (σ_i ⊗ σ_j)]` for `i, j ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationTensor<T: Real> {
    pub t: [[T; 3]; 3],
}

impl<T: Real> CorrelationTensor<T> {
    /// `TᵀT`.
    pub fn gram(&self) -> [[T; 3]; 3] {
        let mut g = [[T::zero(); 3]; 3];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, g_ij) in row.iter_mut().enumerate() {
                *g_ij = (0..3).map(|k| self.t[k][i] * self.t[k][j]).sum();
            }
        }
        g
    }
}

fn require_two_qubits<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.dims().as_slice() != [2, 2] {
        return Err(Error::Dimension(format!(
            "expected a two-qubit state with factors [2, 2], got {:?}",
            rho.dims().as_slice()
        )));
    }
    Ok(())
}

pub fn correlation_tensor<T: Real>(rho: &DensityMatrix<T>) -> Result<CorrelationTensor<T>> {
    require_two_qubits(rho)?;
    let sigma = pauli::<T>();
    let mut t = [[T::zero(); 3]; 3];
    for (i, si) in sigma.iter().enumerate() {
        for (j, sj) in sigma.iter().enumerate() {
            let op = kron(si, sj)?;
            t[i][j] = rho.matrix().matmul(&op)?.trace().re;
        }
    }
    Ok(CorrelationTensor { t })
}

/// Maximal CHSH value over all measurement settings, `2√(m₁ + m₂)` with
/// `m₁ ≥ m₂` the two largest eigenvalues of `TᵀT`.
///
/// Only meaningful for unit-trace input; callers holding an unnormalized
/// state should normalize first or weight the result themselves.
pub fn chsh_max<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let g = correlation_tensor(rho)?.gram();
    let gm = ComplexMatrix::from_fn(3, 3, |i, j| Complex::new(g[i][j], T::zero()));
    let ev = hermitian_eigenvalues(&gm)?;
    let top_two = (ev[1] + ev[2]).max(T::zero());
    Ok(T::lit(2.0) * top_two.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DimList;
    use crate::states::{bell_state, maximally_mixed, maximally_mixed_pair, werner_state, BellKind};

    fn diag(p: &[f64]) -> DensityMatrix<f64> {
        DensityMatrix::unchecked(ComplexMatrix::diag(p), DimList::new(vec![p.len()]).unwrap()).unwrap()
    }

    #[test]
    fn purity_values() {
        assert!((purity(&bell_state::<f64>(BellKind::PhiPlus)) - 1.0).abs() < 1e-15);
        assert!((purity(&maximally_mixed::<f64>(2)) - 0.5).abs() < 1e-15);
        // q = ½ gives q² + (1 − q)² = ½.
        assert!((purity(&diag(&[0.5, 0.5])) - 0.5).abs() < 1e-15);
        let q: f64 = 0.3;
        assert!((purity(&diag(&[1.0 - q, q])) - (q * q + (1.0 - q) * (1.0 - q))).abs() < 1e-15);
    }

    #[test]
    fn entropy_values() {
        assert!(von_neumann_entropy(&bell_state::<f64>(BellKind::PsiPlus)).unwrap().abs() < 1e-10);
        assert!((von_neumann_entropy(&maximally_mixed::<f64>(2)).unwrap() - 1.0).abs() < 1e-15);
        let h = -0.75 * 0.75f64.log2() - 0.25 * 0.25f64.log2();
        let s = von_neumann_entropy(&diag(&[0.75, 0.25])).unwrap();
        assert!((s - h).abs() < 1e-15);
        assert!((s - 0.8113).abs() < 1e-4);
    }

    #[test]
    fn entropy_ignores_round_off_negatives() {
        assert_eq!(von_neumann_entropy(&diag(&[1.0, -1e-17])).unwrap(), 0.0);
    }

    #[test]
    fn chsh_values() {
        let s = chsh_max(&bell_state::<f64>(BellKind::PhiPlus)).unwrap();
        assert!((s - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(chsh_max(&maximally_mixed_pair::<f64>()).unwrap().abs() < 1e-12);
        for w in [0.0, 0.3, 0.75, 0.9, 1.0] {
            let s = chsh_max(&werner_state::<f64>(w).unwrap()).unwrap();
            assert!((s - 2.0 * 2f64.sqrt() * w).abs() < 1e-12, "w = {w}: {s}");
        }
    }

    #[test]
    fn phi_plus_correlation_tensor() {
        let t = correlation_tensor(&bell_state::<f64>(BellKind::PhiPlus)).unwrap().t;
        let expected = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((t[i][j] - expected[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn chsh_rejects_non_two_qubit_input() {
        assert!(matches!(chsh_max(&maximally_mixed::<f64>(4)), Err(Error::Dimension(_))));
        assert!(matches!(chsh_max(&maximally_mixed::<f64>(2)), Err(Error::Dimension(_))));
    }

    #[test]
    fn single_precision_chsh() {
        let s = chsh_max(&bell_state::<f32>(BellKind::PhiMinus)).unwrap();
        assert!((s - 2.0 * 2f32.sqrt()).abs() < 1e-5);
    }
}
