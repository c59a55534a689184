// SPDX-License-Identifier: Apache-2.0

//! Quantum channels in Kraus form.
//!
//! A channel acts as `ρ ↦ Σ_α K_α ρ K_α†` (operator on the left, adjoint on
//! the right) and is trace-preserving exactly when `Σ_α K_α† K_α = I`.
//! Kraus sets that fail the completeness relation can still be built and
//! applied; their outputs are flagged as non-physical instead of rejected.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{check_unit_interval, Error, Result};
use crate::matrix::{kron, ComplexMatrix, DimList};
use crate::states::DensityMatrix;
use crate::Real;

/// Ordered Kraus operators sharing one `d_out × d_in` shape.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KrausChannel<T: Real> {
    operators: Vec<ComplexMatrix<T>>,
    d_in: usize,
    d_out: usize,
}

impl<T: Real> KrausChannel<T> {
    pub fn new(operators: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let first =
            operators.first().ok_or_else(|| Error::Dimension("a channel needs at least one Kraus operator".into()))?;
        let (d_out, d_in) = (first.rows(), first.cols());
        if let Some(k) = operators.iter().position(|m| m.rows() != d_out || m.cols() != d_in) {
            return Err(Error::Dimension(format!(
                "Kraus operator {k} is {}x{}, expected {d_out}x{d_in}",
                operators[k].rows(),
                operators[k].cols()
            )));
        }
        Ok(Self { operators, d_in, d_out })
    }

    pub fn operators(&self) -> &[ComplexMatrix<T>] {
        &self.operators
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// `Σ K† K`.
    pub fn completeness_sum(&self) -> ComplexMatrix<T> {
        self.operators.iter().fold(ComplexMatrix::zeros(self.d_in, self.d_in), |acc, k| {
            let kk = k.adjoint().matmul(k).expect("shapes agree by construction");
            acc.add(&kk).expect("shapes agree by construction")
        })
    }

    pub fn validate(&self, tol: T) -> CptpReport<T> {
        validate_cptp(self, tol)
    }

    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<ChannelOutput<T>> {
        apply_channel(self, rho)
    }
}

/// Outcome of checking the completeness relation `Σ K†K = I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CptpReport<T: Real> {
    /// Max entrywise |Σ K†K − I|.
    pub completeness_defect: T,
    pub tolerance: T,
    pub is_trace_preserving: bool,
    /// A Kraus-form map is completely positive by construction, so validity
    /// reduces to trace preservation.
    pub is_valid: bool,
}

pub fn validate_cptp<T: Real>(c: &KrausChannel<T>, tol: T) -> CptpReport<T> {
    let defect = c.completeness_sum().max_abs_diff(&ComplexMatrix::identity(c.d_in));
    let ok = defect <= tol;
    CptpReport { completeness_defect: defect, tolerance: tol, is_trace_preserving: ok, is_valid: ok }
}

/// Channel output together with the channel's completeness check.
#[derive(Debug, Clone)]
pub struct ChannelOutput<T: Real> {
    pub state: DensityMatrix<T>,
    pub cptp: CptpReport<T>,
}

impl<T: Real> ChannelOutput<T> {
    /// `false` when the channel failed the completeness relation, in which
    /// case `state` need not be a valid density matrix.
    pub fn is_physical(&self) -> bool {
        self.cptp.is_valid
    }
}

/// `Σ K ρ K†` for every Kraus operator `K` of `c`.
pub fn apply_channel<T: Real>(c: &KrausChannel<T>, rho: &DensityMatrix<T>) -> Result<ChannelOutput<T>> {
    if rho.dim() != c.d_in {
        return Err(Error::Dimension(format!("channel expects input dimension {}, state has {}", c.d_in, rho.dim())));
    }
    let mut out = ComplexMatrix::zeros(c.d_out, c.d_out);
    for k in &c.operators {
        out = out.add(&k.matmul(rho.matrix())?.matmul(&k.adjoint())?)?;
    }
    let dims = if c.d_out == c.d_in { rho.dims().clone() } else { DimList::new(vec![c.d_out])? };
    Ok(ChannelOutput { state: DensityMatrix::unchecked(out, dims)?, cptp: validate_cptp(c, T::CPTP_TOL) })
}

/// `{I_d}`.
pub fn identity_channel<T: Real>(d: usize) -> KrausChannel<T> {
    KrausChannel::new(vec![ComplexMatrix::identity(d)]).expect("single square operator")
}

/// Single-mode photon loss with transmittance `eta` on `{|0⟩, |1⟩}`:
/// `K₀ = √(1−η)|0⟩⟨1|`, `K₁ = |0⟩⟨0| + √η|1⟩⟨1|`.
pub fn loss_channel<T: Real>(eta: T) -> Result<KrausChannel<T>> {
    check_unit_interval("transmittance", eta)?;
    let z = T::zero();
    let jump = ComplexMatrix::from_real(2, 2, &[z, (T::one() - eta).sqrt(), z, z])?;
    let no_jump = ComplexMatrix::diag(&[T::one(), eta.sqrt()]);
    KrausChannel::new(vec![jump, no_jump])
}

/// Qubit depolarizing channel `ρ ↦ (1 − p)ρ + p·I/2`, Kraus set
/// `{√(1−3p/4)·I, √(p/4)·σx, √(p/4)·σy, √(p/4)·σz}`.
pub fn depolarizing_channel<T: Real>(p: T) -> Result<KrausChannel<T>> {
    check_unit_interval("depolarizing probability", p)?;
    let quarter = T::lit(0.25);
    let a = (T::one() - T::lit(3.0) * p * quarter).sqrt();
    let b = (p * quarter).sqrt();
    let [sx, sy, sz] = pauli::<T>();
    KrausChannel::new(vec![ComplexMatrix::identity(2).scale(a), sx.scale(b), sy.scale(b), sz.scale(b)])
}

/// Photon loss acting on one arm of a polarization-encoded photon, on the
/// three-level space `{|vac⟩, |H⟩, |V⟩}`:
///
/// * `K_H = √(1−t)|vac⟩⟨H|`
/// * `K_V = √(1−t)|vac⟩⟨V|`
/// * `K_0 = |vac⟩⟨vac| + √t(|H⟩⟨H| + |V⟩⟨V|)`
///
/// A lost photon takes its polarization with it, so loss in one arm
/// decoheres the partner's polarization.
pub fn polarized_photon_loss_channel<T: Real>(t: T) -> Result<KrausChannel<T>> {
    check_unit_interval("transmittance", t)?;
    let lost = (T::one() - t).sqrt();
    let mut k_h = ComplexMatrix::zeros(3, 3);
    k_h[(0, 1)] = Complex::new(lost, T::zero());
    let mut k_v = ComplexMatrix::zeros(3, 3);
    k_v[(0, 2)] = Complex::new(lost, T::zero());
    let k_0 = ComplexMatrix::diag(&[T::one(), t.sqrt(), t.sqrt()]);
    KrausChannel::new(vec![k_h, k_v, k_0])
}

/// `a ⊗ b`: every pairwise Kronecker product, `a`-index major.
pub fn tensor_channels<T: Real>(a: &KrausChannel<T>, b: &KrausChannel<T>) -> Result<KrausChannel<T>> {
    let mut ops = Vec::with_capacity(a.operators.len() * b.operators.len());
    for ka in &a.operators {
        for kb in &b.operators {
            ops.push(kron(ka, kb)?);
        }
    }
    KrausChannel::new(ops)
}

/// Pauli matrices σx, σy, σz.
pub fn pauli<T: Real>() -> [ComplexMatrix<T>; 3] {
    let o = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    [
        ComplexMatrix::new(2, 2, vec![o, one, one, o]).expect("2x2"),
        ComplexMatrix::new(2, 2, vec![o, -i, i, o]).expect("2x2"),
        ComplexMatrix::new(2, 2, vec![one, o, o, -one]).expect("2x2"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, fock_state, maximally_mixed, BellKind};

    fn diag_state(p: &[f64]) -> DensityMatrix<f64> {
        DensityMatrix::unchecked(ComplexMatrix::diag(p), DimList::new(vec![p.len()]).unwrap()).unwrap()
    }

    #[test]
    fn loss_channel_is_cptp() {
        for eta in [0.0, 0.3, 0.5, 1.0] {
            let r = validate_cptp(&loss_channel(eta).unwrap(), 1e-10);
            assert!(r.is_valid);
            assert!(r.completeness_defect <= 1e-15, "{}", r.completeness_defect);
        }
    }

    #[test]
    fn identity_channel_has_zero_defect() {
        let r = validate_cptp(&identity_channel::<f64>(2), 1e-10);
        assert!(r.is_valid);
        assert_eq!(r.completeness_defect, 0.0);
    }

    #[test]
    fn single_diagonal_operator_is_not_cptp() {
        // M = diag(1−η, η) at η = ½: M†M = diag(¼, ¼).
        let m = KrausChannel::new(vec![ComplexMatrix::<f64>::diag(&[0.5, 0.5])]).unwrap();
        let r = validate_cptp(&m, 1e-10);
        assert!(!r.is_valid && !r.is_trace_preserving);
        assert!((r.completeness_defect - 0.75).abs() < 1e-15);
    }

    #[test]
    fn loss_on_single_photon() {
        let one = fock_state::<f64>(1).unwrap();
        for eta in [0.0, 0.25, 0.6, 1.0] {
            let out = apply_channel(&loss_channel(eta).unwrap(), &one).unwrap();
            assert!(out.is_physical());
            assert!(out.state.matrix().max_abs_diff(&ComplexMatrix::diag(&[1.0 - eta, eta])) < 1e-15);
        }
    }

    #[test]
    fn lossless_limit_is_identity() {
        let c = loss_channel(1.0).unwrap();
        assert_eq!(c.operators()[0], ComplexMatrix::zeros(2, 2));
        assert_eq!(c.operators()[1], ComplexMatrix::identity(2));
        let rho = DensityMatrix::unchecked(
            ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => Complex::new(0.3, 0.0),
                (1, 1) => Complex::new(0.7, 0.0),
                (0, 1) => Complex::new(0.2, 0.1),
                _ => Complex::new(0.2, -0.1),
            }),
            DimList::new(vec![2]).unwrap(),
        )
        .unwrap();
        assert!(apply_channel(&c, &rho).unwrap().state.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn vacuum_is_a_fixed_point_of_loss() {
        let vac = fock_state::<f64>(0).unwrap();
        for eta in [0.0, 0.1, 0.9] {
            let out = apply_channel(&loss_channel(eta).unwrap(), &vac).unwrap();
            assert!(out.state.matrix().max_abs_diff(vac.matrix()) < 1e-15);
        }
    }

    #[test]
    fn complete_loss_empties_the_mode() {
        let rho = diag_state(&[0.2, 0.8]);
        let out = apply_channel(&loss_channel(0.0).unwrap(), &rho).unwrap();
        assert!(out.state.matrix().max_abs_diff(&ComplexMatrix::diag(&[1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(loss_channel(1.5), Err(Error::Usage(_))));
        assert!(matches!(loss_channel(-0.1), Err(Error::Usage(_))));
        assert!(matches!(loss_channel(f64::NAN), Err(Error::Usage(_))));
        assert!(matches!(depolarizing_channel(1.01), Err(Error::Usage(_))));
        assert!(matches!(polarized_photon_loss_channel(-1.0), Err(Error::Usage(_))));
    }

    #[test]
    fn depolarizing_action() {
        let h = diag_state(&[1.0, 0.0]);
        let out = apply_channel(&depolarizing_channel(0.5).unwrap(), &h).unwrap();
        assert!(out.state.matrix().max_abs_diff(&ComplexMatrix::diag(&[0.75, 0.25])) < 1e-15);

        let rho = DensityMatrix::unchecked(
            ComplexMatrix::new(
                2,
                2,
                vec![Complex::new(0.6, 0.0), Complex::new(0.1, 0.3), Complex::new(0.1, -0.3), Complex::new(0.4, 0.0)],
            )
            .unwrap(),
            DimList::new(vec![2]).unwrap(),
        )
        .unwrap();
        let full = apply_channel(&depolarizing_channel(1.0).unwrap(), &rho).unwrap();
        assert!(full.state.matrix().max_abs_diff(maximally_mixed::<f64>(2).matrix()) < 1e-15);
        let none = apply_channel(&depolarizing_channel(0.0).unwrap(), &rho).unwrap();
        assert!(none.state.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn maximally_mixed_is_depolarizing_fixed_point() {
        let mm = maximally_mixed::<f64>(2);
        for p in [0.0, 0.2, 0.7, 1.0] {
            let out = apply_channel(&depolarizing_channel(p).unwrap(), &mm).unwrap();
            assert!(out.state.matrix().max_abs_diff(mm.matrix()) <= 1e-15);
        }
    }

    #[test]
    fn polarized_loss_limits() {
        let c = polarized_photon_loss_channel(1.0).unwrap();
        let h = diag_state(&[0.0, 1.0, 0.0]);
        let out = apply_channel(&c, &h).unwrap();
        assert!(out.state.matrix().max_abs_diff(h.matrix()) < 1e-15);

        let c0 = polarized_photon_loss_channel(0.0).unwrap();
        let out = apply_channel(&c0, &h).unwrap();
        assert!(out.state.matrix().max_abs_diff(&ComplexMatrix::diag(&[1.0, 0.0, 0.0])) < 1e-15);
        assert!(validate_cptp(&polarized_photon_loss_channel(0.37).unwrap(), 1e-15).is_valid);
    }

    #[test]
    fn tensored_loss_on_signal_only() {
        let eta = 0.35;
        let c = tensor_channels(&loss_channel(eta).unwrap(), &identity_channel(2)).unwrap();
        assert_eq!(c.operators().len(), 2);
        let one = fock_state::<f64>(1).unwrap();
        let input = one.tensor(&one).unwrap();
        let out = apply_channel(&c, &input).unwrap();
        let expected = kron(&ComplexMatrix::diag(&[1.0 - eta, eta]), one.matrix()).unwrap();
        assert!(out.state.matrix().max_abs_diff(&expected) < 1e-15);
        assert_eq!(out.state.dims().as_slice(), &[2, 2]);
    }

    #[test]
    fn tensored_identities_act_as_identity() {
        let c = tensor_channels(&identity_channel::<f64>(2), &identity_channel(2)).unwrap();
        let phi = bell_state::<f64>(BellKind::PsiMinus);
        assert!(apply_channel(&c, &phi).unwrap().state.matrix().max_abs_diff(phi.matrix()) == 0.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let phi = bell_state::<f64>(BellKind::PhiPlus);
        assert!(matches!(apply_channel(&loss_channel(0.5).unwrap(), &phi), Err(Error::Dimension(_))));
        let mixed = KrausChannel::new(vec![ComplexMatrix::<f64>::identity(2), ComplexMatrix::identity(3)]);
        assert!(matches!(mixed, Err(Error::Dimension(_))));
        assert!(matches!(KrausChannel::<f64>::new(vec![]), Err(Error::Dimension(_))));
    }

    #[test]
    fn non_cptp_application_is_flagged() {
        let m = KrausChannel::new(vec![ComplexMatrix::<f64>::diag(&[0.5, 0.5])]).unwrap();
        let out = apply_channel(&m, &fock_state(1).unwrap()).unwrap();
        assert!(!out.is_physical());
        assert!((out.state.trace() - 0.25).abs() < 1e-15);
    }
}
