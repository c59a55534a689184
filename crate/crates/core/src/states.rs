// SPDX-License-Identifier: Apache-2.0

//! Density matrices and the states the simulations start from.
//!
//! Basis conventions shared by the whole crate:
//!
//! * polarization qubit: index 0 is `|H⟩`, index 1 is `|V⟩`;
//! * Fock qubit: index 0 is `|0⟩`, index 1 is `|1⟩`;
//! * single-arm photon with vacuum: `{|vac⟩, |H⟩, |V⟩}` at indices 0, 1, 2;
//! * multi-factor states list the signal (arm A) factor before the idler
//!   (arm B), and polarization factors before Fock factors.

use std::fmt;

use num_complex::Complex;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{self, kron, ComplexMatrix, DimList};
use crate::Real;

/// A square matrix tagged with its tensor factorization.
///
/// Values built through [`validate_density`] or the constructors in this
/// module satisfy the density-matrix invariants. [`DensityMatrix::unchecked`]
/// exists so unphysical outputs (e.g. trace-leaking maps) can still be
/// carried around and inspected; call [`DensityMatrix::validate`] to find out
/// which invariants such a value breaks.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    dims: DimList,
}

impl<T: Real> DensityMatrix<T> {
    /// Wraps a matrix after checking only its shape against `dims`.
    pub fn unchecked(matrix: ComplexMatrix<T>, dims: DimList) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if dims.total() != matrix.rows() {
            return Err(Error::Dimension(format!(
                "factor dimensions {:?} do not multiply to {}",
                dims.as_slice(),
                matrix.rows()
            )));
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dims(&self) -> &DimList {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Real part of the trace.
    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// Checks every density-matrix invariant, returning the violations found.
    pub fn validate(&self) -> ViolationReport {
        check_invariants(&self.matrix, &self.dims)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Tensor product `self ⊗ other`, factor lists concatenated.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self { matrix: kron(&self.matrix, &other.matrix)?, dims: self.dims.concat(&other.dims) })
    }

    /// Reduced state on the factors in `keep`. The trace is carried over
    /// unchanged, so an unnormalized input gives an unnormalized result.
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let matrix = matrix::partial_trace(&self.matrix, &self.dims, keep)?;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let dims = DimList::new(kept.iter().map(|&k| self.dims.as_slice()[k]).collect())?;
        Ok(Self { matrix, dims })
    }

    /// Rescales to unit trace.
    pub fn normalized(&self) -> Result<Self> {
        let tr = self.trace();
        if tr.abs() <= T::epsilon() {
            return Err(Error::UndefinedConditional(format!("cannot normalize a state with trace {tr:e}")));
        }
        Ok(Self { matrix: self.matrix.scale(T::one() / tr), dims: self.dims.clone() })
    }

    /// Convex-style combination `a·self + b·other` on identical factor lists.
    /// The result is only a valid state when the weights make it one.
    pub fn mix(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::Dimension(format!(
                "cannot mix states with factors {:?} and {:?}",
                self.dims.as_slice(),
                other.dims.as_slice()
            )));
        }
        Ok(Self { matrix: self.matrix.scale(a).add(&other.matrix.scale(b))?, dims: self.dims.clone() })
    }
}

impl<T: Real> fmt::Debug for DensityMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityMatrix").field("dims", &self.dims.as_slice()).field("matrix", &self.matrix).finish()
    }
}

/// Serialized as `{"dims": [...], "re": [[...]], "im": [[...]]}`.
impl<T: Real> Serialize for DensityMatrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DensityMatrix", 3)?;
        s.serialize_field("dims", &self.dims)?;
        s.serialize_field("re", &self.matrix.real_rows())?;
        s.serialize_field("im", &self.matrix.imag_rows())?;
        s.end()
    }
}

/// One broken density-matrix invariant with its measured size.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotSquare {
        rows: usize,
        cols: usize,
    },
    DimsMismatch {
        dims: Vec<usize>,
        dim: usize,
    },
    NonFinite,
    NonHermitian {
        defect: f64,
    },
    Trace {
        trace: f64,
        defect: f64,
    },
    NegativeEigenvalue {
        min_eigenvalue: f64,
    },
    /// Positivity could not be checked (non-diagonal and above the eigensolver cap).
    PositivityUnchecked {
        dim: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { rows, cols } => write!(f, "not square ({rows}x{cols})"),
            Violation::DimsMismatch { dims, dim } => {
                write!(f, "factor dimensions {dims:?} do not multiply to {dim}")
            }
            Violation::NonFinite => write!(f, "non-finite entries"),
            Violation::NonHermitian { defect } => write!(f, "not Hermitian: max |m - m^dagger| = {defect:e}"),
            Violation::Trace { trace, defect } => write!(f, "trace = {trace} (off by {defect:e})"),
            Violation::NegativeEigenvalue { min_eigenvalue } => {
                write!(f, "not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")
            }
            Violation::PositivityUnchecked { dim } => {
                write!(f, "positivity not checked for non-diagonal dimension {dim}")
            }
        }
    }
}

/// Every invariant a candidate density matrix fails; empty when valid.
#[derive(Debug, Clone, Default, PartialEq, serde::Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// The measured trace if the trace invariant was violated.
    pub fn trace(&self) -> Option<f64> {
        self.violations.iter().find_map(|v| match v {
            Violation::Trace { trace, .. } => Some(*trace),
            _ => None,
        })
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid density matrix");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_invariants<T: Real>(m: &ComplexMatrix<T>, dims: &DimList) -> ViolationReport {
    let mut violations = Vec::new();
    if !m.is_square() {
        violations.push(Violation::NotSquare { rows: m.rows(), cols: m.cols() });
        return ViolationReport { violations };
    }
    let n = m.rows();
    if dims.total() != n {
        violations.push(Violation::DimsMismatch { dims: dims.as_slice().to_vec(), dim: n });
    }
    if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        violations.push(Violation::NonFinite);
        return ViolationReport { violations };
    }

    let herm = m.hermiticity_defect();
    let hermitian = herm <= T::HERMITIAN_TOL;
    if !hermitian {
        violations.push(Violation::NonHermitian { defect: herm.as_f64() });
    }

    let trace = m.trace().re;
    let trace_defect = (trace - T::one()).abs();
    if trace_defect > T::TRACE_TOL {
        violations.push(Violation::Trace { trace: trace.as_f64(), defect: trace_defect.as_f64() });
    }

    if hermitian {
        match min_eigenvalue(m) {
            Some(min) if min < -T::PSD_TOL => {
                violations.push(Violation::NegativeEigenvalue { min_eigenvalue: min.as_f64() })
            }
            Some(_) => {}
            None => violations.push(Violation::PositivityUnchecked { dim: n }),
        }
    }
    ViolationReport { violations }
}

fn min_eigenvalue<T: Real>(m: &ComplexMatrix<T>) -> Option<T> {
    let n = m.rows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j).norm() == T::zero()));
    if diagonal {
        return (0..n).map(|i| m.get(i, i).re).reduce(T::min);
    }
    matrix::hermitian_eigenvalues(m).ok().and_then(|ev| ev.first().copied())
}

/// Validates `m` as a density matrix with factorization `dims`.
pub fn validate_density<T: Real>(
    m: ComplexMatrix<T>,
    dims: DimList,
) -> std::result::Result<DensityMatrix<T>, ViolationReport> {
    let report = check_invariants(&m, &dims);
    if report.is_empty() {
        Ok(DensityMatrix { matrix: m, dims })
    } else {
        Err(report)
    }
}

/// The four two-qubit Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    /// (|HH⟩ + |VV⟩)/√2
    PhiPlus,
    /// (|HH⟩ − |VV⟩)/√2
    PhiMinus,
    /// (|HV⟩ + |VH⟩)/√2
    PsiPlus,
    /// (|HV⟩ − |VH⟩)/√2
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];

    fn ket<T: Real>(self) -> [Complex<T>; 4] {
        let s = T::FRAC_1_SQRT_2();
        let z = T::zero();
        let (a, b, c, d) = match self {
            BellKind::PhiPlus => (s, z, z, s),
            BellKind::PhiMinus => (s, z, z, -s),
            BellKind::PsiPlus => (z, s, s, z),
            BellKind::PsiMinus => (z, s, -s, z),
        };
        [a, b, c, d].map(|x| Complex::new(x, T::zero()))
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        })
    }
}

/// Bell-state projector on `[2, 2]`, basis `|HH⟩, |HV⟩, |VH⟩, |VV⟩`.
pub fn bell_state<T: Real>(kind: BellKind) -> DensityMatrix<T> {
    DensityMatrix { matrix: ComplexMatrix::projector(&kind.ket::<T>()), dims: DimList::from(&[2, 2][..]) }
}

/// Fock projector `|n⟩⟨n|` on a single mode truncated to `{|0⟩, |1⟩}`.
pub fn fock_state<T: Real>(n: usize) -> Result<DensityMatrix<T>> {
    match n {
        0 => Ok(diagonal_state(&[T::one(), T::zero()])),
        1 => Ok(diagonal_state(&[T::zero(), T::one()])),
        _ => Err(Error::Usage(format!(
            "fock_state supports n in {{0, 1}}, got {n}; use fock_decay_state for higher photon numbers"
        ))),
    }
}

/// `I_d / d` on a single factor of dimension `d`.
pub fn maximally_mixed<T: Real>(d: usize) -> DensityMatrix<T> {
    assert!(d > 0, "dimension must be positive");
    let w = T::one() / T::from_usize(d).expect("dimension fits the scalar type");
    DensityMatrix {
        matrix: ComplexMatrix::identity(d).scale(w),
        dims: DimList::new(vec![d]).expect("positive dimension"),
    }
}

/// `I_4 / 4` on two qubits.
pub fn maximally_mixed_pair<T: Real>() -> DensityMatrix<T> {
    DensityMatrix { matrix: ComplexMatrix::identity(4).scale(T::lit(0.25)), dims: DimList::from(&[2, 2][..]) }
}

/// Werner state `w·|Φ⁺⟩⟨Φ⁺| + (1 − w)·I₄/4` for `w` in `[0, 1]`.
pub fn werner_state<T: Real>(w: T) -> Result<DensityMatrix<T>> {
    crate::error::check_unit_interval("Werner weight", w)?;
    bell_state(BellKind::PhiPlus).mix(w, &maximally_mixed_pair(), T::one() - w)
}

/// Diagonal state with the given populations on a single factor.
pub(crate) fn diagonal_state<T: Real>(populations: &[T]) -> DensityMatrix<T> {
    DensityMatrix {
        matrix: ComplexMatrix::diag(populations),
        dims: DimList::new(vec![populations.len()]).expect("non-empty populations"),
    }
}

/// Polarization pair ⊗ signal Fock mode ⊗ idler Fock mode, dims `[2, 2, 2, 2]`.
pub fn composite_state<T: Real>(
    pol: &DensityMatrix<T>,
    fock_s: &DensityMatrix<T>,
    fock_i: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    if pol.dims.as_slice() != [2, 2] {
        return Err(Error::Dimension(format!(
            "polarization state must have factors [2, 2], got {:?}",
            pol.dims.as_slice()
        )));
    }
    for (name, f) in [("signal", fock_s), ("idler", fock_i)] {
        if f.dim() != 2 {
            return Err(Error::Dimension(format!("{name} Fock state must be 2x2, got {0}x{0}", f.dim())));
        }
    }
    let fs = DensityMatrix { matrix: fock_s.matrix.clone(), dims: DimList::from(&[2][..]) };
    let fi = DensityMatrix { matrix: fock_i.matrix.clone(), dims: DimList::from(&[2][..]) };
    pol.tensor(&fs)?.tensor(&fi)
}

/// Embeds a state of qubit-polarization factors into the single-arm spaces
/// `{|vac⟩, |H⟩, |V⟩}`, mapping `|H⟩ → |H⟩`, `|V⟩ → |V⟩` in every arm. The
/// vacuum level is left unpopulated.
pub fn embed_with_vacuum<T: Real>(pol: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    if pol.dims.as_slice().iter().any(|&d| d != 2) {
        return Err(Error::Dimension(format!("vacuum embedding expects qubit factors, got {:?}", pol.dims.as_slice())));
    }
    let k = pol.dims.len();
    let n_out = 3usize.pow(k as u32);
    let index_map: Vec<usize> = (0..pol.dim())
        .map(|i| {
            (0..k).fold(0, |acc, f| {
                let bit = (i >> (k - 1 - f)) & 1;
                acc * 3 + bit + 1
            })
        })
        .collect();
    let mut out = ComplexMatrix::zeros(n_out, n_out);
    for (a, &ia) in index_map.iter().enumerate() {
        for (b, &ib) in index_map.iter().enumerate() {
            out[(ia, ib)] = pol.matrix.get(a, b);
        }
    }
    Ok(DensityMatrix { matrix: out, dims: DimList::new(vec![3; k])? })
}
