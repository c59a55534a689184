// SPDX-License-Identifier: Apache-2.0

//! Side-by-side execution of three photon-loss pipelines on a
//! polarization-entangled pair.
//!
//! * **First case**: a proper Kraus loss channel on the signal Fock mode of
//!   `Φ⁺ ⊗ |1⟩⟨1| ⊗ |1⟩⟨1|`, identity on polarization and idler. The loss
//!   never reaches the polarization factor, so the reduced polarization
//!   state is `Φ⁺` for every transmittance.
//! * **Flawed**: conjugation by the single operator
//!   `I₂ ⊗ I₂ ⊗ M`, `M = [(1−η)|0⟩⟨0| + η|1⟩⟨1|] ⊗ |1⟩⟨1|`, with no
//!   renormalization. `M` fails the completeness relation, the trace leaks
//!   as `η²`, and any apparent decrease of the CHSH value is that leakage.
//! * **Correct**: the three-level polarized loss channel in each arm applied
//!   to `Φ⁺`. Losing either photon destroys the pair's polarization
//!   correlations; only the coincidence sector keeps `Φ⁺`.
//!
//! `s_eff = p_coincidence · S(coincidence state)` condenses the correct
//! model into one decreasing number. It is a reporting construct of this
//! crate, not a standard figure of merit.

use serde::Serialize;

use crate::channels::{
    apply_channel, identity_channel, loss_channel, polarized_photon_loss_channel, tensor_channels, validate_cptp,
    KrausChannel,
};
use crate::error::{check_unit_interval, Error, Result};
use crate::matrix::{kron, ComplexMatrix, DimList};
use crate::metrics::chsh_max;
use crate::states::{bell_state, composite_state, embed_with_vacuum, fock_state, BellKind, DensityMatrix};
use crate::Real;

/// Structured observation attached to a pipeline report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "finding", rename_all = "snake_case")]
pub enum Finding {
    /// The map is built from a single operator that fails `Σ K†K = I`.
    NotTracePreserving { defect: f64 },
    /// The output trace differs from 1.
    TraceLeakage { trace: f64 },
    /// The reduced state was reported without renormalization.
    UnnormalizedReducedState { trace: f64 },
    /// Renormalization impossible: the output has zero trace.
    ZeroTraceOutput,
    /// Signal loss was applied yet the reduced polarization state equals the
    /// initial Bell state.
    PolarizationUnaffectedByLoss { signal_loss: f64 },
    /// No coincidence is possible, so the conditional state is undefined.
    NoCoincidence,
    /// `s_eff` is a crate-defined proxy, not a measured quantity.
    EffectiveChshIsProxy,
}

/// Result of running one pipeline at one transmittance.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport<T: Real> {
    /// Signal-arm transmittance.
    pub eta: T,
    pub is_cptp: bool,
    pub cptp_defect: T,
    pub output_trace: T,
    /// Reduced polarization state on `[2, 2]`.
    pub reduced_state: DensityMatrix<T>,
    /// `false` when `reduced_state` carries the leaked trace.
    pub reduced_state_normalized: bool,
    /// CHSH of the renormalized reduced state (0 when it cannot be renormalized).
    pub chsh_normalized: T,
    /// `output_trace · chsh_normalized`.
    pub chsh_trace_weighted: T,
    pub notes: Vec<Finding>,
}

fn check_open_unit<T: Real>(name: &str, x: T) -> Result<()> {
    check_unit_interval(name, x)?;
    if x == T::zero() {
        return Err(Error::Usage(format!("{name} must lie in (0, 1], got 0")));
    }
    Ok(())
}

/// Initial composite `Φ⁺ ⊗ |1⟩_s⟨1| ⊗ |1⟩_i⟨1|` on `[2, 2, 2, 2]`.
pub fn initial_composite<T: Real>() -> DensityMatrix<T> {
    let one = fock_state(1).expect("n = 1 is supported");
    composite_state(&bell_state(BellKind::PhiPlus), &one, &one).expect("shapes fixed")
}

/// Single-arm operator `(1 − η)|0⟩⟨0| + η|1⟩⟨1|`, which is a post-loss
/// photon-number *state* rather than a Kraus operator.
pub fn flawed_signal_operator<T: Real>(eta: T) -> Result<ComplexMatrix<T>> {
    check_unit_interval("transmittance", eta)?;
    Ok(ComplexMatrix::diag(&[T::one() - eta, eta]))
}

/// Two-mode operator `[(1 − η)|0⟩⟨0| + η|1⟩⟨1|] ⊗ |1⟩⟨1|` on the signal and
/// idler Fock modes.
pub fn flawed_total_operator<T: Real>(eta: T) -> Result<ComplexMatrix<T>> {
    let idler = ComplexMatrix::diag(&[T::zero(), T::one()]);
    kron(&flawed_signal_operator(eta)?, &idler)
}

fn polarization_report<T: Real>(
    eta: T,
    channel: &KrausChannel<T>,
    output: &DensityMatrix<T>,
) -> Result<PipelineReport<T>> {
    let cptp = validate_cptp(channel, T::CPTP_TOL);
    let output_trace = output.trace();
    let raw = output.reduce(&[0, 1])?;
    let mut notes = Vec::new();

    if !cptp.is_valid {
        notes.push(Finding::NotTracePreserving { defect: cptp.completeness_defect.as_f64() });
    }
    if (output_trace - T::one()).abs() > T::TRACE_TOL {
        notes.push(Finding::TraceLeakage { trace: output_trace.as_f64() });
    }

    let normalized = raw.normalized().ok();
    let chsh_normalized = match &normalized {
        Some(n) => chsh_max(n)?,
        None => {
            notes.push(Finding::ZeroTraceOutput);
            T::zero()
        }
    };

    let phi = bell_state::<T>(BellKind::PhiPlus);
    if eta < T::one() {
        if let Some(n) = &normalized {
            if n.matrix().max_abs_diff(phi.matrix()) <= T::TRACE_TOL {
                notes.push(Finding::PolarizationUnaffectedByLoss { signal_loss: (T::one() - eta).as_f64() });
            }
        }
    }

    let reduced_state_normalized = (raw.trace() - T::one()).abs() <= T::TRACE_TOL;
    if !reduced_state_normalized {
        notes.push(Finding::UnnormalizedReducedState { trace: raw.trace().as_f64() });
    }

    Ok(PipelineReport {
        eta,
        is_cptp: cptp.is_valid,
        cptp_defect: cptp.completeness_defect,
        output_trace,
        reduced_state: raw,
        reduced_state_normalized,
        chsh_normalized,
        chsh_trace_weighted: output_trace * chsh_normalized,
        notes,
    })
}

/// Proper Kraus loss on the signal Fock mode only; polarization and idler
/// untouched. `eta` in `(0, 1]`.
pub fn oe_first_case_pipeline<T: Real>(eta: T) -> Result<PipelineReport<T>> {
    check_open_unit("transmittance", eta)?;
    let channel = tensor_channels(&tensor_channels(&identity_channel(4), &loss_channel(eta)?)?, &identity_channel(2))?;
    let out = apply_channel(&channel, &initial_composite())?;
    polarization_report(eta, &channel, &out.state)
}

/// Conjugation by `I₂ ⊗ I₂ ⊗ M` without renormalization. `eta` in `[0, 1]`.
pub fn oe_flawed_pipeline<T: Real>(eta: T) -> Result<PipelineReport<T>> {
    let op = kron(&ComplexMatrix::identity(4), &flawed_total_operator(eta)?)?;
    let channel = KrausChannel::new(vec![op])?;
    let out = apply_channel(&channel, &initial_composite())?;
    polarization_report(eta, &channel, &out.state)
}

/// Outcome probabilities of the two-arm correct pipeline; `pXY` has `X`
/// photons in arm A and `Y` in arm B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorProbabilities<T: Real> {
    pub p11: T,
    pub p01: T,
    pub p10: T,
    pub p00: T,
}

/// Correct two-arm pipeline output.
#[derive(Debug, Clone, Serialize)]
pub struct CorrectLossReport<T: Real> {
    pub t_a: T,
    pub t_b: T,
    /// `eta` is `t_a`; `reduced_state` is the coincidence-conditioned
    /// polarization state (zero block when no coincidence is possible).
    pub report: PipelineReport<T>,
    pub sectors: SectorProbabilities<T>,
    /// Full output on `{vac, H, V}^{⊗2}`, dims `[3, 3]`.
    pub output_state: DensityMatrix<T>,
    /// Polarization of photon A given photon B was lost.
    pub arm_a_given_b_lost: Option<DensityMatrix<T>>,
    /// Polarization of photon B given photon A was lost.
    pub arm_b_given_a_lost: Option<DensityMatrix<T>>,
    /// CHSH of the coincidence-conditioned state (0 if undefined).
    pub conditional_chsh: T,
    pub s_eff: T,
}

impl<T: Real> CorrectLossReport<T> {
    /// Polarization state conditioned on detecting both photons.
    pub fn coincidence_state(&self) -> Result<&DensityMatrix<T>> {
        if self.report.reduced_state_normalized {
            Ok(&self.report.reduced_state)
        } else {
            Err(Error::UndefinedConditional(format!("no coincidences at t_a = {}, t_b = {}", self.t_a, self.t_b)))
        }
    }
}

// Indices into the 9-dimensional two-arm space, index = 3·a + b with
// a, b ∈ {vac, H, V}.
const BOTH_PRESENT: [usize; 4] = [4, 5, 7, 8];
const ONLY_A_PRESENT: [usize; 2] = [3, 6];
const ONLY_B_PRESENT: [usize; 2] = [1, 2];

fn conditional_block<T: Real>(
    out: &DensityMatrix<T>,
    indices: &[usize],
    dims: &[usize],
) -> Result<(T, Option<DensityMatrix<T>>)> {
    let block = DensityMatrix::unchecked(out.matrix().principal_submatrix(indices), DimList::new(dims.to_vec())?)?;
    let p = block.trace();
    let cond = if p > T::zero() { Some(block.normalized()?) } else { None };
    Ok((p, cond))
}

/// Three-level polarized loss in each arm applied to `Φ⁺`.
pub fn correct_loss_pipeline<T: Real>(t_a: T, t_b: T) -> Result<CorrectLossReport<T>> {
    check_unit_interval("arm A transmittance", t_a)?;
    check_unit_interval("arm B transmittance", t_b)?;
    let channel = tensor_channels(&polarized_photon_loss_channel(t_a)?, &polarized_photon_loss_channel(t_b)?)?;
    let input = embed_with_vacuum(&bell_state::<T>(BellKind::PhiPlus))?;
    let out = apply_channel(&channel, &input)?;
    let cptp = out.cptp;
    let state = out.state;
    let output_trace = state.trace();

    let (p11, coincidence) = conditional_block(&state, &BOTH_PRESENT, &[2, 2])?;
    let (p10, arm_a) = conditional_block(&state, &ONLY_A_PRESENT, &[2])?;
    let (p01, arm_b) = conditional_block(&state, &ONLY_B_PRESENT, &[2])?;
    let p00 = state.matrix().get(0, 0).re;

    let mut notes = Vec::new();
    if !cptp.is_valid {
        notes.push(Finding::NotTracePreserving { defect: cptp.completeness_defect.as_f64() });
    }
    let (reduced_state, normalized, conditional_chsh) = match coincidence {
        Some(c) => {
            let s = chsh_max(&c)?;
            (c, true, s)
        }
        None => {
            notes.push(Finding::NoCoincidence);
            let zero = DensityMatrix::unchecked(ComplexMatrix::zeros(4, 4), DimList::from(&[2, 2][..]))?;
            (zero, false, T::zero())
        }
    };
    notes.push(Finding::EffectiveChshIsProxy);

    let report = PipelineReport {
        eta: t_a,
        is_cptp: cptp.is_valid,
        cptp_defect: cptp.completeness_defect,
        output_trace,
        reduced_state,
        reduced_state_normalized: normalized,
        chsh_normalized: conditional_chsh,
        chsh_trace_weighted: output_trace * conditional_chsh,
        notes,
    };
    Ok(CorrectLossReport {
        t_a,
        t_b,
        report,
        sectors: SectorProbabilities { p11, p01, p10, p00 },
        output_state: state,
        arm_a_given_b_lost: arm_a,
        arm_b_given_a_lost: arm_b,
        conditional_chsh,
        s_eff: p11 * conditional_chsh,
    })
}

/// All three pipelines at one signal transmittance (idler arm lossless in
/// the correct pipeline).
#[derive(Debug, Clone, Serialize)]
pub struct AuditComparison<T: Real> {
    pub eta: T,
    pub first_case: PipelineReport<T>,
    pub flawed: PipelineReport<T>,
    pub correct: CorrectLossReport<T>,
}

/// One line of the tabular comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareRow<T: Real> {
    pub eta: T,
    pub first_case_chsh: T,
    pub flawed_trace: T,
    pub flawed_chsh_weighted: T,
    pub coincidence_p: T,
    pub conditional_chsh: T,
    pub s_eff: T,
}

impl<T: Real> AuditComparison<T> {
    pub fn row(&self) -> CompareRow<T> {
        CompareRow {
            eta: self.eta,
            first_case_chsh: self.first_case.chsh_normalized,
            flawed_trace: self.flawed.output_trace,
            flawed_chsh_weighted: self.flawed.chsh_trace_weighted,
            coincidence_p: self.correct.sectors.p11,
            conditional_chsh: self.correct.conditional_chsh,
            s_eff: self.correct.s_eff,
        }
    }
}

/// Runs every pipeline for each `eta` in `(0, 1]`; output sorted by `eta`.
pub fn compare_report<T: Real>(eta_grid: &[T]) -> Result<Vec<AuditComparison<T>>> {
    if eta_grid.is_empty() {
        return Err(Error::Usage("transmittance grid is empty".into()));
    }
    let mut etas = eta_grid.to_vec();
    for &eta in &etas {
        check_open_unit("transmittance", eta)?;
    }
    etas.sort_by(|a, b| a.partial_cmp(b).expect("validated finite"));
    etas.into_iter()
        .map(|eta| {
            Ok(AuditComparison {
                eta,
                first_case: oe_first_case_pipeline(eta)?,
                flawed: oe_flawed_pipeline(eta)?,
                correct: correct_loss_pipeline(eta, T::one())?,
            })
        })
        .collect()
}
