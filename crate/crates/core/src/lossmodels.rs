// SPDX-License-Identifier: Apache-2.0

//! Physical loss models.
//!
//! * Beer-Lambert decay of an `N`-photon Fock state in fiber, where each
//!   photon survives independently with probability `q = e^{−ΛL}` and
//!   `Λ = ln(10)·α/10` converts an attenuation in dB/km to a rate in 1/km.
//! * The four-outcome detection mixture of a photon pair sent through two
//!   lossy arms.
//! * Free-space transmittance: Beer-Lambert attenuation times the fraction
//!   of a diffracting Gaussian beam collected by a circular aperture,
//!   `η_geo(z) = 1 − exp(−2a²/w(z)²)`, `w(z) = w₀√(1 + (z/z_R)²)`,
//!   `z_R = πw₀²/λ`.
//!
//! Distances for the free-space model are in meters; attenuation
//! coefficients stay in the conventional dB/km.

use serde::Serialize;

use crate::error::{check_unit_interval, Error, Result};
use crate::matrix::{ComplexMatrix, DimList};
use crate::states::{diagonal_state, DensityMatrix};
use crate::Real;

/// `Λ = ln(10)·α/10`, in 1/km for `alpha` in dB/km.
pub fn lambda_coeff<T: Real>(alpha: T) -> Result<T> {
    if !(alpha.is_finite() && alpha >= T::zero()) {
        return Err(Error::Usage(format!("attenuation must be a non-negative number, got {alpha}")));
    }
    Ok(T::LN_10() * alpha / T::lit(10.0))
}

/// Fiber propagation of an `n_photons` Fock state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberParams<T: Real> {
    /// dB/km.
    pub alpha: T,
    /// km.
    pub length: T,
    pub n_photons: usize,
}

impl<T: Real> FiberParams<T> {
    pub fn new(alpha: T, length: T, n_photons: usize) -> Result<Self> {
        lambda_coeff(alpha)?;
        if !(length.is_finite() && length >= T::zero()) {
            return Err(Error::Usage(format!("length must be a non-negative number, got {length}")));
        }
        if n_photons == 0 {
            return Err(Error::Usage("photon number must be at least 1".into()));
        }
        Ok(Self { alpha, length, n_photons })
    }

    /// Single-photon survival probability `q = e^{−ΛL}`.
    pub fn survival(&self) -> T {
        let lambda = T::LN_10() * self.alpha / T::lit(10.0);
        (-lambda * self.length).exp()
    }
}

/// Binomial photon-number distribution after loss,
/// `ρ(L) = Σ_j C(N, j) q^j (1 − q)^{N−j} |j⟩⟨j|`, over `j = 0..=N`.
pub fn fock_decay_state<T: Real>(p: &FiberParams<T>) -> DensityMatrix<T> {
    diagonal_state(&binomial_weights(p.n_photons, p.survival()))
}

pub(crate) fn binomial_weights<T: Real>(n: usize, q: T) -> Vec<T> {
    let mut coeff = T::one();
    let lost = T::one() - q;
    (0..=n)
        .map(|j| {
            if j > 0 {
                coeff = coeff * T::from_usize(n - j + 1).expect("small count") / T::from_usize(j).expect("small count");
            }
            coeff * q.powi(j as i32) * lost.powi((n - j) as i32)
        })
        .collect()
}

/// Detection-outcome decomposition for a photon pair through arms with
/// transmittances `t_a`, `t_b`. In `pXY`, `X` is the photon count in arm A
/// and `Y` in arm B.
#[derive(Debug, Clone, Serialize)]
pub struct LossMixture<T: Real> {
    pub p11: T,
    pub p01: T,
    pub p10: T,
    pub p00: T,
    /// `Σ p_XY |X⟩⟨X| ⊗ |Y⟩⟨Y|` on Fock factors `[2, 2]`.
    pub state: DensityMatrix<T>,
}

pub fn two_arm_loss_mixture<T: Real>(t_a: T, t_b: T) -> Result<LossMixture<T>> {
    check_unit_interval("arm A transmittance", t_a)?;
    check_unit_interval("arm B transmittance", t_b)?;
    let (l_a, l_b) = (T::one() - t_a, T::one() - t_b);
    let (p11, p01, p10, p00) = (t_a * t_b, l_a * t_b, t_a * l_b, l_a * l_b);
    // Index = 2·n_A + n_B.
    let state = DensityMatrix::unchecked(ComplexMatrix::diag(&[p00, p01, p10, p11]), DimList::from(&[2, 2][..]))?;
    Ok(LossMixture { p11, p01, p10, p00, state })
}

/// How the Beer-Lambert factor is computed from `α` (dB/km) and `z`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttenuationConvention {
    /// `10^(−α·z_km/10)`, i.e. a loss of `α·z_km` dB.
    #[default]
    Decibel,
    /// `10^(−α·z_km)` with no factor of ten; kept for side-by-side
    /// comparison with formulas printed that way.
    LiteralExponent,
}

/// Horizontal free-space link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FsoParams<T: Real> {
    /// dB/km.
    pub alpha: T,
    /// m.
    pub wavelength: T,
    /// Initial beam waist `w₀`, m.
    pub waist: T,
    /// Receiver aperture radius `a_R`, m.
    pub aperture_radius: T,
    pub convention: AttenuationConvention,
}

impl<T: Real> FsoParams<T> {
    pub fn new(alpha: T, wavelength: T, waist: T, aperture_radius: T) -> Result<Self> {
        for (name, v) in
            [("alpha", alpha), ("wavelength", wavelength), ("waist", waist), ("aperture radius", aperture_radius)]
        {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::Usage(format!("{name} must be a positive number, got {v}")));
            }
        }
        Ok(Self { alpha, wavelength, waist, aperture_radius, convention: AttenuationConvention::Decibel })
    }

    /// 1550 nm, 1 cm waist, 0.07 dB/km, with the given aperture radius.
    pub fn reference(aperture_radius: T) -> Result<Self> {
        Self::new(T::lit(0.07), T::lit(1550e-9), T::lit(0.01), aperture_radius)
    }

    pub fn with_convention(mut self, convention: AttenuationConvention) -> Self {
        self.convention = convention;
        self
    }

    /// The Gaussian-beam formulas assume `w₀ ≫ λ`; this reports whether the
    /// waist is at least ten wavelengths.
    pub fn is_paraxial(&self) -> bool {
        self.waist >= T::lit(10.0) * self.wavelength
    }

    pub fn rayleigh_range(&self) -> T {
        rayleigh_range(self.waist, self.wavelength)
    }
}

/// `z_R = π w₀² / λ`.
pub fn rayleigh_range<T: Real>(waist: T, wavelength: T) -> T {
    T::PI() * waist * waist / wavelength
}

/// `w(z) = w₀ √(1 + (z/z_R)²)`.
pub fn beam_waist<T: Real>(z: T, p: &FsoParams<T>) -> T {
    let r = z / p.rayleigh_range();
    p.waist * (T::one() + r * r).sqrt()
}

/// Collection exponent `x = 2 a_R² / w(z)²`, so that `η_geo = 1 − e^{−x}`.
///
/// Useful on its own near the transmitter: once `x` exceeds roughly 37 the
/// efficiency rounds to exactly 1 even though the geometric loss is positive
/// for every finite `x`.
pub fn collection_exponent<T: Real>(z: T, p: &FsoParams<T>) -> T {
    let w = beam_waist(z, p);
    T::lit(2.0) * p.aperture_radius * p.aperture_radius / (w * w)
}

/// `η_geo(z) = 1 − exp(−2 a_R² / w(z)²)`.
pub fn geometrical_efficiency<T: Real>(z: T, p: &FsoParams<T>) -> T {
    -(-collection_exponent(z, p)).exp_m1()
}

/// `−10 log₁₀ η_geo(z)`, evaluated as `−(10/ln 10)·ln(1 − e^{−x})` so that
/// losses far below one ULP of 1 survive.
pub fn geometric_loss_db<T: Real>(z: T, p: &FsoParams<T>) -> T {
    let tail = (-collection_exponent(z, p)).exp();
    -(T::lit(10.0) / T::LN_10()) * (-tail).ln_1p()
}

/// Beer-Lambert loss in dB over `z` meters.
pub fn attenuation_db<T: Real>(z: T, p: &FsoParams<T>) -> T {
    let z_km = z / T::lit(1000.0);
    match p.convention {
        AttenuationConvention::Decibel => p.alpha * z_km,
        AttenuationConvention::LiteralExponent => T::lit(10.0) * p.alpha * z_km,
    }
}

/// Beer-Lambert transmittance over `z` meters.
pub fn atmospheric_transmittance<T: Real>(z: T, p: &FsoParams<T>) -> T {
    T::lit(10.0).powf(-attenuation_db(z, p) / T::lit(10.0))
}

/// Transmittance budget at one distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkBudgetPoint<T: Real> {
    /// m.
    pub z: T,
    pub atm_transmittance: T,
    /// 1 when geometrical loss is disabled.
    pub geo_efficiency: T,
    /// `−10 log₁₀(atm_transmittance · geo_efficiency)`, dB.
    pub total_loss_db: T,
}

fn link_point<T: Real>(z: T, p: &FsoParams<T>, include_geo: bool) -> LinkBudgetPoint<T> {
    let atm_db = attenuation_db(z, p);
    let (geo, geo_db) =
        if include_geo { (geometrical_efficiency(z, p), geometric_loss_db(z, p)) } else { (T::one(), T::zero()) };
    LinkBudgetPoint {
        z,
        atm_transmittance: atmospheric_transmittance(z, p),
        geo_efficiency: geo,
        total_loss_db: (atm_db + geo_db).max(T::zero()),
    }
}

/// Full transmittance `T(z) = T_atm(z)·η_geo(z)` at `z` meters.
pub fn fso_transmittance<T: Real>(z: T, p: &FsoParams<T>) -> LinkBudgetPoint<T> {
    link_point(z, p, true)
}

/// Beer-Lambert-only transmittance at `z` meters (infinite aperture).
pub fn baseline_transmittance<T: Real>(z: T, p: &FsoParams<T>) -> LinkBudgetPoint<T> {
    link_point(z, p, false)
}

/// Budget at `z = 0, step, 2·step, …`, always ending exactly at `z_max`.
pub fn link_budget_curve<T: Real>(
    p: &FsoParams<T>,
    z_max: T,
    step: T,
    include_geo: bool,
) -> Result<Vec<LinkBudgetPoint<T>>> {
    Ok(distance_grid(z_max, step)?.into_iter().map(|z| link_point(z, p, include_geo)).collect())
}

/// `0, step, 2·step, …` up to `end`, with `end` appended when it is not
/// itself (within rounding) a grid point. Requires `end > 0` and
/// `0 < step ≤ end`.
pub fn distance_grid<T: Real>(end: T, step: T) -> Result<Vec<T>> {
    if !(end.is_finite() && end > T::zero()) {
        return Err(Error::Usage(format!("grid end must be positive, got {end}")));
    }
    if !(step.is_finite() && step > T::zero() && step <= end) {
        return Err(Error::Usage(format!("step must lie in (0, {end}], got {step}")));
    }
    let n = (end / step + T::lit(1e-9)).floor().to_usize().expect("finite grid");
    let mut zs: Vec<T> = (0..=n).map(|k| T::from_usize(k).expect("grid index") * step).collect();
    let last = *zs.last().expect("non-empty grid");
    if end - last > step * T::lit(1e-9) {
        zs.push(end);
    } else {
        *zs.last_mut().expect("non-empty grid") = end;
    }
    Ok(zs)
}
