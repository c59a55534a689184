// SPDX-License-Identifier: Apache-2.0

//! Photon loss on polarization-entangled pairs, in Kraus form.
//!
//! The crate models loss three ways and compares them:
//!
//! * [`channels`]: Kraus channels with completeness checking, including the
//!   single-mode loss channel, depolarizing noise, and a three-level
//!   `{vac, H, V}` loss channel that removes a photon together with its
//!   polarization;
//! * [`lossmodels`]: binomial Fock-state decay, the two-arm detection
//!   mixture, and a free-space link budget with Gaussian-beam geometrical
//!   loss;
//! * [`audit`]: three pipelines on `Φ⁺` run side by side, two of which keep
//!   the polarization factor untouched by loss.
//!
//! All numerics are generic over [`Real`] (`f64` or `f32`). The `*64` and
//! `*32` aliases below fix the scalar type.

pub mod audit;
pub mod channels;
mod error;
pub mod lossmodels;
pub mod matrix;
pub mod metrics;
mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

pub use channels::{CptpReport, KrausChannel};
pub use matrix::{ComplexMatrix, DimList};
pub use states::{BellKind, DensityMatrix};

pub type Matrix64 = ComplexMatrix<f64>;
pub type Density64 = DensityMatrix<f64>;
pub type Channel64 = KrausChannel<f64>;
pub type CptpReport64 = CptpReport<f64>;
pub type PipelineReport64 = audit::PipelineReport<f64>;
pub type FsoParams64 = lossmodels::FsoParams<f64>;
pub type LinkBudgetPoint64 = lossmodels::LinkBudgetPoint<f64>;

pub type Matrix32 = ComplexMatrix<f32>;
pub type Density32 = DensityMatrix<f32>;
pub type Channel32 = KrausChannel<f32>;
