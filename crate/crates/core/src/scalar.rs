// SPDX-License-Identifier: Apache-2.0

//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type the simulation is generic over (`f32` or `f64`).
///
/// The associated tolerances are the precision-dependent thresholds used by
/// validators. The `f64` values are the library defaults; `f32` gets looser
/// thresholds scaled to its epsilon.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
    /// Max entrywise |h − h†| accepted as Hermitian.
    const HERMITIAN_TOL: Self;
    /// Max |Tr ρ − 1| accepted as unit trace.
    const TRACE_TOL: Self;
    /// Most negative eigenvalue accepted as positive semidefinite (as a magnitude).
    const PSD_TOL: Self;
    /// Default completeness tolerance for Kraus sets.
    const CPTP_TOL: Self;
    /// Eigenvalues below this are treated as zero before taking logarithms.
    const EIGEN_FLOOR: Self;

    /// Converts an `f64` literal. Every finite literal used by the crate is
    /// representable (possibly rounded) in both supported types.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    const HERMITIAN_TOL: Self = 1e-10;
    const TRACE_TOL: Self = 1e-10;
    const PSD_TOL: Self = 1e-9;
    const CPTP_TOL: Self = 1e-10;
    const EIGEN_FLOOR: Self = 1e-12;
}

impl Real for f32 {
    const HERMITIAN_TOL: Self = 1e-5;
    const TRACE_TOL: Self = 1e-5;
    const PSD_TOL: Self = 1e-4;
    const CPTP_TOL: Self = 1e-5;
    const EIGEN_FLOOR: Self = 1e-6;
}
