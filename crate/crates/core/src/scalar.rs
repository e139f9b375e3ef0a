//! Floating-point scalars used by the dense simulator.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar type backing complex amplitudes: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Entrywise tolerance for "maximally mixed" and "equal up to phase" checks.
    const DEFAULT_TOL: f64;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal fits the scalar type")
    }
}

impl Real for f32 {
    const DEFAULT_TOL: f64 = 1e-4;
}

impl Real for f64 {
    const DEFAULT_TOL: f64 = 1e-9;
}
