//! Scalar abstractions.
//!
//! Accumulation kernels only need field arithmetic, so they are generic over
//! [`Coefficient`] and work with exact rationals as well as floats. Model
//! fitting needs `ln`/`exp` and is generic over [`Real`].

use std::fmt::{Debug, Display, LowerExp};

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Field-like scalar usable as a fractional order and as a kernel coefficient.
pub trait Coefficient: Num + Clone + PartialOrd + Debug + FromPrimitive {
    /// `false` for NaN and infinities. Exact types are always finite.
    fn is_finite_value(&self) -> bool;
}

impl Coefficient for f32 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Coefficient for f64 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Coefficient for Ratio<i64> {
    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Coefficient for Ratio<i128> {
    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Floating-point scalar used by the fitting pipeline: `f32` or `f64`.
pub trait Real:
    Coefficient + Float + FromPrimitive + ToPrimitive + Display + LowerExp + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn from_index(i: usize) -> Self {
        Self::from_usize(i).expect("index representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
