//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt;

use nalgebra::{ComplexField, RealField};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Real scalar the toolkit is generic over (`f32` or `f64`).
///
/// Built on [`RealField`] so that nalgebra's Hermitian eigensolver and QR
/// work on `Complex<T>`; conversions come from `num-traits`.
pub trait Real: RealField + Copy + ToPrimitive + Default {
    fn infinity() -> Self;
    fn neg_infinity() -> Self;

    /// Lossy conversion of an `f64` literal or sample.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::FromPrimitive>::from_f64(x).expect("f64 is representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    #[inline]
    fn magnitude(self) -> Self {
        ComplexField::abs(self)
    }

    #[inline]
    fn is_infinite_value(self) -> bool {
        self == Self::infinity() || self == Self::neg_infinity()
    }
}

impl Real for f32 {
    fn infinity() -> Self {
        f32::INFINITY
    }
    fn neg_infinity() -> Self {
        f32::NEG_INFINITY
    }
}

impl Real for f64 {
    fn infinity() -> Self {
        f64::INFINITY
    }
    fn neg_infinity() -> Self {
        f64::NEG_INFINITY
    }
}

/// Logarithm base used for every entropic quantity of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum LogBase {
    /// Bits.
    #[default]
    #[serde(rename = "2")]
    Two,
    /// Nats.
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    /// Converts a natural-log quantity into this base.
    #[inline]
    pub fn from_nats<T: Real>(self, nats: T) -> T {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / T::ln_2(),
        }
    }

    /// Converts a quantity in this base into nats.
    #[inline]
    pub fn to_nats<T: Real>(self, value: T) -> T {
        match self {
            LogBase::E => value,
            LogBase::Two => value * T::ln_2(),
        }
    }

    /// `log_base(x)`.
    #[inline]
    pub fn log<T: Real>(self, x: T) -> T {
        self.from_nats(x.ln())
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(format!("unknown log base '{other}' (expected 2 or e)")),
        }
    }
}

/// A nonnegative real that may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> ExtendedReal<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }

    /// Maps `+∞` onto the scalar's infinity.
    pub fn to_real(self) -> T {
        match self {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::Infinite => T::infinity(),
        }
    }

    pub fn from_real(v: T) -> Self {
        if v == T::infinity() {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::Finite(v)
        }
    }

    /// `self - other` with `∞ - ∞ := 0`.
    pub fn difference(self, other: Self) -> T {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a - b,
            (ExtendedReal::Infinite, ExtendedReal::Finite(_)) => T::infinity(),
            (ExtendedReal::Finite(_), ExtendedReal::Infinite) => T::neg_infinity(),
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => T::zero(),
        }
    }
}

impl<T: Real> PartialOrd for ExtendedReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a.partial_cmp(b),
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => Some(Ordering::Equal),
            (ExtendedReal::Infinite, _) => Some(Ordering::Greater),
            (_, ExtendedReal::Infinite) => Some(Ordering::Less),
        }
    }
}

impl<T: Real> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::Infinite => f.write_str("inf"),
        }
    }
}
