//! Uncertainty measures of a single outcome distribution.
//!
//! All of them vanish exactly on deterministic distributions and are Schur
//! concave: if `p1` majorizes `p2` then `U(p1) ≤ U(p2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{check_dims, ProbDist};
use crate::scalar::{LogBase, Real};

/// Probabilities below this are treated as exact zeros before logs and powers.
pub const PROB_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UncertaintyKind {
    /// `√(1 − ‖p‖₂²)`.
    Delta,
    Renyi,
    Shannon,
    /// `½((Σ√p_i)² − 1)`.
    HalfNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintySpec {
    pub kind: UncertaintyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl UncertaintySpec {
    pub fn delta() -> Self {
        Self { kind: UncertaintyKind::Delta, alpha: None }
    }

    pub fn shannon() -> Self {
        Self { kind: UncertaintyKind::Shannon, alpha: None }
    }

    pub fn half_norm() -> Self {
        Self { kind: UncertaintyKind::HalfNorm, alpha: None }
    }

    pub fn renyi(alpha: f64) -> Result<Self> {
        let spec = Self { kind: UncertaintyKind::Renyi, alpha: Some(alpha) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind, self.alpha) {
            (UncertaintyKind::Renyi, Some(a)) if a > 0.0 && a != 1.0 && a.is_finite() => Ok(()),
            (UncertaintyKind::Renyi, a) => {
                Err(Error::AlphaOutOfRange { kind: "renyi entropy", alpha: a.unwrap_or(f64::NAN) })
            }
            (_, None) => Ok(()),
            (_, Some(a)) => Err(Error::AlphaOutOfRange { kind: "alpha-free uncertainty", alpha: a }),
        }
    }
}

impl fmt::Display for UncertaintySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.alpha) {
            (UncertaintyKind::Delta, _) => f.write_str("delta"),
            (UncertaintyKind::Shannon, _) => f.write_str("shannon"),
            (UncertaintyKind::HalfNorm, _) => f.write_str("half_norm"),
            (UncertaintyKind::Renyi, a) => write!(f, "renyi({})", a.unwrap_or(f64::NAN)),
        }
    }
}

#[inline]
pub(crate) fn is_zero<T: Real>(p: T) -> bool {
    p <= T::lit(PROB_FLOOR)
}

/// `√(1 − Σ p_i²)`.
pub fn delta<T: Real>(p: &ProbDist<T>) -> T {
    let sq = p.probs().iter().fold(T::zero(), |acc, &x| acc + x * x);
    (T::one() - sq).max(T::zero()).sqrt()
}

/// `½(‖p‖_{1/2} − 1)` with `‖p‖_{1/2} = (Σ √p_i)²`.
pub fn half_norm<T: Real>(p: &ProbDist<T>) -> T {
    let s = p.probs().iter().fold(T::zero(), |acc, &x| acc + x.sqrt());
    ((s * s - T::one()) * T::lit(0.5)).max(T::zero())
}

/// `−Σ p_i log p_i`.
pub fn shannon<T: Real>(p: &ProbDist<T>, base: LogBase) -> T {
    let nats = p.probs().iter().fold(T::zero(), |acc, &x| if is_zero(x) { acc } else { acc - x * x.ln() });
    base.from_nats(nats).max(T::zero())
}

/// Rényi entropy `(1/(1−α)) log Σ p_i^α` for any `α ≥ 0`; `α = 1` is
/// Shannon and `α = 0` is the log of the support size.
pub fn renyi<T: Real>(p: &ProbDist<T>, alpha: T, base: LogBase) -> T {
    if alpha == T::one() {
        return shannon(p, base);
    }
    let s = p.probs().iter().fold(T::zero(), |acc, &x| {
        if is_zero(x) {
            acc
        } else if alpha == T::zero() {
            acc + T::one()
        } else {
            acc + x.powf(alpha)
        }
    });
    base.from_nats(s.ln() / (T::one() - alpha)).max(T::zero())
}

pub fn umeasure<T: Real>(spec: &UncertaintySpec, p: &ProbDist<T>, base: LogBase) -> Result<T> {
    spec.validate()?;
    Ok(match spec.kind {
        UncertaintyKind::Delta => delta(p),
        UncertaintyKind::HalfNorm => half_norm(p),
        UncertaintyKind::Shannon => shannon(p, base),
        UncertaintyKind::Renyi => renyi(p, T::lit(spec.alpha.expect("validated")), base),
    })
}

/// `true` iff the descending partial sums of `p1` dominate those of `p2`.
pub fn majorizes<T: Real>(p1: &ProbDist<T>, p2: &ProbDist<T>) -> Result<bool> {
    check_dims(p1.dim(), p2.dim())?;
    let sorted = |p: &ProbDist<T>| {
        let mut v = p.probs().to_vec();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        v
    };
    let (a, b) = (sorted(p1), sorted(p2));
    let tol = T::lit(1e-10);
    let (mut sa, mut sb) = (T::zero(), T::zero());
    for (x, y) in a.iter().zip(&b) {
        sa += *x;
        sb += *y;
        if sa < sb - tol {
            return Ok(false);
        }
    }
    Ok(true)
}
