//! Distinguishability of two states (quantum) or two distributions (classical).
//!
//! Every kind has a quantum form [`qdiv`] and a classical form [`cdiv`]; the
//! classical form equals the quantum one on commuting (diagonal) pairs. The
//! gaugeable kinds also have an increasing gauge `G` with `D(φ, ψ) =
//! G(IF(φ, ψ))` on pure states; [`gauge_inverse`] maps a divergence value
//! back onto the infidelity scale.
//!
//! Support conventions: fractional powers act on the support only, relative
//! entropy is `+∞` when `supp ρ₁ ⊄ supp ρ₂`, classical Rényi terms with
//! `q_i = 0` contribute nothing, and a vanishing overlap sum maps to `+∞`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::linalg::{hermitian_eigen, hermitian_part, pseudo_pow, SUPPORT_TOL};
use crate::qstate::{check_dims, fidelity, DensityMatrix, ProbDist};
use crate::scalar::{ExtendedReal, LogBase, Real};
use crate::uncertainty::is_zero;

/// Weight of `ρ₁` on the kernel of `ρ₂` above which relative entropy is infinite.
const SUPPORT_LEAK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceKind {
    Trace,
    Infidelity,
    RenyiSandwiched,
    Tsallis,
    RelativeEntropy,
    HilbertSchmidt,
}

impl DivergenceKind {
    pub const ALL: [DivergenceKind; 6] = [
        DivergenceKind::Trace,
        DivergenceKind::Infidelity,
        DivergenceKind::RenyiSandwiched,
        DivergenceKind::Tsallis,
        DivergenceKind::RelativeEntropy,
        DivergenceKind::HilbertSchmidt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DivergenceKind::Trace => "trace",
            DivergenceKind::Infidelity => "infidelity",
            DivergenceKind::RenyiSandwiched => "renyi_sandwiched",
            DivergenceKind::Tsallis => "tsallis",
            DivergenceKind::RelativeEntropy => "relative_entropy",
            DivergenceKind::HilbertSchmidt => "hilbert_schmidt",
        }
    }

    pub fn is_gaugeable(self) -> bool {
        matches!(
            self,
            DivergenceKind::Trace
                | DivergenceKind::Infidelity
                | DivergenceKind::RenyiSandwiched
                | DivergenceKind::Tsallis
        )
    }
}

impl std::str::FromStr for DivergenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DivergenceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown divergence kind '{s}'")))
    }
}

/// A divergence kind together with its order parameter.
///
/// Rényi (sandwiched) needs `½ ≤ α < 1`, Tsallis needs `0 ≤ α < 1`; the
/// other kinds take no parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceSpec {
    pub kind: DivergenceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl DivergenceSpec {
    pub fn new(kind: DivergenceKind, alpha: Option<f64>) -> Result<Self> {
        let spec = Self { kind, alpha };
        spec.validate()?;
        Ok(spec)
    }

    pub fn simple(kind: DivergenceKind) -> Self {
        Self { kind, alpha: None }
    }

    pub fn trace() -> Self {
        Self::simple(DivergenceKind::Trace)
    }

    pub fn infidelity() -> Self {
        Self::simple(DivergenceKind::Infidelity)
    }

    pub fn relative_entropy() -> Self {
        Self::simple(DivergenceKind::RelativeEntropy)
    }

    pub fn hilbert_schmidt() -> Self {
        Self::simple(DivergenceKind::HilbertSchmidt)
    }

    pub fn renyi(alpha: f64) -> Result<Self> {
        Self::new(DivergenceKind::RenyiSandwiched, Some(alpha))
    }

    pub fn tsallis(alpha: f64) -> Result<Self> {
        Self::new(DivergenceKind::Tsallis, Some(alpha))
    }

    pub fn validate(&self) -> Result<()> {
        let out_of_range = |alpha: f64| Error::AlphaOutOfRange { kind: self.kind.name(), alpha };
        match (self.kind, self.alpha) {
            (DivergenceKind::RenyiSandwiched, Some(a)) if (0.5..1.0).contains(&a) => Ok(()),
            (DivergenceKind::Tsallis, Some(a)) if (0.0..1.0).contains(&a) => Ok(()),
            (DivergenceKind::RenyiSandwiched | DivergenceKind::Tsallis, a) => Err(out_of_range(a.unwrap_or(f64::NAN))),
            (_, None) => Ok(()),
            (_, Some(a)) => Err(out_of_range(a)),
        }
    }

    fn alpha_t<T: Real>(&self) -> T {
        T::lit(self.alpha.expect("validated spec carries alpha"))
    }
}

impl fmt::Display for DivergenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha {
            Some(a) => write!(f, "{}({a})", self.kind.name()),
            None => f.write_str(self.kind.name()),
        }
    }
}

/// Default α grid for suprema over the Rényi and Tsallis families.
pub fn default_alpha_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (0..10).map(|k| 0.5 + 0.05 * k as f64).collect();
    grid.push(0.99);
    grid
}

/// `1 − x`, with gaps at round-off level mapped to exactly 0 so that
/// `√(1 − x)` forms vanish on identical arguments.
pub(crate) fn deficit<T: Real>(x: T) -> T {
    let gap = T::one() - x;
    let floor = T::lit(1e-14).max(T::lit(16.0) * T::default_epsilon());
    if gap <= floor {
        T::zero()
    } else {
        gap
    }
}

fn sum<T: Real>(it: impl Iterator<Item = T>) -> T {
    it.fold(T::zero(), |a, b| a + b)
}

/// Quantum divergence `D(ρ₁, ρ₂)`.
pub fn qdiv<T: Real>(
    spec: &DivergenceSpec,
    rho1: &DensityMatrix<T>,
    rho2: &DensityMatrix<T>,
    base: LogBase,
) -> Result<ExtendedReal<T>> {
    spec.validate()?;
    check_dims(rho1.dim(), rho2.dim())?;
    let value = match spec.kind {
        DivergenceKind::Trace => {
            let diff = rho1.entries() - rho2.entries();
            let (vals, _) = hermitian_eigen(&hermitian_part(&diff));
            sum(vals.iter().map(|&l| l.magnitude())) * T::lit(0.5)
        }
        DivergenceKind::Infidelity => {
            let f = fidelity(rho1, rho2)?;
            deficit(f * f).sqrt()
        }
        DivergenceKind::RenyiSandwiched => {
            let alpha: T = spec.alpha_t();
            let s = (T::one() - alpha) / (T::lit(2.0) * alpha);
            let side = rho2.power(s);
            let inner = hermitian_part(&(&side * rho1.entries() * &side));
            let (vals, _) = hermitian_eigen(&inner);
            let overlap = sum(vals.iter().map(|&l| pseudo_pow(l, alpha)));
            if overlap <= T::zero() {
                return Ok(ExtendedReal::Infinite);
            }
            base.from_nats(overlap.ln() / (alpha - T::one()))
        }
        DivergenceKind::Tsallis => {
            let alpha: T = spec.alpha_t();
            let a = rho1.power(alpha);
            let b = rho2.power(T::one() - alpha);
            let overlap = crate::qstate::linalg::trace_product_re(&a, &b);
            deficit(overlap) / (T::one() - alpha)
        }
        DivergenceKind::RelativeEntropy => return relative_entropy(rho1, rho2, base),
        DivergenceKind::HilbertSchmidt => (rho1.entries() - rho2.entries()).norm(),
    };
    Ok(ExtendedReal::Finite(value.max(T::zero())))
}

fn relative_entropy<T: Real>(
    rho1: &DensityMatrix<T>,
    rho2: &DensityMatrix<T>,
    base: LogBase,
) -> Result<ExtendedReal<T>> {
    let neg_entropy = sum(rho1.eigenvalues().iter().map(|&l| if is_zero(l) { T::zero() } else { l * l.ln() }));
    let m = rho1.entries() * rho2.eigenvectors();
    let mut cross = T::zero();
    for (k, &mu) in rho2.eigenvalues().iter().enumerate() {
        let weight = rho2.eigenvectors().column(k).dotc(&m.column(k)).re;
        if mu <= T::lit(SUPPORT_TOL) {
            if weight > T::lit(SUPPORT_LEAK_TOL) {
                return Ok(ExtendedReal::Infinite);
            }
        } else {
            cross += weight * mu.ln();
        }
    }
    Ok(ExtendedReal::Finite(base.from_nats(neg_entropy - cross).max(T::zero())))
}

/// `Σ q_i^α q′_i^(1−α)` over indices where both are nonzero (`α = 0`
/// counts the mass of `q′` on the support of `q`).
fn overlap_sum<T: Real>(q: &ProbDist<T>, qp: &ProbDist<T>, alpha: T) -> T {
    let one_minus = T::one() - alpha;
    sum(q.probs().iter().zip(qp.probs()).map(|(&a, &b)| {
        if is_zero(a) || is_zero(b) {
            T::zero()
        } else {
            pseudo_pow(a, alpha) * pseudo_pow(b, one_minus)
        }
    }))
}

/// Classical Rényi divergence `(1/(α−1)) log Σ q^α q′^(1−α)` for any
/// `α ≥ 0, α ≠ 1`. For `α > 1` any `q_i > 0` with `q′_i = 0` gives `+∞`.
pub fn classical_renyi<T: Real>(q: &ProbDist<T>, qp: &ProbDist<T>, alpha: T, base: LogBase) -> Result<ExtendedReal<T>> {
    check_dims(q.dim(), qp.dim())?;
    if !(alpha >= T::zero()) || alpha == T::one() {
        return Err(Error::AlphaOutOfRange { kind: "classical renyi", alpha: alpha.as_f64() });
    }
    if alpha > T::one() && q.probs().iter().zip(qp.probs()).any(|(&a, &b)| !is_zero(a) && is_zero(b)) {
        return Ok(ExtendedReal::Infinite);
    }
    let s = overlap_sum(q, qp, alpha);
    if s <= T::zero() {
        return Ok(ExtendedReal::Infinite);
    }
    Ok(ExtendedReal::Finite(base.from_nats(s.ln() / (alpha - T::one())).max(T::zero())))
}

/// Classical relative entropy `Σ q_i log(q_i / q′_i)`.
pub fn kl_divergence<T: Real>(q: &ProbDist<T>, qp: &ProbDist<T>, base: LogBase) -> Result<ExtendedReal<T>> {
    check_dims(q.dim(), qp.dim())?;
    let mut nats = T::zero();
    for (&a, &b) in q.probs().iter().zip(qp.probs()) {
        if is_zero(a) {
            continue;
        }
        if is_zero(b) {
            return Ok(ExtendedReal::Infinite);
        }
        nats += a * (a / b).ln();
    }
    Ok(ExtendedReal::Finite(base.from_nats(nats).max(T::zero())))
}

/// `½ Σ |q_i − q′_i|`.
pub fn l1_distance<T: Real>(q: &ProbDist<T>, qp: &ProbDist<T>) -> T {
    sum(q.probs().iter().zip(qp.probs()).map(|(&a, &b)| (a - b).magnitude())) * T::lit(0.5)
}

/// `√(1 − (Σ √(q_i q′_i))²)`.
pub fn classical_infidelity<T: Real>(q: &ProbDist<T>, qp: &ProbDist<T>) -> T {
    let bc = sum(q.probs().iter().zip(qp.probs()).map(|(&a, &b)| (a * b).sqrt()));
    deficit(bc * bc).sqrt()
}

/// `√Σ (q_i − q′_i)²`.
pub fn euclidean_distance<T: Real>(q: &ProbDist<T>, qp: &ProbDist<T>) -> T {
    sum(q.probs().iter().zip(qp.probs()).map(|(&a, &b)| (a - b) * (a - b))).sqrt()
}

/// Classical counterpart of [`qdiv`].
pub fn cdiv<T: Real>(
    spec: &DivergenceSpec,
    q: &ProbDist<T>,
    qp: &ProbDist<T>,
    base: LogBase,
) -> Result<ExtendedReal<T>> {
    spec.validate()?;
    check_dims(q.dim(), qp.dim())?;
    Ok(match spec.kind {
        DivergenceKind::Trace => ExtendedReal::Finite(l1_distance(q, qp)),
        DivergenceKind::Infidelity => ExtendedReal::Finite(classical_infidelity(q, qp)),
        DivergenceKind::RenyiSandwiched => classical_renyi(q, qp, spec.alpha_t(), base)?,
        DivergenceKind::Tsallis => {
            let alpha: T = spec.alpha_t();
            let s = overlap_sum(q, qp, alpha);
            ExtendedReal::Finite(deficit(s) / (T::one() - alpha))
        }
        DivergenceKind::RelativeEntropy => kl_divergence(q, qp, base)?,
        DivergenceKind::HilbertSchmidt => ExtendedReal::Finite(euclidean_distance(q, qp)),
    })
}

/// The gauge `G_D`: divergence between two pure states whose infidelity is `x`.
pub fn gauge<T: Real>(spec: &DivergenceSpec, x: T, base: LogBase) -> Result<ExtendedReal<T>> {
    spec.validate()?;
    let x = x.clamp(T::zero(), T::one());
    match spec.kind {
        DivergenceKind::Trace | DivergenceKind::Infidelity => Ok(ExtendedReal::Finite(x)),
        DivergenceKind::RenyiSandwiched => {
            let alpha: T = spec.alpha_t();
            let overlap = T::one() - x * x;
            if overlap <= T::zero() {
                return Ok(ExtendedReal::Infinite);
            }
            Ok(ExtendedReal::Finite(base.from_nats(alpha / (alpha - T::one()) * overlap.ln())))
        }
        DivergenceKind::Tsallis => {
            let alpha: T = spec.alpha_t();
            Ok(ExtendedReal::Finite(x * x / (T::one() - alpha)))
        }
        other => Err(Error::NotGaugeable(other.name())),
    }
}

/// `G_D⁻¹(value)`, clipped to `[0, 1]`.
pub fn gauge_inverse<T: Real>(spec: &DivergenceSpec, value: ExtendedReal<T>, base: LogBase) -> Result<T> {
    spec.validate()?;
    let v = match value {
        ExtendedReal::Infinite => {
            return if spec.kind.is_gaugeable() { Ok(T::one()) } else { Err(Error::NotGaugeable(spec.kind.name())) }
        }
        ExtendedReal::Finite(v) => v.max(T::zero()),
    };
    let x = match spec.kind {
        DivergenceKind::Trace | DivergenceKind::Infidelity => v,
        DivergenceKind::RenyiSandwiched => {
            let alpha: T = spec.alpha_t();
            let exponent = (alpha - T::one()) * base.to_nats(v) / alpha;
            deficit(exponent.exp()).sqrt()
        }
        DivergenceKind::Tsallis => {
            let alpha: T = spec.alpha_t();
            ((T::one() - alpha) * v).sqrt()
        }
        other => return Err(Error::NotGaugeable(other.name())),
    };
    Ok(x.clamp(T::zero(), T::one()))
}

/// Gauged classical divergence `G_D⁻¹(cdiv(q, q′))`.
pub fn gauged_cdiv<T: Real>(spec: &DivergenceSpec, q: &ProbDist<T>, qp: &ProbDist<T>, base: LogBase) -> Result<T> {
    gauge_inverse(spec, cdiv(spec, q, qp, base)?, base)
}
