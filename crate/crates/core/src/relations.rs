//! The catalog of uncertainty–disturbance relations.
//!
//! Each relation compares an uncertainty of `p` (left-hand side) with a
//! disturbance between `q` and `q′ = Cᵀp` (right-hand side), except the
//! entropic uncertainty relations, which compare a sum of entropies with
//! `−log c`, `c = max_ij c_ij`.
//!
//! Where the tabulated form of a relation differs from what the data
//! processing chain actually proves, both are kept: [`Variant::Canonical`]
//! is the proven form, [`Variant::Printed`] the tabulated one.
//!
//! | id | canonical lhs | rhs |
//! |----|---------------|-----|
//! | `U_tr` | `δ(p)` | `½Σ|q−q′|` |
//! | `U_tr_prime` | `½(‖p‖_{1/2} − 1)` | `½Σ|q−q′|` |
//! | `U_rd(α)` | `H_{1/α}(p)` | `D_α(q‖q′)` |
//! | `U_if` | `H₂(p)` | `D_{1/2}(q‖q′)` (printed: `H_{1/2}(p)` vs `D₂`) |
//! | `U_ts(α)` | `H_{2−α}(p)` | `D_α(q‖q′)` (printed lhs has a `1/(2−α)` prefactor) |
//! | `U_re` | `H(p)` | `KL(q‖q′)` |
//! | `U_hs` | `δ(p)` | `√Σ(q−q′)²` |
//! | `THM1_UNIVERSAL` | `δ(p)` | [`universal_bound`] |
//! | `EUR_TS(α)` | `H_{2−α}(p) + H_α(q)` | `−log c` (printed: `H_{2−α}(q)/(2−α) + H_α(p)`) |
//! | `EUR_MU(α,β)` | `H_α(p) + H_β(q)` | `−log c` |

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divergence::{
    cdiv, classical_infidelity, classical_renyi, default_alpha_grid, euclidean_distance, gauged_cdiv, kl_divergence,
    l1_distance, qdiv, DivergenceSpec,
};
use crate::error::{Error, Result};
use crate::qstate::{
    check_dims, dephase, haar_pure_state, haar_unitary, hilbert_schmidt_state, outcome_dist, sequential_dist,
    DensityMatrix, Direction, OrthonormalBasis, OverlapMatrix, ProbDist,
};
use crate::rng::{stream_rng, CHUNK_SIZE};
use crate::scalar::{ExtendedReal, LogBase, Real};
use crate::uncertainty::{delta, half_norm, renyi, shannon};

/// Relative slack of a verdict: satisfied iff `margin ≥ −VERDICT_TOL·max(1, |lhs|, |rhs|)`.
pub const VERDICT_TOL: f64 = 1e-9;

/// A counterexample must beat the verdict by this much.
pub const COUNTEREXAMPLE_MARGIN: f64 = 1e-6;

/// Tolerance on `q′ = Cᵀp` when the overlap matrix is supplied.
pub const TRIPLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    #[serde(rename = "U_tr")]
    UTr,
    #[serde(rename = "U_tr_prime")]
    UTrPrime,
    #[serde(rename = "U_rd")]
    URd,
    #[serde(rename = "U_if")]
    UIf,
    #[serde(rename = "U_ts")]
    UTs,
    #[serde(rename = "U_re")]
    URe,
    #[serde(rename = "U_hs")]
    UHs,
    #[serde(rename = "THM1_UNIVERSAL")]
    Thm1Universal,
    #[serde(rename = "EUR_TS")]
    EurTs,
    #[serde(rename = "EUR_MU")]
    EurMu,
}

impl RelationKind {
    pub const ALL: [RelationKind; 10] = [
        RelationKind::UTr,
        RelationKind::UTrPrime,
        RelationKind::URd,
        RelationKind::UIf,
        RelationKind::UTs,
        RelationKind::URe,
        RelationKind::UHs,
        RelationKind::Thm1Universal,
        RelationKind::EurTs,
        RelationKind::EurMu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::UTr => "U_tr",
            RelationKind::UTrPrime => "U_tr_prime",
            RelationKind::URd => "U_rd",
            RelationKind::UIf => "U_if",
            RelationKind::UTs => "U_ts",
            RelationKind::URe => "U_re",
            RelationKind::UHs => "U_hs",
            RelationKind::Thm1Universal => "THM1_UNIVERSAL",
            RelationKind::EurTs => "EUR_TS",
            RelationKind::EurMu => "EUR_MU",
        }
    }

    /// Whether a printed form distinct from the canonical one exists.
    pub fn has_printed(self) -> bool {
        matches!(self, RelationKind::UIf | RelationKind::UTs | RelationKind::EurTs)
    }

    pub fn uses_alpha(self) -> bool {
        matches!(self, RelationKind::URd | RelationKind::UTs | RelationKind::EurTs | RelationKind::EurMu)
    }
}

impl std::str::FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = match s {
            "U_tr'" | "U_trp" => "U_tr_prime",
            "MU" => "EUR_MU",
            "THM1" => "THM1_UNIVERSAL",
            other => other,
        };
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name() == normalized)
            .ok_or_else(|| Error::InvalidInput(format!("unknown relation '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Printed,
    #[default]
    Canonical,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Canonical => "canonical",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Variant::Printed),
            "canonical" => Ok(Variant::Canonical),
            other => Err(Error::InvalidInput(format!("unknown variant '{other}'"))),
        }
    }
}

/// A fully parameterized relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationId {
    pub id: RelationKind,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

impl RelationId {
    /// Builds and validates. For `EUR_MU` a missing `beta` is completed to
    /// the conjugate index `α/(2α − 1)`.
    pub fn new(id: RelationKind, variant: Variant, alpha: Option<f64>, beta: Option<f64>) -> Result<Self> {
        let beta = match (id, alpha, beta) {
            (RelationKind::EurMu, Some(a), None) if a > 0.5 => Some(a / (2.0 * a - 1.0)),
            (RelationKind::EurMu, Some(0.5), None) => Some(f64::INFINITY),
            _ => beta,
        };
        let rel = Self { id, variant, alpha, beta };
        rel.validate()?;
        Ok(rel)
    }

    pub fn canonical(id: RelationKind) -> Self {
        Self { id, variant: Variant::Canonical, alpha: None, beta: None }
    }

    pub fn with_alpha(id: RelationKind, variant: Variant, alpha: f64) -> Result<Self> {
        Self::new(id, variant, Some(alpha), None)
    }

    /// Maassen–Uffink with `α = β = 1` (Shannon entropies).
    pub fn mu_shannon() -> Self {
        Self { id: RelationKind::EurMu, variant: Variant::Canonical, alpha: Some(1.0), beta: Some(1.0) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |alpha: f64| Error::AlphaOutOfRange { kind: self.id.name(), alpha };
        if self.variant == Variant::Printed && !self.id.has_printed() {
            return Err(Error::InvalidInput(format!(
                "relation {} has no printed variant distinct from the canonical one",
                self.id.name()
            )));
        }
        match self.id {
            RelationKind::URd => match self.alpha {
                Some(a) if (0.5..1.0).contains(&a) => {}
                a => return Err(bad(a.unwrap_or(f64::NAN))),
            },
            RelationKind::UTs | RelationKind::EurTs => match self.alpha {
                Some(a) if (0.0..1.0).contains(&a) => {}
                a => return Err(bad(a.unwrap_or(f64::NAN))),
            },
            RelationKind::EurMu => {
                let (a, b) = match (self.alpha, self.beta) {
                    (Some(a), Some(b)) => (a, b),
                    (a, _) => return Err(bad(a.unwrap_or(f64::NAN))),
                };
                if !(a >= 0.5 && b >= 0.5) || (1.0 / a + 1.0 / b - 2.0).abs() > 1e-9 {
                    return Err(bad(a));
                }
            }
            _ => {
                if let Some(a) = self.alpha {
                    return Err(bad(a));
                }
            }
        }
        if self.id != RelationKind::EurMu && self.beta.is_some() {
            return Err(Error::InvalidInput(format!("relation {} takes no beta", self.id.name())));
        }
        Ok(())
    }

    fn alpha_t<T: Real>(&self) -> T {
        T::lit(self.alpha.expect("validated relation carries alpha"))
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id.name())?;
        match (self.alpha, self.beta) {
            (Some(a), Some(b)) => write!(f, "({a},{b})")?,
            (Some(a), None) => write!(f, "({a})")?,
            _ => {}
        }
        if self.id.has_printed() {
            write!(f, "[{}]", self.variant.name())?;
        }
        Ok(())
    }
}

/// Outcome of evaluating one relation instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationVerdict<T: Real> {
    pub lhs: ExtendedReal<T>,
    pub rhs: ExtendedReal<T>,
    /// `lhs − rhs`; `±∞` when exactly one side is infinite.
    pub margin: T,
    pub satisfied: bool,
}

impl<T: Real> RelationVerdict<T> {
    pub fn new(lhs: ExtendedReal<T>, rhs: ExtendedReal<T>) -> Self {
        let margin = lhs.difference(rhs);
        let scale = [lhs, rhs].iter().filter_map(|v| v.finite()).fold(T::one(), |acc, v| acc.max(v.magnitude()));
        let satisfied = margin >= -(T::lit(VERDICT_TOL) * scale);
        Self { lhs, rhs, margin, satisfied }
    }
}

fn finite<T: Real>(v: T) -> ExtendedReal<T> {
    ExtendedReal::Finite(v)
}

/// Entropy of any order `a ≥ 0`, including `a = +∞` (min-entropy).
fn entropy_of_order<T: Real>(p: &ProbDist<T>, a: f64, base: LogBase) -> T {
    if a.is_infinite() {
        let max = p.probs().iter().copied().fold(T::zero(), |m, x| m.max(x));
        return -base.log(max);
    }
    renyi(p, T::lit(a), base)
}

/// Evaluates `rel` on the triple `(p, q, q′)`.
///
/// `overlap` is required by the entropic relations (they use `c`); when it is
/// given, `qp` must equal `Cᵀp` to [`TRIPLE_TOL`].
pub fn eval_relation<T: Real>(
    rel: &RelationId,
    p: &ProbDist<T>,
    q: &ProbDist<T>,
    qp: &ProbDist<T>,
    overlap: Option<&OverlapMatrix<T>>,
    base: LogBase,
) -> Result<RelationVerdict<T>> {
    rel.validate()?;
    check_dims(p.dim(), q.dim())?;
    check_dims(q.dim(), qp.dim())?;
    if let Some(c) = overlap {
        let expected = sequential_dist(p, c, Direction::Forward)?;
        let dev = expected.max_abs_diff(qp);
        if dev > T::lit(TRIPLE_TOL) {
            return Err(Error::InconsistentTriple(dev.as_f64()));
        }
    }
    let entropic_bound = || -> Result<ExtendedReal<T>> {
        let c = overlap.ok_or(Error::MissingOverlap(rel.id.name()))?;
        Ok(finite(-base.log(c.cmax())))
    };
    let verdict = match (rel.id, rel.variant) {
        (RelationKind::UTr, _) => RelationVerdict::new(finite(delta(p)), finite(l1_distance(q, qp))),
        (RelationKind::UTrPrime, _) => RelationVerdict::new(finite(half_norm(p)), finite(l1_distance(q, qp))),
        (RelationKind::URd, _) => {
            let a: T = rel.alpha_t();
            RelationVerdict::new(finite(renyi(p, T::one() / a, base)), classical_renyi(q, qp, a, base)?)
        }
        (RelationKind::UIf, Variant::Canonical) => {
            RelationVerdict::new(finite(renyi(p, T::lit(2.0), base)), classical_renyi(q, qp, T::lit(0.5), base)?)
        }
        (RelationKind::UIf, Variant::Printed) => {
            RelationVerdict::new(finite(renyi(p, T::lit(0.5), base)), classical_renyi(q, qp, T::lit(2.0), base)?)
        }
        (RelationKind::UTs, variant) => {
            let a: T = rel.alpha_t();
            let order = T::lit(2.0) - a;
            let mut lhs = renyi(p, order, base);
            if variant == Variant::Printed {
                lhs /= order;
            }
            RelationVerdict::new(finite(lhs), classical_renyi(q, qp, a, base)?)
        }
        (RelationKind::URe, _) => RelationVerdict::new(finite(shannon(p, base)), kl_divergence(q, qp, base)?),
        (RelationKind::UHs, _) => RelationVerdict::new(finite(delta(p)), finite(euclidean_distance(q, qp))),
        (RelationKind::Thm1Universal, _) => {
            RelationVerdict::new(finite(delta(p)), finite(universal_bound(q, qp, &default_alpha_grid())?))
        }
        (RelationKind::EurTs, variant) => {
            let a: T = rel.alpha_t();
            let order = T::lit(2.0) - a;
            let lhs = match variant {
                Variant::Canonical => renyi(p, order, base) + renyi(q, a, base),
                Variant::Printed => renyi(q, order, base) / order + renyi(p, a, base),
            };
            RelationVerdict::new(finite(lhs), entropic_bound()?)
        }
        (RelationKind::EurMu, _) => {
            let lhs = entropy_of_order(p, rel.alpha.expect("validated"), base)
                + entropy_of_order(q, rel.beta.expect("validated"), base);
            RelationVerdict::new(finite(lhs), entropic_bound()?)
        }
    };
    Ok(verdict)
}

/// Evaluates `rel` for the order A→B on `(p, q, Cᵀp)` and for the reversed
/// order B→A on `(q, p, Cq)`. `EUR_MU` is symmetric and is evaluated once.
pub fn eval_with_dual<T: Real>(
    rel: &RelationId,
    p: &ProbDist<T>,
    q: &ProbDist<T>,
    overlap: &OverlapMatrix<T>,
    base: LogBase,
) -> Result<(RelationVerdict<T>, RelationVerdict<T>)> {
    check_dims(p.dim(), overlap.dim())?;
    check_dims(q.dim(), overlap.dim())?;
    let qp = sequential_dist(p, overlap, Direction::Forward)?;
    let forward = eval_relation(rel, p, q, &qp, Some(overlap), base)?;
    if rel.id == RelationKind::EurMu {
        return Ok((forward, forward));
    }
    let pp = sequential_dist(q, overlap, Direction::Dual)?;
    let dual = eval_relation(rel, q, p, &pp, Some(&overlap.transpose()), base)?;
    Ok((forward, dual))
}

/// Largest gauged classical disturbance over the gaugeable families:
/// trace distance, infidelity, and the gauged Rényi (`α ∈ grid ∩ [½, 1)`)
/// and Tsallis (`α ∈ grid`) divergences.
pub fn universal_bound<T: Real>(q: &ProbDist<T>, qp: &ProbDist<T>, alpha_grid: &[f64]) -> Result<T> {
    check_dims(q.dim(), qp.dim())?;
    // gauged values do not depend on the log base
    let base = LogBase::E;
    let mut best = l1_distance(q, qp).max(classical_infidelity(q, qp));
    for &a in alpha_grid {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::AlphaOutOfRange { kind: "alpha grid", alpha: a });
        }
        if a >= 0.5 {
            best = best.max(gauged_cdiv(&DivergenceSpec::renyi(a)?, q, qp, base)?);
        }
        best = best.max(gauged_cdiv(&DivergenceSpec::tsallis(a)?, q, qp, base)?);
    }
    Ok(best.clamp(T::zero(), T::one()))
}

/// `D(ρ, ρ_A) − D(q, q′)`: slack of the data processing step under `Φ_B`.
pub fn dpi_margin<T: Real>(
    spec: &DivergenceSpec,
    rho: &DensityMatrix<T>,
    a: &OrthonormalBasis<T>,
    b: &OrthonormalBasis<T>,
    base: LogBase,
) -> Result<T> {
    let rho_a = dephase(rho, a)?;
    let q = outcome_dist(rho, b)?;
    let qp = outcome_dist(&rho_a, b)?;
    let quantum = qdiv(spec, rho, &rho_a, base)?;
    let classical = cdiv(spec, &q, &qp, base)?;
    Ok(quantum.difference(classical))
}

/// A sampled instance violating a relation.
#[derive(Debug, Clone)]
pub struct Counterexample<T: Real> {
    /// Position in the sample sequence.
    pub index: u64,
    pub rho: DensityMatrix<T>,
    pub basis_a: OrthonormalBasis<T>,
    pub basis_b: OrthonormalBasis<T>,
    pub p: ProbDist<T>,
    pub q: ProbDist<T>,
    pub qp: ProbDist<T>,
    pub verdict: RelationVerdict<T>,
}

/// Draws one random instance `(ρ, A, B)`: `ρ` is a Haar pure state or a
/// Hilbert–Schmidt mixed state with equal probability, `A` and `B` are the
/// columns of independent Haar unitaries.
pub fn random_instance<T: Real, R: rand::Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
) -> (DensityMatrix<T>, OrthonormalBasis<T>, OrthonormalBasis<T>) {
    let rho = if rng.random::<bool>() { haar_pure_state(rng, dim) } else { hilbert_schmidt_state(rng, dim) };
    let a = haar_unitary(rng, dim);
    let b = haar_unitary(rng, dim);
    (rho, a, b)
}

/// Searches `budget` random instances for a violation of `rel` by more than
/// [`COUNTEREXAMPLE_MARGIN`]. The reported instance is the first one in
/// sample order, independent of thread scheduling.
pub fn search_counterexample<T: Real>(
    rel: &RelationId,
    dim: usize,
    budget: u64,
    seed: u64,
    base: LogBase,
) -> Result<Option<Counterexample<T>>> {
    rel.validate()?;
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if budget == 0 {
        return Err(Error::InvalidInput("search budget must be at least 1".into()));
    }
    let chunks = budget.div_ceil(CHUNK_SIZE);
    let threshold = -T::lit(COUNTEREXAMPLE_MARGIN);
    let scan = |k: u64| -> Result<Option<Counterexample<T>>> {
        let mut rng = stream_rng(seed, k);
        let start = k * CHUNK_SIZE;
        for index in start..(start + CHUNK_SIZE).min(budget) {
            let (rho, basis_a, basis_b) = random_instance::<T, _>(&mut rng, dim);
            let p = outcome_dist(&rho, &basis_a)?;
            let q = outcome_dist(&rho, &basis_b)?;
            let overlap = OverlapMatrix::between(&basis_a, &basis_b)?;
            let qp = sequential_dist(&p, &overlap, Direction::Forward)?;
            let verdict = eval_relation(rel, &p, &q, &qp, Some(&overlap), base)?;
            if verdict.margin < threshold {
                return Ok(Some(Counterexample { index, rho, basis_a, basis_b, p, q, qp, verdict }));
            }
        }
        Ok(None)
    };
    (0..chunks)
        .into_par_iter()
        .map(scan)
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// Every canonical relation at the given α grids (used by soundness sweeps).
pub fn canonical_catalog(renyi_grid: &[f64], tsallis_grid: &[f64]) -> Result<Vec<RelationId>> {
    let mut out = vec![
        RelationId::canonical(RelationKind::UTr),
        RelationId::canonical(RelationKind::UTrPrime),
        RelationId::canonical(RelationKind::UIf),
        RelationId::canonical(RelationKind::URe),
        RelationId::canonical(RelationKind::UHs),
        RelationId::canonical(RelationKind::Thm1Universal),
        RelationId::mu_shannon(),
        RelationId::new(RelationKind::EurMu, Variant::Canonical, Some(0.75), None)?,
    ];
    for &a in renyi_grid {
        out.push(RelationId::with_alpha(RelationKind::URd, Variant::Canonical, a)?);
    }
    for &a in tsallis_grid {
        out.push(RelationId::with_alpha(RelationKind::UTs, Variant::Canonical, a)?);
        out.push(RelationId::with_alpha(RelationKind::EurTs, Variant::Canonical, a)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::CMatrix;
    use num_complex::Complex;

    const B: LogBase = LogBase::Two;

    fn dist(v: &[f64]) -> ProbDist<f64> {
        ProbDist::new(v.to_vec()).unwrap()
    }

    /// `ρ = |+⟩⟨+|`, `A = Z`, `B = X`.
    fn f1() -> (ProbDist<f64>, ProbDist<f64>, ProbDist<f64>, OverlapMatrix<f64>) {
        (dist(&[0.5, 0.5]), dist(&[1.0, 0.0]), dist(&[0.5, 0.5]), OverlapMatrix::qubit(0.5).unwrap())
    }

    fn ts(variant: Variant, a: f64) -> RelationId {
        RelationId::with_alpha(RelationKind::UTs, variant, a).unwrap()
    }

    #[test]
    fn u_tr_at_f1() {
        let (p, q, qp, c) = f1();
        let v = eval_relation(&RelationId::canonical(RelationKind::UTr), &p, &q, &qp, Some(&c), B).unwrap();
        assert!((v.lhs.to_real() - 0.5_f64.sqrt()).abs() < 1e-12);
        assert!((v.rhs.to_real() - 0.5).abs() < 1e-12);
        assert!((v.margin - (0.5_f64.sqrt() - 0.5)).abs() < 1e-12);
        assert!(v.satisfied);
    }

    #[test]
    fn u_ts_variants_at_f1() {
        let (p, q, qp, c) = f1();
        let printed = eval_relation(&ts(Variant::Printed, 0.5), &p, &q, &qp, Some(&c), B).unwrap();
        assert!((printed.lhs.to_real() - 2.0 / 3.0).abs() < 1e-12);
        assert!((printed.rhs.to_real() - 1.0).abs() < 1e-12);
        assert!((printed.margin + 1.0 / 3.0).abs() < 1e-12);
        assert!(!printed.satisfied);
        let canonical = eval_relation(&ts(Variant::Canonical, 0.5), &p, &q, &qp, Some(&c), B).unwrap();
        assert!((canonical.lhs.to_real() - 1.0).abs() < 1e-12);
        assert!(canonical.margin.abs() < 1e-12);
        assert!(canonical.satisfied);
    }

    #[test]
    fn zero_disturbance_when_bases_agree() {
        let p = dist(&[0.3, 0.7]);
        let c = OverlapMatrix::identity(2).unwrap();
        for rel in canonical_catalog(&[0.5, 0.9], &[0.0, 0.5]).unwrap() {
            if matches!(rel.id, RelationKind::EurTs | RelationKind::EurMu) {
                continue;
            }
            let v = eval_relation(&rel, &p, &p, &p, Some(&c), B).unwrap();
            assert!(v.rhs.to_real().abs() < 1e-12, "{rel}");
            assert!(v.satisfied, "{rel}");
        }
    }

    #[test]
    fn mu_tight_for_unbiased_qubit() {
        let (p, q, qp, c) = f1();
        let v = eval_relation(&RelationId::mu_shannon(), &p, &q, &qp, Some(&c), B).unwrap();
        assert!((v.lhs.to_real() - 1.0).abs() < 1e-12);
        assert!((v.rhs.to_real() - 1.0).abs() < 1e-12);
        assert!(v.margin.abs() < 1e-12 && v.satisfied);
    }

    #[test]
    fn printed_eur_ts_violated_on_eigenstate() {
        // ρ = |0⟩⟨0|, A = Z, B = X
        let p = dist(&[1.0, 0.0]);
        let q = dist(&[0.5, 0.5]);
        let c = OverlapMatrix::qubit(0.5).unwrap();
        let qp = sequential_dist(&p, &c, Direction::Forward).unwrap();
        let rel = RelationId::with_alpha(RelationKind::EurTs, Variant::Printed, 0.5).unwrap();
        let v = eval_relation(&rel, &p, &q, &qp, Some(&c), B).unwrap();
        assert!((v.margin + 1.0 / 3.0).abs() < 1e-12, "{}", v.margin);
        let rel = RelationId::with_alpha(RelationKind::EurTs, Variant::Canonical, 0.5).unwrap();
        let v = eval_relation(&rel, &p, &q, &qp, Some(&c), B).unwrap();
        assert!(v.margin.abs() < 1e-12 && v.satisfied);
    }

    #[test]
    fn dual_at_f1() {
        let (p, q, _, c) = f1();
        let (fwd, dual) = eval_with_dual(&RelationId::canonical(RelationKind::UTr), &p, &q, &c, B).unwrap();
        assert!((fwd.margin - (0.5_f64.sqrt() - 0.5)).abs() < 1e-12);
        assert!(dual.lhs.to_real().abs() < 1e-12);
        assert!(dual.rhs.to_real().abs() < 1e-12);
        assert!(dual.satisfied);
        let (a, b) = eval_with_dual(&RelationId::mu_shannon(), &p, &q, &c, B).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identity_overlap_zeroes_both_sides() {
        // A = B forces q = p
        let p = dist(&[0.2, 0.8]);
        let q = p.clone();
        let c = OverlapMatrix::identity(2).unwrap();
        let (f, d) = eval_with_dual(&RelationId::canonical(RelationKind::UTr), &p, &q, &c, B).unwrap();
        assert_eq!(f.rhs.to_real(), 0.0);
        assert_eq!(d.rhs.to_real(), 0.0);
    }

    #[test]
    fn errors() {
        let (p, q, qp, c) = f1();
        assert!(matches!(
            eval_relation(&RelationId::mu_shannon(), &p, &q, &qp, None, B),
            Err(Error::MissingOverlap(_))
        ));
        assert!(matches!(
            eval_relation(&RelationId::canonical(RelationKind::UTr), &p, &q, &q, Some(&c), B),
            Err(Error::InconsistentTriple(_))
        ));
        assert!(RelationId::with_alpha(RelationKind::URd, Variant::Canonical, 0.3).is_err());
        assert!(RelationId::with_alpha(RelationKind::UTs, Variant::Canonical, 1.0).is_err());
        assert!(RelationId::new(RelationKind::EurMu, Variant::Canonical, Some(1.0), Some(2.0)).is_err());
        assert!(RelationId::new(RelationKind::UTr, Variant::Printed, None, None).is_err());
        assert!(RelationId::new(RelationKind::UTr, Variant::Canonical, Some(0.5), None).is_err());
        let conj = RelationId::new(RelationKind::EurMu, Variant::Canonical, Some(0.75), None).unwrap();
        assert!((conj.beta.unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn universal_bound_examples() {
        let grid = default_alpha_grid();
        let v = universal_bound(&dist(&[1.0, 0.0]), &dist(&[0.5, 0.5]), &grid).unwrap();
        assert!((v - 0.5_f64.sqrt()).abs() < 1e-12, "{v}");
        let q = dist(&[0.3, 0.7]);
        assert_eq!(universal_bound(&q, &q, &grid).unwrap(), 0.0);
        let v = universal_bound(&dist(&[0.75, 0.25]), &dist(&[0.5, 0.5]), &grid).unwrap();
        assert!(v >= 0.25 - 1e-12);
        assert!(universal_bound(&q, &q, &[1.2]).is_err());
    }

    #[test]
    fn dpi_margin_examples() {
        let plus = DensityMatrix::new(CMatrix::from_element(2, 2, Complex::new(0.5, 0.0))).unwrap();
        let z = OrthonormalBasis::computational(2).unwrap();
        let x = OrthonormalBasis::fourier(2).unwrap();
        let m: f64 = dpi_margin(&DivergenceSpec::relative_entropy(), &plus, &z, &x, B).unwrap();
        assert!(m.abs() < 1e-12);
        let m: f64 = dpi_margin(&DivergenceSpec::trace(), &plus, &z, &x, B).unwrap();
        assert!(m.abs() < 1e-12);
        let diag = DensityMatrix::diagonal(&dist(&[0.3, 0.7])).unwrap();
        for spec in [DivergenceSpec::trace(), DivergenceSpec::renyi(0.7).unwrap(), DivergenceSpec::hilbert_schmidt()] {
            assert!(dpi_margin(&spec, &diag, &z, &x, B).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn search_finds_printed_violation() {
        let ce = search_counterexample::<f64>(&ts(Variant::Printed, 0.5), 2, 10_000, 7, B)
            .unwrap()
            .expect("printed form is violated");
        assert!(ce.verdict.margin < -1e-6);
        let again = search_counterexample::<f64>(&ts(Variant::Printed, 0.5), 2, 10_000, 7, B).unwrap().unwrap();
        assert_eq!(ce.index, again.index);
        assert!(search_counterexample::<f64>(&ts(Variant::Canonical, 0.5), 2, 5_000, 7, B).unwrap().is_none());
    }

    #[test]
    fn verdict_infinity_rules() {
        let v = RelationVerdict::new(ExtendedReal::Finite(3.0), ExtendedReal::<f64>::Infinite);
        assert!(!v.satisfied && v.margin == f64::NEG_INFINITY);
        let v = RelationVerdict::new(ExtendedReal::<f64>::Infinite, ExtendedReal::Finite(3.0));
        assert!(v.satisfied);
        let v = RelationVerdict::new(ExtendedReal::Finite(1.0), ExtendedReal::Finite(1.0 + 5e-10));
        assert!(v.satisfied);
        let v = RelationVerdict::new(ExtendedReal::Finite(1.0), ExtendedReal::Finite(1.0 + 5e-9));
        assert!(!v.satisfied);
    }

    #[test]
    fn relation_id_serialization() {
        let rel = ts(Variant::Printed, 0.5);
        let json = serde_json::to_string(&rel).unwrap();
        assert_eq!(json, r#"{"id":"U_ts","variant":"printed","alpha":0.5}"#);
        let back: RelationId = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rel);
        assert_eq!("U_tr'".parse::<RelationKind>().unwrap(), RelationKind::UTrPrime);
    }
}
