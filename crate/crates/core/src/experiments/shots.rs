//! Finite-shot simulation of the direct-B and A→B experiments, and plug-in
//! estimation of the coherence bounds from the resulting counts.

use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::divergence::kl_divergence;
use crate::error::{Error, Result};
use crate::qstate::{check_dims, outcome_dist, DensityMatrix, OrthonormalBasis, OverlapMatrix, ProbDist};
use crate::rng::{stream_rng, StreamRng};
use crate::scalar::{ExtendedReal, LogBase, Real};
use crate::uncertainty::shannon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShotKind {
    DirectB,
    SequentialAB,
}

impl ShotKind {
    pub fn name(self) -> &'static str {
        match self {
            ShotKind::DirectB => "direct_B",
            ShotKind::SequentialAB => "sequential_AB",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotCounts {
    pub kind: ShotKind,
    pub dim: usize,
    /// Length `d` for `DirectB`; `d × d` row-major (A outcome, B outcome) for `SequentialAB`.
    pub counts: Vec<u64>,
    pub total: u64,
    pub seed: u64,
}

impl ShotCounts {
    /// A-outcome marginal of sequential counts; the counts themselves for direct ones.
    pub fn a_marginal(&self) -> Vec<u64> {
        match self.kind {
            ShotKind::DirectB => self.counts.clone(),
            ShotKind::SequentialAB => self.counts.chunks(self.dim).map(|row| row.iter().sum()).collect(),
        }
    }

    pub fn b_marginal(&self) -> Vec<u64> {
        match self.kind {
            ShotKind::DirectB => self.counts.clone(),
            ShotKind::SequentialAB => {
                (0..self.dim).map(|j| self.counts.iter().skip(j).step_by(self.dim).sum()).collect()
            }
        }
    }
}

/// Multinomial draw as a chain of conditional binomials.
fn multinomial(rng: &mut StreamRng, n: u64, probs: &[f64]) -> Vec<u64> {
    let mut out = vec![0u64; probs.len()];
    let mut left = n;
    let mut mass = 1.0;
    for (k, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        if k + 1 == probs.len() {
            out[k] = left;
            break;
        }
        let cond = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let draw = Binomial::new(left, cond).expect("probability clamped to [0, 1]").sample(rng);
        out[k] = draw;
        left -= draw;
        mass -= p;
    }
    out
}

/// Simulates `n` shots of B alone (`a` absent) or of A followed by B.
pub fn simulate_shots<T: Real>(
    rho: &DensityMatrix<T>,
    a: Option<&OrthonormalBasis<T>>,
    b: &OrthonormalBasis<T>,
    n: u64,
    seed: u64,
) -> Result<ShotCounts> {
    check_dims(rho.dim(), b.dim())?;
    let d = rho.dim();
    let (kind, probs) = match a {
        None => {
            let q = outcome_dist(rho, b)?;
            (ShotKind::DirectB, q.probs().iter().map(|x| x.as_f64()).collect::<Vec<_>>())
        }
        Some(a) => {
            check_dims(d, a.dim())?;
            let p = outcome_dist(rho, a)?;
            let c = OverlapMatrix::between(a, b)?;
            let joint = (0..d * d).map(|k| (p[k / d] * c.get(k / d, k % d)).as_f64()).collect();
            (ShotKind::SequentialAB, joint)
        }
    };
    let mut rng = stream_rng(seed, 0);
    let counts = multinomial(&mut rng, n, &probs);
    Ok(ShotCounts { kind, dim: d, counts, total: n, seed })
}

/// Plug-in estimates `(KL(q̂‖q̂′), H(p̂))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceEstimate<T: Real> {
    pub lower: ExtendedReal<T>,
    pub upper: T,
}

fn smoothed<T: Real>(counts: &[u64], smoothing: T) -> Result<ProbDist<T>> {
    let w: Vec<T> = counts.iter().map(|&c| T::lit(c as f64) + smoothing).collect();
    ProbDist::from_weights(&w)
}

pub fn estimate_coherence<T: Real>(
    direct: &ShotCounts,
    sequential: &ShotCounts,
    smoothing: T,
    base: LogBase,
) -> Result<CoherenceEstimate<T>> {
    if direct.kind != ShotKind::DirectB {
        return Err(Error::KindMismatch(format!("expected direct_B counts, got {}", direct.kind.name())));
    }
    if sequential.kind != ShotKind::SequentialAB {
        return Err(Error::KindMismatch(format!("expected sequential_AB counts, got {}", sequential.kind.name())));
    }
    check_dims(direct.dim, sequential.dim)?;
    if !(smoothing >= T::zero()) {
        return Err(Error::InvalidInput(format!("smoothing must be >= 0, got {}", smoothing.as_f64())));
    }
    let sum = |c: &ShotCounts| c.counts.iter().sum::<u64>();
    if direct.total == 0 || sequential.total == 0 || sum(direct) == 0 || sum(sequential) == 0 {
        return Err(Error::EmptyCounts);
    }
    let q = smoothed(&direct.counts, smoothing)?;
    let qp = smoothed(&sequential.b_marginal(), smoothing)?;
    let p = smoothed(&sequential.a_marginal(), smoothing)?;
    Ok(CoherenceEstimate { lower: kl_divergence(&q, &qp, base)?, upper: shannon(&p, base) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::linalg::CMatrix;
    use num_complex::Complex;

    fn z() -> OrthonormalBasis<f64> {
        OrthonormalBasis::computational(2).unwrap()
    }

    fn x() -> OrthonormalBasis<f64> {
        OrthonormalBasis::fourier(2).unwrap()
    }

    fn plus() -> DensityMatrix<f64> {
        DensityMatrix::new(CMatrix::from_element(2, 2, Complex::new(0.5, 0.0))).unwrap()
    }

    #[test]
    fn zero_shots() {
        let s = simulate_shots(&plus(), Some(&z()), &x(), 0, 1).unwrap();
        assert_eq!(s.counts, vec![0; 4]);
    }

    #[test]
    fn deterministic_outcome() {
        let rho = DensityMatrix::diagonal(&ProbDist::point(2, 0).unwrap()).unwrap();
        let s = simulate_shots(&rho, None, &z(), 1000, 9).unwrap();
        assert_eq!(s.counts, vec![1000, 0]);
    }

    #[test]
    fn counts_sum_and_determinism() {
        let a = simulate_shots(&plus(), Some(&z()), &x(), 12_345, 4).unwrap();
        let b = simulate_shots(&plus(), Some(&z()), &x(), 12_345, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 12_345);
    }

    #[test]
    fn sequential_marginal_concentrates() {
        let n = 100_000u64;
        let s = simulate_shots(&plus(), Some(&z()), &x(), n, 11).unwrap();
        let b0 = s.b_marginal()[0] as f64;
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((b0 - n as f64 / 2.0).abs() < 5.0 * sigma);
    }

    #[test]
    fn exact_counts_reproduce_plug_in() {
        let direct = ShotCounts { kind: ShotKind::DirectB, dim: 2, counts: vec![1000, 0], total: 1000, seed: 0 };
        let seq =
            ShotCounts { kind: ShotKind::SequentialAB, dim: 2, counts: vec![250, 250, 250, 250], total: 1000, seed: 0 };
        let e = estimate_coherence(&direct, &seq, 0.0_f64, LogBase::Two).unwrap();
        assert!((e.lower.finite().unwrap() - 1.0).abs() < 1e-12);
        assert!((e.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_violation_is_unbounded() {
        let direct = ShotCounts { kind: ShotKind::DirectB, dim: 2, counts: vec![5, 5], total: 10, seed: 0 };
        let seq = ShotCounts { kind: ShotKind::SequentialAB, dim: 2, counts: vec![10, 0, 0, 0], total: 10, seed: 0 };
        let e = estimate_coherence(&direct, &seq, 0.0_f64, LogBase::Two).unwrap();
        assert!(e.lower.is_infinite());
    }

    #[test]
    fn errors() {
        let direct = ShotCounts { kind: ShotKind::DirectB, dim: 2, counts: vec![0, 0], total: 0, seed: 0 };
        let seq = ShotCounts { kind: ShotKind::SequentialAB, dim: 2, counts: vec![1, 0, 0, 0], total: 1, seed: 0 };
        assert!(matches!(estimate_coherence::<f64>(&seq, &seq, 0.5, LogBase::Two), Err(Error::KindMismatch(_))));
        assert!(matches!(estimate_coherence::<f64>(&direct, &seq, 0.5, LogBase::Two), Err(Error::EmptyCounts)));
    }

    #[test]
    fn plus_state_estimate_near_one_bit() {
        let n = 100_000;
        let direct = simulate_shots(&plus(), None, &x(), n, 1).unwrap();
        let seq = simulate_shots(&plus(), Some(&z()), &x(), n, 2).unwrap();
        let e = estimate_coherence(&direct, &seq, 0.5_f64, LogBase::Two).unwrap();
        assert!((e.lower.finite().unwrap() - 1.0).abs() < 0.05);
    }
}
