//! Monte-Carlo volume of the data region a relation (and its dual) admits.
//!
//! At `d = 2` the data `(p, q, C)` is parameterized by the unit cube
//! `(p₀, q₀, c₀₀)`; at `d = 3` `p` and `q` are independent uniform points of
//! the simplex and `C` is the overlap matrix of the computational basis with
//! a Haar-random basis.

use rand::Rng;

use crate::error::{Error, Result};
use crate::qstate::{haar_unitary, uniform_simplex, OrthonormalBasis, OverlapMatrix, ProbDist};
use crate::relations::{eval_with_dual, RelationId};
use crate::rng::{map_chunks, StreamRng};
use crate::scalar::{LogBase, Real};

pub const MIN_VOLUME_SAMPLES: u64 = 1_000;

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeEstimate<T: Real> {
    pub relation: RelationId,
    pub dim: usize,
    pub samples: u64,
    pub accepted: u64,
    /// `accepted / samples`.
    pub volume: T,
    /// `√(v(1 − v)/n)`.
    pub std_error: T,
    pub seed: u64,
}

impl<T: Real> VolumeEstimate<T> {
    fn from_counts(relation: RelationId, dim: usize, samples: u64, accepted: u64, seed: u64) -> Self {
        let n = T::lit(samples as f64);
        let volume = T::lit(accepted as f64) / n;
        let std_error = (volume * (T::one() - volume) / n).sqrt();
        Self { relation, dim, samples, accepted, volume, std_error, seed }
    }
}

/// One point of the data space: `(p, q, C)`.
pub fn draw_instance<T: Real>(rng: &mut StreamRng, dim: usize) -> Result<(ProbDist<T>, ProbDist<T>, OverlapMatrix<T>)> {
    match dim {
        2 => {
            let p0: f64 = rng.random();
            let q0: f64 = rng.random();
            let c00: f64 = rng.random();
            Ok((ProbDist::binary(T::lit(p0))?, ProbDist::binary(T::lit(q0))?, OverlapMatrix::qubit(T::lit(c00))?))
        }
        3 => {
            let p = uniform_simplex(rng, 3);
            let q = uniform_simplex(rng, 3);
            let b = haar_unitary(rng, 3);
            let c = OverlapMatrix::between(&OrthonormalBasis::computational(3)?, &b)?;
            Ok((p, q, c))
        }
        other => Err(Error::UnsupportedDim(other)),
    }
}

/// Acceptance counts of several predicates on one shared sample stream.
pub fn estimate_acceptance<T, F>(dim: usize, samples: u64, seed: u64, predicates: usize, accept: F) -> Result<Vec<u64>>
where
    T: Real,
    F: Fn(&ProbDist<T>, &ProbDist<T>, &OverlapMatrix<T>, &mut [bool]) -> Result<()> + Sync,
{
    if !(2..=3).contains(&dim) {
        return Err(Error::UnsupportedDim(dim));
    }
    if samples < MIN_VOLUME_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "volume estimation needs at least {MIN_VOLUME_SAMPLES} samples, got {samples}"
        )));
    }
    let per_chunk = map_chunks(seed, samples, |_, _, len, rng| -> Result<Vec<u64>> {
        let mut counts = vec![0u64; predicates];
        let mut flags = vec![false; predicates];
        for _ in 0..len {
            let (p, q, c) = draw_instance::<T>(rng, dim)?;
            accept(&p, &q, &c, &mut flags)?;
            for (n, &ok) in counts.iter_mut().zip(&flags) {
                *n += u64::from(ok);
            }
        }
        Ok(counts)
    });
    let mut total = vec![0u64; predicates];
    for chunk in per_chunk {
        for (t, n) in total.iter_mut().zip(chunk?) {
            *t += n;
        }
    }
    Ok(total)
}

/// Volumes of several relations on the same samples. A sample is admitted
/// when the relation and its dual both hold.
pub fn estimate_volumes<T: Real>(
    relations: &[RelationId],
    dim: usize,
    samples: u64,
    seed: u64,
) -> Result<Vec<VolumeEstimate<T>>> {
    for rel in relations {
        rel.validate()?;
    }
    // admissibility does not depend on the log base
    let counts = estimate_acceptance::<T, _>(dim, samples, seed, relations.len(), |p, q, c, flags| {
        for (flag, rel) in flags.iter_mut().zip(relations) {
            let (fwd, dual) = eval_with_dual(rel, p, q, c, LogBase::Two)?;
            *flag = fwd.satisfied && dual.satisfied;
        }
        Ok(())
    })?;
    Ok(relations
        .iter()
        .zip(counts)
        .map(|(rel, accepted)| VolumeEstimate::from_counts(*rel, dim, samples, accepted, seed))
        .collect())
}

pub fn estimate_volume<T: Real>(rel: &RelationId, dim: usize, samples: u64, seed: u64) -> Result<VolumeEstimate<T>> {
    Ok(estimate_volumes(std::slice::from_ref(rel), dim, samples, seed)?.remove(0))
}
