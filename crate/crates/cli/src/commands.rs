use std::fs;
use std::path::Path;

use serde::Serialize;
use udr_core::divergence::{DivergenceKind, DivergenceSpec};
use udr_core::experiments::report::{region_rows, CoherenceRow, VolumeRow};
use udr_core::experiments::{
    coherence_bounds, estimate_coherence, estimate_volume, region_grid, simulate_shots, table2, ShotCounts, ShotKind,
};
use udr_core::qstate::{outcome_dist, BasisFile, StateFile};
use udr_core::relations::{
    dpi_margin, eval_with_dual, random_instance, search_counterexample, RelationId, RelationKind, VERDICT_TOL,
};
use udr_core::rng::{map_chunks, stream_rng};
use udr_core::{DensityMatrix, LogBase, OrthonormalBasis, OverlapMatrix};

use crate::args::{Cli, Command, InstanceArgs, RelationArgs};
use crate::output::{emit, extended, joined, number, opt_number};
use crate::CliError;

/// What the run found, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Completed,
    Violation,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let base = cli.log_base;
    let seed = cli.seed;
    match &cli.command {
        Command::Verify { relation, instance } => {
            let rel = relation_id(relation)?;
            let rows = verify(&rel, instance, seed, base)?;
            let ok = rows.iter().all(|r| r.satisfied);
            emit(&rows, cli.format, cli.output.as_deref())?;
            Ok(if ok { Outcome::Completed } else { Outcome::Violation })
        }
        Command::Dpi { dim, samples, alpha } => {
            let rows = dpi(*dim, *samples, *alpha, seed, base)?;
            let ok = rows.iter().all(|r| r.violations == 0);
            emit(&rows, cli.format, cli.output.as_deref())?;
            Ok(if ok { Outcome::Completed } else { Outcome::Violation })
        }
        Command::Search { relation, dim, samples } => {
            let rel = relation_id(relation)?;
            let row = search(&rel, *dim, *samples, seed, base)?;
            let found = row.found;
            emit(&[row], cli.format, cli.output.as_deref())?;
            Ok(if found { Outcome::Violation } else { Outcome::Completed })
        }
        Command::Volume { relation, dim, samples } => {
            let rel = relation_id(relation)?;
            let est = estimate_volume::<f64>(&rel, *dim, *samples, seed).map_err(core_err)?;
            emit(&[VolumeRow::new(&est, base)], cli.format, cli.output.as_deref())?;
            Ok(Outcome::Completed)
        }
        Command::Table2 { dim, samples, report } => {
            let estimates = table2::run::<f64>(*dim, *samples, seed, true).map_err(core_err)?;
            if *report {
                emit(&table2::discrepancy_report(&estimates, base), cli.format, cli.output.as_deref())?;
            } else {
                let rows: Vec<_> = estimates.iter().map(|e| VolumeRow::new(e, base)).collect();
                emit(&rows, cli.format, cli.output.as_deref())?;
            }
            Ok(Outcome::Completed)
        }
        Command::Region { relation, c00, resolution } => {
            let rel = relation_id(relation)?;
            if !(0.0..=1.0).contains(c00) {
                return Err(CliError::input(format!("--c00: {c00} is outside [0, 1]")));
            }
            let grid = region_grid::<f64>(&rel, *c00, *resolution).map_err(core_err)?;
            emit(&region_rows(&grid, base), cli.format, cli.output.as_deref())?;
            Ok(Outcome::Completed)
        }
        Command::Coherence { instance, shots, smoothing } => {
            let row = coherence(instance, *shots, *smoothing, seed, base)?;
            emit(&[row], cli.format, cli.output.as_deref())?;
            Ok(Outcome::Completed)
        }
        Command::Shots { state, basis_a, basis_b, shots } => {
            let rho = read_state(state)?;
            let a = basis_a.as_deref().map(|p| read_basis("--basis-a", p, rho.dim())).transpose()?;
            let b = match basis_b {
                Some(p) => read_basis("--basis-b", p, rho.dim())?,
                None => OrthonormalBasis::fourier(rho.dim()).map_err(core_err)?,
            };
            let counts = simulate_shots(&rho, a.as_ref(), &b, *shots, seed).map_err(core_err)?;
            emit(&shot_rows(&counts), cli.format, cli.output.as_deref())?;
            Ok(Outcome::Completed)
        }
    }
}

fn core_err(e: udr_core::Error) -> CliError {
    CliError::input(e.to_string())
}

fn relation_id(args: &RelationArgs) -> Result<RelationId, CliError> {
    let alpha = match (args.alpha, args.relation) {
        (Some(a), _) => Some(a),
        (None, RelationKind::EurMu) => Some(1.0),
        (None, kind) if kind.uses_alpha() => Some(0.5),
        (None, _) => None,
    };
    RelationId::new(args.relation, args.variant, alpha, args.beta)
        .map_err(|e| CliError::input(format!("--relation: {e}")))
}

fn read_file(flag: &str, path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{flag} {}: {e}", path.display())))
}

fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let ctx = |e: udr_core::Error| CliError::input(format!("--state {}: {e}", path.display()));
    StateFile::parse(&read_file("--state", path)?).and_then(|f| f.to_state()).map_err(ctx)
}

fn read_basis(flag: &str, path: &Path, dim: usize) -> Result<OrthonormalBasis, CliError> {
    let ctx = |e: udr_core::Error| CliError::input(format!("{flag} {}: {e}", path.display()));
    let basis: OrthonormalBasis = BasisFile::parse(&read_file(flag, path)?).and_then(|f| f.to_basis()).map_err(ctx)?;
    if basis.dim() != dim {
        return Err(CliError::input(format!(
            "{flag} {}: field 'dim': basis has dimension {} but the state has {dim}",
            path.display(),
            basis.dim()
        )));
    }
    Ok(basis)
}

struct Instance {
    rho: DensityMatrix,
    a: OrthonormalBasis,
    b: OrthonormalBasis,
    source: &'static str,
}

fn instance(args: &InstanceArgs, seed: u64) -> Result<Instance, CliError> {
    let Some(state) = &args.state else {
        if args.basis_a.is_some() || args.basis_b.is_some() {
            return Err(CliError::input("--basis-a/--basis-b: bases need a --state file".into()));
        }
        let dim = args.dim.unwrap_or(2);
        if dim < 2 {
            return Err(CliError::input(format!("--dim: {dim} is too small (need at least 2)")));
        }
        let (rho, a, b) = random_instance(&mut stream_rng(seed, 0), dim);
        return Ok(Instance { rho, a, b, source: "sampled" });
    };
    let rho = read_state(state)?;
    let d = rho.dim();
    if let Some(dim) = args.dim {
        if dim != d {
            return Err(CliError::input(format!(
                "--state {}: field 'dim': file has dimension {d} but --dim is {dim}",
                state.display()
            )));
        }
    }
    let a = match &args.basis_a {
        Some(p) => read_basis("--basis-a", p, d)?,
        None => OrthonormalBasis::computational(d).map_err(core_err)?,
    };
    let b = match &args.basis_b {
        Some(p) => read_basis("--basis-b", p, d)?,
        None => OrthonormalBasis::fourier(d).map_err(core_err)?,
    };
    Ok(Instance { rho, a, b, source: "file" })
}

#[derive(Debug, Serialize)]
pub struct VerifyRow {
    relation: &'static str,
    variant: &'static str,
    #[serde(serialize_with = "opt_number")]
    alpha: Option<f64>,
    #[serde(serialize_with = "opt_number")]
    beta: Option<f64>,
    direction: &'static str,
    dim: usize,
    #[serde(serialize_with = "number")]
    lhs: f64,
    #[serde(serialize_with = "number")]
    rhs: f64,
    #[serde(serialize_with = "number")]
    margin: f64,
    satisfied: bool,
    source: &'static str,
    seed: u64,
    samples: u64,
    log_base: LogBase,
}

fn verify(rel: &RelationId, args: &InstanceArgs, seed: u64, base: LogBase) -> Result<Vec<VerifyRow>, CliError> {
    let inst = instance(args, seed)?;
    let p = outcome_dist(&inst.rho, &inst.a).map_err(core_err)?;
    let q = outcome_dist(&inst.rho, &inst.b).map_err(core_err)?;
    let c = OverlapMatrix::between(&inst.a, &inst.b).map_err(core_err)?;
    let (fwd, dual) = eval_with_dual(rel, &p, &q, &c, base).map_err(core_err)?;
    let mut verdicts = vec![("A->B", fwd)];
    if rel.id != RelationKind::EurMu {
        verdicts.push(("B->A", dual));
    }
    Ok(verdicts
        .into_iter()
        .map(|(direction, v)| VerifyRow {
            relation: rel.id.name(),
            variant: rel.variant.name(),
            alpha: rel.alpha,
            beta: rel.beta,
            direction,
            dim: inst.rho.dim(),
            lhs: extended(v.lhs),
            rhs: extended(v.rhs),
            margin: v.margin,
            satisfied: v.satisfied,
            source: inst.source,
            seed,
            samples: 1,
            log_base: base,
        })
        .collect())
}

#[derive(Debug, Serialize)]
pub struct DpiRow {
    divergence: &'static str,
    #[serde(serialize_with = "opt_number")]
    alpha: Option<f64>,
    dim: usize,
    samples: u64,
    seed: u64,
    #[serde(serialize_with = "number")]
    min_margin: f64,
    violations: u64,
    log_base: LogBase,
}

fn dpi(dim: usize, samples: u64, alpha: f64, seed: u64, base: LogBase) -> Result<Vec<DpiRow>, CliError> {
    if dim < 2 {
        return Err(CliError::input(format!("--dim: {dim} is too small (need at least 2)")));
    }
    if samples == 0 {
        return Err(CliError::input("--samples: need at least 1".into()));
    }
    let specs = DivergenceKind::ALL
        .into_iter()
        .map(|kind| {
            let a = matches!(kind, DivergenceKind::RenyiSandwiched | DivergenceKind::Tsallis).then_some(alpha);
            DivergenceSpec::new(kind, a).map_err(|e| CliError::input(format!("--alpha: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let chunks = map_chunks(seed, samples, |_, _, len, rng| -> udr_core::Result<Vec<(f64, u64)>> {
        let mut acc = vec![(f64::INFINITY, 0u64); specs.len()];
        for _ in 0..len {
            let (rho, a, b) = random_instance::<f64, _>(rng, dim);
            for (slot, spec) in acc.iter_mut().zip(&specs) {
                let m = dpi_margin(spec, &rho, &a, &b, base)?;
                slot.0 = slot.0.min(m);
                slot.1 += u64::from(m < -VERDICT_TOL);
            }
        }
        Ok(acc)
    });
    let mut total = vec![(f64::INFINITY, 0u64); specs.len()];
    for chunk in chunks {
        for (t, (m, v)) in total.iter_mut().zip(chunk.map_err(core_err)?) {
            t.0 = t.0.min(m);
            t.1 += v;
        }
    }
    Ok(specs
        .iter()
        .zip(total)
        .map(|(spec, (min_margin, violations))| DpiRow {
            divergence: spec.kind.name(),
            alpha: spec.alpha,
            dim,
            samples,
            seed,
            min_margin,
            violations,
            log_base: base,
        })
        .collect())
}

#[derive(Debug, Serialize)]
pub struct SearchRow {
    relation: &'static str,
    variant: &'static str,
    #[serde(serialize_with = "opt_number")]
    alpha: Option<f64>,
    #[serde(serialize_with = "opt_number")]
    beta: Option<f64>,
    dim: usize,
    samples: u64,
    seed: u64,
    found: bool,
    index: Option<u64>,
    #[serde(serialize_with = "opt_number")]
    lhs: Option<f64>,
    #[serde(serialize_with = "opt_number")]
    rhs: Option<f64>,
    #[serde(serialize_with = "opt_number")]
    margin: Option<f64>,
    p: Option<String>,
    q: Option<String>,
    qp: Option<String>,
    /// The instance as state/basis JSON documents, for replay with `verify`.
    rho: Option<String>,
    basis_a: Option<String>,
    basis_b: Option<String>,
    log_base: LogBase,
}

fn search(rel: &RelationId, dim: usize, samples: u64, seed: u64, base: LogBase) -> Result<SearchRow, CliError> {
    let hit = search_counterexample::<f64>(rel, dim, samples, seed, base).map_err(core_err)?;
    let json = |v: serde_json::Result<String>| v.map_err(|e| CliError::input(format!("json: {e}")));
    let mut row = SearchRow {
        relation: rel.id.name(),
        variant: rel.variant.name(),
        alpha: rel.alpha,
        beta: rel.beta,
        dim,
        samples,
        seed,
        found: hit.is_some(),
        index: None,
        lhs: None,
        rhs: None,
        margin: None,
        p: None,
        q: None,
        qp: None,
        rho: None,
        basis_a: None,
        basis_b: None,
        log_base: base,
    };
    if let Some(cx) = hit {
        row.index = Some(cx.index);
        row.lhs = Some(extended(cx.verdict.lhs));
        row.rhs = Some(extended(cx.verdict.rhs));
        row.margin = Some(cx.verdict.margin);
        row.p = Some(joined(cx.p.probs()));
        row.q = Some(joined(cx.q.probs()));
        row.qp = Some(joined(cx.qp.probs()));
        row.rho = Some(json(serde_json::to_string(&StateFile::from_state(&cx.rho)))?);
        row.basis_a = Some(json(serde_json::to_string(&BasisFile::from_basis(&cx.basis_a)))?);
        row.basis_b = Some(json(serde_json::to_string(&BasisFile::from_basis(&cx.basis_b)))?);
    }
    Ok(row)
}

fn coherence(
    args: &InstanceArgs,
    shots: Option<u64>,
    smoothing: f64,
    seed: u64,
    base: LogBase,
) -> Result<CoherenceRow, CliError> {
    let inst = instance(args, seed)?;
    let bounds = coherence_bounds(&inst.rho, &inst.a, &inst.b, base).map_err(core_err)?;
    let mut row = CoherenceRow::new(&bounds);
    let Some(n) = shots else {
        if inst.source == "sampled" {
            row.seed = Some(seed);
        }
        return Ok(row);
    };
    if smoothing.is_nan() || smoothing < 0.0 {
        return Err(CliError::input(format!("--smoothing: {smoothing} must be a non-negative number")));
    }
    // the two experiments run on independent seeds derived from --seed
    let direct = simulate_shots(&inst.rho, None, &inst.b, n, seed).map_err(core_err)?;
    let sequential = simulate_shots(&inst.rho, Some(&inst.a), &inst.b, n, seed.wrapping_add(1)).map_err(core_err)?;
    let est = estimate_coherence(&direct, &sequential, smoothing, base).map_err(core_err)?;
    row.upper = est.upper;
    row.lower = est.lower.finite();
    row.source = "shots";
    row.seed = Some(seed);
    row.samples = Some(n);
    Ok(row)
}

#[derive(Debug, Serialize)]
pub struct ShotRow {
    kind: &'static str,
    a_outcome: Option<usize>,
    b_outcome: usize,
    count: u64,
    total: u64,
    seed: u64,
}

fn shot_rows(counts: &ShotCounts) -> Vec<ShotRow> {
    let d = counts.dim;
    counts
        .counts
        .iter()
        .enumerate()
        .map(|(k, &count)| {
            let (a_outcome, b_outcome) = match counts.kind {
                ShotKind::DirectB => (None, k),
                ShotKind::SequentialAB => (Some(k / d), k % d),
            };
            ShotRow { kind: counts.kind.name(), a_outcome, b_outcome, count, total: counts.total, seed: counts.seed }
        })
        .collect()
}
