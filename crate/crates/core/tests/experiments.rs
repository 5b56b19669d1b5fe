use udr_core::experiments::{
    coherence_bounds, estimate_coherence, estimate_volumes, region_grid, simulate_shots, VolumeEstimate,
};
use udr_core::qstate::linalg::CMatrix;
use udr_core::relations::{random_instance, RelationId, RelationKind, Variant};
use udr_core::rng::stream_rng;
use udr_core::{DensityMatrix, LogBase, OrthonormalBasis};

fn half(kind: RelationKind) -> RelationId {
    RelationId::with_alpha(kind, Variant::Canonical, 0.5).unwrap()
}

fn at_most(a: &VolumeEstimate<f64>, b: &VolumeEstimate<f64>) -> bool {
    let slack = 3.0 * (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    a.volume <= b.volume + slack
}

#[test]
fn volumes_are_monotone_in_relation_strength() {
    let rels = [
        RelationId::canonical(RelationKind::UHs),
        RelationId::canonical(RelationKind::UTr),
        half(RelationKind::URd),
        half(RelationKind::UTs),
        RelationId::canonical(RelationKind::UTrPrime),
        RelationId::canonical(RelationKind::URe),
        RelationId::mu_shannon(),
    ];
    let v = estimate_volumes::<f64>(&rels, 2, 200_000, 5).unwrap();
    assert!(at_most(&v[0], &v[1]), "U_hs <= U_tr");
    assert!(at_most(&v[2], &v[3]), "U_rd <= U_ts");
    for u in &v[..6] {
        assert!(u.volume < v[6].volume, "{} below MU", u.relation);
    }
}

#[test]
fn volume_matches_region_grid_average() {
    // the cube volume is the average over c00 of the grid's admitted fraction
    let rel = RelationId::canonical(RelationKind::UTrPrime);
    let mc = estimate_volumes::<f64>(&[rel], 2, 200_000, 8).unwrap()[0].volume;
    let slices = 41;
    let grid_mean: f64 = (0..slices)
        .map(|k| region_grid::<f64>(&rel, (k as f64 + 0.5) / slices as f64, 81).unwrap().admitted_fraction())
        .sum::<f64>()
        / slices as f64;
    assert!((mc - grid_mean).abs() < 0.02, "{mc} vs {grid_mean}");
}

#[test]
fn coherence_lower_bound_is_rarely_trivial() {
    let mut rng = stream_rng(17, 0);
    for dim in 2..=4 {
        let n = 2_000;
        let trivial = (0..n)
            .filter(|_| {
                let (rho, a, b) = random_instance::<f64, _>(&mut rng, dim);
                let bounds = coherence_bounds(&rho, &a, &b, LogBase::Two).unwrap();
                assert!(bounds.sandwich_holds(1e-9));
                bounds.lower.to_real() <= 1e-6
            })
            .count();
        assert!(trivial * 100 <= n, "d={dim}: {trivial} trivial of {n}");
    }
}

#[test]
fn plug_in_estimate_converges() {
    let rho: DensityMatrix = DensityMatrix::new(CMatrix::from_element(2, 2, nalgebra::Complex::new(0.5, 0.0))).unwrap();
    let z = OrthonormalBasis::computational(2).unwrap();
    let x = OrthonormalBasis::fourier(2).unwrap();
    let truth = coherence_bounds(&rho, &z, &x, LogBase::Two).unwrap().lower.to_real();
    let mean_error = |n: u64| {
        (0..100u64)
            .map(|s| {
                let direct = simulate_shots(&rho, None, &x, n, 1_000 + s).unwrap();
                let seq = simulate_shots(&rho, Some(&z), &x, n, 2_000 + s).unwrap();
                (estimate_coherence(&direct, &seq, 0.5, LogBase::Two).unwrap().lower.to_real() - truth).abs()
            })
            .sum::<f64>()
            / 100.0
    };
    let errors: Vec<f64> = [1_000, 3_000, 9_000, 27_000].into_iter().map(mean_error).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}
