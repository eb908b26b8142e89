mod common;

use std::f64::consts::{PI, SQRT_2};

use band_density::graph::{ExampleName, MagneticEdge, MagneticGraph};
use band_density::reference::lasso_reference_density;
use band_density::spectrum::checkpoints;
use band_density::{
    band_intervals, density, flow_point, in_spectrum, sigma_membership, BandSettings, BondSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn band_count_is_bounded_by_eigenvalue_count() {
    // Each band is swept by at least one alpha-branch of eigenvalues, and
    // there are about K L_tot / pi branches below K.
    let bs = common::lasso(5f64.sqrt() - 1.0, SQRT_2);
    for kmax in [50.0, 200.0, 800.0] {
        let bands = band_intervals(&bs, kmax, BandSettings::for_system(&bs, kmax)).unwrap();
        let weyl = kmax * bs.total_length() / PI;
        assert!(bands.band_count() as f64 <= weyl + 2.0, "{} bands", bands.band_count());
        assert!(bands.band_count() as f64 >= 0.25 * weyl, "{} bands", bands.band_count());
    }
}

#[test]
fn bands_are_sorted_and_disjoint() {
    let bs = common::example(ExampleName::Fig1d, 5);
    let bands = band_intervals(&bs, 100.0, BandSettings::for_system(&bs, 100.0)).unwrap();
    assert!(!bands.best_effort);
    for w in bands.intervals.windows(2) {
        assert!(w[0].lo <= w[0].hi && w[0].hi < w[1].lo);
    }
    let sum: f64 = bands.intervals.iter().map(|b| b.width()).sum();
    assert!((sum - bands.total_measure).abs() < 1e-9);
}

#[test]
fn halving_the_grid_step_keeps_the_bands() {
    let bs = common::example(ExampleName::Fig1b, 11);
    let kmax = 150.0;
    let coarse = BandSettings::for_system(&bs, kmax);
    let fine = BandSettings {
        grid_step: coarse.grid_step / 2.0,
        ..coarse
    };
    let a = band_intervals(&bs, kmax, coarse).unwrap();
    let b = band_intervals(&bs, kmax, fine).unwrap();
    assert_eq!(a.band_count(), b.band_count());
    assert!((a.total_measure - b.total_measure).abs() < 2.0 * coarse.bisect_tol * a.band_count() as f64);
    for (x, y) in a.intervals.iter().zip(&b.intervals) {
        assert!((x.lo - y.lo).abs() < 1e-8 && (x.hi - y.hi).abs() < 1e-8);
    }
}

#[test]
fn membership_along_k_matches_the_flow() {
    let bs = common::lasso(1.37, 1.81);
    let kmax = 300.0;
    let bands = band_intervals(&bs, kmax, BandSettings::for_system(&bs, kmax)).unwrap();
    let edges = bands.interior_edges();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..2000 {
        let k: f64 = rng.random_range(0.0..kmax);
        if edges.iter().any(|e| (e - k).abs() < 1e-6) {
            continue;
        }
        checked += 1;
        let on_flow = sigma_membership(&bs, &flow_point(bs.edge_lengths(), k)).unwrap();
        assert_eq!(in_spectrum(&bs, k), on_flow, "k = {k}");
        assert_eq!(bands.contains(k), on_flow, "k = {k}");
    }
    assert!(checked > 1990);
}

#[test]
fn circle_spectrum_is_everything() {
    let g = MagneticGraph {
        name: "circle".into(),
        generators: 1,
        vertices: vec![0, 1],
        edges: vec![
            MagneticEdge { id: 1, from: 0, to: 1, length: 0.7, flux: vec![1] },
            MagneticEdge { id: 2, from: 1, to: 0, length: 0.6, flux: vec![0] },
        ],
    };
    let bs = BondSystem::from_graph(&g).unwrap();
    let series = density(&bs, 100.0, 5, BandSettings::for_system(&bs, 100.0)).unwrap();
    assert!(series.points.iter().all(|&(_, p)| p == 1.0));
}

#[test]
fn fluxless_graph_has_point_spectrum() {
    let g = MagneticGraph {
        name: "ring".into(),
        generators: 1,
        vertices: vec![0, 1],
        edges: vec![
            MagneticEdge { id: 1, from: 0, to: 1, length: 1.3, flux: vec![0] },
            MagneticEdge { id: 2, from: 1, to: 0, length: 1.1, flux: vec![0] },
        ],
    };
    let bs = BondSystem::from_graph(&g).unwrap();
    let bands = band_intervals(&bs, 100.0, BandSettings::for_system(&bs, 100.0)).unwrap();
    // Eigenvalues 2 pi n / L are double zeros of F, so the zero-polynomial
    // tolerance turns each into a sliver of width about 1e-6.
    let spacing = 2.0 * PI / 2.4;
    assert_eq!(bands.band_count(), (100.0 / spacing) as usize + 1);
    for (n, b) in bands.intervals.iter().enumerate() {
        assert!(b.width() < 1e-5);
        assert!(b.lo <= n as f64 * spacing + 1e-9 && n as f64 * spacing <= b.hi + 1e-9);
    }
    assert!(bands.total_measure / 100.0 < 1e-6);
}

#[test]
fn density_checkpoints_are_geometric() {
    let c = checkpoints(1e4, 5);
    assert_eq!(c.len(), 5);
    assert!((c[0] - 10.0).abs() < 1e-9);
    assert_eq!(c[4], 1e4);
    for w in c.windows(2) {
        assert!((w[1] / w[0] - 10f64.powf(0.75)).abs() < 1e-9);
    }
}

#[test]
fn moderate_lasso_density_is_near_reference() {
    let bs = common::lasso(5f64.sqrt() - 1.0, SQRT_2);
    let kmax = 1000.0 * PI / bs.total_length();
    let series = density(&bs, kmax, 10, BandSettings::for_system(&bs, kmax)).unwrap();
    let p = series.final_value();
    assert!(p > 0.0 && p < 1.0);
    assert!((p - lasso_reference_density().value).abs() < 0.02);
}

#[test]
fn invalid_scan_arguments_are_rejected() {
    let bs = common::lasso(1.0, 1.5);
    let s = BandSettings::for_system(&bs, 10.0);
    assert!(band_intervals(&bs, -1.0, s).is_err());
    assert!(band_intervals(&bs, 10.0, BandSettings { grid_step: 0.0, ..s }).is_err());
    assert!(density(&bs, 10.0, 0, s).is_err());
}
