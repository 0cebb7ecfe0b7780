use dce_core::motion::MotionProfile;
use dce_core::quadrature::QuadratureConfig;
use dce_core::rates::{
    normalized_rate_closed, scan_plane, total_rate_closed, total_rate_quadrature, ScanGrid,
};
use dce_core::scattering::MirrorModel;

fn profile() -> MotionProfile {
    MotionProfile { eps: 0.01, omega0: 1.0, tau: 1e3 }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn normalized(grid: &ScanGrid, i_lambda: usize, i_mu: usize) -> f64 {
    grid.cell(i_lambda, i_mu).result.as_ref().unwrap().normalized
}

#[test]
fn scan_respects_dirichlet_bound() {
    let cfg = QuadratureConfig::default();
    let mu = log_grid(0.1, 10.0, 9);
    let lambda = [-3.0, -1.0, -0.25, 0.0, 0.5, 1.0, 2.0, 3.0];
    let grid = scan_plane(&mu, &lambda, &profile(), &cfg).unwrap();
    for c in &grid.cells {
        let r = c.result.as_ref().unwrap();
        assert!(r.normalized <= 1.0 + 1e-9 && r.normalized >= 0.0, "{c:?}");
        assert!(r.rate_total_per_tau.is_finite());
        let sum = r.rate_plus_per_tau + r.rate_minus_per_tau;
        assert!((sum - r.rate_total_per_tau).abs() <= 1e-12 * r.rate_total_per_tau);
    }
    let zero_row = grid.row(3);
    for w in zero_row.windows(2) {
        let (a, b) = (w[0].result.as_ref().unwrap(), w[1].result.as_ref().unwrap());
        assert!(b.normalized >= a.normalized, "{w:?}");
    }
}

#[test]
fn scan_does_not_depend_on_worker_count() {
    let cfg = QuadratureConfig::default();
    let mu = log_grid(0.1, 10.0, 6);
    let lambda = [-1.5, 0.0, 0.5, 1.0];
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| scan_plane(&mu, &lambda, &profile(), &cfg).unwrap())
    };
    let one = run(1);
    let many = run(5);
    for (a, b) in one.cells.iter().zip(&many.cells) {
        let (x, y) = (a.result.as_ref().unwrap(), b.result.as_ref().unwrap());
        assert_eq!(x.normalized.to_bits(), y.normalized.to_bits());
        assert_eq!(x.rate_plus_per_tau.to_bits(), y.rate_plus_per_tau.to_bits());
    }
}

#[test]
fn transparency_raises_total() {
    let cfg = QuadratureConfig::default();
    let grid = scan_plane(&[1.0], &[0.5, 1.0], &profile(), &cfg).unwrap();
    assert!(normalized(&grid, 0, 0) > normalized(&grid, 1, 0));
}

#[test]
fn unit_lambda_is_not_monotone_in_mu() {
    let mu = log_grid(0.1, 10.0, 41);
    let v: Vec<f64> = mu.iter().map(|&m| normalized_rate_closed(1.0 / m, 1.0).unwrap()).collect();
    let k = (1..v.len() - 1)
        .find(|&i| v[i] < v[i - 1] && v[i] < v[i + 1])
        .expect("no interior minimum");
    assert!(v[k] < v[0] && v[k] < v[v.len() - 1]);
}

#[test]
fn lambda_flip_swaps_rates() {
    let cfg = QuadratureConfig::default();
    for (mu, lambda) in [(0.3, 0.8), (1.0, 2.5), (5.0, -0.4)] {
        let a = total_rate_closed(mu, lambda, &profile(), &cfg).unwrap();
        let b = total_rate_closed(mu, -lambda, &profile(), &cfg).unwrap();
        assert_eq!(a.rate_total_per_tau, b.rate_total_per_tau);
        let tol = 1e-12 * a.rate_total_per_tau;
        assert!((a.rate_plus_per_tau - b.rate_minus_per_tau).abs() <= tol);
        assert!((a.rate_minus_per_tau - b.rate_plus_per_tau).abs() <= tol);
    }
}

#[test]
fn opaque_derivative_coupling_suppresses_creation() {
    let cfg = QuadratureConfig::default();
    let r = total_rate_closed(1.0, 1e3, &profile(), &cfg).unwrap();
    assert!(r.normalized < 0.01, "{}", r.normalized);
    let q = total_rate_quadrature(&MirrorModel::DeltaDeltaPrime { mu: 1.0, lambda: 1e3 }, &profile(), &cfg).unwrap();
    assert!(q.normalized < 0.01);
}

#[test]
fn benchmark_confirmed_by_quadrature() {
    let cfg = QuadratureConfig::default();
    let want = (-30.0 + 15.0 * 2f64.ln() + 30.0 * std::f64::consts::PI / 4.0) / 5.0;
    let q = total_rate_quadrature(&MirrorModel::DeltaDeltaPrime { mu: 1.0, lambda: 0.0 }, &profile(), &cfg).unwrap();
    assert!((q.normalized / want - 1.0).abs() < 1e-8, "{}", q.normalized);
}

#[test]
fn rest_mirror_rates_vanish() {
    let cfg = QuadratureConfig::default();
    let p = MotionProfile { eps: 0.0, ..profile() };
    let r = total_rate_closed(2.0, 0.5, &p, &cfg).unwrap();
    assert_eq!(r.rate_total_per_tau, 0.0);
    assert!(r.normalized > 0.0 && r.normalized < 1.0);
}
