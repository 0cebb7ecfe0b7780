use std::fmt::Write as _;

use dce_core::{
    amplitudes, fourier_g, fourier_g_numeric, lambda_sides, lambda_sides_closed, matching_residual,
    mode_from_amplitudes, normalized_rate_closed, reality_residual, robin_dirichlet_residual,
    solve_modes, solve_scattering, spectrum_finite_tau, spectrum_mono, spectrum_trace_oracle,
    total_rate_closed, total_rate_quadrature, u_matrix_residual, unitarity_residual, Incidence,
    MirrorModel, MotionProfile, Phase, QuadratureConfig, ScatteringAmplitudes,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CliError;
use crate::args::{Fault, VerifyArgs};

/// Outcome of one invariant over its cases.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tol: f64,
    /// Inputs of the first failing case.
    pub failing: Option<String>,
}

impl Check {
    fn new(suite: &'static str, name: &'static str, tol: f64) -> Self {
        Check { suite, name, cases: 0, worst: 0.0, tol, failing: None }
    }

    fn see(&mut self, value: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        if value.is_nan() || value > self.worst {
            self.worst = value;
        }
        if !(value <= self.tol) && self.failing.is_none() {
            self.failing = Some(case());
        }
    }

    fn fail(&mut self, case: String) {
        self.see(f64::INFINITY, || case);
    }

    pub fn passed(&self) -> bool {
        self.failing.is_none() && self.cases > 0
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<11} {:<34} {:>6} {:>11} {:>9}  result", "suite", "check", "cases", "worst", "tol");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<11} {:<34} {:>6} {:>11.3e} {:>9.1e}  {}",
                c.suite,
                c.name,
                c.cases,
                c.worst,
                c.tol,
                if c.passed() { "PASS" } else { "FAIL" }
            );
            if let Some(f) = &c.failing {
                let _ = writeln!(s, "    first failure: {f}");
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        let _ = writeln!(s, "seed {}: {} checks, {} failed", self.seed, self.checks.len(), failed);
        s
    }
}

struct Draws {
    rng: ChaCha8Rng,
}

impl Draws {
    fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Draws { rng }
    }

    /// Uniform on the half-open `(lo, hi]`.
    fn open_low(&mut self, lo: f64, hi: f64) -> f64 {
        hi - self.rng.random_range(0.0..(hi - lo))
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..=hi)
    }

    fn lambda_off_unit(&mut self) -> f64 {
        loop {
            let l = self.range(-3.0, 3.0);
            if (l.abs() - 1.0).abs() > 1e-6 {
                return l;
            }
        }
    }
}

struct Sizes {
    draws: usize,
    transforms: usize,
    traces: usize,
    grid: usize,
}

fn coupling(a: &ScatteringAmplitudes, b: &ScatteringAmplitudes, fault: Option<Fault>) -> (f64, f64) {
    let (p, m) = lambda_sides(a, b);
    match fault {
        Some(Fault::LambdaDoubled) => (2.0 * p, 2.0 * m),
        None => (p, m),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn amp_gap(a: &ScatteringAmplitudes, b: &ScatteringAmplitudes) -> f64 {
    [a.s_plus - b.s_plus, a.s_minus - b.s_minus, a.r_plus - b.r_plus, a.r_minus - b.r_minus]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

fn scattering_suite(seed: u64, n: usize, out: &mut Vec<Check>) {
    let mut unit = Check::new("scattering", "unitarity", 1e-12);
    let mut real = Check::new("scattering", "reality S(-w) = S*(w)", 1e-12);
    let mut swap = Check::new("scattering", "lambda flip swaps r+/r-", 0.0);
    let mut pure = Check::new("scattering", "pure delta = ddp(mu, 0)", 0.0);
    let mut d = Draws::new(seed, 1);
    for _ in 0..n {
        let (mu, lambda, w) = (d.range(0.0, 10.0), d.range(-3.0, 3.0), d.open_low(0.0, 10.0));
        let models = [
            MirrorModel::PureDelta { mu },
            MirrorModel::DeltaDeltaPrime { mu, lambda },
            MirrorModel::dirichlet(),
            MirrorModel::neumann(),
            MirrorModel::perfect(Phase::Robin { mu: mu.max(1e-3) }, Phase::Constant(lambda)),
        ];
        for m in &models {
            let case = || format!("{m:?}, omega = {w:?}");
            match (amplitudes(m, w), reality_residual(m, w)) {
                (Ok(sa), Ok(r)) => {
                    unit.see(unitarity_residual(&sa), case);
                    real.see(r, case);
                }
                (Err(e), _) | (_, Err(e)) => {
                    unit.fail(format!("{}: {e}", case()));
                    real.fail(format!("{}: {e}", case()));
                }
            }
        }
        let a = amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda }, w);
        let b = amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda: -lambda }, w);
        let case = || format!("mu = {mu:?}, lambda = {lambda:?}, omega = {w:?}");
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let g = (a.r_plus - b.r_minus).norm() + (a.r_minus - b.r_plus).norm()
                    + (a.s_plus - b.s_plus).norm() + (a.s_minus - b.s_minus).norm();
                swap.see(g, case);
            }
            _ => swap.fail(case()),
        }
        match (amplitudes(&MirrorModel::PureDelta { mu }, w), amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda: 0.0 }, w)) {
            (Ok(a), Ok(b)) => pure.see(amp_gap(&a, &b), || format!("mu = {mu:?}, omega = {w:?}")),
            _ => pure.fail(format!("mu = {mu:?}, omega = {w:?}")),
        }
    }
    out.extend([unit, real, swap, pure]);
}

fn motion_suite(seed: u64, n: usize, transforms: usize, out: &mut Vec<Check>) {
    let mut even = Check::new("motion", "G even and positive", 0.0);
    let mut ft = Check::new("motion", "G closed vs time quadrature", 1e-8);
    let mut d = Draws::new(seed, 2);
    for _ in 0..n {
        let p = MotionProfile { eps: 0.01, omega0: d.range(0.1, 5.0), tau: d.range(0.5, 1e4) };
        let w = d.range(-20.0, 20.0);
        let (g, h) = (fourier_g(&p, w), fourier_g(&p, -w));
        let v = if g > 0.0 { (g - h).abs() } else { f64::INFINITY };
        even.see(v, || format!("{p:?}, omega = {w:?}"));
    }
    let quad = QuadratureConfig::default();
    for _ in 0..transforms {
        let p = MotionProfile { eps: 0.01, omega0: 1.0, tau: d.range(5.0, 50.0) };
        let w = d.range(0.0, 5.0);
        let case = || format!("tau = {:?}, omega = {w:?}", p.tau);
        match fourier_g_numeric(&p, w, &quad) {
            Ok(num) => ft.see(rel(num, fourier_g(&p, w)), case),
            Err(e) => ft.fail(format!("{}: {e}", case())),
        }
    }
    out.extend([even, ft]);
}

fn spectrum_suite(seed: u64, n: usize, traces: usize, fault: Option<Fault>, out: &mut Vec<Check>) {
    let mut bounds = Check::new("spectrum", "0 <= Lambda <= 1", 1e-12);
    let mut sym = Check::new("spectrum", "Lambda(w, W) = Lambda(W, w)", 0.0);
    let mut closed = Check::new("spectrum", "Lambda closed vs definition", 1e-12);
    let mut pair = Check::new("spectrum", "N(w) = N(w0 - w)", 1e-14);
    let mut trace = Check::new("spectrum", "trace formula vs finite tau", 1e-8);
    let mut d = Draws::new(seed, 3);
    for _ in 0..n {
        let m = MirrorModel::DeltaDeltaPrime { mu: d.range(0.0, 10.0), lambda: d.range(-3.0, 3.0) };
        let (w, big) = (d.open_low(0.0, 10.0), d.open_low(0.0, 10.0));
        let (Ok(a), Ok(b)) = (amplitudes(&m, w), amplitudes(&m, big)) else {
            bounds.fail(format!("{m:?}"));
            continue;
        };
        let (p, q) = coupling(&a, &b, fault);
        let t = p + q;
        let case = || format!("{m:?}, omega = {w:?}, Omega = {big:?}");
        bounds.see((-t).max(t - 1.0).max(-p).max(-q).max(0.0), case);
        let (p2, q2) = coupling(&b, &a, fault);
        sym.see((p - p2).abs().max((q - q2).abs()), case);

        let xi: f64 = d.open_low(0.0, 1.0).min(1.0 - 1e-12);
        let alpha = 10f64.powf(d.range(-2.0, 2.0));
        let lambda = d.range(-3.0, 3.0);
        let model = MirrorModel::DeltaDeltaPrime { mu: 1.0 / alpha, lambda };
        let case = || format!("xi = {xi:?}, alpha = {alpha:?}, lambda = {lambda:?}");
        match (amplitudes(&model, xi), amplitudes(&model, 1.0 - xi), lambda_sides_closed(xi, alpha, lambda)) {
            (Ok(a), Ok(b), Ok(c)) => {
                let def = coupling(&a, &b, fault);
                closed.see((def.0 - c.0).abs().max((def.1 - c.1).abs()), case);
            }
            _ => closed.fail(case()),
        }

        let prof = MotionProfile { eps: 0.02, omega0: 1.0, tau: 1e3 };
        let scale = prof.eps * prof.eps;
        let xi = d.range(0.0, 1.0);
        let case = || format!("{model:?}, xi = {xi:?}");
        match (spectrum_mono(&model, &prof, xi), spectrum_mono(&model, &prof, 1.0 - xi)) {
            (Ok(a), Ok(b)) => pair.see(
                ((a.n_plus_per_tau - b.n_plus_per_tau).abs()).max((a.n_minus_per_tau - b.n_minus_per_tau).abs()) / scale,
                case,
            ),
            _ => pair.fail(case()),
        }
    }

    let quad = QuadratureConfig::default();
    let prof = MotionProfile { eps: 0.01, omega0: 1.0, tau: 1e3 };
    for _ in 0..traces {
        let m = MirrorModel::DeltaDeltaPrime { mu: d.open_low(0.0, 5.0), lambda: d.range(-3.0, 3.0) };
        let w = d.range(0.05, 1.2);
        let case = || format!("{m:?}, omega = {w:?}");
        match (spectrum_trace_oracle(&m, &prof, w, &quad), spectrum_finite_tau(&m, &prof, w, &quad)) {
            (Ok(n), Ok(s)) => trace.see(rel(n, s.n_total_per_tau * prof.tau), case),
            (Err(e), _) | (_, Err(e)) => trace.fail(format!("{}: {e}", case())),
        }
    }
    out.extend([bounds, sym, closed, pair, trace]);
}

fn rates_suite(grid: usize, out: &mut Vec<Check>) {
    let mut agree = Check::new("rates", "closed vs quadrature", 1e-6);
    let mut bound = Check::new("rates", "normalized <= 1", 1e-9);
    let mut seam = Check::new("rates", "small-alpha seam", 1e-6);
    let mut flip = Check::new("rates", "lambda flip swaps sides", 1e-12);
    let quad = QuadratureConfig::default();
    let p = MotionProfile { eps: 0.01, omega0: 1.0, tau: 1e3 };
    for i in 0..grid {
        let mu = 0.1 * 100f64.powf(i as f64 / (grid - 1) as f64);
        for j in 0..grid {
            let lambda = -3.0 + 6.0 * j as f64 / (grid - 1) as f64;
            let case = || format!("mu/omega0 = {mu:?}, lambda = {lambda:?}");
            let c = total_rate_closed(mu, lambda, &p, &quad);
            let q = total_rate_quadrature(&MirrorModel::DeltaDeltaPrime { mu, lambda }, &p, &quad);
            match (c, q) {
                (Ok(c), Ok(q)) => {
                    agree.see(rel(c.normalized, q.normalized), case);
                    bound.see(c.normalized - 1.0, case);
                }
                (Err(e), _) | (_, Err(e)) => {
                    agree.fail(format!("{}: {e}", case()));
                    bound.fail(format!("{}: {e}", case()));
                }
            }
        }
    }
    for lambda in [0.0, 0.7, 1.0, -2.0] {
        let mu = 1.0 / dce_core::rates::SMALL_ALPHA_SWITCH;
        let case = || format!("alpha = {:?}, lambda = {lambda:?}", 1.0 / mu);
        let c = normalized_rate_closed(1.0 / mu, lambda);
        let q = total_rate_quadrature(&MirrorModel::DeltaDeltaPrime { mu, lambda }, &p, &quad);
        match (c, q) {
            (Ok(c), Ok(q)) => seam.see(rel(c, q.normalized), case),
            _ => seam.fail(case()),
        }
    }
    for (mu, lambda) in [(0.3, 0.8), (1.0, 2.5), (5.0, -0.4)] {
        let case = || format!("mu/omega0 = {mu:?}, lambda = {lambda:?}");
        match (total_rate_closed(mu, lambda, &p, &quad), total_rate_closed(mu, -lambda, &p, &quad)) {
            (Ok(a), Ok(b)) => {
                let v = (a.rate_plus_per_tau - b.rate_minus_per_tau)
                    .abs()
                    .max((a.rate_minus_per_tau - b.rate_plus_per_tau).abs())
                    .max((a.rate_total_per_tau - b.rate_total_per_tau).abs());
                flip.see(v / a.rate_total_per_tau, case);
            }
            _ => flip.fail(case()),
        }
    }
    out.extend([agree, bound, seam, flip]);
}

fn modes_suite(seed: u64, n: usize, out: &mut Vec<Check>) {
    let mut solve = Check::new("modes", "solver vs closed form", 1e-12);
    let mut matching = Check::new("modes", "matching conditions / kappa", 1e-12);
    let mut uform = Check::new("modes", "U(lambda) form", 1e-12);
    let mut robin = Check::new("modes", "Robin/Dirichlet at lambda = 1", 1e-12);
    let mut d = Draws::new(seed, 5);
    for _ in 0..n {
        let (mu, lambda, w) = (d.open_low(0.0, 10.0), d.lambda_off_unit(), d.open_low(0.0, 10.0));
        let case = || format!("mu = {mu:?}, lambda = {lambda:?}, omega = {w:?}");
        let closed = amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda }, w);
        match (solve_scattering(mu, lambda, w), closed) {
            (Ok(a), Ok(b)) => solve.see(amp_gap(&a, &b), case),
            (Err(e), _) | (_, Err(e)) => solve.fail(format!("{}: {e}", case())),
        }
        // The printed transfer form amplifies f64 noise in the field values by its coefficients.
        let k = (1.0 + lambda) / (1.0 - lambda);
        let kappa = 1f64.max(k.abs()).max(1.0 / k.abs());
        match solve_modes(mu, lambda, w) {
            Ok(modes) => {
                for mode in &modes {
                    match matching_residual(mu, lambda, &mode.boundary_values()) {
                        Ok((a, b)) => matching.see(a.max(b) / kappa, case),
                        Err(e) => matching.fail(format!("{}: {e}", case())),
                    }
                    uform.see(u_matrix_residual(mu, lambda, mode), case);
                }
            }
            Err(e) => {
                matching.fail(format!("{}: {e}", case()));
                uform.fail(format!("{}: {e}", case()));
            }
        }
        let case = || format!("mu = {mu:?}, lambda = 1, omega = {w:?}");
        match amplitudes(&MirrorModel::DeltaDeltaPrime { mu, lambda: 1.0 }, w) {
            Ok(sa) => {
                for inc in [Incidence::Left, Incidence::Right] {
                    match robin_dirichlet_residual(mu, &mode_from_amplitudes(&sa, inc)) {
                        Ok((a, b)) => robin.see(a.max(b), case),
                        Err(e) => robin.fail(format!("{}: {e}", case())),
                    }
                }
            }
            Err(e) => robin.fail(format!("{}: {e}", case())),
        }
    }
    out.extend([solve, matching, uform, robin]);
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let sizes = if a.quick {
        Sizes { draws: 100, transforms: 8, traces: 2, grid: 5 }
    } else {
        Sizes { draws: 1000, transforms: 50, traces: 6, grid: 11 }
    };
    let mut checks = Vec::new();
    scattering_suite(a.seed, sizes.draws, &mut checks);
    motion_suite(a.seed, sizes.draws, sizes.transforms, &mut checks);
    spectrum_suite(a.seed, sizes.draws / 2, sizes.traces, a.inject_fault, &mut checks);
    rates_suite(sizes.grid, &mut checks);
    modes_suite(a.seed, sizes.draws / 2, &mut checks);
    Ok(VerifyReport { seed: a.seed, checks })
}
