//! Total creation rates `𝒩/τ = ∫₀^{ω₀} N(ω)/τ dω` in the monochromatic limit.
//!
//! All rates are reported per unit effective oscillation time `τ` and
//! normalized against the perfect Dirichlet mirror, `𝒩_D/τ = ε²ω₀³/(6π)`,
//! which is the largest attainable value.
//!
//! For the δ–δ′ mirror with `μ > 0` the total has a closed form in
//! `α = ω₀/μ` and `λ`:
//!
//! ```text
//! 𝒩/𝒩_D = [𝒜 + ℬ ln(α²β² + 1) + 𝒞 arctan(αβ)] / [α³β⁵(α²β² + 4)],   β = 1 + λ²
//! 𝒜 = 4α⁵λ²β⁵ − 24α(λ²−1)²β − 6α³β⁵ + 40α³λ²β³
//! ℬ = 3α³[(λ²−1)² − 4λ²]β³ + 12α[(λ²−1)² − 2λ²]β
//! 𝒞 = 6α²β⁴ + 24(λ²−1)²
//! ```
//!
//! The numerator cancels down to `O(α³)` as `α → 0`, so below
//! [`SMALL_ALPHA_SWITCH`] the quadrature path is used instead. There is no
//! closed form for the per-side split; it always comes from quadrature.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{finite, Error, Result};
use crate::motion::MotionProfile;
use crate::quadrature::{integrate_partitioned, QuadratureConfig};
use crate::scattering::MirrorModel;
use crate::spectrum::mono_sides;

/// Below this `α = ω₀/μ` the closed form is replaced by quadrature.
pub const SMALL_ALPHA_SWITCH: f64 = 1e-3;

/// Bracket width at which the valley search stops, in units of `μ/ω₀`.
pub const VALLEY_TOLERANCE: f64 = 1e-4;

const VALLEY_SAMPLES: usize = 25;

/// Total rates per unit `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSummary {
    pub rate_plus_per_tau: f64,
    pub rate_minus_per_tau: f64,
    pub rate_total_per_tau: f64,
    /// `rate_total / (ε²ω₀³/6π)`.
    pub normalized: f64,
}

impl RateSummary {
    /// Build from rates per unit `ε²`, so that the normalization survives `ε = 0`.
    fn from_unit_sides(p: &MotionProfile, plus: f64, minus: f64, unit_total: f64) -> Self {
        let eps2 = p.eps * p.eps;
        RateSummary {
            rate_plus_per_tau: eps2 * plus,
            rate_minus_per_tau: eps2 * minus,
            rate_total_per_tau: eps2 * unit_total,
            normalized: unit_total / unit_dirichlet(p.omega0),
        }
    }
}

fn unit_dirichlet(omega0: f64) -> f64 {
    omega0 * omega0 * omega0 / (6.0 * PI)
}

/// `𝒩_D/τ = ε²ω₀³/(6π)`.
pub fn dirichlet_rate(p: &MotionProfile) -> f64 {
    p.eps * p.eps * unit_dirichlet(p.omega0)
}

/// The closed-form `𝒩/𝒩_D` exactly as written above; no small-`α` switch.
pub fn normalized_rate_closed(alpha: f64, lambda: f64) -> Result<f64> {
    finite("lambda", lambda)?;
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Validation {
            name: "alpha",
            value: alpha,
            reason: "alpha = omega0/mu must be finite and positive",
        });
    }
    let l2 = lambda * lambda;
    let b = 1.0 + l2;
    let k = (l2 - 1.0) * (l2 - 1.0);
    let (a2, a3) = (alpha * alpha, alpha * alpha * alpha);
    let a5 = a3 * a2;
    let (b3, b4) = (b * b * b, b * b * b * b);
    let b5 = b4 * b;

    let big_a = 4.0 * a5 * l2 * b5 - 24.0 * alpha * k * b - 6.0 * a3 * b5 + 40.0 * a3 * l2 * b3;
    let big_b = 3.0 * a3 * (k - 4.0 * l2) * b3 + 12.0 * alpha * (k - 2.0 * l2) * b;
    let big_c = 6.0 * a2 * b4 + 24.0 * k;

    let ab = alpha * b;
    let num = big_a + big_b * (ab * ab + 1.0).ln() + big_c * ab.atan();
    Ok(num / (a3 * b5 * (ab * ab + 4.0)))
}

/// `(𝒩₊/τ, 𝒩₋/τ)` per unit `ε²` by adaptive quadrature of the monochromatic spectrum.
fn unit_side_rates(model: &MirrorModel, omega0: f64, quad: &QuadratureConfig) -> Result<(f64, f64)> {
    // Features of width ~μ/ω₀ pile up at both ends of the spectrum.
    let fractions = [0.0, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 0.9, 0.99, 0.999, 0.9999, 1.0];
    let breaks: Vec<f64> = fractions.iter().map(|x| x * omega0).collect();
    let plus = integrate_partitioned(|w| mono_sides(model, omega0, w).0, &breaks, quad)?.value;
    let minus = integrate_partitioned(|w| mono_sides(model, omega0, w).1, &breaks, quad)?.value;
    Ok((plus, minus))
}

/// Total rates by quadrature of the monochromatic spectrum, side by side.
pub fn total_rate_quadrature(model: &MirrorModel, p: &MotionProfile, quad: &QuadratureConfig) -> Result<RateSummary> {
    model.validate()?;
    p.validate()?;
    quad.validate()?;
    p.warn_if_not_monochromatic();
    let (plus, minus) = unit_side_rates(model, p.omega0, quad)?;
    Ok(RateSummary::from_unit_sides(p, plus, minus, plus + minus))
}

fn positive_mu(mu: f64) -> Result<f64> {
    finite("mu", mu)?;
    if mu <= 0.0 {
        return Err(Error::Validation {
            name: "mu",
            value: mu,
            reason: "closed form needs mu > 0; use total_rate_quadrature for mu = 0",
        });
    }
    Ok(mu)
}

/// Total rates of the δ–δ′ mirror from the closed form, split by side with
/// quadrature.
///
/// The quadrature split is rescaled onto the closed-form total so that
/// `rate_plus + rate_minus = rate_total` holds to rounding.
pub fn total_rate_closed(mu: f64, lambda: f64, p: &MotionProfile, quad: &QuadratureConfig) -> Result<RateSummary> {
    let mu = positive_mu(mu)?;
    let model = MirrorModel::delta_delta_prime(mu, lambda)?;
    p.validate()?;
    quad.validate()?;
    let alpha = p.omega0 / mu;
    if alpha < SMALL_ALPHA_SWITCH {
        return total_rate_quadrature(&model, p, quad);
    }
    p.warn_if_not_monochromatic();
    let normalized = normalized_rate_closed(alpha, lambda)?;
    let unit_total = normalized * unit_dirichlet(p.omega0);
    let (qp, qm) = unit_side_rates(&model, p.omega0, quad)?;
    let sum = qp + qm;
    let (plus, minus) = if sum > 0.0 {
        (unit_total * (qp / sum), unit_total * (qm / sum))
    } else {
        (0.5 * unit_total, 0.5 * unit_total)
    };
    Ok(RateSummary::from_unit_sides(p, plus, minus, unit_total))
}

/// `𝒩₊/𝒩₋` for the δ–δ′ mirror.
pub fn sides_ratio(mu: f64, lambda: f64, p: &MotionProfile, quad: &QuadratureConfig) -> Result<f64> {
    let model = MirrorModel::delta_delta_prime(mu, lambda)?;
    p.validate()?;
    quad.validate()?;
    let (plus, minus) = unit_side_rates(&model, p.omega0, quad)?;
    if minus.abs() < 1e-300 {
        return Err(Error::Degenerate(format!(
            "left-side rate vanishes at mu = {mu}, lambda = {lambda}"
        )));
    }
    Ok(plus / minus)
}

/// One point of a μλ-plane scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanCell {
    pub mu_over_omega0: f64,
    pub lambda: f64,
    pub result: std::result::Result<RateSummary, Error>,
}

/// Rates over a rectangular `(μ/ω₀, λ)` grid, stored row-major by λ then μ.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub mu_over_omega0: Vec<f64>,
    pub lambda: Vec<f64>,
    pub cells: Vec<ScanCell>,
}

impl ScanGrid {
    pub fn cell(&self, i_lambda: usize, i_mu: usize) -> &ScanCell {
        &self.cells[i_lambda * self.mu_over_omega0.len() + i_mu]
    }

    /// Cells of one λ row in increasing μ order.
    pub fn row(&self, i_lambda: usize) -> &[ScanCell] {
        let n = self.mu_over_omega0.len();
        &self.cells[i_lambda * n..(i_lambda + 1) * n]
    }
}

/// Evaluate [`total_rate_closed`] over the grid.
///
/// Cells run in parallel on the current rayon pool; each has a fixed
/// quadrature schedule so the result does not depend on the worker count.
/// Failures stay in their cell.
pub fn scan_plane(
    mu_grid: &[f64],
    lambda_grid: &[f64],
    p: &MotionProfile,
    quad: &QuadratureConfig,
) -> Result<ScanGrid> {
    if mu_grid.is_empty() || lambda_grid.is_empty() {
        return Err(Error::Domain("scan grids must be non-empty".into()));
    }
    for &m in mu_grid {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Validation {
                name: "mu/omega0",
                value: m,
                reason: "scan values must be finite and positive",
            });
        }
    }
    for &l in lambda_grid {
        finite("lambda", l)?;
    }
    p.validate()?;
    quad.validate()?;

    let n_mu = mu_grid.len();
    let cells = (0..n_mu * lambda_grid.len())
        .into_par_iter()
        .map(|idx| {
            let mu_over_omega0 = mu_grid[idx % n_mu];
            let lambda = lambda_grid[idx / n_mu];
            ScanCell {
                mu_over_omega0,
                lambda,
                result: total_rate_closed(mu_over_omega0 * p.omega0, lambda, p, quad),
            }
        })
        .collect();
    Ok(ScanGrid {
        mu_over_omega0: mu_grid.to_vec(),
        lambda: lambda_grid.to_vec(),
        cells,
    })
}

/// Locate the `μ/ω₀` that minimizes `𝒩₊/𝒩₋` at fixed `λ` on `mu_range`.
///
/// The range is sampled on a log grid first; the sampled curve must be
/// unimodal, and the bracket around the smallest sample is then refined by
/// golden-section search down to [`VALLEY_TOLERANCE`].
pub fn ratio_valley(
    lambda: f64,
    mu_range: (f64, f64),
    p: &MotionProfile,
    quad: &QuadratureConfig,
) -> Result<f64> {
    let (lo, hi) = mu_range;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::Domain(format!(
            "mu range must be positive and increasing, got ({lo}, {hi})"
        )));
    }
    let ratio = |m: f64| sides_ratio(m * p.omega0, lambda, p, quad);

    let mut samples = Vec::with_capacity(VALLEY_SAMPLES);
    for i in 0..VALLEY_SAMPLES {
        let t = i as f64 / (VALLEY_SAMPLES - 1) as f64;
        let m = if i == VALLEY_SAMPLES - 1 { hi } else { lo * (hi / lo).powf(t) };
        samples.push((m, ratio(m)?));
    }
    let (min, max) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(_, r)| (a.min(r), b.max(r)));
    if max - min <= 1e-9 * max.abs() {
        return Err(Error::Degenerate(format!(
            "ratio is flat ({min}..{max}) on the range; no valley at lambda = {lambda}"
        )));
    }
    let k = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let slack = 1e-12 * max.abs();
    let descending = samples[..=k].windows(2).all(|w| w[1].1 <= w[0].1 + slack);
    let ascending = samples[k..].windows(2).all(|w| w[1].1 + slack >= w[0].1);
    if !(descending && ascending) {
        return Err(Error::NotUnimodal { samples });
    }

    let mut a = samples[k.saturating_sub(1)].0;
    let mut b = samples[(k + 1).min(VALLEY_SAMPLES - 1)].0;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = ratio(c)?;
    let mut fd = ratio(d)?;
    while b - a > VALLEY_TOLERANCE {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ratio(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ratio(d)?;
        }
    }
    Ok(0.5 * (a + b))
}
