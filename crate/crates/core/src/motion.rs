//! Prescribed mirror trajectory `q(t) = ε g(t)` with
//! `g(t) = cos(ω₀ t) exp(−|t|/τ)`.
//!
//! The Fourier convention is `G(ω) = ∫ g(t) e^{iωt} dt`, which gives
//!
//! ```text
//! G(ω) = 2τ [1 + τ²(ω² + ω₀²)] / ([1 + (ω − ω₀)² τ²] [1 + (ω + ω₀)² τ²])
//! ```
//!
//! a real, even, strictly positive function with peaks of height ≈ τ at
//! `ω = ±ω₀`. For `ω₀τ → ∞`, `|G(ω)|²/τ` tends to
//! `(π/2)[δ(ω − ω₀) + δ(ω + ω₀)]` (the monochromatic limit).

use crate::error::{finite, Error, Result};
use crate::quadrature::{integrate_partitioned, QuadratureConfig};

/// Smallest `ω₀τ` accepted as the monochromatic regime.
pub const MONOCHROMATIC_MIN: f64 = 10.0;

/// Largest `ε ω₀` treated as nonrelativistic without a warning.
pub const NONRELATIVISTIC_MAX: f64 = 0.1;

/// Amplitude `eps`, carrier frequency `omega0` and damping time `tau`.
///
/// `eps = 0` (a mirror at rest) is admitted and produces no particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionProfile {
    pub eps: f64,
    pub omega0: f64,
    pub tau: f64,
}

impl MotionProfile {
    pub fn new(eps: f64, omega0: f64, tau: f64) -> Result<Self> {
        let p = MotionProfile { eps, omega0, tau };
        p.validate()?;
        if !p.is_nonrelativistic() {
            log::warn!(
                "eps * omega0 = {} is not small; the first-order moving-mirror treatment assumes |q'| << 1",
                eps * omega0
            );
        }
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        finite("eps", self.eps)?;
        if self.eps < 0.0 {
            return Err(Error::Validation {
                name: "eps",
                value: self.eps,
                reason: "must be non-negative",
            });
        }
        for (name, v) in [("omega0", self.omega0), ("tau", self.tau)] {
            finite(name, v)?;
            if v <= 0.0 {
                return Err(Error::Validation {
                    name,
                    value: v,
                    reason: "must be positive",
                });
            }
        }
        Ok(())
    }

    /// `ω₀τ`, the number of radians of oscillation per damping time.
    pub fn quality(&self) -> f64 {
        self.omega0 * self.tau
    }

    pub fn is_monochromatic(&self) -> bool {
        self.quality() >= MONOCHROMATIC_MIN
    }

    pub fn is_nonrelativistic(&self) -> bool {
        self.eps * self.omega0 < NONRELATIVISTIC_MAX
    }

    pub(crate) fn warn_if_not_monochromatic(&self) {
        if !self.is_monochromatic() {
            log::warn!(
                "omega0 * tau = {} is below {MONOCHROMATIC_MIN}; monochromatic-limit results are unreliable",
                self.quality()
            );
        }
    }
}

/// Mirror position `ε cos(ω₀t) exp(−|t|/τ)`.
pub fn displacement(p: &MotionProfile, t: f64) -> f64 {
    p.eps * (p.omega0 * t).cos() * (-t.abs() / p.tau).exp()
}

/// Closed-form Fourier transform `G(ω)` of the unit-amplitude trajectory.
pub fn fourier_g(p: &MotionProfile, omega: f64) -> f64 {
    let tau = p.tau;
    let w0 = p.omega0;
    let dm = (omega - w0) * tau;
    let dp = (omega + w0) * tau;
    2.0 * tau * (1.0 + tau * tau * (omega * omega + w0 * w0)) / ((1.0 + dm * dm) * (1.0 + dp * dp))
}

/// `G(ω)` by direct adaptive quadrature of `∫ g(t) e^{iωt} dt`.
///
/// `g` is even, so only the cosine part survives and the integral is folded
/// onto `[0, T]` with `T = τ ln 10¹²`. The origin (kink of `|t|`) is an end
/// point; the range is pre-split into panels one period of the fastest
/// oscillating component wide.
pub fn fourier_g_numeric(p: &MotionProfile, omega: f64, quad: &QuadratureConfig) -> Result<f64> {
    p.validate()?;
    finite("omega", omega)?;
    quad.validate()?;
    let t_max = p.tau * 1e12f64.ln();
    let fastest = p.omega0 + omega.abs();
    let width = (2.0 * std::f64::consts::PI / fastest).min(p.tau);
    let panels = ((t_max / width).ceil() as usize).clamp(1, 200_000);
    let breaks: Vec<f64> = (0..=panels)
        .map(|k| t_max * k as f64 / panels as f64)
        .collect();
    let (w0, tau) = (p.omega0, p.tau);
    let est = integrate_partitioned(
        |t| 2.0 * (w0 * t).cos() * (-t / tau).exp() * (omega * t).cos(),
        &breaks,
        quad,
    )?;
    Ok(est.value)
}

/// `∫ |G(ω)|²/τ dω` over `[ω₀ − window, ω₀ + window]`; tends to π/2 as `ω₀τ → ∞`.
pub fn peak_weight(p: &MotionProfile, window: f64, quad: &QuadratureConfig) -> Result<f64> {
    p.validate()?;
    finite("window", window)?;
    if !(window > 0.0 && window < p.omega0) {
        return Err(Error::Validation {
            name: "window",
            value: window,
            reason: "must lie in (0, omega0)",
        });
    }
    let w0 = p.omega0;
    let mut breaks = vec![w0 - window, w0, w0 + window];
    for k in [1.0, 10.0, 100.0, 1000.0] {
        let d = k / p.tau;
        if d < window {
            breaks.push(w0 - d);
            breaks.push(w0 + d);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let est = integrate_partitioned(
        |w| {
            let g = fourier_g(p, w);
            g * g / p.tau
        },
        &breaks,
        quad,
    )?;
    Ok(est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn profile(omega0: f64, tau: f64) -> MotionProfile {
        MotionProfile { eps: 0.01, omega0, tau }
    }

    #[test]
    fn displacement_values() {
        let p = MotionProfile { eps: 0.3, omega0: 2.0, tau: 2.0 * PI * 3.0 / 2.0 };
        assert_eq!(displacement(&p, 0.0), 0.3);
        assert!(displacement(&p, PI / (2.0 * p.omega0)).abs() < 1e-16);
        // ω₀τ = 6π puts t = τ on a cosine maximum.
        let at_tau = displacement(&p, p.tau);
        assert!((at_tau - 0.3 * (-1.0f64).exp()).abs() < 1e-15);
        for k in 0..200 {
            let t = -50.0 + 0.5 * k as f64;
            assert!(displacement(&p, t).abs() <= p.eps);
        }
    }

    #[test]
    fn g_at_zero_frequency() {
        let p = profile(1.3, 7.0);
        let expect = 2.0 * p.tau / (1.0 + (p.omega0 * p.tau).powi(2));
        assert!((fourier_g(&p, 0.0) - expect).abs() <= 1e-15 * expect);
    }

    #[test]
    fn g_is_even_and_positive() {
        let p = profile(1.0, 30.0);
        for k in 0..100 {
            let w = 0.037 * k as f64 - 1.1;
            let g = fourier_g(&p, w);
            assert!(g > 0.0);
            assert_eq!(g, fourier_g(&p, -w));
        }
    }

    #[test]
    fn peak_height_tends_to_tau() {
        let mut last = 0.0;
        for tau in [1e2, 1e3, 1e4] {
            let ratio = fourier_g(&profile(1.0, tau), 1.0) / tau;
            let gap = (ratio - 1.0).abs();
            assert!(gap < 1.0 / tau);
            if last > 0.0 {
                assert!(gap < last);
            }
            last = gap;
        }
    }

    #[test]
    fn numeric_transform_matches_closed_form() {
        let cfg = QuadratureConfig::default();
        for (w0, tau, w) in [(1.0, 20.0, 1.0), (1.0, 50.0, 5.0), (1.0, 20.0, 0.0), (2.0, 5.0, 0.3)] {
            let p = profile(w0, tau);
            let exact = fourier_g(&p, w);
            let num = fourier_g_numeric(&p, w, &cfg).unwrap();
            assert!((num - exact).abs() <= 1e-8 * exact, "w0={w0} tau={tau} w={w}: {num} vs {exact}");
        }
    }

    #[test]
    fn peak_weight_converges() {
        let cfg = QuadratureConfig::default();
        let w4 = peak_weight(&profile(1.0, 1e4), 0.5, &cfg).unwrap();
        assert!((w4 - PI / 2.0).abs() < 1e-3, "{w4}");
        let w2 = peak_weight(&profile(1.0, 1e2), 0.5, &cfg).unwrap();
        assert!((w2 - PI / 2.0).abs() < 2e-1, "{w2}");
        let tiny = peak_weight(&profile(1.0, 1e2), 1e-9, &cfg).unwrap();
        assert!(tiny < 1e-6);
        assert!(peak_weight(&profile(1.0, 1e2), 1.0, &cfg).is_err());
        assert!(peak_weight(&profile(1.0, 1e2), 0.0, &cfg).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(MotionProfile::new(0.01, 1.0, 100.0).is_ok());
        assert!(MotionProfile::new(0.0, 1.0, 100.0).is_ok());
        assert!(MotionProfile::new(-0.1, 1.0, 100.0).is_err());
        assert!(MotionProfile::new(0.01, -1.0, 100.0).is_err());
        assert!(MotionProfile::new(0.01, 1.0, f64::NAN).is_err());
        assert!(!profile(1.0, 5.0).is_monochromatic());
        assert!(profile(1.0, 10.0).is_monochromatic());
        assert!(!MotionProfile { eps: 0.2, omega0: 1.0, tau: 1e3 }.is_nonrelativistic());
    }
}
