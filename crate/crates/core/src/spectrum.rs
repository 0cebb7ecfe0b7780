//! Spectral density of particles created by the oscillating mirror.
//!
//! To first order in `ε` the number of particles created at frequency `ω` is
//!
//! ```text
//! N(ω) = (4ε²/π) ∫₀^∞ dΩ/2π · ωΩ |G(ω+Ω)|² Λ(ω, Ω)
//! ```
//!
//! with the coupling factor `Λ = Λ₊ + Λ₋` built from the static scattering
//! coefficients,
//!
//! ```text
//! Λ±(ω, Ω) = ¼ Re[1 + r±(ω) r±(Ω) − s±(ω) s±(Ω)].
//! ```
//!
//! `Λ₊` (`Λ₋`) weights emission into the right (left) half-line. In the
//! monochromatic limit the integral collapses onto `Ω = ω₀ − ω`:
//!
//! ```text
//! N±(ω)/τ = (ε²/π) ω(ω₀ − ω) Λ±(ω, ω₀ − ω) Θ(ω₀ − ω).
//! ```
//!
//! The same density also follows from the trace of the first-order
//! correction to the S-matrix, `Tr[𝒮𝒮†] = 8ε²Ω²|G(ω+Ω)|²Λ(ω,Ω)`; that
//! route is kept in [`spectrum_trace_oracle`] as an independent check.

use std::f64::consts::PI;

use nalgebra::Matrix2;

use crate::error::{finite, Error, Result};
use crate::motion::{fourier_g, MotionProfile};
use crate::quadrature::{integrate_partitioned, QuadratureConfig};
use crate::scattering::{eval_amplitudes, MirrorModel, ScatteringAmplitudes, C64};

/// Spectral densities divided by `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSample {
    pub omega: f64,
    pub n_plus_per_tau: f64,
    pub n_minus_per_tau: f64,
    pub n_total_per_tau: f64,
}

impl SpectrumSample {
    fn from_sides(omega: f64, plus: f64, minus: f64) -> Self {
        SpectrumSample {
            omega,
            n_plus_per_tau: plus,
            n_minus_per_tau: minus,
            n_total_per_tau: plus + minus,
        }
    }

    fn zero(omega: f64) -> Self {
        Self::from_sides(omega, 0.0, 0.0)
    }
}

/// `Λ(ω, Ω)` from the amplitudes at `ω` (`a`) and `Ω` (`b`).
pub fn lambda_total(a: &ScatteringAmplitudes, b: &ScatteringAmplitudes) -> f64 {
    let (p, m) = lambda_sides(a, b);
    p + m
}

/// `(Λ₊, Λ₋)` from the amplitudes at `ω` (`a`) and `Ω` (`b`).
pub fn lambda_sides(a: &ScatteringAmplitudes, b: &ScatteringAmplitudes) -> (f64, f64) {
    let one = C64::new(1.0, 0.0);
    let plus = 0.25 * (one + a.r_plus * b.r_plus - a.s_plus * b.s_plus).re;
    let minus = 0.25 * (one + a.r_minus * b.r_minus - a.s_minus * b.s_minus).re;
    (plus, minus)
}

/// Closed form of `(Λ₊, Λ₋)` for the δ–δ′ mirror at `ω = ξω₀`, `Ω = (1 − ξ)ω₀`,
/// in terms of `α = ω₀/μ`.
pub fn lambda_sides_closed(xi: f64, alpha: f64, lambda: f64) -> Result<(f64, f64)> {
    finite("xi", xi)?;
    finite("lambda", lambda)?;
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Validation {
            name: "alpha",
            value: alpha,
            reason: "alpha = omega0/mu must be finite and positive (mu = 0 goes through lambda_sides)",
        });
    }
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::Validation {
            name: "xi",
            value: xi,
            reason: "must lie in (0, 1)",
        });
    }
    let l2 = lambda * lambda;
    let beta = l2 + 1.0;
    let q = xi * alpha * alpha * (1.0 - xi);
    let den = C64::new(q * beta * beta - 1.0, alpha * beta);
    let side = |sign: f64| {
        let d = lambda - sign;
        (C64::new(2.0 * q * l2 - 0.5, alpha * d * d / 4.0) / den).re
    };
    Ok((side(1.0), side(-1.0)))
}

/// `Λ` for a perfect mirror from its four reflection phases
/// `θ₊(ω), θ₊(Ω), θ₋(ω), θ₋(Ω)`.
pub fn lambda_perfect(thp_w: f64, thp_big: f64, thm_w: f64, thm_big: f64) -> f64 {
    0.25 * (2.0 + (thp_w + thp_big).cos() + (thm_w + thm_big).cos())
}

/// Monochromatic-limit spectrum at `omega`.
pub fn spectrum_mono(model: &MirrorModel, p: &MotionProfile, omega: f64) -> Result<SpectrumSample> {
    model.validate()?;
    p.validate()?;
    finite("omega", omega)?;
    if omega < 0.0 {
        return Err(Error::Domain(format!("omega must be non-negative, got {omega}")));
    }
    p.warn_if_not_monochromatic();
    let (plus, minus) = mono_sides(model, p.omega0, omega);
    let eps2 = p.eps * p.eps;
    Ok(SpectrumSample::from_sides(omega, eps2 * plus, eps2 * minus))
}

/// `(N₊/τ, N₋/τ)` per unit `ε²` in the monochromatic limit; no validation.
pub(crate) fn mono_sides(model: &MirrorModel, omega0: f64, omega: f64) -> (f64, f64) {
    // Θ(ω₀ − ω) with the endpoint ω = ω₀ taken as zero.
    if omega >= omega0 {
        return (0.0, 0.0);
    }
    let partner = omega0 - omega;
    let (lp, lm) = lambda_sides(&eval_amplitudes(model, omega), &eval_amplitudes(model, partner));
    let parabola = omega * partner / PI;
    (parabola * lp, parabola * lm)
}

/// Integrate `f` over `Ω ∈ (0, ∞)` for an integrand carrying `|G(ω+Ω)|²`.
///
/// The finite piece `[0, ω₀ − ω]` is refined towards the resonance; the
/// remainder is mapped onto `u ∈ [0, 1)` through `Ω = Ω* + u/(1−u)`.
fn integrate_half_line<F: Fn(f64) -> f64>(
    f: F,
    p: &MotionProfile,
    omega: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    let peak = p.omega0 - omega;
    let scales: Vec<f64> = [1.0, 10.0, 100.0, 1000.0, 1e4].iter().map(|k| k / p.tau).collect();

    let mut total = 0.0;
    let start = if peak > 0.0 {
        let mut breaks = vec![0.0, peak];
        breaks.extend(scales.iter().filter(|&&d| d < peak).map(|d| peak - d));
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        total += integrate_partitioned(&f, &breaks, quad)?.value;
        peak
    } else {
        0.0
    };

    let mut ubreaks = vec![0.0, 0.5, 1.0];
    ubreaks.extend(scales.iter().filter(|&&d| d < 1.0).map(|d| d / (1.0 + d)));
    ubreaks.sort_by(f64::total_cmp);
    ubreaks.dedup();
    let mapped = |u: f64| {
        let w = 1.0 - u;
        f(start + u / w) / (w * w)
    };
    total += integrate_partitioned(mapped, &ubreaks, quad)?.value;
    Ok(total)
}

/// Finite-`τ` spectrum at `omega` by quadrature over the partner frequency.
///
/// At `omega = 0` the density vanishes identically and zeros are returned.
pub fn spectrum_finite_tau(
    model: &MirrorModel,
    p: &MotionProfile,
    omega: f64,
    quad: &QuadratureConfig,
) -> Result<SpectrumSample> {
    model.validate()?;
    p.validate()?;
    quad.validate()?;
    finite("omega", omega)?;
    if omega < 0.0 {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    if omega == 0.0 {
        return Ok(SpectrumSample::zero(omega));
    }
    let here = eval_amplitudes(model, omega);
    let side = |plus: bool| {
        integrate_half_line(
            |big: f64| {
                let g = fourier_g(p, omega + big);
                let (lp, lm) = lambda_sides(&here, &eval_amplitudes(model, big));
                omega * big * g * g * if plus { lp } else { lm }
            },
            p,
            omega,
            quad,
        )
    };
    let scale = 4.0 * p.eps * p.eps / PI / (2.0 * PI) / p.tau;
    let plus = scale * side(true)?;
    let minus = scale * side(false)?;
    Ok(SpectrumSample::from_sides(omega, plus, minus))
}

fn eta() -> Matrix2<C64> {
    Matrix2::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(-1.0, 0.0),
    )
}

/// First-order moving-mirror correction `𝒮(ω, Ω) = iεΩ G(ω−Ω) [S(ω)η − ηS(Ω)]`.
pub fn first_order_smatrix(
    model: &MirrorModel,
    p: &MotionProfile,
    omega: f64,
    big_omega: f64,
) -> Result<Matrix2<C64>> {
    model.validate()?;
    p.validate()?;
    finite("omega", omega)?;
    finite("Omega", big_omega)?;
    Ok(first_order_unchecked(model, p, omega, big_omega))
}

fn first_order_unchecked(model: &MirrorModel, p: &MotionProfile, omega: f64, big_omega: f64) -> Matrix2<C64> {
    let eta = eta();
    let m = eval_amplitudes(model, omega).s_matrix() * eta - eta * eval_amplitudes(model, big_omega).s_matrix();
    let prefactor = C64::new(0.0, p.eps * big_omega * fourier_g(p, omega - big_omega));
    m * prefactor
}

/// `N(ω)` (not divided by `τ`) from the trace of the first-order S-matrix.
pub fn spectrum_trace_oracle(
    model: &MirrorModel,
    p: &MotionProfile,
    omega: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    model.validate()?;
    p.validate()?;
    quad.validate()?;
    finite("omega", omega)?;
    if omega < 0.0 {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    if omega == 0.0 {
        return Ok(0.0);
    }
    let integral = integrate_half_line(
        |big: f64| {
            let s = first_order_unchecked(model, p, omega, -big);
            let trace = s.iter().map(|z| z.norm_sqr()).sum::<f64>();
            omega / big * trace
        },
        p,
        omega,
        quad,
    )?;
    Ok(integral / (2.0 * PI) / (2.0 * PI))
}
