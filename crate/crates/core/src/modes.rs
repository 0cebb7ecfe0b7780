//! Independent mode solver for the δ–δ′ point interaction.
//!
//! Integrating the wave equation with the potential `μδ(x) + 2λδ′(x)` across
//! the origin gives, for `λ ≠ ±1`,
//!
//! ```text
//! φ(0⁺)  = k φ(0⁻)                         k = (1 + λ)/(1 − λ)
//! φ′(0⁺) = φ′(0⁻)/k + c φ(0⁻)              c = 2μ/(1 − λ²)
//! ```
//!
//! which follow from the product rules `δ′(x)φ(x) = φ(0)δ′(x) − φ′(0)δ(x)`
//! applied with the symmetric values `φ(0) = [φ(0⁺) + φ(0⁻)]/2`. The
//! left- and right-incident plane waves
//!
//! ```text
//! left:   e^{iωx} + r₋ e^{−iωx}   (x < 0)      s₊ e^{iωx}             (x > 0)
//! right:  s₋ e^{−iωx}             (x < 0)      e^{−iωx} + r₊ e^{iωx}  (x > 0)
//! ```
//!
//! are substituted into these conditions and solved as 2×2 complex systems.
//! The `1/√(4πω)` normalization cancels and is dropped.
//!
//! At `λ = ±1` the transfer form is singular. There the closed-form
//! amplitudes are used instead and checked against the boundary conditions
//! they imply: Robin `φ(0⁺) = (2/μ)φ′(0⁺)` on the right and Dirichlet
//! `φ(0⁻) = 0` on the left for `λ = 1`.

use nalgebra::{Matrix2, Vector2};

use crate::error::{finite, Error, Result};
use crate::scattering::{one_minus_sq, ScatteringAmplitudes, C64};

const I: C64 = C64::new(0.0, 1.0);

/// `|1 − λ²|` below which the transfer form is refused.
pub const SINGULAR_LAMBDA_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    Left,
    Right,
}

/// One scattering state: unit incoming wave plus reflected and transmitted parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution {
    pub incidence: Incidence,
    pub omega: f64,
    pub reflected: C64,
    pub transmitted: C64,
}

/// Field values and derivatives on either side of the mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingData {
    /// `φ(0⁻)`
    pub phi_left: C64,
    /// `φ(0⁺)`
    pub phi_right: C64,
    pub dphi_left: C64,
    pub dphi_right: C64,
}

impl ModeSolution {
    /// `|reflected|² + |transmitted|² − 1`.
    pub fn flux_defect(&self) -> f64 {
        self.reflected.norm_sqr() + self.transmitted.norm_sqr() - 1.0
    }

    pub fn boundary_values(&self) -> MatchingData {
        let iw = I * self.omega;
        let (r, s) = (self.reflected, self.transmitted);
        match self.incidence {
            Incidence::Left => MatchingData {
                phi_left: 1.0 + r,
                dphi_left: iw * (1.0 - r),
                phi_right: s,
                dphi_right: iw * s,
            },
            Incidence::Right => MatchingData {
                phi_right: 1.0 + r,
                dphi_right: iw * (r - 1.0),
                phi_left: s,
                dphi_left: -iw * s,
            },
        }
    }
}

fn transfer_constants(mu: f64, lambda: f64) -> Result<(f64, f64)> {
    finite("mu", mu)?;
    finite("lambda", lambda)?;
    let gap = one_minus_sq(lambda);
    if gap.abs() <= SINGULAR_LAMBDA_GAP {
        return Err(Error::SingularParameter { lambda });
    }
    Ok(((1.0 + lambda) / (1.0 - lambda), 2.0 * mu / gap))
}

/// Absolute residuals of the two transfer conditions.
pub fn matching_residual(mu: f64, lambda: f64, m: &MatchingData) -> Result<(f64, f64)> {
    let (k, c) = transfer_constants(mu, lambda)?;
    let first = m.phi_right - k * m.phi_left;
    let second = m.dphi_right - m.dphi_left / k - c * m.phi_left;
    Ok((first.norm(), second.norm()))
}

fn solve2(a: Matrix2<C64>, b: Vector2<C64>) -> Result<Vector2<C64>> {
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(det.norm() > 1e-14 * scale * scale) {
        return Err(Error::SingularSystem { det_abs: det.norm() });
    }
    Ok(Vector2::new(
        (b[0] * a[(1, 1)] - a[(0, 1)] * b[1]) / det,
        (a[(0, 0)] * b[1] - b[0] * a[(1, 0)]) / det,
    ))
}

/// Left- and right-incident solutions from the matching conditions.
///
/// The conditions are imposed with the first row scaled by `1 − λ` and the
/// second by `1 + λ`, with the `c φ(0⁻)` term rewritten through the first
/// row as `μ[φ(0⁺) + φ(0⁻)]`:
///
/// ```text
/// (1 − λ) φ(0⁺) − (1 + λ) φ(0⁻)        = 0
/// (1 + λ) φ′(0⁺) − (1 − λ) φ′(0⁻)      = μ [φ(0⁺) + φ(0⁻)]
/// ```
///
/// This system has the same solutions and stays well conditioned as `λ → ±1`.
pub fn solve_modes(mu: f64, lambda: f64, omega: f64) -> Result<[ModeSolution; 2]> {
    transfer_constants(mu, lambda)?;
    if mu < 0.0 {
        return Err(Error::Validation { name: "mu", value: mu, reason: "must be non-negative" });
    }
    finite("omega", omega)?;
    if omega <= 0.0 {
        return Err(Error::Validation { name: "omega", value: omega, reason: "must be positive" });
    }
    let iw = I * omega;
    let (lp, lm) = (1.0 + lambda, 1.0 - lambda);

    // Left: φ(0⁻) = 1 + r₋, φ′(0⁻) = iω(1 − r₋), φ(0⁺) = s₊, φ′(0⁺) = iωs₊; unknowns (s₊, r₋).
    let a = Matrix2::new(C64::from(lm), C64::from(-lp), lp * iw - mu, lm * iw - mu);
    let left = solve2(a, Vector2::new(C64::from(lp), lm * iw + mu))?;

    // Right: φ(0⁺) = 1 + r₊, φ′(0⁺) = iω(r₊ − 1), φ(0⁻) = s₋, φ′(0⁻) = −iωs₋; unknowns (r₊, s₋).
    let right = solve2(a, Vector2::new(C64::from(-lm), lp * iw + mu))?;

    Ok([
        ModeSolution { incidence: Incidence::Left, omega, transmitted: left[0], reflected: left[1] },
        ModeSolution { incidence: Incidence::Right, omega, reflected: right[0], transmitted: right[1] },
    ])
}

/// Scattering amplitudes re-derived from the mode solver.
pub fn solve_scattering(mu: f64, lambda: f64, omega: f64) -> Result<ScatteringAmplitudes> {
    let [left, right] = solve_modes(mu, lambda, omega)?;
    Ok(ScatteringAmplitudes {
        omega,
        s_plus: left.transmitted,
        r_minus: left.reflected,
        r_plus: right.reflected,
        s_minus: right.transmitted,
    })
}

/// The mode with the given incidence built from known amplitudes.
pub fn mode_from_amplitudes(sa: &ScatteringAmplitudes, incidence: Incidence) -> ModeSolution {
    let (reflected, transmitted) = match incidence {
        Incidence::Left => (sa.r_minus, sa.s_plus),
        Incidence::Right => (sa.r_plus, sa.s_minus),
    };
    ModeSolution { incidence, omega: sa.omega, reflected, transmitted }
}

/// `U(λ) = [[2λ + i, 1 − λ²], [1 − λ², −2λ + i]] / (1 + λ² − i)`.
pub fn u_matrix(lambda: f64) -> Matrix2<C64> {
    let l2 = lambda * lambda;
    let d = C64::new(1.0 + l2, -1.0);
    let off = C64::from(one_minus_sq(lambda));
    Matrix2::new(C64::new(2.0 * lambda, 1.0), off, off, C64::new(-2.0 * lambda, 1.0)) / d
}

/// `|Φ₊ − U(λ)Φ₋|` with `Φ± = (μφ(0⁺) ± iφ′(0⁺), μφ(0⁻) ∓ iφ′(0⁻))`.
pub fn u_matrix_residual(mu: f64, lambda: f64, mode: &ModeSolution) -> f64 {
    let m = mode.boundary_values();
    let plus = Vector2::new(mu * m.phi_right + I * m.dphi_right, mu * m.phi_left - I * m.dphi_left);
    let minus = Vector2::new(mu * m.phi_right - I * m.dphi_right, mu * m.phi_left + I * m.dphi_left);
    (plus - u_matrix(lambda) * minus).norm()
}

/// `(|φ(0⁺) − (2/μ)φ′(0⁺)|, |φ(0⁻)|)` for a mode of the `λ = 1` mirror.
pub fn robin_dirichlet_residual(mu: f64, mode: &ModeSolution) -> Result<(f64, f64)> {
    finite("mu", mu)?;
    if mu <= 0.0 {
        return Err(Error::Validation {
            name: "mu",
            value: mu,
            reason: "Robin parameter 2/mu needs mu > 0; use neumann_residual for the mu -> 0 limit",
        });
    }
    let m = mode.boundary_values();
    Ok(((m.phi_right - (2.0 / mu) * m.dphi_right).norm(), m.phi_left.norm()))
}

/// `|φ′(0⁺)|`, which vanishes for a Neumann right face.
pub fn neumann_residual(mode: &ModeSolution) -> f64 {
    mode.boundary_values().dphi_right.norm()
}
