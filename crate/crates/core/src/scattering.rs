//! Static mirror models and their scattering coefficients.
//!
//! A mirror at rest at `x = 0` maps incoming field amplitudes to outgoing
//! ones through the 2×2 matrix
//!
//! ```text
//! S(ω) = [[s₊(ω), r₊(ω)],
//!         [r₋(ω), s₋(ω)]]
//! ```
//!
//! where `+` labels scattering into the right half-line and `−` into the
//! left. Three families are provided: the pure δ mirror of strength `μ`, the
//! δ–δ′ mirror with an extra dimensionless derivative coupling `λ`, and a
//! perfectly reflecting mirror described only by its two reflection phases.
//! For the physical models `S` is unitary and satisfies `S(−ω) = S*(ω)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::{Complex, Matrix2};

use crate::error::{finite, Error, Result};

pub type C64 = Complex<f64>;

const I: C64 = C64::new(0.0, 1.0);

/// A reflection phase as a function of frequency.
#[derive(Clone)]
pub enum Phase {
    /// θ = π.
    Dirichlet,
    /// θ = 0.
    Neumann,
    /// θ for ω ≥ 0 and −θ for ω < 0.
    Constant(f64),
    /// θ(ω) = 2 arctan(2ω/μ), extended to negative ω as an odd function.
    Robin { mu: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Phase {
    /// Phase at `omega`, reduced to (−π, π].
    pub fn at(&self, omega: f64) -> f64 {
        let raw = match self {
            Phase::Dirichlet => PI,
            Phase::Neumann => 0.0,
            Phase::Constant(t) if omega < 0.0 => -*t,
            Phase::Constant(t) => *t,
            Phase::Robin { mu } => omega.signum() * 2.0 * (2.0 * omega.abs() / mu).atan(),
            Phase::Custom(f) => f(omega),
        };
        wrap_phase(raw)
    }

    /// `e^{iθ(ω)}`, exact for the Dirichlet and Neumann presets.
    pub fn unit(&self, omega: f64) -> C64 {
        match self {
            Phase::Dirichlet => C64::new(-1.0, 0.0),
            Phase::Neumann => C64::new(1.0, 0.0),
            _ => (I * self.at(omega)).exp(),
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Dirichlet => write!(f, "Dirichlet"),
            Phase::Neumann => write!(f, "Neumann"),
            Phase::Constant(t) => write!(f, "Constant({t})"),
            Phase::Robin { mu } => write!(f, "Robin {{ mu: {mu} }}"),
            Phase::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

fn wrap_phase(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// The scattering model of a mirror at rest.
#[derive(Debug, Clone)]
pub enum MirrorModel {
    PureDelta { mu: f64 },
    DeltaDeltaPrime { mu: f64, lambda: f64 },
    PerfectPhases { plus: Phase, minus: Phase },
}

impl MirrorModel {
    pub fn pure_delta(mu: f64) -> Result<Self> {
        let m = MirrorModel::PureDelta { mu };
        m.validate()?;
        Ok(m)
    }

    pub fn delta_delta_prime(mu: f64, lambda: f64) -> Result<Self> {
        let m = MirrorModel::DeltaDeltaPrime { mu, lambda };
        m.validate()?;
        Ok(m)
    }

    pub fn dirichlet() -> Self {
        MirrorModel::PerfectPhases {
            plus: Phase::Dirichlet,
            minus: Phase::Dirichlet,
        }
    }

    pub fn neumann() -> Self {
        MirrorModel::PerfectPhases {
            plus: Phase::Neumann,
            minus: Phase::Neumann,
        }
    }

    pub fn perfect(plus: Phase, minus: Phase) -> Self {
        MirrorModel::PerfectPhases { plus, minus }
    }

    pub fn validate(&self) -> Result<()> {
        let check_mu = |mu: f64| -> Result<()> {
            finite("mu", mu)?;
            if mu < 0.0 {
                return Err(Error::Validation {
                    name: "mu",
                    value: mu,
                    reason: "coupling must be non-negative",
                });
            }
            Ok(())
        };
        match self {
            MirrorModel::PureDelta { mu } => check_mu(*mu),
            MirrorModel::DeltaDeltaPrime { mu, lambda } => {
                check_mu(*mu)?;
                finite("lambda", *lambda)?;
                Ok(())
            }
            MirrorModel::PerfectPhases { plus, minus } => {
                for p in [plus, minus] {
                    if let Phase::Robin { mu } = p {
                        if !(mu.is_finite() && *mu > 0.0) {
                            return Err(Error::Validation {
                                name: "mu",
                                value: *mu,
                                reason: "Robin phase needs a positive coupling",
                            });
                        }
                    }
                    if let Phase::Constant(t) = p {
                        finite("phase", *t)?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// The four scattering coefficients at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub omega: f64,
    pub s_plus: C64,
    pub s_minus: C64,
    pub r_plus: C64,
    pub r_minus: C64,
}

impl ScatteringAmplitudes {
    pub fn s_matrix(&self) -> Matrix2<C64> {
        Matrix2::new(self.s_plus, self.r_plus, self.r_minus, self.s_minus)
    }
}

/// `1 − λ²` without the cancellation of forming `λ²` first.
pub(crate) fn one_minus_sq(lambda: f64) -> f64 {
    (1.0 - lambda) * (1.0 + lambda)
}

fn ddp_amplitudes(mu: f64, lambda: f64, omega: f64) -> ScatteringAmplitudes {
    let l2 = lambda * lambda;
    if mu == 0.0 {
        // Frequency independent; also the continuous extension through ω = 0.
        let s = C64::new(one_minus_sq(lambda) / (1.0 + l2), 0.0);
        let r = 2.0 * lambda / (1.0 + l2);
        return ScatteringAmplitudes {
            omega,
            s_plus: s,
            s_minus: s,
            r_plus: C64::new(r, 0.0),
            r_minus: C64::new(-r, 0.0),
        };
    }
    let den = C64::new(omega * (l2 + 1.0), mu);
    let s = C64::new(omega * one_minus_sq(lambda), 0.0) / den;
    ScatteringAmplitudes {
        omega,
        s_plus: s,
        s_minus: s,
        r_plus: C64::new(2.0 * omega * lambda, -mu) / den,
        r_minus: C64::new(-2.0 * omega * lambda, -mu) / den,
    }
}

/// Scattering coefficients of `model` at frequency `omega`.
pub fn amplitudes(model: &MirrorModel, omega: f64) -> Result<ScatteringAmplitudes> {
    finite("omega", omega)?;
    model.validate()?;
    Ok(eval_amplitudes(model, omega))
}

/// [`amplitudes`] for a model that has already been validated.
pub(crate) fn eval_amplitudes(model: &MirrorModel, omega: f64) -> ScatteringAmplitudes {
    match model {
        MirrorModel::PureDelta { mu } => ddp_amplitudes(*mu, 0.0, omega),
        MirrorModel::DeltaDeltaPrime { mu, lambda } => ddp_amplitudes(*mu, *lambda, omega),
        MirrorModel::PerfectPhases { plus, minus } => {
            let zero = C64::new(0.0, 0.0);
            ScatteringAmplitudes {
                omega,
                s_plus: zero,
                s_minus: zero,
                r_plus: plus.unit(omega),
                r_minus: minus.unit(omega),
            }
        }
    }
}

pub fn s_matrix(model: &MirrorModel, omega: f64) -> Result<Matrix2<C64>> {
    Ok(amplitudes(model, omega)?.s_matrix())
}

fn max_modulus(m: &Matrix2<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-norm of `S S† − I`.
pub fn unitarity_residual(sa: &ScatteringAmplitudes) -> f64 {
    let s = sa.s_matrix();
    max_modulus(&(s * s.adjoint() - Matrix2::identity()))
}

/// Max-norm of `S(−ω) − S*(ω)`.
pub fn reality_residual(model: &MirrorModel, omega: f64) -> Result<f64> {
    let pos = s_matrix(model, omega)?;
    let neg = s_matrix(model, -omega)?;
    Ok(max_modulus(&(neg - pos.map(|z| z.conj()))))
}

/// Reflection phase `2 arctan(2ω/μ)` of a Robin boundary with parameter `2/μ`.
pub fn robin_phase(mu: f64, omega: f64) -> Result<f64> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::Validation {
            name: "mu",
            value: mu,
            reason: "Robin phase needs a positive coupling",
        });
    }
    if omega.is_nan() || omega < 0.0 {
        return Err(Error::Domain(format!("omega must be non-negative, got {omega}")));
    }
    // 2·atan rounds up to π for huge arguments; keep the range half-open.
    let below_pi = f64::from_bits(PI.to_bits() - 1);
    Ok((2.0 * (2.0 * omega / mu).atan()).min(below_pi))
}

/// Limit of `s±(ω)` as `ω → ∞`.
pub fn high_frequency_transmission(model: &MirrorModel) -> Result<f64> {
    model.validate()?;
    match model {
        MirrorModel::PureDelta { .. } => Ok(1.0),
        MirrorModel::DeltaDeltaPrime { lambda, .. } => {
            Ok(one_minus_sq(*lambda) / (1.0 + lambda * lambda))
        }
        MirrorModel::PerfectPhases { .. } => Err(Error::NotApplicable(
            "a perfect mirror has no transmission coefficient",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn ddp_mu_zero_is_frequency_independent() {
        let m = MirrorModel::delta_delta_prime(0.0, 1.0).unwrap();
        let a = amplitudes(&m, 0.7).unwrap();
        assert_eq!(a.s_plus, c(0.0, 0.0));
        assert_eq!(a.s_minus, c(0.0, 0.0));
        assert_eq!(a.r_plus, c(1.0, 0.0));
        assert_eq!(a.r_minus, c(-1.0, 0.0));
        let at_zero = amplitudes(&m, 0.0).unwrap();
        assert_eq!(at_zero.r_plus, a.r_plus);
    }

    #[test]
    fn pure_delta_unit_coupling() {
        let a = amplitudes(&MirrorModel::PureDelta { mu: 1.0 }, 1.0).unwrap();
        assert!(close(a.s_plus, c(0.5, -0.5), 1e-15));
        assert!(close(a.s_minus, c(0.5, -0.5), 1e-15));
        assert!(close(a.r_plus, c(-0.5, -0.5), 1e-15));
        assert!(close(a.r_minus, c(-0.5, -0.5), 1e-15));
    }

    #[test]
    fn strong_coupling_is_dirichlet() {
        let m = MirrorModel::DeltaDeltaPrime { mu: 1e9, lambda: 0.3 };
        let a = amplitudes(&m, 1.0).unwrap();
        assert!(a.s_plus.norm() < 1e-8);
        assert!(close(a.r_plus, c(-1.0, 0.0), 1e-8));
        assert!(close(a.r_minus, c(-1.0, 0.0), 1e-8));
    }

    #[test]
    fn s_matrix_layout() {
        let d = s_matrix(&MirrorModel::perfect(Phase::Constant(PI), Phase::Constant(PI)), 3.2).unwrap();
        for (z, want) in d.iter().zip([c(0.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]) {
            assert!(close(*z, want, 1e-15));
        }
        let m = s_matrix(&MirrorModel::DeltaDeltaPrime { mu: 0.0, lambda: 1.0 }, 0.7).unwrap();
        assert_eq!(m[(0, 0)], c(0.0, 0.0));
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(-1.0, 0.0));
        assert_eq!(m[(1, 1)], c(0.0, 0.0));
        let p = s_matrix(&MirrorModel::PureDelta { mu: 1.0 }, 1.0).unwrap();
        assert!(close(p[(0, 0)], c(0.5, -0.5), 1e-15));
        assert!(close(p[(0, 1)], c(-0.5, -0.5), 1e-15));
        assert!(close(p[(1, 0)], c(-0.5, -0.5), 1e-15));
        assert!(close(p[(1, 1)], c(0.5, -0.5), 1e-15));
    }

    #[test]
    fn unitarity_examples() {
        let a = amplitudes(&MirrorModel::DeltaDeltaPrime { mu: 1.7, lambda: -0.4 }, 2.3).unwrap();
        assert!(unitarity_residual(&a) <= 1e-12);
        let q = PI / 2.0;
        let p = amplitudes(&MirrorModel::perfect(Phase::Constant(q), Phase::Constant(q)), 1.0).unwrap();
        assert!(unitarity_residual(&p) <= 1e-15);
        let d = amplitudes(&MirrorModel::PureDelta { mu: 5.0 }, 0.1).unwrap();
        assert!(unitarity_residual(&d) <= 1e-12);
    }

    #[test]
    fn reality_examples() {
        let r = reality_residual(&MirrorModel::PureDelta { mu: 1.0 }, 3.0).unwrap();
        assert!(r <= 1e-14);
        let r = reality_residual(&MirrorModel::DeltaDeltaPrime { mu: 2.0, lambda: 0.7 }, 1.1).unwrap();
        assert!(r <= 1e-14);
        let r = reality_residual(&MirrorModel::DeltaDeltaPrime { mu: 0.0, lambda: 2.0 }, 5.0).unwrap();
        assert_eq!(r, 0.0);
        // The odd extension of the Robin phase keeps S(−ω) = S*(ω).
        let robin = MirrorModel::perfect(Phase::Robin { mu: 1.3 }, Phase::Dirichlet);
        assert!(reality_residual(&robin, 0.8).unwrap() <= 1e-15);
    }

    #[test]
    fn robin_phase_values() {
        assert_abs_diff_eq!(robin_phase(2.0, 1.0).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert_eq!(robin_phase(3.0, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(robin_phase(1.0, 1e12).unwrap(), PI, epsilon = 1e-11);
        assert!(robin_phase(1.0, 1e300).unwrap() < PI);
        assert!(matches!(robin_phase(0.0, 1.0), Err(Error::Validation { .. })));
        assert!(matches!(robin_phase(-1.0, 1.0), Err(Error::Validation { .. })));
    }

    #[test]
    fn high_frequency_limits() {
        assert_eq!(high_frequency_transmission(&MirrorModel::PureDelta { mu: 7.0 }).unwrap(), 1.0);
        assert_eq!(
            high_frequency_transmission(&MirrorModel::DeltaDeltaPrime { mu: 3.0, lambda: 1.0 }).unwrap(),
            0.0
        );
        assert_abs_diff_eq!(
            high_frequency_transmission(&MirrorModel::DeltaDeltaPrime { mu: 3.0, lambda: 2.0 }).unwrap(),
            -0.6,
            epsilon = 1e-15
        );
        assert!(matches!(
            high_frequency_transmission(&MirrorModel::dirichlet()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn transmission_approaches_limit_monotonically() {
        let m = MirrorModel::DeltaDeltaPrime { mu: 2.0, lambda: 0.6 };
        let lim = high_frequency_transmission(&m).unwrap();
        let gaps: Vec<f64> = [1e2, 1e4, 1e6]
            .iter()
            .map(|&w| (amplitudes(&m, w).unwrap().s_plus - lim).norm())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        assert!(gaps[2] < 1e-5);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            amplitudes(&MirrorModel::PureDelta { mu: -1.0 }, 1.0),
            Err(Error::Validation { .. })
        ));
        assert!(matches!(
            amplitudes(&MirrorModel::PureDelta { mu: 1.0 }, f64::NAN),
            Err(Error::Domain(_))
        ));
        assert!(MirrorModel::delta_delta_prime(1.0, f64::INFINITY).is_err());
        assert!(MirrorModel::perfect(Phase::Robin { mu: 0.0 }, Phase::Dirichlet).validate().is_err());
    }

    #[test]
    fn phases_are_wrapped() {
        assert_abs_diff_eq!(Phase::Constant(3.0 * PI).at(0.0), PI, epsilon = 1e-15);
        assert_abs_diff_eq!(Phase::Constant(-PI).at(0.0), PI, epsilon = 1e-15);
        assert_abs_diff_eq!(Phase::Custom(Arc::new(|w| 2.0 * PI + w)).at(0.5), 0.5, epsilon = 1e-15);
        assert_eq!(Phase::Dirichlet.at(-4.0), PI);
    }
}
