//! Particle creation by a nonrelativistically moving partially transparent
//! mirror in 1+1 dimensions.
//!
//! The mirror is a δ–δ′ point interaction of strength `μ` and derivative
//! coupling `λ`, oscillating as `q(t) = ε cos(ω₀t) e^{−|t|/τ}`. The crate
//! evaluates the static scattering data, the first-order created-particle
//! spectrum on each side of the mirror, and the total creation rates, and
//! carries independent oracles for each result.

pub mod error;
pub mod modes;
pub mod motion;
pub mod quadrature;
pub mod rates;
pub mod scattering;
pub mod spectrum;

pub use error::{Error, Result};
pub use modes::{
    matching_residual, mode_from_amplitudes, neumann_residual, robin_dirichlet_residual, solve_modes,
    solve_scattering, u_matrix, u_matrix_residual, Incidence, MatchingData, ModeSolution,
};
pub use motion::{displacement, fourier_g, fourier_g_numeric, peak_weight, MotionProfile};
pub use quadrature::{integrate, integrate_partitioned, QuadDiagnostics, QuadEstimate, QuadratureConfig};
pub use rates::{
    dirichlet_rate, normalized_rate_closed, ratio_valley, scan_plane, sides_ratio, total_rate_closed,
    total_rate_quadrature, RateSummary, ScanCell, ScanGrid,
};
pub use scattering::{
    amplitudes, high_frequency_transmission, reality_residual, robin_phase, s_matrix, unitarity_residual,
    MirrorModel, Phase, ScatteringAmplitudes, C64,
};
pub use spectrum::{
    first_order_smatrix, lambda_perfect, lambda_sides, lambda_sides_closed, lambda_total, spectrum_finite_tau,
    spectrum_mono, spectrum_trace_oracle, SpectrumSample,
};
