use std::f64::consts::PI;

use dce_core::{spectrum_finite_tau, spectrum_mono, MirrorModel, QuadratureConfig};
use rayon::prelude::*;

use super::{invalid, profile, CliError};
use crate::args::{Mirror, Mode, SpectrumArgs};
use crate::output::{Field, Table};

pub const COLUMNS: [&str; 4] = ["xi", "n_plus", "n_minus", "n_total"];

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<Table, CliError> {
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if !(a.xi_max.is_finite() && a.xi_max > 0.0) {
        return Err(CliError::Usage("--xi-max must be positive".into()));
    }
    let p = profile(&a.profile)?;
    if !a.raw && p.eps == 0.0 {
        return Err(CliError::Usage("figure units divide by eps^2; use --raw with --eps 0".into()));
    }
    let model = match a.mirror {
        Mirror::Ddp => MirrorModel::delta_delta_prime(a.mu, a.lambda).map_err(invalid)?,
        Mirror::Dirichlet => MirrorModel::dirichlet(),
        Mirror::Neumann => MirrorModel::neumann(),
    };
    let quad = QuadratureConfig::default();
    let scale = if a.raw { 1.0 } else { PI / (p.eps * p.eps) };
    let last = (a.points - 1) as f64;

    let rows: Result<Vec<Vec<Field>>, CliError> = (0..a.points)
        .into_par_iter()
        .map(|i| {
            let xi = a.xi_max * i as f64 / last;
            let w = xi * p.omega0;
            let s = match a.mode {
                Mode::Mono => spectrum_mono(&model, &p, w)?,
                Mode::Finite => spectrum_finite_tau(&model, &p, w, &quad)?,
            };
            Ok(vec![
                Field::Num(xi),
                Field::Num(scale * s.n_plus_per_tau),
                Field::Num(scale * s.n_minus_per_tau),
                Field::Num(scale * s.n_total_per_tau),
            ])
        })
        .collect();

    let mut t = Table::new(COLUMNS.iter().map(|c| c.to_string()).collect());
    for r in rows? {
        t.push(r);
    }
    Ok(t)
}
