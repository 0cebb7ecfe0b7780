use dce_core::{sides_ratio, QuadratureConfig};
use rayon::prelude::*;

use super::{profile, CliError};
use crate::args::RatioArgs;
use crate::grid::parse_list;
use crate::output::{Field, Table};

pub fn cmd_ratio(a: &RatioArgs) -> Result<Table, CliError> {
    let lambdas = parse_list(&a.lambda_list).map_err(|e| CliError::Usage(format!("--lambda-list: {e}")))?;
    let mus = a.mu_grid.values();
    if mus.iter().any(|&m| m <= 0.0) {
        return Err(CliError::Usage("--mu-grid values must be positive".into()));
    }
    let p = profile(&a.profile)?;
    let quad = QuadratureConfig::default();

    let n_l = lambdas.len();
    let values: Vec<f64> = (0..mus.len() * n_l)
        .into_par_iter()
        .map(|idx| {
            let (m, l) = (mus[idx / n_l], lambdas[idx % n_l]);
            match sides_ratio(m * p.omega0, l, &p, &quad) {
                Ok(r) => r,
                Err(e) => {
                    log::warn!("ratio at mu/omega0 = {m}, lambda = {l}: {e}");
                    f64::NAN
                }
            }
        })
        .collect();

    let mut columns = vec!["mu_over_omega0".to_string()];
    columns.extend(lambdas.iter().map(|l| format!("ratio_lambda_{l}")));
    let mut t = Table::new(columns);
    for (i, &m) in mus.iter().enumerate() {
        let mut row = vec![Field::Num(m)];
        row.extend(values[i * n_l..(i + 1) * n_l].iter().map(|&v| Field::Num(v)));
        t.push(row);
    }
    Ok(t)
}
