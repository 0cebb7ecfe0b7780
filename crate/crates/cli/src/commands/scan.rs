use dce_core::{scan_plane, QuadratureConfig};

use super::{invalid, profile, CliError};
use crate::args::ScanArgs;
use crate::output::{Field, Table};

pub const COLUMNS: [&str; 6] = ["mu_over_omega0", "lambda", "normalized", "rate_plus", "rate_minus", "error"];

pub fn cmd_scan(a: &ScanArgs) -> Result<Table, CliError> {
    let p = profile(&a.profile)?;
    let grid = scan_plane(&a.mu_grid.values(), &a.lambda_grid.values(), &p, &QuadratureConfig::default())
        .map_err(invalid)?;
    let mut t = Table::new(COLUMNS.iter().map(|c| c.to_string()).collect());
    for c in &grid.cells {
        let (norm, plus, minus, err) = match &c.result {
            Ok(r) => (r.normalized, r.rate_plus_per_tau, r.rate_minus_per_tau, String::new()),
            Err(e) => (f64::NAN, f64::NAN, f64::NAN, e.to_string()),
        };
        t.push(vec![
            Field::Num(c.mu_over_omega0),
            Field::Num(c.lambda),
            Field::Num(norm),
            Field::Num(plus),
            Field::Num(minus),
            Field::Text(err),
        ]);
    }
    Ok(t)
}
