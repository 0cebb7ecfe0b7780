use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `lo:hi:n[:lin|log]`, inclusive at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i == self.n - 1 {
                    return self.hi;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.lo + (self.hi - self.lo) * t,
                    Spacing::Log => self.lo * (self.hi / self.lo).powf(t),
                }
            })
            .collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.spacing {
            Spacing::Linear => "lin",
            Spacing::Log => "log",
        };
        write!(f, "{}:{}:{}:{}", self.lo, self.hi, self.n, s)
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("expected lo:hi:n[:lin|log], got '{s}'"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}"));
        let lo = num(parts[0])?;
        let hi = num(parts[1])?;
        let n: usize = parts[2].trim().parse().map_err(|e| format!("bad count '{}': {e}", parts[2]))?;
        let spacing = match parts.get(3).map(|t| t.trim()) {
            None | Some("lin") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => return Err(format!("unknown spacing '{other}' (lin or log)")),
        };
        if !(lo.is_finite() && hi.is_finite()) {
            return Err("grid bounds must be finite".into());
        }
        if n == 0 {
            return Err("grid needs at least one point".into());
        }
        if n > 1 && hi <= lo {
            return Err(format!("grid needs hi > lo, got {lo}:{hi}"));
        }
        if spacing == Spacing::Log && lo <= 0.0 {
            return Err("log grid needs lo > 0".into());
        }
        Ok(GridSpec { lo, hi, n, spacing })
    }
}

/// Comma-separated list of numbers.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    let out: Result<Vec<f64>, String> = s
        .split(',')
        .map(|t| {
            let v: f64 = t.trim().parse().map_err(|e| format!("bad number '{t}': {e}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("non-finite value '{t}'"))
            }
        })
        .collect();
    match out {
        Ok(v) if v.is_empty() => Err("empty list".into()),
        other => other,
    }
}
