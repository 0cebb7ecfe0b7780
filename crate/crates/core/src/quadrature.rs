//! Globally adaptive Gauss–Kronrod quadrature.
//!
//! A 21-point Kronrod rule with its embedded 10-point Gauss rule is applied on
//! every interval of a working partition; the interval with the largest error
//! estimate is bisected until the summed error meets
//! `max(abs_tol, rel_tol * |I|)`. Callers with prior knowledge of the integrand
//! (peaks, kinks, oscillation periods) seed the initial partition with
//! [`integrate_partitioned`].
//!
//! Intervals whose error estimate has reached the rounding floor of the rule
//! are retired instead of bisected. When only retired intervals remain the
//! result is returned with [`QuadEstimate::roundoff_limited`] set.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};

/// Tolerances and budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of bisections beyond the initial partition.
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol >= 0.0
            && self.abs_tol >= 0.0
            && (self.rel_tol > 0.0 || self.abs_tol > 0.0)
            && self.rel_tol.is_finite()
            && self.abs_tol.is_finite();
        if !ok {
            return Err(Error::Validation {
                name: "quadrature tolerance",
                value: if self.rel_tol > 0.0 { self.abs_tol } else { self.rel_tol },
                reason: "tolerances must be finite, non-negative and not both zero",
            });
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Validation {
                name: "max_subdivisions",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        Ok(())
    }
}

/// A converged quadrature result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
    pub roundoff_limited: bool,
}

/// State attached to a quadrature failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadDiagnostics {
    pub lower: f64,
    pub upper: f64,
    pub estimate: f64,
    pub error_bound: f64,
    pub requested: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

impl fmt::Display for QuadDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "on [{}, {}] estimate {:e} with error bound {:e} (requested {:e}) after {} evaluations on {} intervals",
            self.lower,
            self.upper,
            self.estimate,
            self.error_bound,
            self.requested,
            self.evaluations,
            self.intervals
        )
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const EVALS_PER_RULE: usize = 21;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    retired: bool,
}

/// One application of the 21-point rule: (integral, error estimate, rounding floor).
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut kronrod = f_center * WGK[10];
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        // Gauss nodes sit at the odd Kronrod indices.
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_half = half.abs();
    let value = kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;

    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        50.0 * f64::EPSILON * res_abs
    } else {
        0.0
    };
    (value, err.max(floor), floor)
}

#[derive(PartialEq)]
struct Worst(f64, usize);

impl Eq for Worst {}

impl PartialOrd for Worst {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Worst {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ties broken by index so the bisection schedule is reproducible.
        self.0
            .total_cmp(&other.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

fn evaluate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let (value, error, floor) = gk21(f, a, b);
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::Domain(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    let tiny = (b - a).abs() <= 1e3 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    Ok(Panel {
        a,
        b,
        value,
        error,
        retired: error <= floor * (1.0 + 1e-9) || tiny,
    })
}

/// Integrate `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadEstimate> {
    integrate_partitioned(f, &[a, b], cfg)
}

/// Integrate `f` over `[breaks[0], breaks[last]]`, starting from the partition
/// given by the strictly increasing `breaks`.
pub fn integrate_partitioned<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadEstimate> {
    cfg.validate()?;
    if breaks.len() < 2 {
        return Err(Error::Domain("a partition needs at least two points".into()));
    }
    for w in breaks.windows(2) {
        if !(w[0].is_finite() && w[1].is_finite()) || w[0] >= w[1] {
            return Err(Error::Domain(format!(
                "partition points must be finite and strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }

    let mut panels: Vec<Panel> = Vec::with_capacity(breaks.len() + cfg.max_subdivisions + 1);
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        let p = evaluate(&f, w[0], w[1])?;
        if !p.retired {
            heap.push(Worst(p.error, panels.len()));
        }
        panels.push(p);
    }
    let mut evaluations = panels.len() * EVALS_PER_RULE;
    let mut bisections = 0usize;

    let mut value: f64 = panels.iter().map(|p| p.value).sum();
    let mut error: f64 = panels.iter().map(|p| p.error).sum();
    let mut roundoff_limited = false;

    loop {
        let requested = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= requested {
            break;
        }
        let Some(Worst(_, idx)) = heap.pop() else {
            roundoff_limited = true;
            break;
        };
        if bisections == cfg.max_subdivisions {
            let value: f64 = panels.iter().map(|p| p.value).sum();
            let error: f64 = panels.iter().map(|p| p.error).sum();
            return Err(Error::Quadrature(QuadDiagnostics {
                lower: breaks[0],
                upper: breaks[breaks.len() - 1],
                estimate: value,
                error_bound: error,
                requested,
                evaluations,
                intervals: panels.len(),
            }));
        }
        let parent = panels[idx];
        let mid = 0.5 * (parent.a + parent.b);
        let left = evaluate(&f, parent.a, mid)?;
        let right = evaluate(&f, mid, parent.b)?;
        evaluations += 2 * EVALS_PER_RULE;
        bisections += 1;

        value += left.value + right.value - parent.value;
        error += left.error + right.error - parent.error;

        panels[idx] = left;
        if !left.retired {
            heap.push(Worst(left.error, idx));
        }
        if !right.retired {
            heap.push(Worst(right.error, panels.len()));
        }
        panels.push(right);

        // Refresh the running sums now and then to stop drift.
        if bisections % 64 == 0 {
            value = panels.iter().map(|p| p.value).sum();
            error = panels.iter().map(|p| p.error).sum();
        }
    }

    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    Ok(QuadEstimate {
        value,
        error,
        evaluations,
        intervals: panels.len(),
        roundoff_limited,
    })
}
