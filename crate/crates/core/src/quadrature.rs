//! Globally adaptive 21-point Gauss–Kronrod quadrature with user breakpoints.
//!
//! Panels are kept in a list and the one with the largest error estimate is
//! bisected until the summed estimate drops below `rtol·|I|`. Ties are
//! broken by position, so the sequence of bisections (and therefore the
//! result) is fully deterministic.

use crate::error::{Error, Result};

/// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
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

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_026_866,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub rtol: f64,
    /// Maximum number of live panels.
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            rtol: 1e-8,
            max_panels: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error: f64,
    pub function_evals: usize,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// One GK21 panel. Returns `(kronrod, error_estimate)` using the QUADPACK
/// error rescaling.
fn gk21<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center)?;
    let mut res_k = WGK[10] * f_center;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = res_k * half;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err))
}

/// Integrate `f` over `[breakpoints[0], breakpoints[last]]`.
///
/// `breakpoints` must be ascending and contain at least two points; each
/// interval between consecutive breakpoints starts as its own panel.
/// Evaluation errors from `f` are propagated unchanged. Exceeding the panel
/// budget yields [`Error::NonConvergence`] carrying the partial result.
pub fn integrate<F>(mut f: F, breakpoints: &[f64], opts: &QuadratureOptions) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if breakpoints.len() < 2 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least two breakpoints".into(),
        ));
    }
    if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(format!(
            "quadrature breakpoints must be strictly ascending: {breakpoints:?}"
        )));
    }
    if !(opts.rtol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "rtol must be positive, got {}",
            opts.rtol
        )));
    }

    let mut evals = 0usize;
    let mut counted = |x: f64| {
        evals += 1;
        f(x)
    };

    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    for w in breakpoints.windows(2) {
        let (value, error) = gk21(&mut counted, w[0], w[1])?;
        panels.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        if err <= opts.rtol * total.abs() {
            return Ok(QuadratureResult {
                value: total,
                abs_error: err,
                function_evals: evals,
                panels: panels.len(),
            });
        }
        // worst panel, first one wins on ties
        let (idx, worst) = panels
            .iter()
            .enumerate()
            .fold((0, panels[0]), |best, (i, p)| {
                if p.error > best.1.error {
                    (i, *p)
                } else {
                    best
                }
            });
        let mid = 0.5 * (worst.a + worst.b);
        if panels.len() >= opts.max_panels || !(worst.a < mid && mid < worst.b) {
            return Err(Error::NonConvergence {
                value: total,
                abs_error: err,
                panels: panels.len(),
            });
        }
        let (v1, e1) = gk21(&mut counted, worst.a, mid)?;
        let (v2, e2) = gk21(&mut counted, mid, worst.b)?;
        panels[idx] = Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        };
        panels.insert(
            idx + 1,
            Panel {
                a: mid,
                b: worst.b,
                value: v2,
                error: e2,
            },
        );
    }
}
