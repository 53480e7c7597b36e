//! Closed-form emission spectrum, total rate and quasi-static limit.
//!
//! Spectral density of emitted photons (all of it in the `m = +1` channel):
//!
//! `dΓ/dω = |ω − 2Ω|³ ω³ |Δ(ω − Ω)|² Θ(2Ω − ω) / (36π³ c⁶ ε₀²)`
//!
//! Total rate, normalized with `1/(144π³ c⁶ ε₀²)`:
//!
//! `Γ(Ω) = ∫₀^{2Ω} ω³ |ω − 2Ω|³ |Δ(ω − Ω)|² dω / (144π³ c⁶ ε₀²)`
//!
//! The rate prefactor is a quarter of the spectral one, so `Γ` equals
//! `¼ ∫ (dΓ/dω) dω`. With `∫₀^{2Ω} ω³(2Ω − ω)³ dω = (32/35) Ω⁷` a
//! dispersionless anisotropy gives the quasi-static rate
//!
//! `Γ_qs = 2 |Δ(0)|² Ω⁷ / (315π³ c⁶ ε₀²)`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::constants::SI;
use crate::error::{Error, Result};
use crate::geometry::{anisotropy, anisotropy_resonances, SpheroidGeometry};
use crate::materials::DielectricModel;
use crate::quadrature::{integrate, QuadratureOptions};
use crate::rotation::SpinConfiguration;

/// Uniform points of the spectrum written to file, before resonance abscissae.
pub const SPECTRUM_GRID_POINTS: usize = 512;
pub const MIN_SPECTRUM_POINTS: usize = 16;
pub const DEFAULT_RTOL: f64 = 1e-8;
pub const MIN_RTOL: f64 = 1e-12;
pub const MAX_RTOL: f64 = 1e-3;
/// Panel budget of the rate quadrature.
pub const MAX_PANELS: usize = 10_000;

pub const SECONDS_PER_YEAR: f64 = 365.25 * 86_400.0;

fn c6_eps0_sq() -> f64 {
    SI.c.powi(6) * SI.eps0 * SI.eps0
}

fn spectrum_prefactor() -> f64 {
    1.0 / (36.0 * PI.powi(3) * c6_eps0_sq())
}

fn rate_prefactor() -> f64 {
    1.0 / (144.0 * PI.powi(3) * c6_eps0_sq())
}

/// `ω³ |ω − 2Ω|³ |Δ(ω − Ω)|²` on `[0, 2Ω]`, zero above.
fn kernel(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    omega_rot: f64,
    omega: f64,
) -> Result<f64> {
    let two_omega = 2.0 * omega_rot;
    if omega >= two_omega {
        return Ok(0.0);
    }
    let delta = anisotropy(geom, model, omega - omega_rot)?;
    let pair = omega * (two_omega - omega);
    Ok(pair * pair * pair * delta.norm_sqr())
}

/// Spectral emission rate `dΓ/dω` (photons per second per rad/s).
pub fn spectrum_at(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    spin: &SpinConfiguration,
    omega: f64,
) -> Result<f64> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "spectrum requested at invalid frequency {omega}"
        )));
    }
    Ok(spectrum_prefactor() * kernel(geom, model, spin.omega_rot(), omega)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmissionSpectrum {
    pub omega_rot: f64,
    pub omega_grid: Vec<f64>,
    pub d_gamma: Vec<f64>,
}

impl EmissionSpectrum {
    /// Largest `|dΓ(ω) − dΓ(2Ω − ω)|` over mirror pairs of the grid,
    /// relative to the spectral maximum. The grid is built symmetric about
    /// `Ω`, so entry `i` pairs with entry `n − 1 − i`.
    pub fn mirror_asymmetry(&self) -> f64 {
        let peak = self.d_gamma.iter().cloned().fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let n = self.d_gamma.len();
        (0..n / 2)
            .map(|i| (self.d_gamma[i] - self.d_gamma[n - 1 - i]).abs())
            .fold(0.0, f64::max)
            / peak
    }

    /// Grid indices of strict interior local maxima.
    pub fn local_maxima(&self) -> Vec<usize> {
        let d = &self.d_gamma;
        (1..d.len().saturating_sub(1))
            .filter(|&i| d[i] > d[i - 1] && d[i] > d[i + 1])
            .collect()
    }
}

/// Frequencies inside `(0, 2Ω)` where the integrand has resonant structure:
/// `Ω` itself, `Ω ± ω_T`, and `Ω ± ω_res` for each anisotropy resonance.
/// Returned as offsets from `Ω`, positive, ascending.
fn resonance_offsets(geom: &SpheroidGeometry, model: &DielectricModel, omega_rot: f64) -> Vec<f64> {
    let mut out: Vec<f64> = model
        .omega_t()
        .into_iter()
        .chain(anisotropy_resonances(geom, model))
        .filter(|&d| d < omega_rot)
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Sorted quadrature breakpoints `{0, Ω − δ…, Ω, Ω + δ…, 2Ω}`.
pub fn rate_breakpoints(geom: &SpheroidGeometry, model: &DielectricModel, omega_rot: f64) -> Vec<f64> {
    let offsets = resonance_offsets(geom, model, omega_rot);
    let mut pts = Vec::with_capacity(2 * offsets.len() + 3);
    pts.push(0.0);
    pts.extend(offsets.iter().rev().map(|d| omega_rot - d));
    pts.push(omega_rot);
    pts.extend(offsets.iter().map(|d| omega_rot + d));
    pts.push(2.0 * omega_rot);
    pts.dedup();
    pts
}

/// Spectrum on a uniform grid of `n_points` over `[0, 2Ω]`, augmented with
/// the resonance abscissae. The grid is symmetric about `Ω`.
pub fn sample_spectrum(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    spin: &SpinConfiguration,
    n_points: usize,
) -> Result<EmissionSpectrum> {
    if n_points < MIN_SPECTRUM_POINTS {
        return Err(Error::InvalidArgument(format!(
            "spectrum needs at least {MIN_SPECTRUM_POINTS} points, got {n_points}"
        )));
    }
    let w_rot = spin.omega_rot();
    let last = (n_points - 1) as f64;
    let mut offsets: Vec<f64> = (0..n_points)
        .map(|i| -1.0 + 2.0 * i as f64 / last)
        .collect();
    if w_rot > 0.0 {
        for d in resonance_offsets(geom, model, w_rot) {
            let t = d / w_rot;
            offsets.push(t);
            offsets.push(-t);
        }
    }
    offsets.sort_by(f64::total_cmp);
    offsets.dedup();
    let omega_grid: Vec<f64> = offsets.iter().map(|t| w_rot * (1.0 + t)).collect();
    let d_gamma = omega_grid
        .iter()
        .map(|&w| spectrum_at(geom, model, spin, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(EmissionSpectrum {
        omega_rot: w_rot,
        omega_grid,
        d_gamma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    pub omega_rot: f64,
    /// Total emission rate (photons/s).
    pub gamma_total: f64,
    /// Quasi-static rate (photons/s).
    pub gamma_qs: f64,
    /// `gamma_total / gamma_qs`, undefined when the static anisotropy vanishes.
    pub enhancement: Option<f64>,
    pub abs_error_estimate: f64,
    pub function_evals: usize,
}

/// `Γ_qs = 2|Δ(0)|² Ω⁷ / (315π³ c⁶ ε₀²)`.
pub fn quasistatic_rate(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    spin: &SpinConfiguration,
) -> Result<f64> {
    let delta0 = anisotropy(geom, model, 0.0)?;
    Ok(2.0 / (315.0 * PI.powi(3) * c6_eps0_sq()) * delta0.norm_sqr() * spin.omega_rot().powi(7))
}

fn check_rtol(rtol: f64) -> Result<()> {
    if !(MIN_RTOL..=MAX_RTOL).contains(&rtol) {
        return Err(Error::InvalidArgument(format!(
            "rtol must lie in [{MIN_RTOL:e}, {MAX_RTOL:e}], got {rtol}"
        )));
    }
    Ok(())
}

/// Total emission rate by adaptive quadrature over `[0, 2Ω]`.
pub fn total_rate(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    spin: &SpinConfiguration,
    rtol: f64,
) -> Result<RateResult> {
    check_rtol(rtol)?;
    let w_rot = spin.omega_rot();
    if let (true, Some(omega_t)) = (model.is_lossless_resonant(), model.omega_t()) {
        if w_rot > omega_t {
            return Err(Error::LosslessResonanceCrossing {
                omega_rot: w_rot,
                omega_t,
            });
        }
    }
    let gamma_qs = quasistatic_rate(geom, model, spin)?;
    if w_rot == 0.0 {
        return Ok(RateResult {
            omega_rot: 0.0,
            gamma_total: 0.0,
            gamma_qs,
            enhancement: None,
            abs_error_estimate: 0.0,
            function_evals: 0,
        });
    }
    let opts = QuadratureOptions {
        rtol,
        max_panels: MAX_PANELS,
    };
    let breakpoints = rate_breakpoints(geom, model, w_rot);
    let prefactor = rate_prefactor();
    let quad = integrate(|w| kernel(geom, model, w_rot, w), &breakpoints, &opts).map_err(
        |e| match e {
            Error::NonConvergence {
                value,
                abs_error,
                panels,
            } => Error::NonConvergence {
                value: value * prefactor,
                abs_error: abs_error * prefactor,
                panels,
            },
            other => other,
        },
    )?;
    let gamma_total = quad.value * prefactor;
    Ok(RateResult {
        omega_rot: w_rot,
        gamma_total,
        gamma_qs,
        enhancement: (gamma_qs > 0.0).then(|| gamma_total / gamma_qs),
        abs_error_estimate: quad.abs_error * prefactor,
        function_evals: quad.function_evals,
    })
}

/// `Γ/Γ_qs` over a grid of rotation rates. Points are evaluated in parallel
/// and returned in grid order.
pub fn enhancement_curve(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    omega_rot_grid: &[f64],
    rtol: f64,
) -> Result<Vec<RateResult>> {
    check_ascending_positive(omega_rot_grid, "rotation-rate grid")?;
    omega_rot_grid
        .par_iter()
        .map(|&w| total_rate(geom, model, &SpinConfiguration::new(w)?, rtol))
        .collect()
}

pub(crate) fn check_ascending_positive(grid: &[f64], what: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument(format!("{what} is empty")));
    }
    if !grid.iter().all(|&x| x.is_finite() && x > 0.0) {
        return Err(Error::InvalidArgument(format!("{what} must be positive")));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(format!(
            "{what} must be strictly ascending"
        )));
    }
    Ok(())
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    _ if i == n - 1 => hi,
                    _ => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
                })
                .collect()
        }
    }
}

/// `n` uniformly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}
