//! Parameter studies at a saturated burst-speed constraint `Ω·r∥ = v_b`.
//!
//! Sweeps evaluate independent points on the rayon pool and always return
//! them in grid order, so results do not depend on the number of workers.

use rayon::prelude::*;

use crate::emission::{check_ascending_positive, linear_grid, log_grid, total_rate};
use crate::error::{Error, Result};
use crate::geometry::{SpheroidGeometry, MAX_ECCENTRICITY};
use crate::materials::MaterialSpec;
use crate::rotation::SpinConfiguration;

/// Upper end of the eccentricity search interval.
pub const MAX_SEARCH_ECCENTRICITY: f64 = 0.999;
pub const COARSE_SCAN_POINTS: usize = 32;
pub const MIN_XTOL: f64 = 1e-6;
pub const MAX_XTOL: f64 = 1e-2;

/// Points of the size grid used by [`crossover_radius`].
pub const CROSSOVER_GRID_POINTS: usize = 64;
/// The crossover grid spans `[r_c/30, 4·r_c]` around `r_c = v_b/ω_T`.
pub const CROSSOVER_GRID_SPAN: (f64, f64) = (1.0 / 30.0, 4.0);
/// Plateau window `r∥ ≤ r_c/5`.
pub const PLATEAU_WINDOW: f64 = 0.2;
/// Tail window `r∥ ≥ 2·r_c`.
pub const TAIL_WINDOW: f64 = 2.0;
/// Minimum coefficient of determination accepted for either asymptote.
pub const MIN_R_SQUARED: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintSource {
    /// `sqrt(uts/density)` or the catalog burst speed.
    MaterialDerived,
    Override,
}

/// Maximum rim speed imposed on the spinning particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintSpec {
    tip_speed: f64,
    source: ConstraintSource,
}

impl ConstraintSpec {
    pub fn new(tip_speed: f64, source: ConstraintSource) -> Result<Self> {
        if !(tip_speed.is_finite() && tip_speed > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tip speed must be positive, got {tip_speed}"
            )));
        }
        Ok(ConstraintSpec { tip_speed, source })
    }

    pub fn override_speed(tip_speed: f64) -> Result<Self> {
        Self::new(tip_speed, ConstraintSource::Override)
    }

    pub fn from_material(material: &MaterialSpec) -> Result<Self> {
        Self::new(material.burst_speed()?, ConstraintSource::MaterialDerived)
    }

    pub fn tip_speed(&self) -> f64 {
        self.tip_speed
    }

    pub fn source(&self) -> ConstraintSource {
        self.source
    }
}

/// `Ω = v_b / r∥`.
pub fn constrained_omega(r_parallel: f64, constraint: &ConstraintSpec) -> Result<f64> {
    if !(r_parallel.is_finite() && r_parallel > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "r_parallel must be positive, got {r_parallel}"
        )));
    }
    Ok(constraint.tip_speed / r_parallel)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub r_parallel: f64,
    pub eccentricity: f64,
    pub omega_rot: f64,
    pub gamma_total: f64,
    pub gamma_qs: f64,
    pub enhancement: Option<f64>,
}

fn evaluate(
    material: &MaterialSpec,
    r_parallel: f64,
    eccentricity: f64,
    constraint: &ConstraintSpec,
    rtol: f64,
) -> Result<SweepRecord> {
    let geom = SpheroidGeometry::new(r_parallel, eccentricity)?;
    let omega_rot = constrained_omega(r_parallel, constraint)?;
    let rate = total_rate(
        &geom,
        &material.dielectric,
        &SpinConfiguration::new(omega_rot)?,
        rtol,
    )?;
    Ok(SweepRecord {
        r_parallel,
        eccentricity,
        omega_rot,
        gamma_total: rate.gamma_total,
        gamma_qs: rate.gamma_qs,
        enhancement: rate.enhancement,
    })
}

/// Rate versus size at fixed shape, each point spinning at the burst limit.
pub fn sweep_size(
    material: &MaterialSpec,
    eccentricity: f64,
    r_grid: &[f64],
    constraint: &ConstraintSpec,
    rtol: f64,
) -> Result<Vec<SweepRecord>> {
    check_ascending_positive(r_grid, "r_parallel grid")?;
    r_grid
        .par_iter()
        .map(|&r| evaluate(material, r, eccentricity, constraint, rtol))
        .collect()
}

/// Size at which the constrained rate turns over from the flat small-size
/// plateau to the `1/r∥` quasi-static tail.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverEstimate {
    /// `v_b / ω_T`.
    pub analytic: f64,
    /// Intersection of the fitted plateau level with the fitted `1/r∥` line.
    pub asymptote_intersection: f64,
    /// Grid point where `d ln Γ / d ln r∥` is most negative.
    pub steepest_transition: f64,
    /// Geometric-mean plateau rate (photons/s).
    pub plateau_level: f64,
    pub plateau_r_squared: f64,
    /// `ln Γ = tail_intercept − ln r∥` on the tail window.
    pub tail_intercept: f64,
    pub tail_r_squared: f64,
    /// Unconstrained least-squares slope on the tail window, for reference.
    pub tail_free_slope: f64,
    pub sweep: Vec<SweepRecord>,
}

impl CrossoverEstimate {
    pub fn ratio(&self) -> f64 {
        self.asymptote_intersection / self.analytic
    }
}

/// Crossover on the default grid `[r_c/30, 4·r_c]` (64 log-spaced points).
pub fn crossover_radius(
    material: &MaterialSpec,
    eccentricity: f64,
    constraint: &ConstraintSpec,
    rtol: f64,
) -> Result<CrossoverEstimate> {
    let r_c = analytic_crossover(material, constraint)?;
    let grid = log_grid(
        r_c * CROSSOVER_GRID_SPAN.0,
        r_c * CROSSOVER_GRID_SPAN.1,
        CROSSOVER_GRID_POINTS,
    );
    crossover_radius_on_grid(material, eccentricity, constraint, &grid, rtol)
}

pub fn analytic_crossover(material: &MaterialSpec, constraint: &ConstraintSpec) -> Result<f64> {
    let omega_t = material.dielectric.omega_t().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{}: crossover needs a resonant (Lorentz) dielectric model",
            material.name
        ))
    })?;
    Ok(constraint.tip_speed / omega_t)
}

/// Crossover fitted on a caller-supplied size grid.
///
/// The plateau is modelled as a constant `ln Γ`; its R² is taken against the
/// variance of `ln Γ` over the whole sweep, since a flat segment has no
/// variance of its own to explain. The tail is a line of slope −1 in log-log
/// space with fitted intercept.
pub fn crossover_radius_on_grid(
    material: &MaterialSpec,
    eccentricity: f64,
    constraint: &ConstraintSpec,
    r_grid: &[f64],
    rtol: f64,
) -> Result<CrossoverEstimate> {
    let r_c = analytic_crossover(material, constraint)?;
    let sweep = sweep_size(material, eccentricity, r_grid, constraint, rtol)?;
    if let Some(bad) = sweep.iter().find(|s| !(s.gamma_total > 0.0)) {
        return Err(Error::FitFailure(format!(
            "rate vanishes at r_parallel = {:e} m; no log-log fit possible",
            bad.r_parallel
        )));
    }
    let ln_r: Vec<f64> = sweep.iter().map(|s| s.r_parallel.ln()).collect();
    let ln_g: Vec<f64> = sweep.iter().map(|s| s.gamma_total.ln()).collect();

    let window = |keep: &dyn Fn(f64) -> bool| -> (Vec<f64>, Vec<f64>) {
        sweep
            .iter()
            .zip(ln_r.iter().zip(&ln_g))
            .filter(|(s, _)| keep(s.r_parallel))
            .map(|(_, (x, y))| (*x, *y))
            .unzip()
    };
    let (_, plateau_y) = window(&|r| r <= PLATEAU_WINDOW * r_c);
    let (tail_x, tail_y) = window(&|r| r >= TAIL_WINDOW * r_c);
    for (name, n) in [("plateau", plateau_y.len()), ("tail", tail_y.len())] {
        if n < 3 {
            return Err(Error::FitFailure(format!(
                "{name} window holds {n} points, need at least 3"
            )));
        }
    }

    let full_var = variance(&ln_g);
    let plateau_mean = mean(&plateau_y);
    let plateau_ss: f64 = plateau_y.iter().map(|y| (y - plateau_mean).powi(2)).sum();
    let plateau_r_squared = if full_var > 0.0 {
        1.0 - plateau_ss / (plateau_y.len() as f64 * full_var)
    } else {
        1.0
    };

    // slope fixed at −1: intercept is the mean of ln Γ + ln r
    let tail_intercept = mean(
        &tail_x
            .iter()
            .zip(&tail_y)
            .map(|(x, y)| y + x)
            .collect::<Vec<_>>(),
    );
    let tail_mean = mean(&tail_y);
    let tail_tot: f64 = tail_y.iter().map(|y| (y - tail_mean).powi(2)).sum();
    let tail_res: f64 = tail_x
        .iter()
        .zip(&tail_y)
        .map(|(x, y)| (y - (tail_intercept - x)).powi(2))
        .sum();
    let tail_r_squared = if tail_tot > 0.0 {
        1.0 - tail_res / tail_tot
    } else {
        0.0
    };
    let (tail_free_slope, _) = linear_fit(&tail_x, &tail_y);

    for (name, r2) in [("plateau", plateau_r_squared), ("tail", tail_r_squared)] {
        if !(r2 >= MIN_R_SQUARED) {
            return Err(Error::FitFailure(format!(
                "{name} asymptote R² = {r2:.4} below {MIN_R_SQUARED}"
            )));
        }
    }

    let asymptote_intersection = (tail_intercept - plateau_mean).exp();
    let steepest_transition = steepest_descent(&ln_r, &ln_g)
        .map(|i| sweep[i].r_parallel)
        .unwrap_or(r_c);

    Ok(CrossoverEstimate {
        analytic: r_c,
        asymptote_intersection,
        steepest_transition,
        plateau_level: plateau_mean.exp(),
        plateau_r_squared,
        tail_intercept,
        tail_r_squared,
        tail_free_slope,
        sweep,
    })
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let (mx, my) = (mean(x), mean(y));
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Index of the most negative centred difference quotient.
fn steepest_descent(x: &[f64], y: &[f64]) -> Option<usize> {
    (1..x.len().saturating_sub(1))
        .map(|i| (i, (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1])))
        .fold(None, |best: Option<(usize, f64)>, (i, s)| match best {
            Some((_, b)) if b <= s => best,
            _ => Some((i, s)),
        })
        .map(|(i, _)| i)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EccentricityPoint {
    pub eccentricity: f64,
    pub gamma_total: f64,
    /// `Γ / max Γ` over the sweep.
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EccentricitySweep {
    pub r_parallel: f64,
    pub omega_rot: f64,
    pub points: Vec<EccentricityPoint>,
    /// Index of the maximum; the smallest eccentricity wins ties.
    pub argmax: usize,
}

impl EccentricitySweep {
    pub fn best(&self) -> &EccentricityPoint {
        &self.points[self.argmax]
    }
}

fn check_eccentricity_grid(e_grid: &[f64]) -> Result<()> {
    if e_grid.is_empty() {
        return Err(Error::InvalidArgument("eccentricity grid is empty".into()));
    }
    if !e_grid.iter().all(|e| (0.0..=MAX_SEARCH_ECCENTRICITY).contains(e)) {
        return Err(Error::InvalidArgument(format!(
            "eccentricity grid must lie in [0, {MAX_SEARCH_ECCENTRICITY}]"
        )));
    }
    if e_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(
            "eccentricity grid must be strictly ascending".into(),
        ));
    }
    Ok(())
}

fn first_argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v > values[best] { i } else { best })
}

/// Rate versus eccentricity at fixed size, spinning at the burst limit.
pub fn sweep_eccentricity(
    material: &MaterialSpec,
    r_parallel: f64,
    constraint: &ConstraintSpec,
    e_grid: &[f64],
    rtol: f64,
) -> Result<EccentricitySweep> {
    check_eccentricity_grid(e_grid)?;
    let omega_rot = constrained_omega(r_parallel, constraint)?;
    let gammas = e_grid
        .par_iter()
        .map(|&e| evaluate(material, r_parallel, e, constraint, rtol).map(|s| s.gamma_total))
        .collect::<Result<Vec<_>>>()?;
    let argmax = first_argmax(&gammas);
    let g_max = gammas[argmax];
    if !(g_max > 0.0) {
        return Err(Error::DegenerateObjective(format!(
            "{}: rate is zero at every eccentricity of the grid",
            material.name
        )));
    }
    let points = e_grid
        .iter()
        .zip(&gammas)
        .map(|(&e, &g)| EccentricityPoint {
            eccentricity: e,
            gamma_total: g,
            normalized: g / g_max,
        })
        .collect();
    Ok(EccentricitySweep {
        r_parallel,
        omega_rot,
        points,
        argmax,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EccentricityOptimum {
    pub e_star: f64,
    pub gamma_star: f64,
    pub coarse_e: f64,
    pub coarse_gamma: f64,
    pub evaluations: usize,
}

/// Maximize `Γ(e)` on `[0, 0.999]` at fixed size: a 32-point scan brackets
/// the global maximum, golden-section search refines it to `xtol`.
pub fn optimal_eccentricity(
    material: &MaterialSpec,
    r_parallel: f64,
    constraint: &ConstraintSpec,
    xtol: f64,
    rtol: f64,
) -> Result<EccentricityOptimum> {
    if !(MIN_XTOL..=MAX_XTOL).contains(&xtol) {
        return Err(Error::InvalidArgument(format!(
            "xtol must lie in [{MIN_XTOL:e}, {MAX_XTOL:e}], got {xtol}"
        )));
    }
    const { assert!(MAX_SEARCH_ECCENTRICITY <= MAX_ECCENTRICITY) };
    let grid = linear_grid(0.0, MAX_SEARCH_ECCENTRICITY, COARSE_SCAN_POINTS);
    let coarse = sweep_eccentricity(material, r_parallel, constraint, &grid, rtol)?;
    let k = coarse.argmax;
    let coarse_best = *coarse.best();
    let gamma = |e: f64| evaluate(material, r_parallel, e, constraint, rtol).map(|s| s.gamma_total);

    let mut a = grid[k.saturating_sub(1)];
    let mut b = grid[(k + 1).min(grid.len() - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = gamma(x1)?;
    let mut f2 = gamma(x2)?;
    let mut evaluations = grid.len() + 2;
    while b - a > xtol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = gamma(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = gamma(x2)?;
        }
        evaluations += 1;
    }
    let (e_ref, g_ref) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    let (e_star, gamma_star) = if g_ref >= coarse_best.gamma_total {
        (e_ref, g_ref)
    } else {
        (coarse_best.eccentricity, coarse_best.gamma_total)
    };
    Ok(EccentricityOptimum {
        e_star,
        gamma_star,
        coarse_e: coarse_best.eccentricity,
        coarse_gamma: coarse_best.gamma_total,
        evaluations,
    })
}
