//! Command dispatch: each command turns a [`RunConfig`] into CSV tables and
//! a JSON summary.

use serde_json::{json, Value};

use super::config::{Command, GridRange, RunConfig};
use super::output::{fmt_f64, fmt_opt, CsvTable};
use super::validate::validation_tables;
use crate::emission::{
    enhancement_curve, linear_grid, log_grid, sample_spectrum, total_rate, SECONDS_PER_YEAR,
};
use crate::error::{Error, Result};
use crate::geometry::SpheroidGeometry;
use crate::optimize::{analytic_crossover, optimal_eccentricity, sweep_eccentricity, sweep_size};
use crate::rotation::SpinConfiguration;

/// Tables to write plus a summary for the manifest and the terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub tables: Vec<CsvTable>,
    pub summary: Value,
    /// Short human-readable result printed to stdout.
    pub message: String,
}

pub(super) fn header(table: &mut CsvTable, cfg: &RunConfig) {
    table
        .comment("spindce", cfg.command)
        .comment("config_hash", cfg.config_hash());
    if let Some(m) = &cfg.material {
        table.comment("material", &m.name);
    }
    table.comment("rtol", fmt_f64(cfg.rtol));
    if let Some(note) = cfg.spin.and_then(|s| s.conversion_note()) {
        table.comment("frequency_conversion", note);
    }
}

fn log_range(g: &GridRange) -> Vec<f64> {
    log_grid(g.min, g.max, g.points)
}

pub fn execute(cfg: &RunConfig) -> Result<CommandOutput> {
    match cfg.command {
        Command::Spectrum => spectrum(cfg),
        Command::Rate => rate(cfg),
        Command::Enhancement => enhancement(cfg),
        Command::SweepSize => size_sweep(cfg),
        Command::SweepEcc => eccentricity_sweep(cfg),
        Command::Optimize => optimize(cfg),
        Command::Validate => validate(cfg),
    }
}

fn fixed_geometry(cfg: &RunConfig) -> Result<(SpheroidGeometry, SpinConfiguration)> {
    let geom = SpheroidGeometry::new(cfg.r_parallel(), cfg.eccentricity())?;
    let spin = SpinConfiguration::new(cfg.spin().omega_for(cfg.r_parallel()))?;
    Ok((geom, spin))
}

fn spectrum(cfg: &RunConfig) -> Result<CommandOutput> {
    let (geom, spin) = fixed_geometry(cfg)?;
    let model = &cfg.material().dielectric;
    let s = sample_spectrum(&geom, model, &spin, cfg.spectrum_points)?;
    let mut t = CsvTable::new("spectrum.csv", &["omega_rad_s", "d_gamma_per_rad_s"]);
    header(&mut t, cfg);
    t.comment("r_parallel_m", fmt_f64(geom.r_parallel()))
        .comment("eccentricity", fmt_f64(geom.eccentricity()))
        .comment("omega_rot_rad_s", fmt_f64(spin.omega_rot()))
        .comment(
            "grid",
            format!(
                "{} uniform points on [0, 2*omega_rot] plus resonance abscissae",
                cfg.spectrum_points
            ),
        );
    for (w, d) in s.omega_grid.iter().zip(&s.d_gamma) {
        t.row(vec![fmt_f64(*w), fmt_f64(*d)]);
    }
    let peak = s.d_gamma.iter().cloned().fold(0.0, f64::max);
    Ok(CommandOutput {
        summary: json!({
            "omega_rot_rad_s": spin.omega_rot(),
            "rows": t.len(),
            "peak_d_gamma_per_rad_s": peak,
            "mirror_asymmetry": s.mirror_asymmetry(),
        }),
        message: format!("spectrum: {} rows, peak dGamma/domega = {peak:e} s^-1/(rad/s)", t.len()),
        tables: vec![t],
    })
}

fn rate(cfg: &RunConfig) -> Result<CommandOutput> {
    let (geom, spin) = fixed_geometry(cfg)?;
    let r = total_rate(&geom, &cfg.material().dielectric, &spin, cfg.rtol)?;
    let mut t = CsvTable::new(
        "rate.csv",
        &[
            "omega_rot_rad_s",
            "gamma_per_s",
            "gamma_qs_per_s",
            "enhancement",
            "abs_error_per_s",
            "photons_per_year",
        ],
    );
    header(&mut t, cfg);
    t.comment("r_parallel_m", fmt_f64(geom.r_parallel()))
        .comment("eccentricity", fmt_f64(geom.eccentricity()));
    let per_year = r.gamma_total * SECONDS_PER_YEAR;
    t.row(vec![
        fmt_f64(r.omega_rot),
        fmt_f64(r.gamma_total),
        fmt_f64(r.gamma_qs),
        fmt_opt(r.enhancement),
        fmt_f64(r.abs_error_estimate),
        fmt_f64(per_year),
    ]);
    Ok(CommandOutput {
        summary: json!({
            "omega_rot_rad_s": r.omega_rot,
            "gamma_per_s": r.gamma_total,
            "gamma_qs_per_s": r.gamma_qs,
            "enhancement": r.enhancement,
            "abs_error_per_s": r.abs_error_estimate,
            "function_evals": r.function_evals,
            "photons_per_year": per_year,
        }),
        message: format!(
            "Gamma = {:e} photons/s ({per_year:e} photons/year), Gamma_qs = {:e} photons/s",
            r.gamma_total, r.gamma_qs
        ),
        tables: vec![t],
    })
}

fn enhancement(cfg: &RunConfig) -> Result<CommandOutput> {
    let geom = SpheroidGeometry::new(cfg.r_parallel(), cfg.eccentricity())?;
    let model = &cfg.material().dielectric;
    let omega_t = model.omega_t().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{}: enhancement grid is given in units of omega_T, which a dispersionless model lacks",
            cfg.material().name
        ))
    })?;
    let ratios = log_range(&cfg.omega_ratio_grid);
    let grid: Vec<f64> = ratios.iter().map(|x| x * omega_t).collect();
    let curve = enhancement_curve(&geom, model, &grid, cfg.rtol)?;
    let mut t = CsvTable::new(
        "enhancement.csv",
        &[
            "omega_rot_rad_s",
            "omega_over_omega_t",
            "gamma_per_s",
            "gamma_qs_per_s",
            "enhancement",
        ],
    );
    header(&mut t, cfg);
    t.comment("r_parallel_m", fmt_f64(geom.r_parallel()))
        .comment("eccentricity", fmt_f64(geom.eccentricity()))
        .comment("omega_t_rad_s", fmt_f64(omega_t));
    for (x, r) in ratios.iter().zip(&curve) {
        t.row(vec![
            fmt_f64(r.omega_rot),
            fmt_f64(*x),
            fmt_f64(r.gamma_total),
            fmt_f64(r.gamma_qs),
            fmt_opt(r.enhancement),
        ]);
    }
    let best = curve
        .iter()
        .zip(&ratios)
        .filter_map(|(r, x)| r.enhancement.map(|e| (e, *x)))
        .fold(None, |acc: Option<(f64, f64)>, (e, x)| match acc {
            Some((b, _)) if b >= e => acc,
            _ => Some((e, x)),
        });
    Ok(CommandOutput {
        summary: json!({
            "points": t.len(),
            "max_enhancement": best.map(|b| b.0),
            "argmax_omega_over_omega_t": best.map(|b| b.1),
        }),
        message: match best {
            Some((e, x)) => format!("max Gamma/Gamma_qs = {e:e} at Omega/omega_T = {x:e}"),
            None => "enhancement undefined (static anisotropy vanishes)".into(),
        },
        tables: vec![t],
    })
}

fn size_sweep(cfg: &RunConfig) -> Result<CommandOutput> {
    let constraint = cfg.spin().constraint().expect("checked at parse time");
    let grid = log_range(&cfg.r_parallel_grid);
    let rows = sweep_size(cfg.material(), cfg.eccentricity(), &grid, &constraint, cfg.rtol)?;
    let mut t = CsvTable::new(
        "sweep_size.csv",
        &[
            "r_parallel_m",
            "eccentricity",
            "omega_rot_rad_s",
            "gamma_per_s",
            "gamma_qs_per_s",
            "enhancement",
        ],
    );
    header(&mut t, cfg);
    t.comment("tip_speed_m_s", fmt_f64(constraint.tip_speed()));
    for r in &rows {
        t.row(vec![
            fmt_f64(r.r_parallel),
            fmt_f64(r.eccentricity),
            fmt_f64(r.omega_rot),
            fmt_f64(r.gamma_total),
            fmt_f64(r.gamma_qs),
            fmt_opt(r.enhancement),
        ]);
    }
    let crossover = analytic_crossover(cfg.material(), &constraint).ok();
    let (lo, hi) = (rows[0].omega_rot, rows[rows.len() - 1].omega_rot);
    Ok(CommandOutput {
        summary: json!({
            "points": rows.len(),
            "tip_speed_m_s": constraint.tip_speed(),
            "omega_rot_range_rad_s": [hi, lo],
            "analytic_crossover_m": crossover,
        }),
        message: format!(
            "{} sizes, Omega/2pi from {:.4} GHz to {:.4} GHz",
            rows.len(),
            lo / (2.0 * std::f64::consts::PI * 1e9),
            hi / (2.0 * std::f64::consts::PI * 1e9)
        ),
        tables: vec![t],
    })
}

fn eccentricity_sweep(cfg: &RunConfig) -> Result<CommandOutput> {
    let constraint = cfg.spin().constraint().expect("checked at parse time");
    let g = cfg.eccentricity_grid;
    let grid = linear_grid(g.min, g.max, g.points);
    let sweep = sweep_eccentricity(cfg.material(), cfg.r_parallel(), &constraint, &grid, cfg.rtol)?;
    let mut t = CsvTable::new(
        "sweep_ecc.csv",
        &["eccentricity", "gamma_per_s", "gamma_normalized"],
    );
    header(&mut t, cfg);
    t.comment("r_parallel_m", fmt_f64(sweep.r_parallel))
        .comment("omega_rot_rad_s", fmt_f64(sweep.omega_rot))
        .comment("tip_speed_m_s", fmt_f64(constraint.tip_speed()));
    for p in &sweep.points {
        t.row(vec![
            fmt_f64(p.eccentricity),
            fmt_f64(p.gamma_total),
            fmt_f64(p.normalized),
        ]);
    }
    let best = sweep.best();
    Ok(CommandOutput {
        summary: json!({
            "points": sweep.points.len(),
            "argmax_eccentricity": best.eccentricity,
            "max_gamma_per_s": best.gamma_total,
        }),
        message: format!(
            "best grid eccentricity {:e} with Gamma = {:e} photons/s",
            best.eccentricity, best.gamma_total
        ),
        tables: vec![t],
    })
}

fn optimize(cfg: &RunConfig) -> Result<CommandOutput> {
    let constraint = cfg.spin().constraint().expect("checked at parse time");
    let opt = optimal_eccentricity(cfg.material(), cfg.r_parallel(), &constraint, cfg.xtol, cfg.rtol)?;
    let omega = constraint.tip_speed() / cfg.r_parallel();
    let mut t = CsvTable::new(
        "optimize.csv",
        &[
            "r_parallel_m",
            "omega_rot_rad_s",
            "e_star",
            "gamma_star_per_s",
            "coarse_e",
            "coarse_gamma_per_s",
            "evaluations",
        ],
    );
    header(&mut t, cfg);
    t.comment("xtol", fmt_f64(cfg.xtol))
        .comment("tip_speed_m_s", fmt_f64(constraint.tip_speed()));
    t.row(vec![
        fmt_f64(cfg.r_parallel()),
        fmt_f64(omega),
        fmt_f64(opt.e_star),
        fmt_f64(opt.gamma_star),
        fmt_f64(opt.coarse_e),
        fmt_f64(opt.coarse_gamma),
        opt.evaluations.to_string(),
    ]);
    Ok(CommandOutput {
        summary: json!({
            "e_star": opt.e_star,
            "gamma_star_per_s": opt.gamma_star,
            "photons_per_year": opt.gamma_star * SECONDS_PER_YEAR,
            "evaluations": opt.evaluations,
        }),
        message: format!(
            "e* = {:e}, Gamma* = {:e} photons/s ({:e} photons/year)",
            opt.e_star,
            opt.gamma_star,
            opt.gamma_star * SECONDS_PER_YEAR
        ),
        tables: vec![t],
    })
}

fn validate(cfg: &RunConfig) -> Result<CommandOutput> {
    let (table, summary) = validation_tables(cfg)?;
    Ok(CommandOutput {
        message: format!("validation report: {} rows", table.len()),
        tables: vec![table],
        summary,
    })
}
