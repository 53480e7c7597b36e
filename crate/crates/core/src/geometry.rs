//! Prolate-spheroid shape, depolarization factors and polarizabilities.
//!
//! The symmetry (major) axis has semi-axis `r_parallel`; the two minor
//! semi-axes are `r_perp = r_parallel·sqrt(1 − e²)`. Polarizabilities are in
//! SI units (F·m²); divide by `4πε₀` (see [`polarizability_volume`]) for the
//! m³ "polarizability volume".

use num_complex::Complex64;

use crate::constants::SI;
use crate::error::{Error, Result};
use crate::materials::DielectricModel;

/// Largest accepted eccentricity. Beyond it the needle limit is ill-conditioned.
pub const MAX_ECCENTRICITY: f64 = 0.999_999;

/// Below this eccentricity `N∥` is evaluated from its power series.
///
/// The closed form loses about `log10(1/e²)` digits to cancellation; at
/// `e = 0.1` it is still good to ~2e-14 while the series needs nine terms.
pub const SERIES_SWITCH_ECCENTRICITY: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpheroidGeometry {
    r_parallel: f64,
    eccentricity: f64,
}

impl SpheroidGeometry {
    pub fn new(r_parallel: f64, eccentricity: f64) -> Result<Self> {
        if !(r_parallel.is_finite() && r_parallel > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "r_parallel must be positive, got {r_parallel}"
            )));
        }
        check_eccentricity(eccentricity)?;
        Ok(SpheroidGeometry {
            r_parallel,
            eccentricity,
        })
    }

    /// Spheroid from its two semi-axes (`r_parallel ≥ r_perp`).
    pub fn from_axes(r_parallel: f64, r_perp: f64) -> Result<Self> {
        if !(r_perp > 0.0 && r_perp <= r_parallel) {
            return Err(Error::InvalidArgument(format!(
                "prolate spheroid needs 0 < r_perp <= r_parallel, got r_perp = {r_perp}, \
                 r_parallel = {r_parallel}"
            )));
        }
        let ratio = r_perp / r_parallel;
        Self::new(r_parallel, (1.0 - ratio * ratio).sqrt())
    }

    pub fn r_parallel(&self) -> f64 {
        self.r_parallel
    }

    pub fn eccentricity(&self) -> f64 {
        self.eccentricity
    }

    pub fn r_perp(&self) -> f64 {
        self.r_parallel * (1.0 - self.eccentricity * self.eccentricity).sqrt()
    }

    /// Same shape, different size.
    pub fn with_r_parallel(&self, r_parallel: f64) -> Result<Self> {
        Self::new(r_parallel, self.eccentricity)
    }

    /// `r∥ r⊥²`, the product of the three semi-axes.
    fn axes_product(&self) -> f64 {
        self.r_parallel * self.r_parallel * (1.0 - self.eccentricity * self.eccentricity)
            * self.r_parallel
    }

    pub fn depolarization(&self) -> DepolarizationFactors {
        depolarization_factors(self.eccentricity).expect("eccentricity validated on construction")
    }
}

fn check_eccentricity(e: f64) -> Result<()> {
    if !(0.0..=MAX_ECCENTRICITY).contains(&e) {
        return Err(Error::InvalidArgument(format!(
            "eccentricity must lie in [0, {MAX_ECCENTRICITY}], got {e}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepolarizationFactors {
    pub n_parallel: f64,
    pub n_perp: f64,
}

pub fn depolarization_factors(e: f64) -> Result<DepolarizationFactors> {
    check_eccentricity(e)?;
    if e == 0.0 {
        return Ok(DepolarizationFactors {
            n_parallel: 1.0 / 3.0,
            n_perp: 1.0 / 3.0,
        });
    }
    let n_parallel = if e < SERIES_SWITCH_ECCENTRICITY {
        n_parallel_series(e)
    } else {
        n_parallel_closed_form(e)
    };
    Ok(DepolarizationFactors {
        n_parallel,
        n_perp: 0.5 * (1.0 - n_parallel),
    })
}

/// `N∥ = (1 − e²)/(2e³)·[ln((1+e)/(1−e)) − 2e]`, with the logarithm taken as `2·atanh(e)`.
pub fn n_parallel_closed_form(e: f64) -> f64 {
    (1.0 - e * e) / (2.0 * e * e * e) * (2.0 * e.atanh() - 2.0 * e)
}

/// `N∥ = (1 − e²)·Σ_{k≥0} e^{2k}/(2k + 3)`, truncated once a term drops below 1e-17.
pub fn n_parallel_series(e: f64) -> f64 {
    let e2 = e * e;
    let mut sum = 0.0;
    let mut power = 1.0;
    let mut k = 0u32;
    loop {
        let term = power / f64::from(2 * k + 3);
        sum += term;
        if term < 1e-17 {
            break;
        }
        power *= e2;
        k += 1;
    }
    (1.0 - e2) * sum
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalPolarizability {
    pub alpha_parallel: Complex64,
    pub alpha_perp: Complex64,
}

/// `α_i = 4πε₀ (r∥ r⊥²/3)(ε − 1)/(1 + N_i(ε − 1))` along and across the symmetry axis.
pub fn principal_polarizabilities(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    omega: f64,
) -> Result<PrincipalPolarizability> {
    let eps = model.permittivity(omega)?;
    let n = geom.depolarization();
    let chi = eps - 1.0;
    let prefactor = SI.four_pi_eps0() * geom.axes_product() / 3.0;
    let alpha = |n_i: f64| prefactor * chi / (1.0 + n_i * chi);
    let out = PrincipalPolarizability {
        alpha_parallel: alpha(n.n_parallel),
        alpha_perp: alpha(n.n_perp),
    };
    if !(is_finite(out.alpha_parallel) && is_finite(out.alpha_perp)) {
        return Err(Error::OutOfDomain(format!(
            "polarizability diverges at omega = {omega:e} rad/s (undamped surface resonance)"
        )));
    }
    Ok(out)
}

/// Anisotropy `Δ(ω) = (α∥ − α⊥)/2` in SI units, evaluated in the factored form
///
/// `Δ/(4πε₀) = r∥ r⊥² (1/N∥ − 1/N⊥)(ε − 1)² / [6 (ε − 1 + 1/N∥)(ε − 1 + 1/N⊥)]`.
pub fn anisotropy(geom: &SpheroidGeometry, model: &DielectricModel, omega: f64) -> Result<Complex64> {
    let eps = model.permittivity(omega)?;
    let n = geom.depolarization();
    let inv_par = 1.0 / n.n_parallel;
    let inv_perp = 1.0 / n.n_perp;
    let chi = eps - 1.0;
    let delta = SI.four_pi_eps0() * geom.axes_product() * (inv_par - inv_perp) * chi * chi
        / (6.0 * (chi + inv_par) * (chi + inv_perp));
    if !is_finite(delta) {
        return Err(Error::OutOfDomain(format!(
            "anisotropy diverges at omega = {omega:e} rad/s (undamped surface resonance)"
        )));
    }
    Ok(delta)
}

/// Frequencies (rad/s, ascending) where `|Δ(ω)|` peaks, i.e. where the undamped
/// permittivity satisfies `ε = 1 − 1/N` for `N∥` or `N⊥`. Empty for
/// dispersionless materials.
pub fn anisotropy_resonances(geom: &SpheroidGeometry, model: &DielectricModel) -> Vec<f64> {
    let n = geom.depolarization();
    let mut out: Vec<f64> = [n.n_parallel, n.n_perp]
        .iter()
        .filter_map(|&ni| model.frequency_for_permittivity(1.0 - 1.0 / ni))
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// `α/(4πε₀)`: polarizability expressed as a volume (m³).
pub fn polarizability_volume(alpha: Complex64) -> Complex64 {
    alpha / SI.four_pi_eps0()
}

fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
