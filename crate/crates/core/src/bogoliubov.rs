//! Dipole-correlation / channel-spectrum pipeline for arbitrary sideband tensors.
//!
//! In the vacuum input state only the lower sideband term `α₋(ω)·E(ω − 2Ω)`
//! of the induced dipole has a non-vanishing normally ordered correlator:
//! for `0 < ω < 2Ω` the field frequency `ω − 2Ω` is negative, i.e. the
//! tensor picks up creation operators. With an isotropic vacuum field
//! density `A(ω̃)` per Cartesian component,
//!
//! `C_{μν}(ω) = A(2Ω − ω) Σ_a conj(α₋)_{μa} (α₋)_{νa}`
//!
//! and the emitted spectra of the three `j = 1` electric-dipole channels are
//!
//! `dΓ₀/dω  = ω³ C_zz / (12π³ ħ c³ ε₀)`
//! `dΓ±1/dω = ω³ [C_xx + C_yy ± i(C_yx − C_xy)] / (48π³ ħ c³ ε₀)`.
//!
//! The vacuum density carries a single dimensionless normalization `κ`
//! (`A(ω̃) = κ ħ ω̃³ / (c³ ε₀)`), fixed by [`calibrate_normalization`].

use std::f64::consts::PI;

use nalgebra::{Matrix3, SymmetricEigen};
use num_complex::Complex64;

use crate::constants::SI;
use crate::emission;
use crate::error::{Error, Result};
use crate::geometry::SpheroidGeometry;
use crate::materials::DielectricModel;
use crate::rotation::{sideband_tensors, ComplexMatrix3, SidebandResponse, SpinConfiguration};

/// Hermiticity tolerance (relative to the largest entry) for [`channel_spectra`].
pub const HERMITIAN_RTOL: f64 = 1e-12;

/// Required ω-independence of the calibration ratio.
pub const CALIBRATION_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumNormalization {
    kappa: f64,
}

impl VacuumNormalization {
    /// The calibrated value, `κ = 2/3`.
    pub const CALIBRATED: VacuumNormalization = VacuumNormalization { kappa: 2.0 / 3.0 };

    /// Unit normalization, used while calibrating.
    pub const UNIT: VacuumNormalization = VacuumNormalization { kappa: 1.0 };

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// `A(ω̃) = κ ħ ω̃³ / (c³ ε₀)` (V²·m⁻²·s).
pub fn vacuum_density(omega_tilde: f64, norm: &VacuumNormalization) -> Result<f64> {
    if !(omega_tilde >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "vacuum density requires a non-negative frequency, got {omega_tilde}"
        )));
    }
    Ok(norm.kappa * SI.hbar * omega_tilde.powi(3) / (SI.c.powi(3) * SI.eps0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DipoleCorrelationMatrix {
    pub c: ComplexMatrix3,
    pub omega: f64,
}

impl DipoleCorrelationMatrix {
    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let herm = (self.c + self.c.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        let mut v = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn hermitian_defect(&self) -> f64 {
        let scale = self.c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let diff = self.c - self.c.adjoint();
        diff.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpectra {
    pub d_gamma_0: f64,
    pub d_gamma_plus1: f64,
    pub d_gamma_minus1: f64,
}

/// Vacuum dipole correlation matrix at `response.omega`.
///
/// Zero outside `0 < ω < 2Ω`, where the lower sideband samples positive
/// field frequencies and the vacuum expectation vanishes.
pub fn correlation_matrix(
    response: &SidebandResponse,
    spin: &SpinConfiguration,
    norm: &VacuumNormalization,
) -> Result<DipoleCorrelationMatrix> {
    let omega = response.omega;
    let detuning = 2.0 * spin.omega_rot() - omega;
    if !(omega > 0.0 && detuning > 0.0) {
        return Ok(DipoleCorrelationMatrix {
            c: Matrix3::zeros(),
            omega,
        });
    }
    let density = vacuum_density(detuning, norm)?;
    let lower = &response.alpha_minus;
    let c = lower.conjugate() * lower.transpose() * Complex64::new(density, 0.0);
    Ok(DipoleCorrelationMatrix { c, omega })
}

/// Photon spectra of the `m = 0, ±1` electric-dipole channels.
pub fn channel_spectra(corr: &DipoleCorrelationMatrix) -> Result<ChannelSpectra> {
    let defect = corr.hermitian_defect();
    if defect > HERMITIAN_RTOL {
        return Err(Error::NonHermitian(defect));
    }
    let c = &corr.c;
    let w3 = corr.omega.powi(3);
    let base = PI.powi(3) * SI.hbar * SI.c.powi(3) * SI.eps0;
    let i = Complex64::new(0.0, 1.0);
    let transverse = c[(0, 0)] + c[(1, 1)];
    let circular = i * (c[(1, 0)] - c[(0, 1)]);
    Ok(ChannelSpectra {
        d_gamma_0: w3 * c[(2, 2)].re / (12.0 * base),
        d_gamma_plus1: w3 * (transverse + circular).re / (48.0 * base),
        d_gamma_minus1: w3 * (transverse - circular).re / (48.0 * base),
    })
}

/// Full pipeline for a spinning spheroid: tensors → correlations → channels.
pub fn spheroid_channel_spectra(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    spin: &SpinConfiguration,
    omega: f64,
    norm: &VacuumNormalization,
) -> Result<ChannelSpectra> {
    let response = sideband_tensors(geom, model, omega, spin)?;
    let corr = correlation_matrix(&response, spin, norm)?;
    channel_spectra(&corr)
}

/// Solve for `κ` by matching the `m = +1` pipeline output to the closed-form
/// spectrum of [`emission::spectrum_at`].
///
/// The pipeline is linear in `κ`, so the ratio must be the same at every
/// interior frequency; it is checked at `0.3·2Ω` and `0.7·2Ω` on a reference
/// BST spheroid above resonance.
pub fn calibrate_normalization() -> Result<VacuumNormalization> {
    let geom = SpheroidGeometry::new(150e-9, 0.8)?;
    let model = DielectricModel::bst();
    let spin = SpinConfiguration::new(1.9 * 5.7e9)?;
    let two_omega = 2.0 * spin.omega_rot();
    let ratio = |w: f64| -> Result<f64> {
        let pipeline =
            spheroid_channel_spectra(&geom, &model, &spin, w, &VacuumNormalization::UNIT)?;
        let closed = emission::spectrum_at(&geom, &model, &spin, w)?;
        Ok(closed / pipeline.d_gamma_plus1)
    };
    let k1 = ratio(0.3 * two_omega)?;
    let k2 = ratio(0.7 * two_omega)?;
    if !(k1.is_finite() && k1 > 0.0) {
        return Err(Error::CalibrationFailure(format!(
            "non-positive normalization {k1}"
        )));
    }
    if ((k1 - k2) / k1).abs() > CALIBRATION_RTOL {
        return Err(Error::CalibrationFailure(format!(
            "ratio depends on frequency: {k1} vs {k2}"
        )));
    }
    Ok(VacuumNormalization { kappa: k1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::SidebandResponse;
    use proptest::prelude::*;

    fn bst_geom() -> SpheroidGeometry {
        SpheroidGeometry::new(150e-9, 0.866_025_4).unwrap()
    }

    #[test]
    fn density_scaling() {
        let n = VacuumNormalization::CALIBRATED;
        assert_eq!(vacuum_density(0.0, &n).unwrap(), 0.0);
        let a = vacuum_density(3e9, &n).unwrap();
        let b = vacuum_density(6e9, &n).unwrap();
        assert!((b / a - 8.0).abs() < 1e-14);
        assert!(vacuum_density(-1.0, &n).is_err());
    }

    #[test]
    fn calibration_is_two_thirds() {
        let n = calibrate_normalization().unwrap();
        assert!(n.kappa() > 0.0);
        assert!((n.kappa() / (2.0 / 3.0) - 1.0).abs() < 1e-12, "{}", n.kappa());
    }

    #[test]
    fn isotropic_particle_has_zero_correlations() {
        let geom = SpheroidGeometry::new(150e-9, 0.0).unwrap();
        let spin = SpinConfiguration::new(1e10).unwrap();
        let r = sideband_tensors(&geom, &DielectricModel::bst(), 5e9, &spin).unwrap();
        let c = correlation_matrix(&r, &spin, &VacuumNormalization::CALIBRATED).unwrap();
        assert!(c.c.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn spheroid_correlation_structure() {
        let geom = bst_geom();
        let model = DielectricModel::bst();
        let spin = SpinConfiguration::new(1.3 * 5.7e9).unwrap();
        let n = VacuumNormalization::CALIBRATED;
        let w = 0.4 * 5.7e9;
        let r = sideband_tensors(&geom, &model, w, &spin).unwrap();
        let c = correlation_matrix(&r, &spin, &n).unwrap().c;
        let a = vacuum_density(2.0 * spin.omega_rot() - w, &n).unwrap();
        let d2 = crate::geometry::anisotropy(&geom, &model, w - spin.omega_rot())
            .unwrap()
            .norm_sqr();
        let half = a * d2 / 2.0;
        for k in 0..3 {
            assert_eq!(c[(2, k)].norm(), 0.0);
            assert_eq!(c[(k, 2)].norm(), 0.0);
        }
        assert!((c[(0, 0)].re - half).abs() < 1e-14 * half);
        assert!((c[(1, 1)].re - half).abs() < 1e-14 * half);
        assert!((c[(0, 1)] - Complex64::new(0.0, half)).norm() < 1e-14 * half);
        assert!((c[(1, 0)] + c[(0, 1)]).norm() < 1e-14 * half);
    }

    #[test]
    fn zero_outside_support() {
        let geom = bst_geom();
        let spin = SpinConfiguration::new(5.7e9).unwrap();
        for w in [0.0, 2.0 * 5.7e9, 3.0 * 5.7e9] {
            let s = spheroid_channel_spectra(
                &geom,
                &DielectricModel::bst(),
                &spin,
                w,
                &VacuumNormalization::CALIBRATED,
            )
            .unwrap();
            assert_eq!(s.d_gamma_plus1, 0.0);
            assert_eq!(s.d_gamma_0, 0.0);
            assert_eq!(s.d_gamma_minus1, 0.0);
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut c = Matrix3::zeros();
        c[(0, 1)] = Complex64::new(1.0, 0.0);
        let corr = DipoleCorrelationMatrix { c, omega: 1.0 };
        assert!(matches!(channel_spectra(&corr), Err(Error::NonHermitian(_))));
    }

    #[test]
    fn generic_tensors_feed_the_m0_channel() {
        // a tensor coupling z to the lower sideband radiates into m = 0
        let mut r = SidebandResponse::from_components(
            1e9,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        );
        r.alpha_minus[(2, 2)] = Complex64::new(1e-32, 0.0);
        let spin = SpinConfiguration::new(1e9).unwrap();
        let c = correlation_matrix(&r, &spin, &VacuumNormalization::CALIBRATED).unwrap();
        let s = channel_spectra(&c).unwrap();
        assert!(s.d_gamma_0 > 0.0);
        assert_eq!(s.d_gamma_plus1, 0.0);
    }

    proptest! {
        #[test]
        fn psd_and_selection_rules(
            r in 1e-8f64..1e-5,
            e in 0.01f64..0.99,
            y in 0.1f64..20.0,
            t in 0.001f64..0.999,
        ) {
            let geom = SpheroidGeometry::new(r, e).unwrap();
            let model = DielectricModel::bst();
            let spin = SpinConfiguration::new(y * 5.7e9).unwrap();
            let w = t * 2.0 * spin.omega_rot();
            let resp = sideband_tensors(&geom, &model, w, &spin).unwrap();
            let corr = correlation_matrix(&resp, &spin, &VacuumNormalization::CALIBRATED).unwrap();
            prop_assert!(corr.hermitian_defect() <= 1e-15);
            let ev = corr.eigenvalues();
            let trace: f64 = (0..3).map(|k| corr.c[(k, k)].re).sum();
            prop_assert!(ev[0] >= -1e-15 * trace);
            let s = channel_spectra(&corr).unwrap();
            prop_assert!(s.d_gamma_plus1 > 0.0);
            prop_assert!(s.d_gamma_0.abs() <= 1e-12 * s.d_gamma_plus1);
            prop_assert!(s.d_gamma_minus1.abs() <= 1e-12 * s.d_gamma_plus1);
        }
    }
}
