//! Laboratory-frame response of the spinning particle.
//!
//! The symmetry axis lies along `x` at `t = 0` and the particle spins about
//! `z` at angular velocity `Ω`. In the laboratory frame the induced dipole
//! at frequency `ω` is
//!
//! `d(ω) = α₀(ω)·E(ω) + α₊(ω)·E(ω + 2Ω) + α₋(ω)·E(ω − 2Ω)`
//!
//! with the sideband tensors
//!
//! `α±(ω) = Δ(ω ± Ω)/2 · [[1, ∓i, 0], [∓i, −1, 0], [0, 0, 0]]`
//!
//! and the carrier tensor built from `S±(ω) = [α∥(ω ± Ω) + α⊥(ω ± Ω)]/2`.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{anisotropy, principal_polarizabilities, SpheroidGeometry};
use crate::materials::DielectricModel;

pub type ComplexMatrix3 = Matrix3<Complex64>;
pub type ComplexVector3 = Vector3<Complex64>;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConfiguration {
    omega_rot: f64,
}

impl SpinConfiguration {
    pub fn new(omega_rot: f64) -> Result<Self> {
        if !(omega_rot.is_finite() && omega_rot >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rotation rate must be finite and non-negative, got {omega_rot}"
            )));
        }
        Ok(SpinConfiguration { omega_rot })
    }

    /// Angular velocity `Ω` (rad/s).
    pub fn omega_rot(&self) -> f64 {
        self.omega_rot
    }
}

/// Which Doppler-shifted copy of the field a tensor couples to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sideband {
    /// `ω + 2Ω`, built from `Δ(ω + Ω)`.
    Upper,
    /// `ω − 2Ω`, built from `Δ(ω − Ω)`.
    Lower,
}

impl Sideband {
    fn sign(self) -> f64 {
        match self {
            Sideband::Upper => 1.0,
            Sideband::Lower => -1.0,
        }
    }

    /// The fixed matrix `M± = [[1, ∓i, 0], [∓i, −1, 0], [0, 0, 0]]`.
    pub fn structure(self) -> ComplexMatrix3 {
        let off = -self.sign() * I;
        Matrix3::new(ONE, off, ZERO, off, -ONE, ZERO, ZERO, ZERO, ZERO)
    }

    /// Circular vector annihilated by the sideband tensor.
    pub fn kernel(self) -> ComplexVector3 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Vector3::new(
            Complex64::new(s, 0.0),
            -self.sign() * I * s,
            ZERO,
        )
    }
}

/// The three 3×3 tensors of the spinning particle at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SidebandResponse {
    pub alpha_0: ComplexMatrix3,
    pub alpha_plus: ComplexMatrix3,
    pub alpha_minus: ComplexMatrix3,
    /// Evaluation frequency `ω` (rad/s).
    pub omega: f64,
}

impl SidebandResponse {
    /// Assemble the tensors from the scalar ingredients.
    ///
    /// `delta_plus = Δ(ω+Ω)`, `delta_minus = Δ(ω−Ω)`, `s_plus = S⁺(ω)`,
    /// `s_minus = S⁻(ω)`, `alpha_zz = α⊥(ω)`. For a particle without axial
    /// symmetry rotating about principal axis 3, pass
    /// [`principal_axis_anisotropy`] values as the deltas.
    pub fn from_components(
        omega: f64,
        delta_plus: Complex64,
        delta_minus: Complex64,
        s_plus: Complex64,
        s_minus: Complex64,
        alpha_zz: Complex64,
    ) -> Self {
        let sum = (s_plus + s_minus) * 0.5;
        let diff = (s_plus - s_minus) * 0.5;
        let alpha_0 = Matrix3::new(
            sum,
            I * diff,
            ZERO,
            -I * diff,
            sum,
            ZERO,
            ZERO,
            ZERO,
            alpha_zz,
        );
        SidebandResponse {
            alpha_0,
            alpha_plus: Sideband::Upper.structure() * (delta_plus * 0.5),
            alpha_minus: Sideband::Lower.structure() * (delta_minus * 0.5),
            omega,
        }
    }

    pub fn sideband(&self, band: Sideband) -> &ComplexMatrix3 {
        match band {
            Sideband::Upper => &self.alpha_plus,
            Sideband::Lower => &self.alpha_minus,
        }
    }

    /// Induced dipole from the field amplitudes at `ω`, `ω + 2Ω` and `ω − 2Ω`.
    pub fn dipole(
        &self,
        e_carrier: &ComplexVector3,
        e_upper: &ComplexVector3,
        e_lower: &ComplexVector3,
    ) -> ComplexVector3 {
        self.alpha_0 * e_carrier + self.alpha_plus * e_upper + self.alpha_minus * e_lower
    }
}

/// `S±(ω) = [α∥(ω ± Ω) + α⊥(ω ± Ω)]/2`.
pub fn mean_polarizability(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    omega: f64,
    spin: &SpinConfiguration,
    band: Sideband,
) -> Result<Complex64> {
    let shifted = omega + band.sign() * spin.omega_rot();
    let p = principal_polarizabilities(geom, model, shifted)?;
    Ok((p.alpha_parallel + p.alpha_perp) * 0.5)
}

/// Carrier and sideband tensors of a spinning spheroid at frequency `omega`.
pub fn sideband_tensors(
    geom: &SpheroidGeometry,
    model: &DielectricModel,
    omega: f64,
    spin: &SpinConfiguration,
) -> Result<SidebandResponse> {
    let w_rot = spin.omega_rot();
    let delta_plus = anisotropy(geom, model, omega + w_rot)?;
    let delta_minus = anisotropy(geom, model, omega - w_rot)?;
    let s_plus = mean_polarizability(geom, model, omega, spin, Sideband::Upper)?;
    let s_minus = mean_polarizability(geom, model, omega, spin, Sideband::Lower)?;
    let alpha_zz = principal_polarizabilities(geom, model, omega)?.alpha_perp;
    Ok(SidebandResponse::from_components(
        omega,
        delta_plus,
        delta_minus,
        s_plus,
        s_minus,
        alpha_zz,
    ))
}

/// Anisotropy of a general particle spinning about its principal axis 3:
/// the half-difference `(α₁ − α₂)/2` of the two in-plane principal values.
pub fn principal_axis_anisotropy(alpha1: Complex64, alpha2: Complex64) -> Complex64 {
    (alpha1 - alpha2) * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::principal_polarizabilities;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_abs(m: &ComplexMatrix3) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn bst_geom() -> SpheroidGeometry {
        SpheroidGeometry::new(150e-9, 0.866_025_4).unwrap()
    }

    #[test]
    fn isotropic_particle_has_no_sidebands() {
        let geom = SpheroidGeometry::new(150e-9, 0.0).unwrap();
        let spin = SpinConfiguration::new(1.9 * 5.7e9).unwrap();
        let r = sideband_tensors(&geom, &DielectricModel::bst(), 3e9, &spin).unwrap();
        assert_eq!(max_abs(&r.alpha_plus), 0.0);
        assert_eq!(max_abs(&r.alpha_minus), 0.0);
    }

    #[test]
    fn stub_anisotropy_structure() {
        let delta = c(0.3, -0.7);
        let r = SidebandResponse::from_components(1.0, delta * 2.0, ZERO, ZERO, ZERO, ZERO);
        let expected = Matrix3::new(
            delta,
            -I * delta,
            ZERO,
            -I * delta,
            -delta,
            ZERO,
            ZERO,
            ZERO,
            ZERO,
        );
        assert!(max_abs(&(r.alpha_plus - expected)) < 1e-16);
    }

    #[test]
    fn zero_spin_recovers_rest_tensor() {
        let geom = bst_geom();
        let model = DielectricModel::bst();
        let spin = SpinConfiguration::new(0.0).unwrap();
        for w in [0.0, 2e9, 6e9, 2e10] {
            let r = sideband_tensors(&geom, &model, w, &spin).unwrap();
            let p = principal_polarizabilities(&geom, &model, w).unwrap();
            let rest = Matrix3::from_diagonal(&Vector3::new(
                p.alpha_parallel,
                p.alpha_perp,
                p.alpha_perp,
            ));
            let sum = r.alpha_0 + r.alpha_plus + r.alpha_minus;
            assert!(max_abs(&(sum - rest)) <= 1e-14 * max_abs(&rest));
        }
    }

    #[test]
    fn mean_polarizability_limits() {
        let geom = bst_geom();
        let model = DielectricModel::bst();
        let still = SpinConfiguration::new(0.0).unwrap();
        let w = 4e9;
        let p = principal_polarizabilities(&geom, &model, w).unwrap();
        let up = mean_polarizability(&geom, &model, w, &still, Sideband::Upper).unwrap();
        let down = mean_polarizability(&geom, &model, w, &still, Sideband::Lower).unwrap();
        assert_eq!(up, down);
        assert_eq!(up, (p.alpha_parallel + p.alpha_perp) * 0.5);

        let sphere = SpheroidGeometry::new(150e-9, 0.0).unwrap();
        let spin = SpinConfiguration::new(3e9).unwrap();
        let up = mean_polarizability(&sphere, &model, w, &spin, Sideband::Upper).unwrap();
        let p_up = principal_polarizabilities(&sphere, &model, w + 3e9).unwrap();
        assert!((up - p_up.alpha_perp).norm() <= 1e-15 * up.norm());

        let vacuum = DielectricModel::constant(1.0).unwrap();
        let z = mean_polarizability(&geom, &vacuum, w, &spin, Sideband::Lower).unwrap();
        assert_eq!(z.norm(), 0.0);
    }

    #[test]
    fn principal_axis_cases() {
        let u = c(1.5, -0.25);
        assert_eq!(principal_axis_anisotropy(u, u), ZERO);
        assert_eq!(principal_axis_anisotropy(u * 2.0, ZERO), u);
        let geom = bst_geom();
        let model = DielectricModel::bst();
        let p = principal_polarizabilities(&geom, &model, 3e9).unwrap();
        let via_axes = principal_axis_anisotropy(p.alpha_parallel, p.alpha_perp);
        let delta = anisotropy(&geom, &model, 3e9).unwrap();
        assert!((via_axes - delta).norm() <= 1e-12 * delta.norm());
    }

    #[test]
    fn dipole_contract() {
        let geom = bst_geom();
        let model = DielectricModel::bst();
        let spin = SpinConfiguration::new(5.7e9).unwrap();
        let r = sideband_tensors(&geom, &model, 2e9, &spin).unwrap();
        let ez = Vector3::new(ZERO, ZERO, ONE);
        // d_z only responds to E_z at the carrier frequency
        let d = r.dipole(&ez, &ez, &ez);
        assert_eq!(d[0], ZERO);
        assert_eq!(d[1], ZERO);
        assert_eq!(d[2], r.alpha_0[(2, 2)]);
    }

    #[test]
    fn negative_spin_rejected() {
        assert!(SpinConfiguration::new(-1.0).is_err());
        assert!(SpinConfiguration::new(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn nilpotent_rank_one_and_kernel(
            r in 1e-8f64..1e-5,
            e in 0.01f64..0.99,
            x in 0.0f64..4.0,
            y in 0.0f64..20.0,
        ) {
            let geom = SpheroidGeometry::new(r, e).unwrap();
            let spin = SpinConfiguration::new(y * 5.7e9).unwrap();
            let resp = sideband_tensors(&geom, &DielectricModel::bst(), x * 5.7e9, &spin).unwrap();
            for band in [Sideband::Upper, Sideband::Lower] {
                let m = resp.sideband(band);
                let scale = max_abs(m);
                prop_assert!(max_abs(&(m * m)) <= 1e-15 * scale * scale);
                prop_assert!((m * band.kernel()).norm() <= 1e-15 * scale);
                // third row and column vanish
                for k in 0..3 {
                    prop_assert_eq!(m[(2, k)], ZERO);
                    prop_assert_eq!(m[(k, 2)], ZERO);
                }
                // rank ≤ 1: all 2×2 minors of the xy block vanish
                let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                prop_assert!(det.norm() <= 1e-15 * scale * scale);
            }
            // α₀ is block diagonal
            prop_assert_eq!(resp.alpha_0[(0, 2)], ZERO);
            prop_assert_eq!(resp.alpha_0[(2, 1)], ZERO);
        }

        #[test]
        fn sidebands_use_shifted_anisotropy(x in 0.0f64..4.0, y in 0.1f64..5.0) {
            let geom = bst_geom();
            let model = DielectricModel::bst();
            let w_rot = y * 5.7e9;
            let w = x * 5.7e9;
            let spin = SpinConfiguration::new(w_rot).unwrap();
            let resp = sideband_tensors(&geom, &model, w, &spin).unwrap();
            let dp = anisotropy(&geom, &model, w + w_rot).unwrap();
            let dm = anisotropy(&geom, &model, w - w_rot).unwrap();
            prop_assert_eq!(resp.alpha_plus[(0, 0)], dp * 0.5);
            prop_assert_eq!(resp.alpha_minus[(0, 0)], dm * 0.5);
        }
    }
}
