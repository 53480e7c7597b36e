//! Physical constants.
//!
//! | symbol | value | unit | source |
//! |--------|-------|------|--------|
//! | `c`    | 299 792 458 | m/s | exact (SI definition) |
//! | `eps0` | 8.8541878128e-12 | F/m | CODATA 2018 |
//! | `hbar` | 1.054571817e-34 | J·s | exact (h fixed by SI, divided by 2π) |
//!
//! The Lorentz damping term is evaluated with the `+iωγ/ω_T²` sign. Only
//! `|Δ|²` reaches the emission rate and it is invariant under complex
//! conjugation of the permittivity, so the rates do not depend on that
//! convention.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light in vacuum (m/s).
    pub c: f64,
    /// Vacuum permittivity (F/m).
    pub eps0: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        c: 299_792_458.0,
        eps0: 8.854_187_812_8e-12,
        hbar: 1.054_571_817e-34,
    };

    /// Tag written into run manifests.
    pub const VERSION: &'static str = "CODATA-2018";

    pub fn four_pi_eps0(&self) -> f64 {
        4.0 * PI * self.eps0
    }
}

/// The constant set used by every formula in the crate.
pub const SI: PhysicalConstants = PhysicalConstants::CODATA_2018;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn speed_of_light_is_exact() {
        assert_eq!(SI.c, 299_792_458.0);
    }

    #[test]
    fn eps0_consistent_with_c_and_mu0() {
        // mu0 = 1/(eps0 c^2) must be close to 4π·1e-7 (CODATA 2018: 1.00000000055 × 4π·1e-7)
        let mu0 = 1.0 / (SI.eps0 * SI.c * SI.c);
        assert!((mu0 / (4.0 * PI * 1e-7) - 1.0).abs() < 1e-9);
    }
}
