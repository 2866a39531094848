//! Closed-form energies of tori of revolution and the constants bounding
//! the interval of isoperimetric ratios for which minimisers exist.

use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
}

/// Willmore energy and isoperimetric ratio of the torus of revolution with
/// radius ratio c = r/R:
/// W = pi^2 / (c sqrt(1 - c^2)), iso = (16 pi^2 / c)^(1/3).
pub fn torus_closed_forms(c: f64) -> Result<(f64, f64), GenError> {
    if !(c > 0.0 && c < 1.0) {
        return Err(GenError::Domain(format!(
            "torus ratio must lie in (0, 1), got {c}"
        )));
    }
    let willmore = PI * PI / (c * (1.0 - c * c).sqrt());
    let iso = (16.0 * PI * PI / c).powf(1.0 / 3.0);
    Ok((willmore, iso))
}

/// Constants delimiting the interval of isoperimetric ratios with known
/// minimisers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalConstants {
    /// (36 pi)^(1/3), the ratio of round spheres and the universal minimum.
    pub iso_sphere: f64,
    /// Largest torus ratio below which the torus energy stays under 8 pi.
    pub c1: f64,
    /// Isoperimetric ratio of the torus at ratio c1 (upper interval end).
    pub iso_t_c1: f64,
    /// Isoperimetric ratio of the Clifford torus (ratio 1/sqrt 2).
    pub iso_clifford: f64,
    pub eight_pi: f64,
    /// Willmore energy of the Clifford torus, the genus-one minimum.
    pub two_pi_sq: f64,
}

/// Evaluates the closed forms:
/// c1 = sqrt(1/2 - sqrt(16 - pi^2)/8), iso(T_c1) = (16 pi^2 / c1)^(1/3),
/// iso(Clifford) = (16 sqrt(2) pi^2)^(1/3), iso(sphere) = (36 pi)^(1/3).
pub fn solution_interval_constants() -> IntervalConstants {
    let c1 = (0.5 - (16.0 - PI * PI).sqrt() / 8.0).sqrt();
    IntervalConstants {
        iso_sphere: (36.0 * PI).powf(1.0 / 3.0),
        c1,
        iso_t_c1: (16.0 * PI * PI / c1).powf(1.0 / 3.0),
        iso_clifford: (16.0 * 2.0_f64.sqrt() * PI * PI).powf(1.0 / 3.0),
        eight_pi: 8.0 * PI,
        two_pi_sq: 2.0 * PI * PI,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_ratio_attains_the_minimum() {
        let c_star = 1.0 / 2.0_f64.sqrt();
        let (w_min, iso) = torus_closed_forms(c_star).unwrap();
        assert!((w_min - 2.0 * PI * PI).abs() < 1e-12);
        assert!((iso - (16.0 * 2.0_f64.sqrt() * PI * PI).powf(1.0 / 3.0)).abs() < 1e-12);
        // coarse scan: no ratio beats the critical one
        for k in 1..999 {
            let c = k as f64 / 1000.0;
            let (w, _) = torus_closed_forms(c).unwrap();
            assert!(w >= w_min - 1e-9, "W({c}) = {w} below the minimum {w_min}");
        }
    }

    #[test]
    fn interval_constants_match_closed_forms() {
        let k = solution_interval_constants();
        assert!((k.c1 - 0.43646).abs() < 1e-5);
        assert!((k.iso_sphere - 4.83598).abs() < 1e-5);
        // independent route: iso of the Clifford torus from area/vol^(2/3)
        let (r_major, r_minor) = (1.0, 1.0 / 2.0_f64.sqrt());
        let area = 4.0 * PI * PI * r_major * r_minor;
        let vol = 2.0 * PI * PI * r_major * r_minor * r_minor;
        assert!((k.iso_clifford - area / vol.powf(2.0 / 3.0)).abs() < 1e-12);
        assert!(k.iso_t_c1 > k.iso_clifford, "interval must be strictly larger");
        // c1 is where the torus energy equals 8 pi
        let (w, iso) = torus_closed_forms(k.c1).unwrap();
        assert!((w - k.eight_pi).abs() < 1e-10);
        assert!((iso - k.iso_t_c1).abs() < 1e-12);
    }

    #[test]
    fn out_of_domain_ratio_is_rejected() {
        assert!(torus_closed_forms(0.0).is_err());
        assert!(torus_closed_forms(1.0).is_err());
        assert!(torus_closed_forms(-0.3).is_err());
    }
}
