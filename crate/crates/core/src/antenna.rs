//! Uniform planar array gain and half-power beamwidths.
//!
//! Beam patterns are flat-top downstream: the gain is `N_x·N_y` inside the
//! half-power cone and zero outside. [`array_gain`] is the full pattern and
//! only serves to justify that boresight gain.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::config::AntennaConfig;
use crate::error::{Error, Result};

/// The 3 dB constant of the uniform-array HPBW approximation.
pub const HPBW_CONSTANT: f64 = 1.391;

/// Smallest `cos θ` accepted before the planar HPBW is treated as grazing.
const GRAZING_COS: f64 = 1e-9;

const FIXED_POINT_TOL: f64 = 1e-9;
const FIXED_POINT_MAX_ITER: usize = 200;

/// Half-power beamwidths of a square array, radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamWidths {
    /// Full beamwidth of the vertical beam.
    pub theta_vb: f64,
    /// Full beamwidth of a tilted beam adjacent to the vertical one.
    pub theta_tb: f64,
    /// Per-axis linear-array beamwidth.
    pub theta_ula: f64,
}

impl BeamWidths {
    /// Half beamwidth of the vertical beam, the inner edge of the tilted cone.
    pub fn half_vb(&self) -> f64 {
        0.5 * self.theta_vb
    }

    /// Half beamwidth of a tilted beam.
    pub fn half_tb(&self) -> f64 {
        0.5 * self.theta_tb
    }
}

/// One factor `sin²(πNψ) / (N sin²(πψ))`, with its removable singularities
/// at integer `ψ` evaluated as `N`.
fn dirichlet_factor(n: u32, psi: f64) -> f64 {
    let n_f = n as f64;
    let den = (PI * psi).sin();
    if den.abs() < 1e-12 {
        return n_f;
    }
    let num = (PI * n_f * psi).sin();
    num * num / (n_f * den * den)
}

/// Directivity gain at angular offset `(dtheta, dphi)` from the steering
/// direction.
pub fn array_gain(cfg: &AntennaConfig, dtheta: f64, dphi: f64) -> f64 {
    let s = cfg.spacing_ratio * dtheta.sin();
    let psi_x = s * dphi.cos();
    let psi_y = s * dphi.sin();
    dirichlet_factor(cfg.n_x, psi_x) * dirichlet_factor(cfg.n_y, psi_y)
}

/// Main-lobe gain `G = N_x·N_y`.
pub fn boresight_gain(cfg: &AntennaConfig) -> f64 {
    cfg.n_x as f64 * cfg.n_y as f64
}

/// Smallest per-axis element count for which the ULA HPBW is defined.
pub fn min_feasible_axis(rho: f64) -> u32 {
    let mut n = (HPBW_CONSTANT / (PI * rho)).ceil().max(1.0) as u32;
    // Guard against the ceiling landing one short through rounding.
    while HPBW_CONSTANT / (PI * rho * n as f64) > 1.0 {
        n += 1;
    }
    n
}

/// HPBW of a uniform linear array of `n_axis` elements at spacing `rho`
/// wavelengths.
pub fn ula_hpbw(n_axis: u32, rho: f64) -> Result<f64> {
    let arg = HPBW_CONSTANT / (PI * rho * n_axis as f64);
    if arg.is_nan() || arg > 1.0 {
        return Err(Error::HpbwDomain {
            n_axis,
            rho,
            min_n_axis: min_feasible_axis(rho),
        });
    }
    Ok(PI - 2.0 * arg.acos())
}

/// HPBW of a planar array steered to elevation `theta` and azimuth `phi`,
/// given the per-axis linear beamwidths.
pub fn upa_hpbw(theta_lx: f64, theta_ly: f64, theta: f64, phi: f64) -> Result<f64> {
    let c = theta.cos();
    if c <= GRAZING_COS {
        return Err(Error::GrazingAngle { theta });
    }
    let (sp, cp) = phi.sin_cos();
    let azimuth = cp * cp / (theta_lx * theta_lx) + sp * sp / (theta_ly * theta_ly);
    Ok(1.0 / (c * c * azimuth).sqrt())
}

/// Beamwidth of a tilted beam adjacent to the vertical beam: the solution of
/// `x = Θ_L / cos((Θ_VB + x) / 2)`, iterated from `x = Θ_VB`.
pub fn tilted_hpbw(cfg: &AntennaConfig) -> Result<f64> {
    let theta_l = ula_hpbw(cfg.n_x, cfg.spacing_ratio)?;
    let theta_vb = upa_hpbw(theta_l, theta_l, 0.0, 0.0)?;
    solve_tilted(theta_l, theta_vb)
}

fn solve_tilted(theta_l: f64, theta_vb: f64) -> Result<f64> {
    let map = |x: f64| -> Result<f64> {
        let steer = 0.5 * (theta_vb + x);
        if steer >= FRAC_PI_2 {
            return Err(Error::InfeasibleGeometry(format!(
                "tilted beam steering angle {:.4} deg reaches the horizon",
                steer.to_degrees()
            )));
        }
        upa_hpbw(theta_l, theta_l, steer, 0.0).map_err(|_| {
            Error::InfeasibleGeometry(format!(
                "tilted beam steering angle {:.4} deg is grazing",
                steer.to_degrees()
            ))
        })
    };
    let mut x = theta_vb;
    for _ in 0..FIXED_POINT_MAX_ITER {
        let next = map(x)?;
        if (next - x).abs() < FIXED_POINT_TOL {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::InfeasibleGeometry(format!(
        "tilted beamwidth did not converge in {FIXED_POINT_MAX_ITER} iterations (last {:.6} deg)",
        x.to_degrees()
    )))
}

/// All beamwidths for a square array.
pub fn beam_widths(cfg: &AntennaConfig) -> Result<BeamWidths> {
    let theta_ula = ula_hpbw(cfg.n_x, cfg.spacing_ratio)?;
    let theta_ly = ula_hpbw(cfg.n_y, cfg.spacing_ratio)?;
    let theta_vb = upa_hpbw(theta_ula, theta_ly, 0.0, 0.0)?;
    let theta_tb = solve_tilted(theta_ula, theta_vb)?;
    if theta_vb / 2.0 + theta_tb >= FRAC_PI_2 {
        return Err(Error::InfeasibleGeometry(format!(
            "tilted beam outer edge {:.4} deg does not meet the ground",
            (theta_vb / 2.0 + theta_tb).to_degrees()
        )));
    }
    Ok(BeamWidths {
        theta_vb,
        theta_tb,
        theta_ula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(x: f64) -> f64 {
        x.to_degrees()
    }

    /// |Σ_x Σ_y e^{j2π(...)}|² / (N_x N_y), summed element by element.
    fn brute_force_gain(cfg: &AntennaConfig, dtheta: f64, dphi: f64) -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for ny in 0..cfg.n_y {
            for nx in 0..cfg.n_x {
                let phase =
                    2.0 * PI * cfg.spacing_ratio * dtheta.sin() * (nx as f64 * dphi.cos() + ny as f64 * dphi.sin());
                re += phase.cos();
                im += phase.sin();
            }
        }
        (re * re + im * im) / (cfg.n_x * cfg.n_y) as f64
    }

    #[test]
    fn boresight_gain_is_element_count() {
        for n in [9, 13, 17] {
            let cfg = AntennaConfig::square(n, 0.25);
            assert_eq!(boresight_gain(&cfg), (n * n) as f64);
            assert_eq!(array_gain(&cfg, 0.0, 0.0), boresight_gain(&cfg));
        }
        assert_eq!(array_gain(&AntennaConfig::square(9, 0.25), 0.0, 0.0), 81.0);
        assert_eq!(array_gain(&AntennaConfig::square(17, 0.25), 0.0, 0.0), 289.0);
    }

    #[test]
    fn gain_matches_element_sum() {
        for (n, rho) in [(9, 0.25), (12, 0.5), (16, 0.1)] {
            let cfg = AntennaConfig::square(n, rho);
            for &(dt, dp) in &[(0.1, 0.0), (0.3, 0.7), (-0.5, 2.0), (1.2, -1.0), (0.02, 0.4)] {
                let g = array_gain(&cfg, dt, dp);
                let oracle = brute_force_gain(&cfg, dt, dp);
                assert!(
                    (g - oracle).abs() < 1e-9 * oracle.max(1.0),
                    "{n} {dt} {dp}: {g} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn first_null_of_x_factor() {
        let cfg = AntennaConfig::square(9, 0.25);
        let dtheta = (1.0f64 / (9.0 * 0.25)).asin();
        assert!(array_gain(&cfg, dtheta, 0.0).abs() < 1e-9);
        assert!(brute_force_gain(&cfg, dtheta, 0.0).abs() < 1e-9);
    }

    #[test]
    fn gain_is_symmetric() {
        let cfg = AntennaConfig::square(11, 0.3);
        for &(dt, dp) in &[(0.2, 0.3), (0.7, 1.1), (1.4, 2.9)] {
            let g = array_gain(&cfg, dt, dp);
            assert!((g - array_gain(&cfg, dt, -dp)).abs() < 1e-9);
            assert!((g - array_gain(&cfg, -dt, dp)).abs() < 1e-9);
        }
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn ula_hpbw_matches_figure_values() {
        // Quoted figure values were converted with 180/3.14; the exact
        // conversion sits ~0.01 deg below them.
        for (n, quoted) in [(8, 25.5937), (9, 22.7097), (16, 12.7169)] {
            let got = deg(ula_hpbw(n, 0.25).unwrap());
            assert!((got - quoted).abs() < 0.02, "{n}: {got}");
            assert!((got * PI / 3.14 - quoted).abs() < 1e-3, "{n}: {got}");
        }
    }

    #[test]
    fn ula_hpbw_decreases() {
        let mut prev = f64::INFINITY;
        for n in 6..40 {
            let w = ula_hpbw(n, 0.25).unwrap();
            assert!(w < prev);
            assert!(ula_hpbw(n, 0.3).unwrap() < w);
            prev = w;
        }
    }

    #[test]
    fn ula_hpbw_domain_error_names_minimum() {
        assert_eq!(min_feasible_axis(0.25), 2);
        assert_eq!(min_feasible_axis(0.1), 5);
        match ula_hpbw(4, 0.1) {
            Err(Error::HpbwDomain { min_n_axis, .. }) => assert_eq!(min_n_axis, 5),
            other => panic!("{other:?}"),
        }
        assert!(ula_hpbw(5, 0.1).is_ok());
    }

    #[test]
    fn upa_hpbw_cases() {
        let tl = ula_hpbw(9, 0.25).unwrap();
        assert_eq!(upa_hpbw(tl, tl, 0.0, 1.3).unwrap(), tl);
        let tilted = upa_hpbw(tl, tl, 60f64.to_radians(), 0.0).unwrap();
        assert!((tilted - 2.0 * tl).abs() < 1e-12);
        assert!((deg(tilted) - 45.4194).abs() < 0.05);
        let a = upa_hpbw(tl, tl, 0.4, 0.0).unwrap();
        let b = upa_hpbw(tl, tl, 0.4, PI / 3.0).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(matches!(
            upa_hpbw(tl, tl, FRAC_PI_2, 0.0),
            Err(Error::GrazingAngle { .. })
        ));
    }

    #[test]
    fn tilted_hpbw_matches_figure_values() {
        for (n, quoted) in [(8, 28.7673), (9, 24.8105), (16, 13.0448)] {
            let got = deg(tilted_hpbw(&AntennaConfig::square(n, 0.25)).unwrap());
            assert!((got - quoted).abs() < 0.05, "{n}: {got}");
        }
        let got = deg(tilted_hpbw(&AntennaConfig::square(9, 0.25)).unwrap());
        assert!((got - 24.7979).abs() < 1e-3);
    }

    #[test]
    fn tilted_exceeds_ula_and_solves_fixed_point() {
        for rho in [0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5] {
            for n in 4..=20u32 {
                let cfg = AntennaConfig::square(n, rho);
                let Ok(w) = beam_widths(&cfg) else {
                    continue;
                };
                assert!(w.theta_tb >= w.theta_ula);
                assert!(w.theta_vb <= w.theta_tb);
                let residual = w.theta_tb - w.theta_ula / ((w.theta_vb + w.theta_tb) / 2.0).cos();
                assert!(residual.abs() < 1e-9, "{n} {rho}: {residual}");
            }
        }
    }

    #[test]
    fn wide_beams_are_infeasible() {
        // Three elements at ρ = 0.25 give a ULA beam wide enough that the
        // tilted cone never meets the ground.
        let err = beam_widths(&AntennaConfig::square(3, 0.25)).unwrap_err();
        assert!(matches!(err, Error::InfeasibleGeometry(_)), "{err:?}");
    }
}
