//! Self-check suite: closed forms against independent numerical oracles and
//! the analytic capacity against Monte Carlo.

use std::fmt;

use crate::antenna::beam_widths;
use crate::capacity::{ergodic_capacity, AnalyticOptions};
use crate::channel::{fading_ccdf, fading_pdf, FadingDist, LinkState};
use crate::config::{AntennaConfig, Config};
use crate::footprint::{footprint_oracle, tb_footprint, BeamFootprint};
use crate::montecarlo::{mc_capacity, mc_distance_validation, McOptions};
use crate::quadrature::{integrate_plain, QuadOptions};
use crate::Scheme;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: expected {}, actual {}, tolerance {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.expected,
            self.actual,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub quick: bool,
    pub seed: u64,
    pub analytic: AnalyticOptions,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            quick: false,
            seed: 1,
            analytic: AnalyticOptions::default(),
        }
    }
}

impl ValidationOptions {
    fn realizations(&self) -> u64 {
        if self.quick {
            10_000
        } else {
            100_000
        }
    }

    /// Monte Carlo acceptance band in units of the 95% half-width.
    fn ci_multiplier(&self) -> f64 {
        if self.quick {
            3.0
        } else {
            1.0
        }
    }

    fn ks_limit(&self) -> f64 {
        if self.quick {
            0.02
        } else {
            0.01
        }
    }

    pub fn header(&self) -> String {
        if self.quick {
            format!(
                "quick mode: {} realizations, Monte Carlo band = {}x the 95% half-width, KS limit {}, diagonal grid only, seed {}",
                self.realizations(),
                self.ci_multiplier(),
                self.ks_limit(),
                self.seed
            )
        } else {
            format!(
                "full mode: {} realizations, Monte Carlo band = the 95% interval, KS limit {}, seed {}",
                self.realizations(),
                self.ks_limit(),
                self.seed
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub header: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: String, expected: f64, actual: f64, tol: f64, passed: bool) -> Check {
    Check {
        name,
        expected: format!("{expected:.6e}"),
        actual: format!("{actual:.6e}"),
        tolerance: format!("{tol:.1e}"),
        passed,
    }
}

fn gamma_ccdf_checks() -> Vec<Check> {
    let opts = QuadOptions {
        rel_tol: 1e-13,
        abs_tol: 1e-15,
        max_intervals: 1000,
    };
    let mut out = Vec::new();
    for (m, omega) in [(1, 1.0), (2, 1.0), (3, 1.0), (3, 2.0)] {
        let d = FadingDist::new(m, omega, LinkState::Los);
        for x in [0.5, 1.0, 3.0] {
            let lower = integrate_plain(|g| fading_pdf(&d, g), 0.0, x, &opts)
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
            let upper = fading_ccdf(&d, x);
            let err = (upper + lower - 1.0).abs();
            out.push(check(
                format!("gamma CCDF closed form m={m} omega={omega} x={x}"),
                1.0 - lower,
                upper,
                1e-10,
                err < 1e-10,
            ));
        }
    }
    out
}

fn footprint_checks(samples: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in [9, 13, 17] {
        let name = format!("tilted footprint vs ray oracle {n}x{n} h=10");
        let result = beam_widths(&AntennaConfig::square(n, 0.25)).and_then(|w| {
            let fp = tb_footprint(10.0, &w)?;
            let oracle = footprint_oracle(10.0, &w, samples)?;
            Ok((fp, oracle))
        });
        match result {
            Ok((
                BeamFootprint::Ellipse {
                    semi_major, semi_minor, ..
                },
                (a, b),
            )) => {
                let rel_a = (a - semi_major).abs() / a;
                let rel_b = (b - semi_minor).abs() / b;
                out.push(check(format!("{name} (a)"), a, semi_major, 1e-6, rel_a < 1e-6));
                out.push(check(format!("{name} (b)"), b, semi_minor, 1e-3, rel_b < 1e-3));
            }
            other => out.push(Check {
                name,
                expected: "ellipse".into(),
                actual: format!("{other:?}"),
                tolerance: "-".into(),
                passed: false,
            }),
        }
    }
    out
}

fn distance_checks(opts: &ValidationOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for density in [0.05, 0.005] {
        let mut cfg = Config::default();
        cfg.scenario.user_density = density;
        cfg.scenario.uav_altitude = 30.0;
        let limit = opts.ks_limit();
        match mc_distance_validation(&cfg, opts.realizations(), opts.seed) {
            Ok(ks) => {
                out.push(check(
                    format!("nearest-user distance KS lambda={density}"),
                    0.0,
                    ks.nearest,
                    limit,
                    ks.nearest < limit,
                ));
                out.push(check(
                    format!("order-{} distance KS lambda={density}", ks.target_order),
                    0.0,
                    ks.target,
                    limit,
                    ks.target < limit,
                ));
            }
            Err(e) => out.push(Check {
                name: format!("distance KS lambda={density}"),
                expected: "statistics".into(),
                actual: e.to_string(),
                tolerance: "-".into(),
                passed: false,
            }),
        }
    }
    out
}

/// Configurations of the analytic-vs-Monte-Carlo grid.
pub fn capacity_grid(quick: bool) -> Vec<(f64, u32)> {
    let hs = [10.0, 30.0, 100.0];
    let ns = [9, 13, 17];
    if quick {
        hs.into_iter().zip(ns).collect()
    } else {
        hs.iter().flat_map(|&h| ns.iter().map(move |&n| (h, n))).collect()
    }
}

fn capacity_checks(opts: &ValidationOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let mc_opts = McOptions {
        realizations: opts.realizations(),
        seed: opts.seed,
    };
    for (h, n) in capacity_grid(opts.quick) {
        for (scheme, n_beams) in [(Scheme::Abf, 1), (Scheme::Hbf, 2)] {
            let mut cfg = Config::default();
            cfg.scenario.uav_altitude = h;
            cfg.antenna = AntennaConfig::square(n, 0.25);
            cfg.radio.n_rf = n_beams;
            cfg.radio.n_beams = n_beams;
            let name = format!("capacity analytic vs Monte Carlo {scheme} N_D={n_beams} h={h} {n}x{n}");
            let analytic = ergodic_capacity(&cfg, scheme, &opts.analytic);
            let mc = mc_capacity(&cfg, scheme, &mc_opts);
            match (analytic, mc) {
                (Ok(a), Ok(m)) => {
                    let half = opts.ci_multiplier() * 0.5 * (m.ci_high - m.ci_low);
                    out.push(check(name, m.value, a.value, half, (a.value - m.value).abs() <= half));
                }
                (a, m) => out.push(Check {
                    name,
                    expected: format!("{m:?}"),
                    actual: format!("{a:?}"),
                    tolerance: "-".into(),
                    passed: false,
                }),
            }
        }
    }
    out
}

pub fn run_validation(opts: &ValidationOptions) -> ValidationReport {
    let mut checks = gamma_ccdf_checks();
    checks.extend(footprint_checks(if opts.quick { 10_000 } else { 100_000 }));
    checks.extend(distance_checks(opts));
    checks.extend(capacity_checks(opts));
    ValidationReport {
        header: opts.header(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_checks_pass() {
        assert!(gamma_ccdf_checks().iter().all(|c| c.passed));
        assert!(footprint_checks(10_000).iter().all(|c| c.passed));
    }

    #[test]
    fn grids() {
        assert_eq!(capacity_grid(false).len(), 9);
        assert_eq!(capacity_grid(true), vec![(10.0, 9), (30.0, 13), (100.0, 17)]);
    }

    #[test]
    fn negated_threshold_is_caught() {
        let opts = ValidationOptions {
            quick: true,
            analytic: AnalyticOptions {
                negate_beta: true,
                ..AnalyticOptions::default()
            },
            ..ValidationOptions::default()
        };
        let checks = capacity_checks(&opts);
        assert!(checks.iter().any(|c| !c.passed));
    }
}
