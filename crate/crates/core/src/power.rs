//! Propulsion, hovering and transmitter power, per UAV and per swarm.

use crate::config::{AntennaConfig, PropulsionParams, RadioConfig, ScenarioParams};
use crate::footprint::{coverage_area, swarm_size, Footprints};
use crate::Scheme;

/// The three components of multi-rotor propulsion power, W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropulsionPower {
    pub induced: f64,
    pub profile: f64,
    pub parasite: f64,
}

impl PropulsionPower {
    pub fn total(&self) -> f64 {
        self.induced + self.profile + self.parasite
    }
}

/// Evaluates the propulsion components for a given thrust `thrust` (N),
/// vertical speed `v_vert` and horizontal airspeed `v_air` (m/s). The thrust
/// balance is not solved here; the caller supplies `thrust`.
pub fn propulsion_power(p: &PropulsionParams, thrust: f64, v_vert: f64, v_air: f64) -> PropulsionPower {
    let half_v = 0.5 * v_vert;
    let induced = p.k1 * thrust * (half_v + (half_v * half_v + thrust / (p.k2 * p.k2)).sqrt());
    let axial = v_air * p.angle_of_attack.cos();
    let profile = p.c2 * thrust.powf(1.5) + p.c3 * axial * axial * thrust.sqrt();
    let parasite = p.c4 * v_air.powi(3);
    PropulsionPower {
        induced,
        profile,
        parasite,
    }
}

/// Hovering power `(c₁+c₂)(m·g)^(3/2)`.
pub fn hover_power(s: &ScenarioParams) -> f64 {
    s.hover_constant * (s.uav_mass * s.gravity).powf(1.5)
}

/// Power of one DAC with `bits` resolution sampling at `f_s` Hz.
pub fn dac_power(bits: u32, f_s: f64) -> f64 {
    1.5e-5 * 2f64.powi(bits as i32) + 9e-12 * bits as f64 * f_s
}

/// Mixer, local oscillator, low-pass filter, hybrid coupler and base-band
/// amplifier of one RF chain.
pub fn rf_chain_power(cfg: &RadioConfig) -> f64 {
    cfg.p_m + cfg.p_lo + cfg.p_lpf + cfg.p_h + cfg.p_bbamp
}

/// Per-component transmitter power and, once a swarm is sized, the totals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBreakdown {
    pub hover: f64,
    pub pa: f64,
    /// Both DACs (I and Q) of every RF chain.
    pub dac: f64,
    pub rf_chain: f64,
    pub phase_shifters: f64,
    pub splitters: f64,
    pub combiners: f64,
    pub comm_total: f64,
    pub per_uav_total: f64,
    pub swarm_total: f64,
    pub n_uav: u64,
}

/// Transmitter power split by component. Hover and swarm fields are zero
/// and `n_uav` is 1.
pub fn comm_breakdown(scheme: Scheme, cfg: &RadioConfig, ant: &AntennaConfig) -> PowerBreakdown {
    let n_t = ant.n_elements() as f64;
    let pa = cfg.tx_power / cfg.pa_efficiency;
    let per_chain_dac = 2.0 * dac_power(cfg.dac_bits, cfg.dac_sampling);
    let rf = rf_chain_power(cfg);
    let (dac, rf_chain, splitters, phase_shifters, combiners) = match scheme {
        Scheme::Abf => (per_chain_dac, rf, cfg.p_sp, n_t * cfg.p_ps, 0.0),
        Scheme::Hbf => {
            let n_rf = cfg.n_rf as f64;
            (
                n_rf * per_chain_dac,
                n_rf * rf,
                n_rf * cfg.p_sp,
                n_t * n_rf * cfg.p_ps,
                n_t * cfg.p_c,
            )
        }
    };
    let comm_total = pa + dac + rf_chain + splitters + phase_shifters + combiners;
    PowerBreakdown {
        hover: 0.0,
        pa,
        dac,
        rf_chain,
        phase_shifters,
        splitters,
        combiners,
        comm_total,
        per_uav_total: comm_total,
        swarm_total: comm_total,
        n_uav: 1,
    }
}

/// Static transmitter power of one UAV. The PA budget is the full `P_t/ξ`
/// regardless of how many beams share it.
pub fn comm_power(scheme: Scheme, cfg: &RadioConfig, ant: &AntennaConfig) -> f64 {
    comm_breakdown(scheme, cfg, ant).comm_total
}

/// Hovering plus transmitter power of every UAV needed to cover the area of
/// interest.
pub fn swarm_power(
    scheme: Scheme,
    cfg: &RadioConfig,
    ant: &AntennaConfig,
    s: &ScenarioParams,
    fp: &Footprints,
) -> PowerBreakdown {
    let mut b = comm_breakdown(scheme, cfg, ant);
    b.hover = hover_power(s);
    b.per_uav_total = b.hover + b.comm_total;
    b.n_uav = swarm_size(s.area_of_interest, coverage_area(scheme, cfg.n_beams, fp));
    b.swarm_total = b.n_uav as f64 * b.per_uav_total;
    b
}

/// Delivered capacity per watt of swarm power, bit/s/W.
pub fn power_efficiency(tau: f64, swarm_total: f64) -> f64 {
    tau / swarm_total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antenna::beam_widths;
    use crate::config::Config;

    fn hbf_radio(n_rf: u32, n_beams: u32) -> RadioConfig {
        RadioConfig {
            n_rf,
            n_beams,
            ..RadioConfig::default()
        }
    }

    fn footprints(ant: &AntennaConfig, h: f64) -> Footprints {
        Footprints::new(h, &beam_widths(ant).unwrap()).unwrap()
    }

    #[test]
    fn propulsion_components() {
        let p = PropulsionParams {
            k1: 2.0,
            k2: 1.0,
            c2: 0.3,
            c3: 0.1,
            c4: 0.5,
            c5: 0.0,
            c6: 0.0,
            angle_of_attack: 0.0,
        };
        let t = 14.715;
        let still = propulsion_power(&p, t, 0.0, 0.0);
        assert!((still.induced - p.k1 * t.powf(1.5) / p.k2).abs() < 1e-12);
        assert!((still.profile - p.c2 * t.powf(1.5)).abs() < 1e-12);
        assert_eq!(still.parasite, 0.0);
        assert_eq!(propulsion_power(&p, t, 0.0, 2.0).parasite, 4.0);
        // 2T(1/2 + sqrt(1/4 + T)) at T = 14.715, evaluated to 30 digits.
        let climbing = propulsion_power(&p, t, 1.0, 0.0);
        assert!((climbing.induced - 128.563_843_334_045_34).abs() < 1e-10);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn hover_power_scaling() {
        let s = ScenarioParams::default();
        // Exactly 160.3093; quoted as 160.27.
        assert!((hover_power(&s) - 160.309_308_103_482_87).abs() < 1e-9);
        assert!((hover_power(&s) - 160.27).abs() < 0.05);
        let heavy = ScenarioParams {
            uav_mass: 4.0 * s.uav_mass,
            ..s
        };
        assert!((hover_power(&heavy) / hover_power(&s) - 8.0).abs() < 1e-12);
        let free = ScenarioParams {
            hover_constant: 0.0,
            ..s
        };
        assert_eq!(hover_power(&free), 0.0);
    }

    #[test]
    fn dac_and_rf_chain() {
        assert!((dac_power(6, 1e9) - 0.05496).abs() < 1e-15);
        assert!((dac_power(1, 0.0) - 3e-5).abs() < 1e-18);
        let base = dac_power(4, 1e9) - dac_power(4, 0.0);
        assert!((dac_power(4, 2e9) - dac_power(4, 0.0) - 2.0 * base).abs() < 1e-15);

        let cfg = RadioConfig::default();
        assert!((rf_chain_power(&cfg) - 0.0613).abs() < 1e-15);
        let zero = RadioConfig {
            p_m: 0.0,
            p_lo: 0.0,
            p_lpf: 0.0,
            p_h: 0.0,
            p_bbamp: 0.0,
            ..cfg
        };
        assert_eq!(rf_chain_power(&zero), 0.0);
        let bumped = RadioConfig {
            p_lo: cfg.p_lo + 0.01,
            ..cfg
        };
        assert!((rf_chain_power(&bumped) - rf_chain_power(&cfg) - 0.01).abs() < 1e-15);
    }

    #[test]
    fn comm_power_figure_anchors() {
        let radio = RadioConfig::default();
        let a9 = AntennaConfig::square(9, 0.25);
        let a17 = AntennaConfig::square(17, 0.25);
        assert!((comm_power(Scheme::Abf, &radio, &a9) - 2.3107).abs() < 1e-3);
        assert!((comm_power(Scheme::Abf, &radio, &a17) - 6.8035).abs() < 1e-3);
        assert!((comm_power(Scheme::Hbf, &hbf_radio(3, 1), &a9) - 7.7708).abs() < 1e-3);
        assert!((comm_power(Scheme::Hbf, &hbf_radio(9, 1), &a17) - 63.904).abs() < 1e-3);
    }

    #[test]
    fn single_chain_hbf_differs_by_combiners() {
        for n in [9, 13, 17] {
            let ant = AntennaConfig::square(n, 0.25);
            let radio = RadioConfig::default();
            let diff = comm_power(Scheme::Hbf, &radio, &ant) - comm_power(Scheme::Abf, &radio, &ant);
            assert!((diff - (n * n) as f64 * radio.p_c).abs() < 1e-12);
        }
    }

    #[test]
    fn breakdown_is_consistent() {
        let cfg = Config::default();
        let fp = footprints(&cfg.antenna, 10.0);
        for (scheme, radio) in [(Scheme::Abf, cfg.radio), (Scheme::Hbf, hbf_radio(5, 3))] {
            let b = swarm_power(scheme, &radio, &cfg.antenna, &cfg.scenario, &fp);
            let parts = b.pa + b.dac + b.rf_chain + b.phase_shifters + b.splitters + b.combiners;
            assert!((b.comm_total - parts).abs() < 1e-12 * parts);
            assert_eq!(b.per_uav_total, b.hover + b.comm_total);
            assert_eq!(b.swarm_total, b.n_uav as f64 * b.per_uav_total);
        }
    }

    #[test]
    fn abf_swarm_near_figure_total() {
        let cfg = Config::default();
        let fp = footprints(&cfg.antenna, 10.0);
        let b = swarm_power(Scheme::Abf, &cfg.radio, &cfg.antenna, &cfg.scenario, &fp);
        // Exact footprint gives 80 UAVs where the rounded radius gives 79.
        assert_eq!(b.n_uav, 80);
        assert!((b.swarm_total - 13_380.0).abs() / 13_380.0 < 0.05);

        let hbf1 = swarm_power(Scheme::Hbf, &hbf_radio(1, 1), &cfg.antenna, &cfg.scenario, &fp);
        assert_eq!(hbf1.n_uav, b.n_uav);
        assert!(hbf1.swarm_total > b.swarm_total);

        let hbf5 = swarm_power(Scheme::Hbf, &hbf_radio(5, 5), &cfg.antenna, &cfg.scenario, &fp);
        let ratio = b.swarm_total / hbf5.swarm_total;
        assert!((4.0..=7.5).contains(&ratio), "{ratio}");
    }

    #[test]
    fn swarm_power_non_increasing_in_beams() {
        for n in [9, 13, 17] {
            let ant = AntennaConfig::square(n, 0.25);
            let s = ScenarioParams::default();
            for h in [10.0, 30.0, 60.0] {
                let fp = footprints(&ant, h);
                let mut prev = f64::INFINITY;
                for n_d in 1..=9 {
                    let p = swarm_power(Scheme::Hbf, &hbf_radio(9, n_d), &ant, &s, &fp).swarm_total;
                    assert!(p <= prev);
                    prev = p;
                }
            }
        }
    }

    #[test]
    fn dac_share_stays_small() {
        let s = ScenarioParams::default();
        for n in [9, 13, 17] {
            let ant = AntennaConfig::square(n, 0.25);
            for bits in 1..=10 {
                for (scheme, n_rf) in [(Scheme::Abf, 1), (Scheme::Hbf, 3), (Scheme::Hbf, 9)] {
                    let radio = RadioConfig {
                        dac_bits: bits,
                        ..hbf_radio(n_rf, 1)
                    };
                    let b = comm_breakdown(scheme, &radio, &ant);
                    assert!(b.dac < 0.05 * (hover_power(&s) + b.comm_total));
                }
            }
        }
    }

    #[test]
    fn efficiency() {
        assert_eq!(power_efficiency(0.0, 500.0), 0.0);
        assert_eq!(power_efficiency(1e9, 1e3), 1e6);
    }
}
