//! Parameter records, defaults and the flat `key = value` config format.
//!
//! Every record is plain data, immutable once loaded, and holds SI linear
//! units. The defaults reproduce the urban public-safety scenario: a 1000 m²
//! area of interest, an IRIS+-class quadrotor, 28 GHz / 1 GHz links and the
//! component power figures of the reference ABF/HBF transmitters.
//!
//! The text format is one assignment per line (`,` and `;` also separate
//! assignments), `#` starts a comment, keys are the snake-case field names
//! below. A handful of aliases and decibel-valued keys are accepted on input
//! (`n_d`, `h`, `lambda_u`, `b_dac`, `n_axis`, `tx_power_dbm`,
//! `noise_power_dbm`, `noise_figure_db`); [`Config::to_config_string`]
//! always writes canonical linear keys.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Which decibel reference a value is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbKind {
    /// Power ratio.
    Db,
    /// Absolute power relative to 1 mW; converts to watts.
    Dbm,
}

/// Converts a dB ratio or a dBm power to linear (ratio or W).
pub fn db_to_linear(x: f64, kind: DbKind) -> f64 {
    match kind {
        DbKind::Db => 10f64.powf(x / 10.0),
        DbKind::Dbm => 10f64.powf((x - 30.0) / 10.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    /// Area of interest S_tot, m². Modeled as a disk.
    pub area_of_interest: f64,
    /// Ground-user density λ_u, users per m².
    pub user_density: f64,
    /// UAV altitude h, m.
    pub uav_altitude: f64,
    /// UAV mass, kg.
    pub uav_mass: f64,
    /// Hovering constant c₁ + c₂, (m/kg)^(1/2).
    pub hover_constant: f64,
    /// Gravitational acceleration, m/s².
    pub gravity: f64,
}

impl ScenarioParams {
    /// Radius of the disk-shaped area of interest.
    pub fn aoi_radius(&self) -> f64 {
        (self.area_of_interest / std::f64::consts::PI).sqrt()
    }
}

impl Default for ScenarioParams {
    fn default() -> Self {
        Self {
            area_of_interest: 1000.0,
            user_density: 0.05,
            uav_altitude: 10.0,
            uav_mass: 1.5,
            hover_constant: 2.84,
            gravity: 9.81,
        }
    }
}

/// How the LOS-probability S-curve computes its elevation argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ElevationMode {
    /// `arctan(h / sqrt(r² + h²))`, as the S-curve model is usually printed
    /// for this scenario. Caps at 45° directly below the UAV.
    #[default]
    Paper,
    /// The geometric elevation angle `arctan(h / r)`.
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub s_curve_p: f64,
    pub s_curve_q: f64,
    /// η_L, linear path gain at 1 m.
    pub unit_gain_los: f64,
    /// η_N, linear path gain at 1 m.
    pub unit_gain_nlos: f64,
    /// κ_L
    pub ple_los: f64,
    /// κ_N
    pub ple_nlos: f64,
    /// Nakagami shape m_L.
    pub shape_los: u32,
    /// Nakagami shape m_N.
    pub shape_nlos: u32,
    /// Nakagami spread Ω_L (mean fading power).
    pub spread_los: f64,
    /// Nakagami spread Ω_N (mean fading power).
    pub spread_nlos: f64,
    pub elevation_mode: ElevationMode,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            s_curve_p: 9.6117,
            s_curve_q: 0.1581,
            unit_gain_los: 10f64.powf(-6.14),
            unit_gain_nlos: 10f64.powf(-7.2),
            ple_los: 2.0,
            ple_nlos: 2.92,
            shape_los: 3,
            shape_nlos: 2,
            spread_los: 1.0,
            spread_nlos: 1.0,
            elevation_mode: ElevationMode::Paper,
        }
    }
}

/// Square uniform planar array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaConfig {
    pub n_x: u32,
    pub n_y: u32,
    /// Element spacing over wavelength, d/λ.
    pub spacing_ratio: f64,
    /// Carrier frequency, Hz.
    pub carrier_freq: f64,
}

impl AntennaConfig {
    pub fn square(n_axis: u32, spacing_ratio: f64) -> Self {
        Self {
            n_x: n_axis,
            n_y: n_axis,
            spacing_ratio,
            ..Self::default()
        }
    }

    /// Total element count N_T.
    pub fn n_elements(&self) -> u32 {
        self.n_x * self.n_y
    }
}

impl Default for AntennaConfig {
    fn default() -> Self {
        Self {
            n_x: 9,
            n_y: 9,
            spacing_ratio: 0.25,
            carrier_freq: 28e9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    /// Total transmit power P_t, W.
    pub tx_power: f64,
    /// System bandwidth B, Hz.
    pub bandwidth: f64,
    /// Thermal noise power σ², W.
    pub noise_power: f64,
    /// Noise figure, linear.
    pub noise_figure: f64,
    /// RF chains N_RF.
    pub n_rf: u32,
    /// Simultaneous beams N_D.
    pub n_beams: u32,
    pub dac_bits: u32,
    /// DAC sampling frequency F_S, Hz.
    pub dac_sampling: f64,
    /// Power-amplifier efficiency ξ.
    pub pa_efficiency: f64,
    /// Phase shifter, W.
    pub p_ps: f64,
    /// Splitter, W.
    pub p_sp: f64,
    /// Combiner, W.
    pub p_c: f64,
    /// Mixer, W.
    pub p_m: f64,
    /// Local oscillator, W.
    pub p_lo: f64,
    /// Low-pass filter, W.
    pub p_lpf: f64,
    /// 90° hybrid coupler with buffer, W.
    pub p_h: f64,
    /// Base-band amplifier, W.
    pub p_bbamp: f64,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            tx_power: db_to_linear(20.0, DbKind::Dbm),
            bandwidth: 1e9,
            noise_power: db_to_linear(-84.0, DbKind::Dbm),
            noise_figure: db_to_linear(5.0, DbKind::Db),
            n_rf: 1,
            n_beams: 1,
            dac_bits: 6,
            dac_sampling: 1e9,
            pa_efficiency: 0.27,
            p_ps: 21.6e-3,
            p_sp: 19.5e-3,
            p_c: 19.5e-3,
            p_m: 16.8e-3,
            p_lo: 22.5e-3,
            p_lpf: 14e-3,
            p_h: 3e-3,
            p_bbamp: 5e-3,
        }
    }
}

/// Constants of the general multi-rotor propulsion model. Only needed for
/// non-hovering flight; hovering uses [`ScenarioParams::hover_constant`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropulsionParams {
    pub k1: f64,
    pub k2: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    /// Angle of attack α_a, rad.
    pub angle_of_attack: f64,
}

impl PropulsionParams {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("k1", self.k1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("c4", self.c4),
            ("c5", self.c5),
            ("c6", self.c6),
        ];
        for (key, v) in named {
            check(key, v, v >= 0.0 && v.is_finite(), ">= 0")?;
        }
        check("k2", self.k2, self.k2 > 0.0 && self.k2.is_finite(), "> 0")?;
        check(
            "angle_of_attack",
            self.angle_of_attack,
            self.angle_of_attack.is_finite(),
            "finite",
        )
    }
}

/// Monte Carlo link model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LosMode {
    /// SNR is the LOS/NLOS probability-weighted superposition, the same
    /// expectation the analytic integrals evaluate.
    #[default]
    Weighted,
    /// Off-model exploration: draw the link state from the LOS probability.
    Bernoulli,
}

/// Which user order each tilted beam targets in Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TbOrderMode {
    /// Every tilted beam serves the ñ-th nearest user, like the analytic model.
    #[default]
    Paper,
    /// Tilted beam j serves the (ñ + j - 1)-th nearest user.
    Distinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelOptions {
    pub los_mode: LosMode,
    pub tb_orders: TbOrderMode,
}

/// Everything a single evaluation needs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Config {
    pub scenario: ScenarioParams,
    pub channel: ChannelParams,
    pub antenna: AntennaConfig,
    pub radio: RadioConfig,
    pub options: ModelOptions,
}

fn check(key: &'static str, value: impl std::fmt::Display, ok: bool, bound: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant {
            key,
            value: value.to_string(),
            bound: bound.to_string(),
        })
    }
}

fn positive(key: &'static str, v: f64) -> Result<()> {
    check(key, v, v > 0.0 && v.is_finite(), "> 0")
}

fn non_negative(key: &'static str, v: f64) -> Result<()> {
    check(key, v, v >= 0.0 && v.is_finite(), ">= 0")
}

impl ScenarioParams {
    pub fn validate(&self) -> Result<()> {
        positive("area_of_interest", self.area_of_interest)?;
        positive("user_density", self.user_density)?;
        positive("uav_altitude", self.uav_altitude)?;
        positive("uav_mass", self.uav_mass)?;
        positive("hover_constant", self.hover_constant)?;
        positive("gravity", self.gravity)
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<()> {
        positive("s_curve_p", self.s_curve_p)?;
        positive("s_curve_q", self.s_curve_q)?;
        positive("unit_gain_los", self.unit_gain_los)?;
        positive("unit_gain_nlos", self.unit_gain_nlos)?;
        check(
            "unit_gain_los",
            self.unit_gain_los,
            self.unit_gain_los > self.unit_gain_nlos,
            &format!("> unit_gain_nlos ({})", self.unit_gain_nlos),
        )?;
        positive("ple_los", self.ple_los)?;
        check(
            "ple_los",
            self.ple_los,
            self.ple_los < self.ple_nlos,
            &format!("< ple_nlos ({})", self.ple_nlos),
        )?;
        check("shape_los", self.shape_los, self.shape_los >= 1, ">= 1")?;
        check("shape_nlos", self.shape_nlos, self.shape_nlos >= 1, ">= 1")?;
        positive("spread_los", self.spread_los)?;
        positive("spread_nlos", self.spread_nlos)
    }
}

impl AntennaConfig {
    pub fn validate(&self) -> Result<()> {
        check("n_x", self.n_x, self.n_x >= 2, ">= 2")?;
        check(
            "n_y",
            self.n_y,
            self.n_y == self.n_x,
            &format!("== n_x ({}) (square arrays only)", self.n_x),
        )?;
        check(
            "spacing_ratio",
            self.spacing_ratio,
            self.spacing_ratio > 0.0 && self.spacing_ratio <= 0.5,
            "in (0, 1/2]",
        )?;
        let arg = crate::antenna::HPBW_CONSTANT / (std::f64::consts::PI * self.spacing_ratio * self.n_x as f64);
        check(
            "n_x",
            self.n_x,
            arg <= 1.0,
            &format!(
                "1.391 / (pi * spacing_ratio * n_x) <= 1 (n_x >= {})",
                crate::antenna::min_feasible_axis(self.spacing_ratio)
            ),
        )?;
        positive("carrier_freq", self.carrier_freq)
    }
}

impl RadioConfig {
    pub fn validate(&self, antenna: &AntennaConfig) -> Result<()> {
        positive("tx_power", self.tx_power)?;
        non_negative("bandwidth", self.bandwidth)?;
        positive("noise_power", self.noise_power)?;
        positive("noise_figure", self.noise_figure)?;
        check("n_beams", self.n_beams, self.n_beams >= 1, ">= 1")?;
        check(
            "n_beams",
            self.n_beams,
            self.n_beams <= self.n_rf,
            &format!("<= n_rf ({})", self.n_rf),
        )?;
        check(
            "n_rf",
            self.n_rf,
            self.n_rf <= antenna.n_elements(),
            &format!("<= n_x * n_y ({})", antenna.n_elements()),
        )?;
        check(
            "dac_bits",
            self.dac_bits,
            (1..=32).contains(&self.dac_bits),
            "in 1..=32",
        )?;
        non_negative("dac_sampling", self.dac_sampling)?;
        check(
            "pa_efficiency",
            self.pa_efficiency,
            self.pa_efficiency > 0.0 && self.pa_efficiency <= 1.0,
            "in (0, 1]",
        )?;
        for (key, v) in [
            ("p_ps", self.p_ps),
            ("p_sp", self.p_sp),
            ("p_c", self.p_c),
            ("p_m", self.p_m),
            ("p_lo", self.p_lo),
            ("p_lpf", self.p_lpf),
            ("p_h", self.p_h),
            ("p_bbamp", self.p_bbamp),
        ] {
            non_negative(key, v)?;
        }
        Ok(())
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.channel.validate()?;
        self.antenna.validate()?;
        self.radio.validate(&self.antenna)
    }

    /// Parses a config document. Missing keys keep their defaults.
    pub fn from_str_checked(source: &str) -> Result<Self> {
        load_config(source)
    }

    /// Applies one `key = value` assignment without validating the result.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        apply(self, key, value, 0)
    }

    /// Canonical text form; reloading it reproduces every field bit for bit.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let s = &self.scenario;
        let c = &self.channel;
        let a = &self.antenna;
        let r = &self.radio;
        let o = &self.options;
        let floats: [(&str, f64); 30] = [
            ("area_of_interest", s.area_of_interest),
            ("user_density", s.user_density),
            ("uav_altitude", s.uav_altitude),
            ("uav_mass", s.uav_mass),
            ("hover_constant", s.hover_constant),
            ("gravity", s.gravity),
            ("s_curve_p", c.s_curve_p),
            ("s_curve_q", c.s_curve_q),
            ("unit_gain_los", c.unit_gain_los),
            ("unit_gain_nlos", c.unit_gain_nlos),
            ("ple_los", c.ple_los),
            ("ple_nlos", c.ple_nlos),
            ("spread_los", c.spread_los),
            ("spread_nlos", c.spread_nlos),
            ("spacing_ratio", a.spacing_ratio),
            ("carrier_freq", a.carrier_freq),
            ("tx_power", r.tx_power),
            ("bandwidth", r.bandwidth),
            ("noise_power", r.noise_power),
            ("noise_figure", r.noise_figure),
            ("dac_sampling", r.dac_sampling),
            ("pa_efficiency", r.pa_efficiency),
            ("p_ps", r.p_ps),
            ("p_sp", r.p_sp),
            ("p_c", r.p_c),
            ("p_m", r.p_m),
            ("p_lo", r.p_lo),
            ("p_lpf", r.p_lpf),
            ("p_h", r.p_h),
            ("p_bbamp", r.p_bbamp),
        ];
        for (key, v) in floats {
            // `{:?}` prints the shortest representation that parses back exactly.
            let _ = writeln!(out, "{key} = {v:?}");
        }
        let ints = [
            ("shape_los", c.shape_los),
            ("shape_nlos", c.shape_nlos),
            ("n_x", a.n_x),
            ("n_y", a.n_y),
            ("n_rf", r.n_rf),
            ("n_beams", r.n_beams),
            ("dac_bits", r.dac_bits),
        ];
        for (key, v) in ints {
            let _ = writeln!(out, "{key} = {v}");
        }
        let _ = writeln!(
            out,
            "elevation_mode = {}",
            match c.elevation_mode {
                ElevationMode::Paper => "paper",
                ElevationMode::Standard => "standard",
            }
        );
        let _ = writeln!(
            out,
            "los_mode = {}",
            match o.los_mode {
                LosMode::Weighted => "weighted",
                LosMode::Bernoulli => "bernoulli",
            }
        );
        let _ = writeln!(
            out,
            "mc_tb_orders = {}",
            match o.tb_orders {
                TbOrderMode::Paper => "paper",
                TbOrderMode::Distinct => "distinct",
            }
        );
        out
    }
}

/// Parses a flat `key = value` document on top of the defaults and checks
/// every invariant.
pub fn load_config(source: &str) -> Result<Config> {
    let mut cfg = Config::default();
    let mut seen: HashSet<&'static str> = HashSet::new();
    for (idx, raw_line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        for assignment in line.split([',', ';']) {
            let assignment = assignment.trim();
            if assignment.is_empty() {
                continue;
            }
            let (key, value) = assignment.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `key = value`, found `{assignment}`"),
            })?;
            let key = key.trim();
            let canonical = canonical_key(key).ok_or_else(|| Error::UnknownKey {
                line: line_no,
                key: key.to_string(),
            })?;
            if !seen.insert(canonical) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("`{key}` sets `{canonical}`, which was already assigned"),
                });
            }
            apply(&mut cfg, key, value.trim(), line_no)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Maps accepted keys (including aliases) to the field they assign.
fn canonical_key(key: &str) -> Option<&'static str> {
    Some(match key {
        "area_of_interest" | "s_tot" => "area_of_interest",
        "user_density" | "lambda_u" => "user_density",
        "uav_altitude" | "h" => "uav_altitude",
        "uav_mass" => "uav_mass",
        "hover_constant" => "hover_constant",
        "gravity" => "gravity",
        "s_curve_p" => "s_curve_p",
        "s_curve_q" => "s_curve_q",
        "unit_gain_los" => "unit_gain_los",
        "unit_gain_nlos" => "unit_gain_nlos",
        "ple_los" => "ple_los",
        "ple_nlos" => "ple_nlos",
        "shape_los" => "shape_los",
        "shape_nlos" => "shape_nlos",
        "spread_los" => "spread_los",
        "spread_nlos" => "spread_nlos",
        "elevation_mode" => "elevation_mode",
        "n_x" => "n_x",
        "n_y" => "n_y",
        "n_axis" => "n_axis",
        "spacing_ratio" | "rho" => "spacing_ratio",
        "carrier_freq" => "carrier_freq",
        "tx_power" | "tx_power_dbm" => "tx_power",
        "bandwidth" => "bandwidth",
        "noise_power" | "noise_power_dbm" => "noise_power",
        "noise_figure" | "noise_figure_db" => "noise_figure",
        "n_rf" => "n_rf",
        "n_beams" | "n_d" => "n_beams",
        "dac_bits" | "b_dac" => "dac_bits",
        "dac_sampling" => "dac_sampling",
        "pa_efficiency" => "pa_efficiency",
        "p_ps" => "p_ps",
        "p_sp" => "p_sp",
        "p_c" => "p_c",
        "p_m" => "p_m",
        "p_lo" => "p_lo",
        "p_lpf" => "p_lpf",
        "p_h" => "p_h",
        "p_bbamp" => "p_bbamp",
        "los_mode" => "los_mode",
        "mc_tb_orders" => "mc_tb_orders",
        _ => return None,
    })
}

fn parse_f64(key: &str, value: &str, line: usize) -> Result<f64> {
    let v: f64 = value.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{key}` expects a number, found `{value}`"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("`{key}` must be finite"),
        });
    }
    Ok(v)
}

fn parse_u32(key: &str, value: &str, line: usize) -> Result<u32> {
    value.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{key}` expects a non-negative integer, found `{value}`"),
    })
}

fn apply(cfg: &mut Config, key: &str, value: &str, line: usize) -> Result<()> {
    let f = |v: &str| parse_f64(key, v, line);
    let u = |v: &str| parse_u32(key, v, line);
    let s = &mut cfg.scenario;
    let c = &mut cfg.channel;
    let a = &mut cfg.antenna;
    let r = &mut cfg.radio;
    match key {
        "area_of_interest" | "s_tot" => s.area_of_interest = f(value)?,
        "user_density" | "lambda_u" => s.user_density = f(value)?,
        "uav_altitude" | "h" => s.uav_altitude = f(value)?,
        "uav_mass" => s.uav_mass = f(value)?,
        "hover_constant" => s.hover_constant = f(value)?,
        "gravity" => s.gravity = f(value)?,
        "s_curve_p" => c.s_curve_p = f(value)?,
        "s_curve_q" => c.s_curve_q = f(value)?,
        "unit_gain_los" => c.unit_gain_los = f(value)?,
        "unit_gain_nlos" => c.unit_gain_nlos = f(value)?,
        "ple_los" => c.ple_los = f(value)?,
        "ple_nlos" => c.ple_nlos = f(value)?,
        "shape_los" => c.shape_los = u(value)?,
        "shape_nlos" => c.shape_nlos = u(value)?,
        "spread_los" => c.spread_los = f(value)?,
        "spread_nlos" => c.spread_nlos = f(value)?,
        "elevation_mode" => {
            c.elevation_mode = match value {
                "paper" => ElevationMode::Paper,
                "standard" => ElevationMode::Standard,
                _ => return Err(enum_error(key, value, "paper|standard", line)),
            }
        }
        "n_x" => a.n_x = u(value)?,
        "n_y" => a.n_y = u(value)?,
        "n_axis" => {
            let n = u(value)?;
            a.n_x = n;
            a.n_y = n;
        }
        "spacing_ratio" | "rho" => a.spacing_ratio = f(value)?,
        "carrier_freq" => a.carrier_freq = f(value)?,
        "tx_power" => r.tx_power = f(value)?,
        "tx_power_dbm" => r.tx_power = db_to_linear(f(value)?, DbKind::Dbm),
        "bandwidth" => r.bandwidth = f(value)?,
        "noise_power" => r.noise_power = f(value)?,
        "noise_power_dbm" => r.noise_power = db_to_linear(f(value)?, DbKind::Dbm),
        "noise_figure" => r.noise_figure = f(value)?,
        "noise_figure_db" => r.noise_figure = db_to_linear(f(value)?, DbKind::Db),
        "n_rf" => r.n_rf = u(value)?,
        "n_beams" | "n_d" => r.n_beams = u(value)?,
        "dac_bits" | "b_dac" => r.dac_bits = u(value)?,
        "dac_sampling" => r.dac_sampling = f(value)?,
        "pa_efficiency" => r.pa_efficiency = f(value)?,
        "p_ps" => r.p_ps = f(value)?,
        "p_sp" => r.p_sp = f(value)?,
        "p_c" => r.p_c = f(value)?,
        "p_m" => r.p_m = f(value)?,
        "p_lo" => r.p_lo = f(value)?,
        "p_lpf" => r.p_lpf = f(value)?,
        "p_h" => r.p_h = f(value)?,
        "p_bbamp" => r.p_bbamp = f(value)?,
        "los_mode" => {
            cfg.options.los_mode = match value {
                "weighted" => LosMode::Weighted,
                "bernoulli" => LosMode::Bernoulli,
                _ => return Err(enum_error(key, value, "weighted|bernoulli", line)),
            }
        }
        "mc_tb_orders" => {
            cfg.options.tb_orders = match value {
                "paper" => TbOrderMode::Paper,
                "distinct" => TbOrderMode::Distinct,
                _ => return Err(enum_error(key, value, "paper|distinct", line)),
            }
        }
        _ => {
            return Err(Error::UnknownKey {
                line,
                key: key.to_string(),
            })
        }
    }
    Ok(())
}

fn enum_error(key: &str, value: &str, expected: &str, line: usize) -> Error {
    Error::Parse {
        line,
        message: format!("`{key}` expects one of {expected}, found `{value}`"),
    }
}
