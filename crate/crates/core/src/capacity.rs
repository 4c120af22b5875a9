//! SNR model and the analytic ergodic capacity.
//!
//! The capacity of a beam serving the `n`-th nearest user is
//!
//! ```text
//! τ = B ∫₀^{r_max} f_n(r) ∫₀^∞ ∫₀^∞ Q_L((m_L/Ω_L)·β(t, γ_N, r)) p_N(γ_N) dγ_N dt dr
//! ```
//!
//! where `Q_L` is the LOS fading CCDF, `p_N` the NLOS fading density and
//! `β` the LOS fading level that lifts the rate to exactly `t` bit/s/Hz.
//! The improper inner limits are truncated at far-tail quantiles, the NLOS
//! integral is split where `β` changes sign (beyond that point the CCDF is
//! exactly 1 and the remainder is an NLOS tail probability), and each level
//! is integrated by adaptive Gauss–Kronrod.

use rayon::prelude::*;

use crate::antenna::{beam_widths, boresight_gain};
use crate::channel::{
    fading_ccdf, fading_upper_quantile, los_probability, path_gain, regularized_upper_gamma, FadingDist, LinkState,
};
use crate::config::{AntennaConfig, ChannelParams, Config, RadioConfig, ScenarioParams};
use crate::error::{Error, IntegrationLevel, Result};
use crate::footprint::Footprints;
use crate::ppp::{nth_distance_pdf, tb_target_index};
use crate::quadrature::{integrate, EvalBudget, QuadError, QuadOptions};
use crate::Scheme;

/// Every symbol of the SNR expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub tx_power: f64,
    /// Boresight array gain G.
    pub gain: f64,
    /// Beams sharing the transmit power, N_D.
    pub n_beams: u32,
    pub noise_figure: f64,
    pub noise_power: f64,
    pub bandwidth: f64,
}

impl LinkBudget {
    /// Link budget of `scheme`; ABF always transmits a single beam.
    pub fn new(scheme: Scheme, radio: &RadioConfig, ant: &AntennaConfig) -> Self {
        Self {
            tx_power: radio.tx_power,
            gain: boresight_gain(ant),
            n_beams: scheme.beams(radio.n_beams),
            noise_figure: radio.noise_figure,
            noise_power: radio.noise_power,
            bandwidth: radio.bandwidth,
        }
    }

    fn effective_noise(&self) -> f64 {
        self.n_beams as f64 * self.noise_figure * self.noise_power
    }

    /// Received SNR per unit LOS and NLOS fading power at ground range `r`.
    fn coefficients(&self, r: f64, h: f64, ch: &ChannelParams) -> (f64, f64) {
        let p_los = los_probability(r, h, ch);
        let scale = self.tx_power * self.gain / self.effective_noise();
        (
            scale * p_los * path_gain(r, h, LinkState::Los, ch),
            scale * (1.0 - p_los) * path_gain(r, h, LinkState::Nlos, ch),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    Analytic,
    MonteCarlo,
}

impl EstimateMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimateMethod::Analytic => "analytic",
            EstimateMethod::MonteCarlo => "mc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    /// bit/s
    pub value: f64,
    pub method: EstimateMethod,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Relative tolerance per integration level (analytic only).
    pub quadrature_tolerance: Option<f64>,
    /// Monte Carlo realizations.
    pub realizations: Option<u64>,
}

impl CapacityEstimate {
    pub fn analytic(value: f64, rel_tol: f64) -> Self {
        Self {
            value,
            method: EstimateMethod::Analytic,
            ci_low: value,
            ci_high: value,
            quadrature_tolerance: Some(rel_tol),
            realizations: None,
        }
    }
}

/// `P_t·G·[γ_L·p_L·ℓ_L + γ_N·p_N·ℓ_N] / (N_D·NF·σ²)`.
pub fn snr(r: f64, h: f64, gamma_l: f64, gamma_n: f64, lb: &LinkBudget, ch: &ChannelParams) -> f64 {
    let (a, b) = lb.coefficients(r, h, ch);
    gamma_l * a + gamma_n * b
}

/// LOS fading power at which the rate equals `t` bit/s/Hz given the NLOS
/// fading `gamma_n`. Negative when the NLOS term alone already exceeds it.
pub fn beta_threshold(t: f64, gamma_n: f64, r: f64, h: f64, lb: &LinkBudget, ch: &ChannelParams) -> f64 {
    let (a, b) = lb.coefficients(r, h, ch);
    ((t * std::f64::consts::LN_2).exp_m1() - gamma_n * b) / a
}

/// Numerical settings of the analytic capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticOptions {
    /// Relative tolerance of the distance integral.
    pub rel_tol: f64,
    /// Relative tolerance of the rate and fading integrals.
    pub inner_rel_tol: f64,
    /// Cap on integrand evaluations per capacity value, all levels combined.
    pub max_evaluations: u64,
    /// Fixed partition of the distance range, integrated concurrently.
    pub panels: usize,
    /// Tail mass dropped from the NLOS fading integral.
    pub nlos_tail: f64,
    /// Tail mass used to place the rate-integral cutoff.
    pub rate_tail: f64,
    /// Test hook: flips the sign of the LOS threshold so that validation can
    /// prove it detects a broken integrand.
    #[doc(hidden)]
    pub negate_beta: bool,
}

impl Default for AnalyticOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-4,
            inner_rel_tol: 1e-4,
            max_evaluations: 10_000_000,
            panels: 8,
            nlos_tail: 1e-8,
            rate_tail: 1e-10,
            negate_beta: false,
        }
    }
}

fn level_error(level: IntegrationLevel) -> impl Fn(QuadError<Error>) -> Error {
    move |e| match e {
        QuadError::Integrand(inner) => inner,
        other => Error::Quadrature {
            level,
            reason: other.to_string(),
        },
    }
}

/// Channel constants shared by every integrand evaluation.
struct Integrand<'a> {
    lb: &'a LinkBudget,
    ch: &'a ChannelParams,
    h: f64,
    los: FadingDist,
    nlos: FadingDist,
    nlos_log_norm: f64,
    gamma_n_max: f64,
    gamma_cap: f64,
    opts: &'a AnalyticOptions,
    budget: &'a EvalBudget,
}

impl<'a> Integrand<'a> {
    fn new(
        lb: &'a LinkBudget,
        ch: &'a ChannelParams,
        h: f64,
        opts: &'a AnalyticOptions,
        budget: &'a EvalBudget,
    ) -> Self {
        let los = FadingDist::los(ch);
        let nlos = FadingDist::nlos(ch);
        let m = nlos.shape as f64;
        let log_fact: f64 = (1..nlos.shape).map(|k| (k as f64).ln()).sum();
        Self {
            lb,
            ch,
            h,
            los,
            nlos,
            nlos_log_norm: m * nlos.rate().ln() - log_fact,
            gamma_n_max: fading_upper_quantile(&nlos, opts.nlos_tail),
            gamma_cap: fading_upper_quantile(&los, opts.rate_tail).max(fading_upper_quantile(&nlos, opts.rate_tail)),
            opts,
            budget,
        }
    }

    fn nlos_pdf(&self, g: f64) -> f64 {
        if g <= 0.0 {
            return if self.nlos.shape == 1 { self.nlos.rate() } else { 0.0 };
        }
        let m = self.nlos.shape as f64;
        (self.nlos_log_norm + (m - 1.0) * g.ln() - self.nlos.rate() * g).exp()
    }

    fn inner_opts(&self) -> QuadOptions {
        QuadOptions {
            rel_tol: self.opts.inner_rel_tol,
            ..QuadOptions::default()
        }
    }

    /// `P[rate > t]` at range `r`, with the NLOS fading integrated out.
    fn rate_ccdf(&self, t: f64, a: f64, b: f64) -> Result<f64> {
        let s = (t * std::f64::consts::LN_2).exp_m1();
        let los_rate = self.los.rate();
        let sign = if self.opts.negate_beta { -1.0 } else { 1.0 };
        // NLOS level beyond which β <= 0 and the LOS CCDF is 1.
        let kink = if b > 0.0 { s / b } else { f64::INFINITY };
        let upper = kink.min(self.gamma_n_max);
        let integral = integrate(
            |g: f64| {
                let beta = sign * (s - g * b) / a;
                Ok::<f64, Error>(regularized_upper_gamma(self.los.shape, los_rate * beta) * self.nlos_pdf(g))
            },
            0.0,
            upper,
            &[],
            &self.inner_opts(),
            self.budget,
        )
        .map_err(level_error(IntegrationLevel::Fading))?
        .value;
        let remainder = if kink < self.gamma_n_max {
            fading_ccdf(&self.nlos, kink) - self.opts.nlos_tail
        } else {
            0.0
        };
        Ok(integral + remainder.max(0.0))
    }

    /// Ergodic spectral efficiency at ground range `r`, bit/s/Hz.
    fn spectral_efficiency(&self, r: f64) -> Result<f64> {
        let (a, b) = self.lb.coefficients(r, self.h, self.ch);
        let t_max = (a * self.gamma_cap + b * self.gamma_cap).ln_1p() / std::f64::consts::LN_2;
        // Rate at which the β sign change crosses the NLOS truncation point.
        let t_kink = (b * self.gamma_n_max).ln_1p() / std::f64::consts::LN_2;
        integrate(
            |t| self.rate_ccdf(t, a, b),
            0.0,
            t_max,
            &[t_kink],
            &self.inner_opts(),
            self.budget,
        )
        .map(|r| r.value)
        .map_err(level_error(IntegrationLevel::Rate))
    }
}

/// Capacity (bit/s) of a beam serving the `order`-th nearest user, truncated
/// at ground range `r_max`.
#[allow(clippy::too_many_arguments)]
pub fn beam_capacity(
    order: u32,
    r_max: f64,
    h: f64,
    density: f64,
    lb: &LinkBudget,
    ch: &ChannelParams,
    opts: &AnalyticOptions,
) -> Result<f64> {
    if lb.bandwidth == 0.0 || r_max <= 0.0 {
        return Ok(0.0);
    }
    let budget = EvalBudget::new(opts.max_evaluations);
    let integrand = Integrand::new(lb, ch, h, opts, &budget);
    let dist_opts = QuadOptions {
        rel_tol: opts.rel_tol,
        ..QuadOptions::default()
    };
    let panels = opts.panels.max(1);
    let width = r_max / panels as f64;
    let parts: Vec<Result<f64>> = (0..panels)
        .into_par_iter()
        .map(|k| {
            let lo = k as f64 * width;
            let hi = if k + 1 == panels { r_max } else { lo + width };
            integrate(
                |r| Ok(nth_distance_pdf(order, density, r) * integrand.spectral_efficiency(r)?),
                lo,
                hi,
                &[],
                &dist_opts,
                &budget,
            )
            .map(|q| q.value)
            .map_err(level_error(IntegrationLevel::Distance))
        })
        .collect();
    let mut total = 0.0;
    for part in parts {
        total += part?;
    }
    Ok(lb.bandwidth * total)
}

fn footprints_for(scn: &ScenarioParams, ant: &AntennaConfig) -> Result<Footprints> {
    Footprints::new(scn.uav_altitude, &beam_widths(ant)?)
}

/// Capacity of the vertical beam: nearest user within `r_VB`.
pub fn tau_vb(
    scn: &ScenarioParams,
    ch: &ChannelParams,
    ant: &AntennaConfig,
    lb: &LinkBudget,
    opts: &AnalyticOptions,
) -> Result<CapacityEstimate> {
    let fp = footprints_for(scn, ant)?;
    let value = beam_capacity(1, fp.r_vb(), scn.uav_altitude, scn.user_density, lb, ch, opts)?;
    Ok(CapacityEstimate::analytic(value, opts.rel_tol))
}

/// Capacity of one tilted beam: ñ-th nearest user within `r_TB`.
pub fn tau_tb(
    scn: &ScenarioParams,
    ch: &ChannelParams,
    ant: &AntennaConfig,
    lb: &LinkBudget,
    opts: &AnalyticOptions,
) -> Result<CapacityEstimate> {
    let fp = footprints_for(scn, ant)?;
    let order = tb_target_index(scn.user_density, fp.r_vb());
    let value = beam_capacity(order, fp.r_tb(), scn.uav_altitude, scn.user_density, lb, ch, opts)?;
    Ok(CapacityEstimate::analytic(value, opts.rel_tol))
}

/// Per-user capacity of a scheme from its beam capacities: ABF is the
/// vertical beam alone, HBF the average over its `n_beams` beams.
pub fn tau_scheme(scheme: Scheme, n_beams: u32, tau_vb_val: f64, tau_tb_val: f64) -> f64 {
    match scheme {
        Scheme::Abf => tau_vb_val,
        Scheme::Hbf => {
            let n = n_beams.max(1) as f64;
            (tau_vb_val + (n - 1.0) * tau_tb_val) / n
        }
    }
}

/// Analytic capacity of `scheme` for a whole configuration.
pub fn ergodic_capacity(cfg: &Config, scheme: Scheme, opts: &AnalyticOptions) -> Result<CapacityEstimate> {
    let lb = LinkBudget::new(scheme, &cfg.radio, &cfg.antenna);
    let vb = tau_vb(&cfg.scenario, &cfg.channel, &cfg.antenna, &lb, opts)?.value;
    let tb = if lb.n_beams > 1 {
        tau_tb(&cfg.scenario, &cfg.channel, &cfg.antenna, &lb, opts)?.value
    } else {
        0.0
    };
    Ok(CapacityEstimate::analytic(
        tau_scheme(scheme, lb.n_beams, vb, tb),
        opts.rel_tol,
    ))
}
