//! Seeded Monte Carlo estimate of the ergodic capacity.
//!
//! Realization `i` draws from ChaCha8 stream `i` of the master seed, so the
//! point sets never depend on scheduling, and the same seed gives common
//! random numbers across configurations. Per-realization rates are reduced
//! by pairwise summation in index order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use rayon::prelude::*;

use crate::antenna::beam_widths;
use crate::capacity::{CapacityEstimate, EstimateMethod, LinkBudget};
use crate::channel::{los_probability, path_gain, FadingDist, LinkState};
use crate::config::{Config, LosMode};
use crate::error::{Error, Result};
use crate::footprint::Footprints;
use crate::ppp::{associate_distances, nth_distance_cdf, sample_ppp_distances, tb_target_index};
use crate::stats::{ks_statistic, mean_ci};
use crate::Scheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McOptions {
    pub realizations: u64,
    pub seed: u64,
}

impl Default for McOptions {
    fn default() -> Self {
        Self {
            realizations: 10_000,
            seed: 1,
        }
    }
}

/// The RNG of realization `index`.
pub fn realization_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Radius of the disk users are drawn on: the area of interest, widened if
/// a footprint reaches beyond it so truncation matches the analytic limits.
pub fn sampling_radius(cfg: &Config, fp: &Footprints) -> f64 {
    cfg.scenario.aoi_radius().max(fp.r_vb()).max(fp.r_tb())
}

/// Monte Carlo capacity of `scheme` (bit/s) with a 95% normal interval.
pub fn mc_capacity(cfg: &Config, scheme: Scheme, opts: &McOptions) -> Result<CapacityEstimate> {
    if opts.realizations == 0 {
        return Err(Error::Invariant {
            key: "realizations",
            value: "0".into(),
            bound: ">= 1".into(),
        });
    }
    let rates = realization_rates(cfg, scheme, opts)?;
    let ci = mean_ci(&rates);
    Ok(CapacityEstimate {
        value: ci.mean,
        method: EstimateMethod::MonteCarlo,
        ci_low: ci.ci_low.min(ci.mean),
        ci_high: ci.ci_high.max(ci.mean),
        quadrature_tolerance: None,
        realizations: Some(opts.realizations),
    })
}

/// Per-realization scheme rate (bit/s), in realization order.
pub fn realization_rates(cfg: &Config, scheme: Scheme, opts: &McOptions) -> Result<Vec<f64>> {
    let h = cfg.scenario.uav_altitude;
    let density = cfg.scenario.user_density;
    let ch = &cfg.channel;
    let fp = Footprints::new(h, &beam_widths(&cfg.antenna)?)?;
    let lb = LinkBudget::new(scheme, &cfg.radio, &cfg.antenna);
    let radius = sampling_radius(cfg, &fp);
    let (r_vb, r_tb) = (fp.r_vb(), fp.r_tb());
    let n_tilde = tb_target_index(density, r_vb);
    let n_tilted = lb.n_beams - 1;
    let los = FadingDist::los(ch).sampler();
    let nlos = FadingDist::nlos(ch).sampler();
    let scale = lb.tx_power * lb.gain / (lb.n_beams as f64 * lb.noise_figure * lb.noise_power);
    let los_mode = cfg.options.los_mode;
    let tb_orders = cfg.options.tb_orders;

    let rates = (0..opts.realizations)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            let mut rng = realization_rng(opts.seed, i);
            sample_ppp_distances(density, radius, &mut rng, buf);
            let beams = associate_distances(buf, r_vb, r_tb, n_tilde, n_tilted, tb_orders);
            let mut sum = 0.0;
            for beam in beams {
                let Some(r) = beam.distance else { continue };
                let g_l: f64 = los.sample(&mut rng);
                let g_n: f64 = nlos.sample(&mut rng);
                let p_los = los_probability(r, h, ch);
                let l_los = path_gain(r, h, LinkState::Los, ch);
                let l_nlos = path_gain(r, h, LinkState::Nlos, ch);
                let snr = match los_mode {
                    LosMode::Weighted => scale * (g_l * p_los * l_los + g_n * (1.0 - p_los) * l_nlos),
                    LosMode::Bernoulli => {
                        if rng.random::<f64>() < p_los {
                            scale * g_l * l_los
                        } else {
                            scale * g_n * l_nlos
                        }
                    }
                };
                sum += lb.bandwidth * snr.log2_1p();
            }
            sum / lb.n_beams as f64
        })
        .collect();
    Ok(rates)
}

trait Log2OnePlus {
    fn log2_1p(self) -> f64;
}

impl Log2OnePlus for f64 {
    fn log2_1p(self) -> f64 {
        self.ln_1p() / std::f64::consts::LN_2
    }
}

/// KS statistics of the simulated serving-distance laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceKs {
    /// Nearest user, against the first-order law.
    pub nearest: f64,
    /// Tilted-beam target user, against the ñ-th order law.
    pub target: f64,
    pub target_order: u32,
    pub realizations: u64,
}

/// Compares simulated order distances with their analytic laws. Users are
/// drawn on a disk large enough that the targeted orders are essentially
/// never missing.
pub fn mc_distance_validation(cfg: &Config, realizations: u64, seed: u64) -> Result<DistanceKs> {
    let density = cfg.scenario.user_density;
    let order = distance_target_order(cfg)?;
    let radius = validation_radius(cfg, order);
    mc_distance_validation_with(cfg, realizations, |i, buf| {
        let mut rng = realization_rng(seed, i);
        sample_ppp_distances(density, radius, &mut rng, buf);
    })
}

fn distance_target_order(cfg: &Config) -> Result<u32> {
    let fp = Footprints::new(cfg.scenario.uav_altitude, &beam_widths(&cfg.antenna)?)?;
    Ok(tb_target_index(cfg.scenario.user_density, fp.r_vb()))
}

fn validation_radius(cfg: &Config, order: u32) -> f64 {
    // Expected count of at least order + 40 makes a shortfall below order
    // a ~1e-12 event.
    let mean_needed = order as f64 + 40.0 + 10.0 * (order as f64).sqrt();
    let r = (mean_needed / (cfg.scenario.user_density * std::f64::consts::PI)).sqrt();
    r.max(cfg.scenario.aoi_radius())
}

/// [`mc_distance_validation`] with a caller-supplied distance source, which
/// fills the buffer with the user distances of realization `i`.
pub fn mc_distance_validation_with<F>(cfg: &Config, realizations: u64, source: F) -> Result<DistanceKs>
where
    F: Fn(u64, &mut Vec<f64>) + Sync,
{
    let density = cfg.scenario.user_density;
    let order = distance_target_order(cfg)?;
    let pairs: Vec<(f64, f64)> = (0..realizations)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            source(i, buf);
            let k = order as usize;
            if buf.len() < k {
                return (f64::INFINITY, f64::INFINITY);
            }
            buf.select_nth_unstable_by(k - 1, f64::total_cmp);
            let target = buf[k - 1];
            let nearest = buf[..k].iter().copied().fold(f64::INFINITY, f64::min);
            (nearest, target)
        })
        .collect();
    let (mut nearest, mut target): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok(DistanceKs {
        nearest: ks_statistic(&mut nearest, |r| nth_distance_cdf(1, density, r)),
        target: ks_statistic(&mut target, |r| nth_distance_cdf(order, density, r)),
        target_order: order,
        realizations,
    })
}
