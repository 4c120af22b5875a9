//! Air-to-ground channel: LOS probability, power-law path gain and
//! Nakagami-m small-scale fading.
//!
//! Fading is handled as a *power* gain: for shape `m` and spread `Ω` the
//! gain γ is Gamma distributed with shape `m` and scale `Ω/m`, so that
//! `E[γ] = Ω`. The capacity integrals only ever need the CCDF at a linear
//! threshold `(m/Ω)·x`, which for integer `m` has the finite-sum closed form
//! implemented in [`regularized_upper_gamma`].

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::config::{ChannelParams, ElevationMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkState {
    Los,
    Nlos,
}

/// Nakagami-m power-fading law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingDist {
    pub shape: u32,
    pub spread: f64,
    pub link_state: LinkState,
}

impl FadingDist {
    pub fn new(shape: u32, spread: f64, link_state: LinkState) -> Self {
        assert!(shape >= 1, "Nakagami shape must be >= 1");
        assert!(spread > 0.0, "Nakagami spread must be positive");
        Self {
            shape,
            spread,
            link_state,
        }
    }

    pub fn for_state(ch: &ChannelParams, state: LinkState) -> Self {
        match state {
            LinkState::Los => Self::new(ch.shape_los, ch.spread_los, state),
            LinkState::Nlos => Self::new(ch.shape_nlos, ch.spread_nlos, state),
        }
    }

    pub fn los(ch: &ChannelParams) -> Self {
        Self::for_state(ch, LinkState::Los)
    }

    pub fn nlos(ch: &ChannelParams) -> Self {
        Self::for_state(ch, LinkState::Nlos)
    }

    /// `m / Ω`, the rate of the Gamma law.
    pub fn rate(&self) -> f64 {
        self.shape as f64 / self.spread
    }

    pub fn mean(&self) -> f64 {
        self.spread
    }

    /// A reusable sampler, cheaper than [`fading_sample`] in hot loops.
    pub fn sampler(&self) -> Gamma<f64> {
        Gamma::new(self.shape as f64, self.spread / self.shape as f64).expect("shape and scale are positive")
    }
}

fn elevation_deg(r: f64, h: f64, mode: ElevationMode) -> f64 {
    let angle = match mode {
        ElevationMode::Paper => (h / r.hypot(h)).atan(),
        ElevationMode::Standard => h.atan2(r),
    };
    angle.to_degrees()
}

/// S-curve LOS probability for a user at ground distance `r` from the nadir
/// of a UAV at altitude `h`.
pub fn los_probability(r: f64, h: f64, ch: &ChannelParams) -> f64 {
    let theta = elevation_deg(r, h, ch.elevation_mode);
    1.0 / (1.0 + ch.s_curve_p * (-ch.s_curve_q * (theta - ch.s_curve_p)).exp())
}

pub fn nlos_probability(r: f64, h: f64, ch: &ChannelParams) -> f64 {
    1.0 - los_probability(r, h, ch)
}

/// Linear path gain `η · R^(-κ)` with `R = sqrt(r² + h²)`.
pub fn path_gain(r: f64, h: f64, state: LinkState, ch: &ChannelParams) -> f64 {
    let (eta, kappa) = match state {
        LinkState::Los => (ch.unit_gain_los, ch.ple_los),
        LinkState::Nlos => (ch.unit_gain_nlos, ch.ple_nlos),
    };
    let dist_sq = r * r + h * h;
    eta * dist_sq.powf(-0.5 * kappa)
}

/// `Q(m, x) = e^(-x) Σ_{k<m} x^k / k!`, the upper regularized incomplete
/// gamma function for integer `m >= 1`. Returns 1 for `x <= 0`.
pub fn regularized_upper_gamma(m: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return 0.0;
    }
    // Terms are accumulated in log space so e^(-x) cannot underflow before
    // the polynomial part has had a chance to compensate.
    let ln_x = x.ln();
    let mut log_term = -x;
    let mut sum = log_term.exp();
    for k in 1..m {
        log_term += ln_x - (k as f64).ln();
        sum += log_term.exp();
    }
    sum.min(1.0)
}

/// `P[γ > x]`. Thresholds at or below zero lie below the support.
pub fn fading_ccdf(dist: &FadingDist, x: f64) -> f64 {
    regularized_upper_gamma(dist.shape, dist.rate() * x)
}

pub fn fading_cdf(dist: &FadingDist, x: f64) -> f64 {
    1.0 - fading_ccdf(dist, x)
}

/// Gamma density with shape `m` and scale `Ω/m`.
pub fn fading_pdf(dist: &FadingDist, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let m = dist.shape as f64;
    let rate = dist.rate();
    if x == 0.0 {
        return if dist.shape == 1 { rate } else { 0.0 };
    }
    let log_fact: f64 = (1..dist.shape).map(|k| (k as f64).ln()).sum();
    (m * rate.ln() + (m - 1.0) * x.ln() - rate * x - log_fact).exp()
}

/// Draws one fading power gain.
pub fn fading_sample<R: Rng + ?Sized>(dist: &FadingDist, rng: &mut R) -> f64 {
    dist.sampler().sample(rng)
}

/// The `x` with `P[γ > x] = tail`, for `0 < tail < 1`.
pub fn fading_upper_quantile(dist: &FadingDist, tail: f64) -> f64 {
    assert!(tail > 0.0 && tail < 1.0, "tail probability must lie in (0, 1)");
    let mut lo = 0.0;
    let mut hi = dist.spread.max(1.0);
    while fading_ccdf(dist, hi) > tail {
        hi *= 2.0;
    }
    // Bisection to a relative width of ~1e-15.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if fading_ccdf(dist, mid) > tail {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}
