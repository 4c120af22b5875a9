//! Poisson ground-user deployments, order-distance laws and the
//! beam-to-user association rule.
//!
//! The vertical beam serves the nearest user, each tilted beam the ñ-th
//! nearest, where ñ - 1 is the expected number of users already inside the
//! vertical footprint. A beam whose target lies beyond its footprint range
//! is unserved for that realization.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::channel::regularized_upper_gamma;
use crate::config::{ScenarioParams, TbOrderMode};
use crate::footprint::Footprints;
use crate::Scheme;

/// Ground users of one realization, in meters relative to the UAV nadir.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub points: Vec<(f64, f64)>,
    pub density: f64,
    pub seed: u64,
    /// Radius of the sampling disk.
    pub radius: f64,
}

impl Deployment {
    /// Ground distances of all users from the nadir, unsorted.
    pub fn distances(&self) -> Vec<f64> {
        self.points.iter().map(|&(x, y)| x.hypot(y)).collect()
    }
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let draw: f64 = Poisson::new(mean).expect("positive mean").sample(rng);
    draw as usize
}

/// Homogeneous PPP of intensity `density` on a disk of `radius`.
pub fn sample_ppp_disk<R: Rng + ?Sized>(density: f64, radius: f64, rng: &mut R) -> Vec<(f64, f64)> {
    let count = poisson_count(density * PI * radius * radius, rng);
    (0..count)
        .map(|_| {
            let r = radius * rng.random::<f64>().sqrt();
            let (s, c) = (2.0 * PI * rng.random::<f64>()).sin_cos();
            (r * c, r * s)
        })
        .collect()
}

/// Distances from the center of the same process, skipping the azimuth draw.
/// Clears and refills `out`.
pub fn sample_ppp_distances<R: Rng + ?Sized>(density: f64, radius: f64, rng: &mut R, out: &mut Vec<f64>) {
    out.clear();
    let count = poisson_count(density * PI * radius * radius, rng);
    out.extend((0..count).map(|_| radius * rng.random::<f64>().sqrt()));
}

/// Users over the disk-shaped area of interest, seeded.
pub fn sample_ppp(s: &ScenarioParams, seed: u64) -> Deployment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = s.aoi_radius();
    Deployment {
        points: sample_ppp_disk(s.user_density, radius, &mut rng),
        density: s.user_density,
        seed,
        radius,
    }
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Density of the distance to the `n`-th nearest user.
pub fn nth_distance_pdf(n: u32, density: f64, r: f64) -> f64 {
    assert!(n >= 1, "order must be >= 1");
    if r <= 0.0 {
        return 0.0;
    }
    let lp = density * PI;
    let log_f = (2 * n - 1) as f64 * r.ln() + n as f64 * lp.ln() + 2f64.ln() - ln_factorial(n - 1) - lp * r * r;
    log_f.exp()
}

/// `P[r_n <= r]`: at least `n` users within distance `r`.
pub fn nth_distance_cdf(n: u32, density: f64, r: f64) -> f64 {
    assert!(n >= 1, "order must be >= 1");
    if r <= 0.0 {
        return 0.0;
    }
    1.0 - regularized_upper_gamma(n, density * PI * r * r)
}

/// Order ñ of the user a tilted beam targets: the first beyond the expected
/// population of the vertical footprint.
pub fn tb_target_index(density: f64, r_vb: f64) -> u32 {
    (density * PI * r_vb * r_vb).floor() as u32 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamKind {
    Vertical,
    /// Tilted beam `j`, numbered from 1.
    Tilted(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assignment {
    pub beam: BeamKind,
    /// Nearest-neighbor order of the targeted user.
    pub order: u32,
    /// Serving ground distance; `None` when the beam is unserved.
    pub distance: Option<f64>,
}

/// Association on raw distances. `distances` is partially reordered.
pub fn associate_distances(
    distances: &mut [f64],
    r_vb: f64,
    r_tb: f64,
    n_tilde: u32,
    n_tilted: u32,
    mode: TbOrderMode,
) -> Vec<Assignment> {
    let tilted_order = |j: u32| match mode {
        TbOrderMode::Paper => n_tilde,
        TbOrderMode::Distinct => n_tilde + j - 1,
    };
    let max_order = (1..=n_tilted).map(tilted_order).max().unwrap_or(1).max(1) as usize;
    let sorted = max_order.min(distances.len());
    if sorted > 0 {
        distances.select_nth_unstable_by(sorted - 1, f64::total_cmp);
        distances[..sorted].sort_unstable_by(f64::total_cmp);
    }
    let pick = |order: u32, limit: f64| distances.get(order as usize - 1).copied().filter(|&r| r <= limit);

    let mut out = Vec::with_capacity(1 + n_tilted as usize);
    out.push(Assignment {
        beam: BeamKind::Vertical,
        order: 1,
        distance: pick(1, r_vb),
    });
    for j in 1..=n_tilted {
        let order = tilted_order(j);
        out.push(Assignment {
            beam: BeamKind::Tilted(j),
            order,
            distance: pick(order, r_tb),
        });
    }
    out
}

/// Which user each beam of a UAV at the origin serves.
pub fn associate(
    dep: &Deployment,
    fp: &Footprints,
    scheme: Scheme,
    n_beams: u32,
    mode: TbOrderMode,
) -> Vec<Assignment> {
    let mut distances = dep.distances();
    let n_tilted = scheme.beams(n_beams).saturating_sub(1);
    associate_distances(
        &mut distances,
        fp.r_vb(),
        fp.r_tb(),
        tb_target_index(dep.density, fp.r_vb()),
        n_tilted,
        mode,
    )
}
