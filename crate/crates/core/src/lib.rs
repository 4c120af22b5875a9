//! Planning models for millimeter-wave UAV aerial base stations.
//!
//! The crate evaluates two beamforming architectures, analog (ABF: one
//! vertical beam) and hybrid (HBF: one vertical beam plus `N_D - 1` tilted
//! beams), along two axes:
//!
//! * **power**: hovering plus communication electronics, per UAV and for the
//!   whole swarm needed to cover an area of interest;
//! * **ergodic capacity**: the expected Shannon rate of a ground user served
//!   by a reference UAV, either by nested adaptive quadrature over the
//!   order-distance and Nakagami fading laws ([`capacity`]) or by seeded Monte
//!   Carlo over Poisson user deployments ([`montecarlo`]).
//!
//! All internal quantities are SI linear units (W, m, Hz, rad). Decibel
//! values are only accepted by the configuration loader.
//!
//! ```
//! use skyplan_core::{Config, Scheme};
//!
//! let cfg = Config::default();
//! let power = skyplan_core::power::comm_power(Scheme::Abf, &cfg.radio, &cfg.antenna);
//! assert!((power - 2.3107).abs() < 1e-3);
//! ```

pub mod antenna;
pub mod capacity;
pub mod channel;
pub mod config;
pub mod error;
pub mod footprint;
pub mod montecarlo;
pub mod power;
pub mod ppp;
pub mod quadrature;
pub mod stats;
pub mod sweep;
pub mod validation;

pub use antenna::BeamWidths;
pub use capacity::{CapacityEstimate, EstimateMethod, LinkBudget};
pub use channel::{FadingDist, LinkState};
pub use config::{
    AntennaConfig, ChannelParams, Config, ElevationMode, LosMode, PropulsionParams, RadioConfig, ScenarioParams,
    TbOrderMode,
};
pub use error::{Error, Result};
pub use footprint::{BeamFootprint, Footprints};
pub use power::PowerBreakdown;
pub use ppp::Deployment;

/// Beamforming architecture of a UAV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Analog: single RF chain, one vertical beam.
    Abf,
    /// Hybrid: `N_RF` chains, one vertical beam plus `N_D - 1` tilted beams.
    Hbf,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Abf => "abf",
            Scheme::Hbf => "hbf",
        }
    }

    /// Number of simultaneous beams this scheme actually forms for a radio
    /// configured with `n_beams`.
    pub fn beams(self, n_beams: u32) -> u32 {
        match self {
            Scheme::Abf => 1,
            Scheme::Hbf => n_beams,
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "abf" => Ok(Scheme::Abf),
            "hbf" => Ok(Scheme::Hbf),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown scheme `{other}` (expected abf or hbf)"),
            }),
        }
    }
}
