use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Nesting level of the capacity integral, outermost first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationLevel {
    /// Serving distance `r`.
    Distance,
    /// Rate threshold `t` (bit/s/Hz).
    Rate,
    /// NLOS fading power `gamma_N`.
    Fading,
}

impl std::fmt::Display for IntegrationLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IntegrationLevel::Distance => "distance (r)",
            IntegrationLevel::Rate => "rate threshold (t)",
            IntegrationLevel::Fading => "NLOS fading (gamma_N)",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },

    #[error("invalid `{key}` = {value}: must satisfy {bound}")]
    Invariant {
        key: &'static str,
        value: String,
        bound: String,
    },

    #[error(
        "half-power beamwidth undefined for {n_axis} elements at spacing ratio {rho}: \
         need at least {min_n_axis} elements per axis"
    )]
    HpbwDomain { n_axis: u32, rho: f64, min_n_axis: u32 },

    #[error("grazing elevation angle {theta} rad: cos(theta) must be positive")]
    GrazingAngle { theta: f64 },

    #[error("infeasible beam geometry: {0}")]
    InfeasibleGeometry(String),

    #[error("quadrature failed at the {level} level: {reason}")]
    Quadrature { level: IntegrationLevel, reason: String },

    #[error("invalid sweep: {0}")]
    Sweep(String),
}
