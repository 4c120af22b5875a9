//! Ground footprints of the vertical and tilted beams, coverage areas and
//! swarm sizing.
//!
//! The tilted beam is a circular cone whose inner edge touches the vertical
//! beam's edge. Its ground section is an ellipse with the major axis along
//! the tilt azimuth; the near and far edges sit at `h·tan(Θ_VB/2)` and
//! `h·tan(Θ_VB/2 + Θ_TB)`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::antenna::BeamWidths;
use crate::error::{Error, Result};
use crate::Scheme;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BeamFootprint {
    /// Vertical beam, centered on the nadir.
    Disk { radius: f64 },
    /// Tilted beam; offsets are ground ranges from the nadir along the tilt
    /// azimuth.
    Ellipse {
        semi_major: f64,
        semi_minor: f64,
        center_offset: f64,
        near: f64,
        far: f64,
    },
}

impl BeamFootprint {
    pub fn area(&self) -> f64 {
        match *self {
            BeamFootprint::Disk { radius } => PI * radius * radius,
            BeamFootprint::Ellipse {
                semi_major, semi_minor, ..
            } => PI * semi_major * semi_minor,
        }
    }

    /// Largest ground range from the nadir covered by the beam.
    pub fn max_range(&self) -> f64 {
        match *self {
            BeamFootprint::Disk { radius } => radius,
            BeamFootprint::Ellipse { far, .. } => far,
        }
    }

    /// Whether the ground point `(x, y)` is covered; `x` runs along the tilt
    /// azimuth.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            BeamFootprint::Disk { radius } => x * x + y * y <= radius * radius,
            BeamFootprint::Ellipse {
                semi_major,
                semi_minor,
                center_offset,
                ..
            } => {
                let u = (x - center_offset) / semi_major;
                let v = y / semi_minor;
                u * u + v * v <= 1.0
            }
        }
    }
}

/// Both footprints of one UAV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Footprints {
    pub vb: BeamFootprint,
    pub tb: BeamFootprint,
}

impl Footprints {
    pub fn new(h: f64, widths: &BeamWidths) -> Result<Self> {
        Ok(Self {
            vb: vb_footprint(h, widths),
            tb: tb_footprint(h, widths)?,
        })
    }

    /// Vertical-beam radius r_VB.
    pub fn r_vb(&self) -> f64 {
        self.vb.max_range()
    }

    /// Tilted-beam far-edge range r_TB.
    pub fn r_tb(&self) -> f64 {
        self.tb.max_range()
    }

    pub fn s_vb(&self) -> f64 {
        self.vb.area()
    }

    pub fn s_tb(&self) -> f64 {
        self.tb.area()
    }
}

pub fn vb_footprint(h: f64, widths: &BeamWidths) -> BeamFootprint {
    BeamFootprint::Disk {
        radius: h * widths.half_vb().tan(),
    }
}

/// Exact ground section of the tilted cone.
pub fn tb_footprint(h: f64, widths: &BeamWidths) -> Result<BeamFootprint> {
    let inner = widths.half_vb();
    let outer = inner + widths.theta_tb;
    if outer >= FRAC_PI_2 {
        return Err(Error::InfeasibleGeometry(format!(
            "tilted beam outer edge at {:.4} deg from nadir never meets the ground",
            outer.to_degrees()
        )));
    }
    let near = h * inner.tan();
    let far = h * outer.tan();
    let axis = inner + widths.half_tb();
    let half = widths.half_tb();
    // cos(ψ-α)·cos(ψ+α) = cos²ψ - sin²α, positive because ψ+α < π/2.
    let semi_minor = h * half.sin() / ((axis - half).cos() * (axis + half).cos()).sqrt();
    Ok(BeamFootprint::Ellipse {
        semi_major: 0.5 * (far - near),
        semi_minor,
        center_offset: 0.5 * (near + far),
        near,
        far,
    })
}

/// The closed-form semi-minor axis as it is usually printed for this
/// geometry, with the undefined angle taken as zero (hover). Kept for
/// comparison only: for realistic beamwidths the square-root argument is
/// negative and the result is NaN, so [`tb_footprint`] uses the exact cone
/// section instead.
pub fn printed_semi_minor(h: f64, widths: &BeamWidths) -> f64 {
    let hv = widths.half_vb();
    let pt = widths.theta_tb;
    let ht = widths.half_tb();
    let a = 0.5 * h * ((hv + pt).tan() - hv.tan());
    let phi = (h / (a + h * hv.tan())).atan();
    let bracket = hv.cos() * (FRAC_PI_2 - hv - ht).tan() - phi;
    let numerator = (ht.sin().powi(2) - bracket * bracket).sqrt();
    let denominator = (hv + pt).cos() * (ht / 2.0).cos() / (hv + ht).cos();
    let trailing = (FRAC_PI_2 - hv - ht - phi).cos() / phi.sin();
    numerator / denominator * trailing
}

/// Extents of the ground section of a circular cone sampled ray by ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeSection {
    /// Smallest signed ground coordinate along the tilt azimuth.
    pub near: f64,
    /// Largest ground coordinate along the tilt azimuth.
    pub far: f64,
    pub semi_major: f64,
    pub semi_minor: f64,
}

/// Intersects `samples` boundary rays of a cone (apex at height `h`, axis
/// tilted `axis_tilt` from vertical towards +x, half-angle `half_angle`)
/// with the ground plane.
pub fn cone_ground_section(h: f64, axis_tilt: f64, half_angle: f64, samples: usize) -> Result<ConeSection> {
    let (st, ct) = axis_tilt.sin_cos();
    let (sa, ca) = half_angle.sin_cos();
    let axis = [st, 0.0, -ct];
    let u = [ct, 0.0, st];
    let mut near = f64::INFINITY;
    let mut far = f64::NEG_INFINITY;
    let mut max_y: f64 = 0.0;
    for k in 0..samples {
        let phi = 2.0 * PI * k as f64 / samples as f64;
        let (sp, cp) = phi.sin_cos();
        let dx = ca * axis[0] + sa * cp * u[0];
        let dy = sa * sp;
        let dz = ca * axis[2] + sa * cp * u[2];
        if dz >= -1e-12 {
            return Err(Error::InfeasibleGeometry(format!(
                "cone ray at azimuth {phi:.6} rad does not reach the ground"
            )));
        }
        let t = h / -dz;
        let x = t * dx;
        near = near.min(x);
        far = far.max(x);
        max_y = max_y.max((t * dy).abs());
    }
    Ok(ConeSection {
        near,
        far,
        semi_major: 0.5 * (far - near),
        semi_minor: max_y,
    })
}

/// Ray-sampled semi-axes `(a, b)` of the tilted-beam footprint.
pub fn footprint_oracle(h: f64, widths: &BeamWidths, samples: usize) -> Result<(f64, f64)> {
    let s = cone_ground_section(h, widths.half_vb() + widths.half_tb(), widths.half_tb(), samples)?;
    Ok((s.semi_major, s.semi_minor))
}

/// Ground area covered by one UAV. ABF always forms a single beam.
pub fn coverage_area(scheme: Scheme, n_beams: u32, fp: &Footprints) -> f64 {
    let extra = scheme.beams(n_beams).saturating_sub(1) as f64;
    fp.s_vb() + extra * fp.s_tb()
}

/// UAVs needed to tile `s_tot` with footprints of area `s_cov`.
pub fn swarm_size(s_tot: f64, s_cov: f64) -> u64 {
    (s_tot / s_cov).ceil().max(1.0) as u64
}
