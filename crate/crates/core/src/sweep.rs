//! Single-point evaluation, Cartesian parameter sweeps and their CSV form.

use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;

use crate::antenna::{beam_widths, BeamWidths};
use crate::capacity::{ergodic_capacity, AnalyticOptions, CapacityEstimate};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::footprint::{coverage_area, Footprints};
use crate::montecarlo::{mc_capacity, McOptions};
use crate::power::{power_efficiency, swarm_power, PowerBreakdown};
use crate::Scheme;

pub const CSV_HEADER: &str = "scheme,h_m,n_x,n_y,n_rf,n_d,b_dac,lambda_u,theta_vb_deg,theta_tb_deg,\
r_vb_m,r_tb_m,s_cov_m2,n_uav,p_comm_w,p_hover_w,p_swarm_w,tau_bps,method,ci_low_bps,ci_high_bps,seed";

/// How (and whether) capacity is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CapacityMethod {
    /// Geometry and power only.
    Skip,
    Analytic(AnalyticOptions),
    MonteCarlo(McOptions),
}

/// Everything known about one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub config: Config,
    pub scheme: Scheme,
    pub widths: BeamWidths,
    pub footprints: Footprints,
    pub coverage: f64,
    pub power: PowerBreakdown,
    pub capacity: Option<CapacityEstimate>,
    /// Monte Carlo seed, if any.
    pub seed: Option<u64>,
}

impl Evaluation {
    pub fn efficiency(&self) -> Option<f64> {
        self.capacity.map(|c| power_efficiency(c.value, self.power.swarm_total))
    }

    /// Beams the scheme actually forms.
    pub fn beams(&self) -> u32 {
        self.scheme.beams(self.config.radio.n_beams)
    }

    /// RF chains the scheme actually uses.
    pub fn chains(&self) -> u32 {
        match self.scheme {
            Scheme::Abf => 1,
            Scheme::Hbf => self.config.radio.n_rf,
        }
    }

    pub fn csv_row(&self) -> String {
        let c = &self.config;
        let e = |v: f64| format!("{v:.16e}");
        let mut row = String::new();
        let _ = write!(
            row,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},",
            self.scheme,
            e(c.scenario.uav_altitude),
            c.antenna.n_x,
            c.antenna.n_y,
            self.chains(),
            self.beams(),
            c.radio.dac_bits,
            e(c.scenario.user_density),
            e(self.widths.theta_vb.to_degrees()),
            e(self.widths.theta_tb.to_degrees()),
            e(self.footprints.r_vb()),
            e(self.footprints.r_tb()),
            e(self.coverage),
            self.power.n_uav,
            e(self.power.comm_total),
            e(self.power.hover),
            e(self.power.swarm_total),
        );
        match self.capacity {
            Some(cap) => {
                let _ = write!(
                    row,
                    "{},{},{},{},",
                    e(cap.value),
                    cap.method.as_str(),
                    e(cap.ci_low),
                    e(cap.ci_high)
                );
            }
            None => row.push_str(",none,,,"),
        }
        if let Some(seed) = self.seed {
            let _ = write!(row, "{seed}");
        }
        row
    }
}

/// Geometry, power and (optionally) capacity of one configuration.
pub fn evaluate(cfg: &Config, scheme: Scheme, method: &CapacityMethod) -> Result<Evaluation> {
    cfg.validate()?;
    let widths = beam_widths(&cfg.antenna)?;
    let footprints = Footprints::new(cfg.scenario.uav_altitude, &widths)?;
    let coverage = coverage_area(scheme, cfg.radio.n_beams, &footprints);
    let power = swarm_power(scheme, &cfg.radio, &cfg.antenna, &cfg.scenario, &footprints);
    let (capacity, seed) = match method {
        CapacityMethod::Skip => (None, None),
        CapacityMethod::Analytic(opts) => (Some(ergodic_capacity(cfg, scheme, opts)?), None),
        CapacityMethod::MonteCarlo(opts) => (Some(mc_capacity(cfg, scheme, opts)?), Some(opts.seed)),
    };
    Ok(Evaluation {
        config: *cfg,
        scheme,
        widths,
        footprints,
        coverage,
        power,
        capacity,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKey {
    Altitude,
    AxisElements,
    RfChains,
    Beams,
    DacBits,
    UserDensity,
    Scheme,
}

impl SweepKey {
    pub fn parse(key: &str) -> Result<Self> {
        Ok(match key.trim() {
            "h" => SweepKey::Altitude,
            "n_axis" => SweepKey::AxisElements,
            "n_rf" => SweepKey::RfChains,
            "n_d" => SweepKey::Beams,
            "b_dac" => SweepKey::DacBits,
            "lambda_u" => SweepKey::UserDensity,
            "scheme" => SweepKey::Scheme,
            other => {
                return Err(Error::Sweep(format!(
                    "unknown sweep key `{other}` (expected h, n_axis, n_rf, n_d, b_dac, lambda_u or scheme)"
                )))
            }
        })
    }

    fn is_integer(self) -> bool {
        matches!(
            self,
            SweepKey::AxisElements | SweepKey::RfChains | SweepKey::Beams | SweepKey::DacBits
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepValue {
    Number(f64),
    Scheme(Scheme),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub key: SweepKey,
    pub values: Vec<SweepValue>,
}

/// Parses `key=start:step:stop` (inclusive) or `key=v1,v2,...`.
pub fn parse_axis(spec: &str) -> Result<SweepAxis> {
    let (key, values) = spec
        .split_once('=')
        .ok_or_else(|| Error::Sweep(format!("expected key=values, found `{spec}`")))?;
    let key = SweepKey::parse(key)?;
    let values = values.trim();
    let parsed = if key == SweepKey::Scheme {
        values
            .split(',')
            .map(|v| v.parse::<Scheme>().map(SweepValue::Scheme))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Sweep(e.to_string()))?
    } else if values.contains(':') {
        range_values(values)?.into_iter().map(SweepValue::Number).collect()
    } else {
        values
            .split(',')
            .map(|v| number(v).map(SweepValue::Number))
            .collect::<Result<Vec<_>>>()?
    };
    if parsed.is_empty() {
        return Err(Error::Sweep(format!("empty sweep range `{spec}`")));
    }
    if key.is_integer() {
        for v in &parsed {
            if let SweepValue::Number(x) = v {
                if x.fract() != 0.0 || *x < 0.0 {
                    return Err(Error::Sweep(format!(
                        "sweep key in `{spec}` needs non-negative integers, got {x}"
                    )));
                }
            }
        }
    }
    Ok(SweepAxis { key, values: parsed })
}

fn number(v: &str) -> Result<f64> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| Error::Sweep(format!("`{v}` is not a number")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Sweep(format!("`{v}` is not finite")))
    }
}

fn range_values(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, step, stop] = parts[..] else {
        return Err(Error::Sweep(format!("expected start:step:stop, found `{spec}`")));
    };
    let (start, step, stop) = (number(start)?, number(step)?, number(stop)?);
    if step == 0.0 || (stop - start) * step < 0.0 {
        return Err(Error::Sweep(format!("empty sweep range `{spec}`")));
    }
    // Index-based generation; a small slack keeps the inclusive end point
    // despite decimal steps such as 0.1.
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// One sweep point: the configuration and the scheme it runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub config: Config,
    pub scheme: Scheme,
}

/// Cartesian product of `axes` over `base`, first axis outermost.
pub fn expand(base: &Config, scheme: Scheme, axes: &[SweepAxis]) -> Vec<SweepPoint> {
    let mut points = vec![SweepPoint { config: *base, scheme }];
    for axis in axes {
        let mut next = Vec::with_capacity(points.len() * axis.values.len());
        for p in &points {
            for v in &axis.values {
                let mut q = *p;
                apply(&mut q, axis.key, *v);
                next.push(q);
            }
        }
        points = next;
    }
    points
}

fn apply(p: &mut SweepPoint, key: SweepKey, v: SweepValue) {
    let c = &mut p.config;
    match (key, v) {
        (SweepKey::Scheme, SweepValue::Scheme(s)) => p.scheme = s,
        (SweepKey::Altitude, SweepValue::Number(x)) => c.scenario.uav_altitude = x,
        (SweepKey::UserDensity, SweepValue::Number(x)) => c.scenario.user_density = x,
        (SweepKey::AxisElements, SweepValue::Number(x)) => {
            c.antenna.n_x = x as u32;
            c.antenna.n_y = x as u32;
        }
        (SweepKey::RfChains, SweepValue::Number(x)) => c.radio.n_rf = x as u32,
        (SweepKey::Beams, SweepValue::Number(x)) => c.radio.n_beams = x as u32,
        (SweepKey::DacBits, SweepValue::Number(x)) => c.radio.dac_bits = x as u32,
        _ => unreachable!("axis values are typed by parse_axis"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<Evaluation>,
    /// Points that could not be evaluated, with the reason.
    pub skipped: Vec<(SweepPoint, Error)>,
}

/// Evaluates every point concurrently; output keeps sweep order.
pub fn run_sweep(points: &[SweepPoint], method: &CapacityMethod) -> SweepOutput {
    let results: Vec<Result<Evaluation>> = points
        .par_iter()
        .map(|p| evaluate(&p.config, p.scheme, method))
        .collect();
    let mut out = SweepOutput {
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for (p, r) in points.iter().zip(results) {
        match r {
            Ok(e) => out.rows.push(e),
            Err(e) => out.skipped.push((*p, e)),
        }
    }
    out
}

/// Writes the header and one LF-terminated line per row.
pub fn write_csv<W: io::Write>(rows: &[Evaluation], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.csv_row())?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_has_fixed_columns() {
        assert_eq!(CSV_HEADER.split(',').count(), 22);
        assert!(CSV_HEADER.starts_with("scheme,h_m,"));
        assert!(CSV_HEADER.ends_with(",ci_high_bps,seed"));
    }

    #[test]
    fn axis_parsing() {
        let a = parse_axis("h=10:10:100").unwrap();
        assert_eq!(a.key, SweepKey::Altitude);
        assert_eq!(a.values.len(), 10);
        assert_eq!(a.values[9], SweepValue::Number(100.0));
        let a = parse_axis("lambda_u=0.005:0.005:0.05").unwrap();
        assert_eq!(a.values.len(), 10);
        let a = parse_axis("scheme=abf,hbf").unwrap();
        assert_eq!(
            a.values,
            vec![SweepValue::Scheme(Scheme::Abf), SweepValue::Scheme(Scheme::Hbf)]
        );
        let a = parse_axis("n_rf=3,5,7,9").unwrap();
        assert_eq!(a.values.len(), 4);

        assert!(matches!(parse_axis("h=10:10:5"), Err(Error::Sweep(_))));
        assert!(matches!(parse_axis("h=10:0:50"), Err(Error::Sweep(_))));
        assert!(matches!(parse_axis("mass=1:1:3"), Err(Error::Sweep(_))));
        assert!(matches!(parse_axis("n_axis=9.5"), Err(Error::Sweep(_))));
        assert!(matches!(parse_axis("scheme=dbf"), Err(Error::Sweep(_))));
        assert!(matches!(parse_axis("h"), Err(Error::Sweep(_))));
    }

    #[test]
    fn expansion_order_and_size() {
        let axes = [parse_axis("n_rf=3,5").unwrap(), parse_axis("b_dac=1:1:3").unwrap()];
        let pts = expand(&Config::default(), Scheme::Hbf, &axes);
        assert_eq!(pts.len(), 6);
        let pairs: Vec<(u32, u32)> = pts
            .iter()
            .map(|p| (p.config.radio.n_rf, p.config.radio.dac_bits))
            .collect();
        assert_eq!(pairs, vec![(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3)]);
    }

    #[test]
    fn power_sweep_rows_and_skips() {
        let mut axes = vec![parse_axis("n_axis=9:1:17").unwrap()];
        let pts = expand(&Config::default(), Scheme::Abf, &axes);
        let out = run_sweep(&pts, &CapacityMethod::Skip);
        assert_eq!(out.rows.len(), 9);
        assert!((out.rows[0].power.comm_total - 2.3107).abs() < 1e-3);
        assert!((out.rows[8].power.comm_total - 6.8035).abs() < 1e-3);

        axes.push(parse_axis("n_d=1,2").unwrap());
        let pts = expand(&Config::default(), Scheme::Hbf, &axes);
        let out = run_sweep(&pts, &CapacityMethod::Skip);
        // n_d = 2 exceeds the default single RF chain.
        assert_eq!(out.rows.len(), 9);
        assert_eq!(out.skipped.len(), 9);
    }

    #[test]
    fn csv_is_stable() {
        let pts = expand(&Config::default(), Scheme::Abf, &[parse_axis("h=10,20").unwrap()]);
        let render = || {
            let out = run_sweep(&pts, &CapacityMethod::Skip);
            let mut buf = Vec::new();
            write_csv(&out.rows, &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let text = render();
        assert_eq!(text, render());
        assert!(!text.contains('\r'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 22);
            assert!(line.contains(",none,"));
        }
        assert!(lines[1].starts_with("abf,1.0000000000000000e1,9,9,1,1,6,"));
    }
}
