use skyplan_core::capacity::AnalyticOptions;
use skyplan_core::montecarlo::McOptions;
use skyplan_core::sweep::{evaluate, expand, parse_axis, run_sweep, write_csv, CapacityMethod, CSV_HEADER};
use skyplan_core::{Config, Error, Scheme};

fn csv(rows: &[skyplan_core::sweep::Evaluation]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn array_size_sweep_reproduces_comm_power_curve() {
    let axes = [parse_axis("n_axis=9:1:17").unwrap()];
    let points = expand(&Config::default(), Scheme::Abf, &axes);
    let out = run_sweep(&points, &CapacityMethod::Skip);
    assert!(out.skipped.is_empty());
    assert_eq!(out.rows.len(), 9);
    let comm: Vec<f64> = out.rows.iter().map(|e| e.power.comm_total).collect();
    assert!(comm.windows(2).all(|w| w[0] < w[1]));
    assert!((comm[0] - 2.3107).abs() < 1e-3);
    assert!((comm[8] - 6.8035).abs() < 1e-3);
}

#[test]
fn dac_sweep_ratio_table_is_flat() {
    let axes = [
        parse_axis("n_rf=3,5,7,9").unwrap(),
        parse_axis("n_d=1,3").unwrap(),
        parse_axis("b_dac=1:1:10").unwrap(),
    ];
    let hbf = run_sweep(&expand(&Config::default(), Scheme::Hbf, &axes), &CapacityMethod::Skip);
    assert_eq!(hbf.rows.len(), 80);
    for block in hbf.rows.chunks(10) {
        let ratios: Vec<f64> = block
            .iter()
            .map(|e| {
                let mut abf_cfg = e.config;
                abf_cfg.radio.n_rf = 1;
                abf_cfg.radio.n_beams = 1;
                let abf = evaluate(&abf_cfg, Scheme::Abf, &CapacityMethod::Skip).unwrap();
                abf.power.swarm_total / e.power.swarm_total
            })
            .collect();
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(0.0, f64::max);
        assert!((hi - lo) / lo < 0.02);
    }
}

#[test]
fn altitude_sweep_is_bell_shaped() {
    let mut base = Config::default();
    base.radio.n_rf = 2;
    base.radio.n_beams = 2;
    let axes = [parse_axis("h=10:10:100").unwrap()];
    let out = run_sweep(
        &expand(&base, Scheme::Hbf, &axes),
        &CapacityMethod::Analytic(AnalyticOptions::default()),
    );
    let tau: Vec<f64> = out.rows.iter().map(|e| e.capacity.unwrap().value).collect();
    assert_eq!(tau.len(), 10);
    let peak = tau.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!((1..=3).contains(&peak), "{tau:?}");
    assert!(tau[0] < tau[peak] && tau[9] < tau[peak]);
}

#[test]
fn csv_is_stable_and_well_formed() {
    let axes = [parse_axis("scheme=abf,hbf").unwrap(), parse_axis("h=20,60").unwrap()];
    let mut base = Config::default();
    base.radio.n_rf = 3;
    base.radio.n_beams = 3;
    let points = expand(&base, Scheme::Abf, &axes);
    let method = CapacityMethod::MonteCarlo(McOptions {
        realizations: 500,
        seed: 4,
    });
    let a = csv(&run_sweep(&points, &method).rows);
    let b = csv(&run_sweep(&points, &method).rows);
    assert_eq!(a, b);
    assert!(!a.contains('\r'));
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 22);
        assert_eq!(f[18], "mc");
        assert_eq!(f[21], "4");
        let tau: f64 = f[17].parse().unwrap();
        let (lo, hi): (f64, f64) = (f[19].parse().unwrap(), f[20].parse().unwrap());
        assert!(lo <= tau && tau <= hi);
    }
    assert!(a
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("abf,2.0000000000000000e1,9,9,1,1,"));
    assert!(a
        .lines()
        .nth(3)
        .unwrap()
        .starts_with("hbf,2.0000000000000000e1,9,9,3,3,"));
}

#[test]
fn infeasible_points_are_skipped_not_fatal() {
    let axes = [parse_axis("n_axis=1,9").unwrap()];
    let out = run_sweep(&expand(&Config::default(), Scheme::Abf, &axes), &CapacityMethod::Skip);
    assert_eq!(out.rows.len(), 1);
    assert_eq!(out.skipped.len(), 1);
    assert!(matches!(
        out.skipped[0].1,
        Error::Invariant { .. } | Error::HpbwDomain { .. }
    ));
}
