//! Globally adaptive Gauss–Kronrod (7/15-point Gauss, 21-point Kronrod)
//! integration over finite intervals.
//!
//! The integrand is fallible so that nested integrals can propagate an
//! inner failure outward, and every call charges a shared [`EvalBudget`]
//! so a whole nest of integrals can be capped at a fixed evaluation count.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

/// Gauss weights, paired with the odd entries of `XGK`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Integrand evaluations per Kronrod rule application.
pub const EVALS_PER_RULE: u64 = 21;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of subintervals kept before giving up.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-4,
            abs_tol: 0.0,
            max_intervals: 500,
        }
    }
}

/// Shared cap on integrand evaluations. Thread-safe, so parallel outer
/// panels can draw from one budget.
#[derive(Debug)]
pub struct EvalBudget {
    limit: u64,
    used: AtomicU64,
}

impl EvalBudget {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn charge(&self, n: u64) -> bool {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        before.saturating_add(n) <= self.limit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError<E> {
    /// The integrand itself failed.
    Integrand(E),
    /// Subdivision limit reached before the error target was met.
    NotConverged {
        estimate: f64,
        abs_error: f64,
        intervals: usize,
    },
    BudgetExhausted {
        limit: u64,
    },
    NonFinite {
        x: f64,
    },
}

impl<E: fmt::Display> fmt::Display for QuadError<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::Integrand(e) => write!(f, "{e}"),
            QuadError::NotConverged {
                estimate,
                abs_error,
                intervals,
            } => write!(
                f,
                "no convergence after {intervals} subintervals (estimate {estimate:e}, error {abs_error:e})"
            ),
            QuadError::BudgetExhausted { limit } => {
                write!(f, "evaluation budget of {limit} exhausted")
            }
            QuadError::NonFinite { x } => write!(f, "integrand not finite at x = {x}"),
        }
    }
}

impl<E: fmt::Debug + fmt::Display> std::error::Error for QuadError<E> {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk21<E, F>(f: &mut F, a: f64, b: f64, budget: &EvalBudget) -> Result<Segment, QuadError<E>>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    if !budget.charge(EVALS_PER_RULE) {
        return Err(QuadError::BudgetExhausted { limit: budget.limit() });
    }
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64, QuadError<E>> {
        let y = f(x).map_err(QuadError::Integrand)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { x })
        }
    };

    let f_center = eval(center)?;
    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[10];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for (j, wg) in WG.iter().enumerate() {
        let k = 2 * j + 1;
        let dx = half * XGK[k];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[k] = f1;
        fv2[k] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK[k] * (f1 + f2);
        res_abs += WGK[k] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let k = 2 * j;
        let dx = half * XGK[k];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[k] = f1;
        fv2[k] = f2;
        res_kronrod += WGK[k] * (f1 + f2);
        res_abs += WGK[k] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for k in 0..10 {
        res_asc += WGK[k] * ((fv1[k] - mean).abs() + (fv2[k] - mean).abs());
    }

    let abs_half = half.abs();
    Ok(Segment {
        a,
        b,
        value: res_kronrod * half,
        error: rescale_error((res_kronrod - res_gauss) * half, res_abs * abs_half, res_asc * abs_half),
    })
}

/// Integrates `f` over `[a, b]`. Interior `breakpoints` (kinks or
/// discontinuities of `f`) seed the initial partition; points outside
/// `(a, b)` are ignored.
pub fn integrate<E, F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: &QuadOptions,
    budget: &EvalBudget,
) -> Result<QuadResult, QuadError<E>>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            intervals: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&p| p > lo && p < hi).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut segments = Vec::with_capacity(cuts.len() + 16);
    let mut left = lo;
    for right in cuts.into_iter().chain(std::iter::once(hi)) {
        segments.push(gk21(&mut f, left, right, budget)?);
        left = right;
    }

    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            return Ok(QuadResult {
                value: sign * value,
                abs_error: error,
                intervals: segments.len(),
            });
        }

        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        let resolvable = mid > seg.a && mid < seg.b;
        if segments.len() >= opts.max_intervals || !resolvable {
            return Err(QuadError::NotConverged {
                estimate: sign * value,
                abs_error: error,
                intervals: segments.len(),
            });
        }
        let left = gk21(&mut f, seg.a, mid, budget)?;
        let right = gk21(&mut f, mid, seg.b, budget)?;
        segments[worst] = left;
        segments.push(right);
    }
}

/// [`integrate`] for infallible integrands.
pub fn integrate_plain<F>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError<std::convert::Infallible>>
where
    F: FnMut(f64) -> f64,
{
    integrate(|x| Ok(f(x)), a, b, &[], opts, &EvalBudget::unlimited())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> QuadOptions {
        QuadOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_intervals: 1000,
        }
    }

    #[test]
    fn weights_sum_to_two() {
        let kronrod: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let gauss: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((kronrod - 2.0).abs() < 1e-15);
        assert!((gauss - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_rule_is_exact_for_high_degree_polynomials() {
        // 21-point Kronrod integrates degree 31 exactly.
        let budget = EvalBudget::unlimited();
        for deg in [0, 1, 5, 12, 20, 31] {
            let mut f = |x: f64| Ok::<_, ()>(x.powi(deg));
            let seg = gk21(&mut f, 0.0, 1.0, &budget).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((seg.value - exact).abs() < 1e-14, "degree {deg}");
        }
        // The embedded 10-point Gauss rule is exact to degree 19, so the
        // error estimate collapses to roundoff there.
        let mut f = |x: f64| Ok::<_, ()>(x.powi(19));
        let seg = gk21(&mut f, -1.0, 2.0, &budget).unwrap();
        assert!(seg.error < 1e-12 * seg.value.abs());
    }

    #[test]
    fn smooth_and_peaked_integrands() {
        let r = integrate_plain(f64::sin, 0.0, std::f64::consts::PI, &tight()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        let r = integrate_plain(|x| (-x).exp(), 0.0, 50.0, &tight()).unwrap();
        assert!((r.value - (1.0 - (-50f64).exp())).abs() < 1e-12);
        // Narrow Gaussian bump: needs real subdivision.
        let r = integrate_plain(|x| (-1e4 * (x - 0.3).powi(2)).exp(), 0.0, 1.0, &tight()).unwrap();
        let exact = (std::f64::consts::PI / 1e4).sqrt();
        assert!((r.value - exact).abs() / exact < 1e-10);
        assert!(r.intervals > 1);
        // Integrable endpoint singularity.
        let r = integrate_plain(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &tight()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let fwd = integrate_plain(|x| x * x, 0.0, 3.0, &tight()).unwrap();
        let back = integrate_plain(|x| x * x, 3.0, 0.0, &tight()).unwrap();
        assert_eq!(fwd.value, -back.value);
        assert!((fwd.value - 9.0).abs() < 1e-12);
        assert_eq!(integrate_plain(|x| x, 2.0, 2.0, &tight()).unwrap().value, 0.0);
    }

    #[test]
    fn breakpoints_resolve_kinks_in_one_pass() {
        let f = |x: f64| Ok::<_, ()>((x - 0.37).abs());
        let exact = 0.5 * (0.37f64.powi(2) + 0.63f64.powi(2));
        let budget = EvalBudget::unlimited();
        let r = integrate(f, 0.0, 1.0, &[0.37, 5.0, -1.0], &tight(), &budget).unwrap();
        assert!((r.value - exact).abs() < 1e-14);
        assert_eq!(r.intervals, 2);
        assert_eq!(budget.used(), 2 * EVALS_PER_RULE);
    }

    #[test]
    fn failures_are_reported() {
        let budget = EvalBudget::new(100);
        let err = integrate(|x: f64| Ok::<_, ()>((1.0 / x).sin()), 1e-6, 1.0, &[], &tight(), &budget).unwrap_err();
        assert_eq!(err, QuadError::BudgetExhausted { limit: 100 });

        let opts = QuadOptions {
            max_intervals: 4,
            ..tight()
        };
        let err = integrate(
            |x: f64| Ok::<_, ()>((1.0 / x).sin()),
            1e-6,
            1.0,
            &[],
            &opts,
            &EvalBudget::unlimited(),
        )
        .unwrap_err();
        assert!(matches!(err, QuadError::NotConverged { intervals: 4, .. }));

        let err = integrate(
            |x: f64| if x > 0.5 { Err("inner") } else { Ok(x) },
            0.0,
            1.0,
            &[],
            &tight(),
            &EvalBudget::unlimited(),
        )
        .unwrap_err();
        assert_eq!(err, QuadError::Integrand("inner"));

        let err = integrate_plain(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &tight()).unwrap_err();
        assert!(matches!(err, QuadError::NonFinite { .. }));
    }

    #[test]
    fn nested_integral_of_separable_function() {
        // ∫₀¹∫₀² x·y² dy dx = 1/2 · 8/3
        let budget = EvalBudget::unlimited();
        let opts = tight();
        let outer = integrate(
            |x: f64| integrate(|y: f64| Ok::<_, ()>(x * y * y), 0.0, 2.0, &[], &opts, &budget).map(|r| r.value),
            0.0,
            1.0,
            &[],
            &opts,
            &budget,
        )
        .unwrap();
        assert!((outer.value - 4.0 / 3.0).abs() < 1e-13);
    }
}
