//! Interaction-time optimization in the two readout regimes, closed-form
//! asymptotics for the optima, and the repetition count where the privacy
//! ratio crosses one.
//!
//! All times in this module are expressed in units of T2, so the
//! decoherence exponent at scaled time tau is tau (white) or tau^2
//! (low frequency), and fast-regime time budgets are N = T / T2.

use std::f64::consts::{E, FRAC_1_SQRT_2};

use crate::error::{Error, Result};
use crate::metrology::{client_uncertainty_upper, uncertainty_ratio, ReadoutRegime};
use crate::noise::NoiseKind;
use crate::numerics::{
    lambert_w0, numeric_derivative, solve_bracketed_root, AsymptoticRegime, ToleranceSpec,
};
use crate::states::PreparationErrorBudget;

/// What the interaction time is tuned for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizationTarget {
    /// Minimize the client's worst-case uncertainty.
    MinimizeClientUncertainty,
    /// Minimize the privacy ratio (fast readout only; in the slow regime
    /// the ratio has no interior optimum in t).
    MinimizeRatio,
}

/// Which repetition-accounting family an optimization ran in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeFamily {
    Slow,
    Fast,
}

/// Outcome of a time optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub t_opt_over_t2: f64,
    pub objective_at_opt: f64,
    pub kind: NoiseKind,
    pub target: OptimizationTarget,
    pub regime: ReadoutRegime,
}

impl OptimizationResult {
    /// Dimensionless stationarity residual |f'(t)| * t / |f(t)| of a given
    /// objective at the stored optimum.
    pub fn relative_stationarity<F: Fn(f64) -> f64>(&self, objective: F) -> f64 {
        let d = numeric_derivative(&objective, self.t_opt_over_t2, None);
        (d * self.t_opt_over_t2 / self.objective_at_opt).abs()
    }
}

fn exponent_at(kind: NoiseKind, tau: f64) -> f64 {
    match kind {
        NoiseKind::White => tau,
        NoiseKind::LowFrequency => tau * tau,
    }
}

fn eps_product(budget: PreparationErrorBudget) -> f64 {
    let e = budget.epsilon();
    e * (1.0 - e)
}

/// Slow-readout interaction time minimizing the client's worst-case
/// uncertainty, in units of T2:
/// 1 + W(8 (M-1) eps(1-eps) e^-2) / 2 for white noise and
/// sqrt((1 + W(4 (M-1) eps(1-eps) e^-1)) / 2) for low-frequency noise.
pub fn optimal_time_slow(m: f64, budget: PreparationErrorBudget, kind: NoiseKind) -> f64 {
    assert!(m >= 1.0, "repetition count must be at least 1");
    let ep = eps_product(budget);
    match kind {
        NoiseKind::White => {
            let w = lambert_w0(8.0 * (m - 1.0) * ep * (-2.0f64).exp())
                .expect("W converges for nonnegative arguments");
            1.0 + 0.5 * w
        }
        NoiseKind::LowFrequency => {
            let w = lambert_w0(4.0 * (m - 1.0) * ep * (-1.0f64).exp())
                .expect("W converges for nonnegative arguments");
            (0.5 * (1.0 + w)).sqrt()
        }
    }
}

/// Limiting forms of [`optimal_time_slow`]: constants 1 and 1/sqrt(2) for a
/// small product (M-1) eps(1-eps), nested-logarithm forms for a large one.
pub fn optimal_time_slow_asymptotic(
    m: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    regime: AsymptoticRegime,
) -> Result<f64> {
    assert!(m >= 1.0, "repetition count must be at least 1");
    let ep = eps_product(budget);
    match (regime, kind) {
        (AsymptoticRegime::Small, NoiseKind::White) => Ok(1.0),
        (AsymptoticRegime::Small, NoiseKind::LowFrequency) => Ok(FRAC_1_SQRT_2),
        (AsymptoticRegime::Large, NoiseKind::White) => {
            let a = 8.0 * (m - 1.0) * ep;
            let inner = (a * (-2.0f64).exp()).ln();
            if !(inner > 0.0) {
                return Err(Error::domain(
                    "nested logarithm undefined: need 8 (M-1) eps(1-eps) > e^2",
                ));
            }
            Ok(0.5 * (a / inner).ln())
        }
        (AsymptoticRegime::Large, NoiseKind::LowFrequency) => {
            let b = 4.0 * (m - 1.0) * ep;
            let inner = (b * (-1.0f64).exp()).ln();
            if !(inner > 0.0) {
                return Err(Error::domain(
                    "nested logarithm undefined: need 4 (M-1) eps(1-eps) > e",
                ));
            }
            Ok((0.5 * (b / inner).ln()).sqrt())
        }
    }
}

/// Client's worst-case uncertainty at the slow-readout optimal time,
/// in units of 1/T2.
pub fn optimized_uncertainty_slow(
    m: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> f64 {
    let t = optimal_time_slow(m, budget, kind);
    client_uncertainty_upper(t, m, budget, exponent_at(kind, t))
}

/// Limiting forms of [`optimized_uncertainty_slow`].
pub fn optimized_uncertainty_slow_asymptotic(
    m: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    regime: AsymptoticRegime,
) -> Result<f64> {
    assert!(m >= 1.0, "repetition count must be at least 1");
    let ep = eps_product(budget);
    match (regime, kind) {
        (AsymptoticRegime::Small, NoiseKind::White) => Ok(E / m.sqrt()),
        (AsymptoticRegime::Small, NoiseKind::LowFrequency) => Ok((2.0 * E / m).sqrt()),
        (AsymptoticRegime::Large, NoiseKind::White) => {
            let a = 8.0 * (m - 1.0) * ep;
            let inner = (a * (-2.0f64).exp()).ln();
            if !(inner > 0.0) {
                return Err(Error::domain(
                    "nested logarithm undefined: need 8 (M-1) eps(1-eps) > e^2",
                ));
            }
            Ok(4.0 * ep.sqrt() / (a / inner).ln())
        }
        (AsymptoticRegime::Large, NoiseKind::LowFrequency) => {
            let b = 4.0 * (m - 1.0) * ep;
            let inner = (b * (-1.0f64).exp()).ln();
            if !(inner > 0.0) {
                return Err(Error::domain(
                    "nested logarithm undefined: need 4 (M-1) eps(1-eps) > e",
                ));
            }
            Ok(2.0 * (2.0 * ep / (b / inner).ln()).sqrt())
        }
    }
}

/// Privacy ratio evaluated at the slow-readout optimal time.
pub fn optimized_ratio_slow(m: f64, budget: PreparationErrorBudget, kind: NoiseKind) -> f64 {
    let t = optimal_time_slow(m, budget, kind);
    uncertainty_ratio(t, m, budget, exponent_at(kind, t))
}

/// Limiting forms of [`optimized_ratio_slow`]. The large form
/// 4 eps(1-eps) sqrt(M) is shared by both noise kinds.
pub fn optimized_ratio_slow_asymptotic(
    m: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    regime: AsymptoticRegime,
) -> Result<f64> {
    assert!(m >= 1.0, "repetition count must be at least 1");
    let ep = eps_product(budget);
    match (regime, kind) {
        (AsymptoticRegime::Small, NoiseKind::White) => Ok(2.0 * E * ep.sqrt()),
        (AsymptoticRegime::Small, NoiseKind::LowFrequency) => Ok(2.0 * (E * ep).sqrt()),
        (AsymptoticRegime::Large, _) => Ok(4.0 * ep * m.sqrt()),
    }
}

/// Uncertainty of a fast-readout run of total budget N = T / T2 probed at
/// interaction time t (both in units of T2): the worst-case client bound
/// with M = N / t repetitions.
///
/// Errors when t does not leave room for a single repetition (t >= N).
pub fn fast_uncertainty(
    t: f64,
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> Result<f64> {
    fast_domain_check(t, n)?;
    Ok(fast_uncertainty_raw(t, n, budget, kind))
}

/// Privacy ratio of a fast-readout run at interaction time t.
pub fn fast_ratio(
    t: f64,
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> Result<f64> {
    fast_domain_check(t, n)?;
    Ok(fast_ratio_raw(t, n, budget, kind))
}

fn fast_domain_check(t: f64, n: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "interaction time must be positive and finite, got {t}"
        )));
    }
    if !(n > 0.0) || t >= n {
        return Err(Error::domain(format!(
            "time budget must exceed the interaction time, got t = {t}, N = {n}"
        )));
    }
    Ok(())
}

/// The fast-uncertainty surface without the t < N gate, for plotting whole
/// grids. The square root argument is clamped at zero; it can round
/// slightly negative where N / t drops below one.
pub(crate) fn fast_uncertainty_raw(
    t: f64,
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> f64 {
    let g = exponent_at(kind, t);
    let ep = eps_product(budget);
    let inner = (1.0 + 4.0 * (n / t - 1.0) * ep * (-2.0 * g).exp()).max(0.0);
    (g.exp() / (t * n).sqrt()) * inner.sqrt()
}

pub(crate) fn fast_ratio_raw(
    t: f64,
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> f64 {
    let g = exponent_at(kind, t);
    let ep = eps_product(budget);
    let inner = (1.0 + 4.0 * (n / t - 1.0) * ep * (-2.0 * g).exp()).max(0.0);
    2.0 * g.exp() * (ep * inner).sqrt()
}

/// Fast-readout interaction time minimizing [`fast_uncertainty`] in t.
///
/// Solves the stationarity condition
/// (2 tau - 1) e^(2 tau) = 4 eps(1-eps) (2 N / tau - 1)        (white)
/// (4 tau^2 - 1) e^(2 tau^2) = 4 eps(1-eps) (2 N / tau - 1)    (low)
/// on a bracket whose low end sits below every root and whose high end,
/// 1 + ln(1 + 8 N eps) or its square-root analogue, sits above. The
/// returned point is checked to be a minimum: the objective's derivative
/// changes sign from negative to positive across it.
pub fn optimal_time_fast_uncertainty(
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> Result<f64> {
    assert!(n > 0.0, "time budget must be positive");
    let ep = eps_product(budget);
    if ep == 0.0 {
        // stationarity degenerates to (2 tau - 1) e^(2 tau) = 0 or
        // (4 tau^2 - 1) e^(2 tau^2) = 0, both with the exact root 1/2
        return Ok(0.5);
    }
    let f = move |tau: f64| -> f64 {
        let lhs = match kind {
            NoiseKind::White => (2.0 * tau - 1.0) * (2.0 * tau).exp(),
            NoiseKind::LowFrequency => {
                (4.0 * tau * tau - 1.0) * (2.0 * tau * tau).exp()
            }
        };
        lhs - 4.0 * ep * (2.0 * n / tau - 1.0)
    };
    let stretch = (1.0 + 8.0 * n * budget.epsilon()).ln();
    let hi = match kind {
        NoiseKind::White => 1.0 + stretch,
        NoiseKind::LowFrequency => 1.0 + stretch.sqrt(),
    };
    let root = solve_bracketed_root(&f, 0.4, hi, &ToleranceSpec::default())?;
    // f carries the sign of the objective's t derivative, so a negative to
    // positive crossing certifies a minimum
    let h = 1e-6 * root.max(1.0);
    if !(f(root - h) <= 0.0 && f(root + h) >= 0.0) {
        return Err(Error::domain(
            "stationary point is not a minimum of the fast uncertainty",
        ));
    }
    Ok(root)
}

/// Fast-readout interaction time minimizing [`fast_ratio`] in t:
/// W(sqrt(2 N eps(1-eps))) for white noise and
/// sqrt(3 W((4/3) (N eps(1-eps))^(2/3))) / 2 for low-frequency noise.
pub fn optimal_time_fast_ratio(
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> f64 {
    assert!(n > 0.0, "time budget must be positive");
    let ep = eps_product(budget);
    assert!(
        ep > 0.0,
        "ratio optimization needs a nonzero preparation error budget"
    );
    match kind {
        NoiseKind::White => lambert_w0((2.0 * n * ep).sqrt())
            .expect("W converges for nonnegative arguments"),
        NoiseKind::LowFrequency => {
            let w = lambert_w0(4.0 / 3.0 * (n * ep).powf(2.0 / 3.0))
                .expect("W converges for nonnegative arguments");
            (3.0 * w).sqrt() / 2.0
        }
    }
}

/// Limiting forms of [`optimal_time_fast_ratio`].
pub fn optimal_time_fast_ratio_asymptotic(
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    regime: AsymptoticRegime,
) -> Result<f64> {
    assert!(n > 0.0, "time budget must be positive");
    let ep = eps_product(budget);
    match (regime, kind) {
        (AsymptoticRegime::Small, NoiseKind::White) => Ok((2.0 * n * ep).sqrt()),
        (AsymptoticRegime::Small, NoiseKind::LowFrequency) => Ok((n * ep).cbrt()),
        (AsymptoticRegime::Large, NoiseKind::White) => {
            let s = (2.0 * n * ep).sqrt();
            nested_log(s)
        }
        (AsymptoticRegime::Large, NoiseKind::LowFrequency) => {
            let u = 4.0 / 3.0 * (n * ep).powf(2.0 / 3.0);
            Ok(0.5 * (3.0 * nested_log(u)?).sqrt())
        }
    }
}

/// ln(x / ln x), the large-argument stand-in for W(x); needs x > 1.
fn nested_log(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::domain(format!(
            "nested logarithm undefined: need an argument above 1, got {x}"
        )));
    }
    Ok((x / x.ln()).ln())
}

/// Limiting forms of the fast uncertainty evaluated at the ratio-optimal
/// time.
pub fn fast_uncertainty_at_ratio_optimum_asymptotic(
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    regime: AsymptoticRegime,
) -> Result<f64> {
    assert!(n > 0.0, "time budget must be positive");
    let ep = eps_product(budget);
    match (regime, kind) {
        (AsymptoticRegime::Small, NoiseKind::White) => {
            Ok(1.0 / (n.sqrt() * (2.0 * n * ep).powf(0.25)))
        }
        (AsymptoticRegime::Small, NoiseKind::LowFrequency) => {
            Ok(1.0 / (n.sqrt() * (n * ep).powf(1.0 / 6.0)))
        }
        (AsymptoticRegime::Large, NoiseKind::White) => {
            let s = (2.0 * n * ep).sqrt();
            Ok(2.0 * ep.sqrt() / nested_log(s)?)
        }
        (AsymptoticRegime::Large, NoiseKind::LowFrequency) => {
            let u = 4.0 / 3.0 * (n * ep).powf(2.0 / 3.0);
            Ok(4.0 * (ep / (3.0 * nested_log(u)?)).sqrt())
        }
    }
}

/// Limiting forms of the fast privacy ratio evaluated at the ratio-optimal
/// time. The small-product form 2 sqrt(eps(1-eps)) is shared by both kinds.
pub fn fast_ratio_at_ratio_optimum_asymptotic(
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    regime: AsymptoticRegime,
) -> Result<f64> {
    assert!(n > 0.0, "time budget must be positive");
    let ep = eps_product(budget);
    match (regime, kind) {
        (AsymptoticRegime::Small, _) => Ok(2.0 * ep.sqrt()),
        (AsymptoticRegime::Large, NoiseKind::White) => {
            let s = (2.0 * n * ep).sqrt();
            Ok(4.0 * ep * (n / nested_log(s)?).sqrt())
        }
        (AsymptoticRegime::Large, NoiseKind::LowFrequency) => {
            // dominant ratio term 4 eps(1-eps) sqrt(n / t) evaluated at the
            // limiting ratio-optimal time sqrt(3 ln(u / ln u)) / 2
            let u = 4.0 / 3.0 * (n * ep).powf(2.0 / 3.0);
            Ok(4.0 * ep * (2.0 * n / (3.0 * nested_log(u)?).sqrt()).sqrt())
        }
    }
}

/// Slow-readout optimization summary for an integer repetition count.
pub fn optimize_slow(
    m: u64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
) -> OptimizationResult {
    assert!(m >= 1, "repetition count must be at least 1");
    let mf = m as f64;
    let t = optimal_time_slow(mf, budget, kind);
    OptimizationResult {
        t_opt_over_t2: t,
        objective_at_opt: client_uncertainty_upper(t, mf, budget, exponent_at(kind, t)),
        kind,
        target: OptimizationTarget::MinimizeClientUncertainty,
        regime: ReadoutRegime::SlowReadout { repetitions: m },
    }
}

/// Fast-readout optimization summary for either target.
pub fn optimize_fast(
    n: f64,
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    target: OptimizationTarget,
) -> Result<OptimizationResult> {
    let (t, objective) = match target {
        OptimizationTarget::MinimizeClientUncertainty => {
            let t = optimal_time_fast_uncertainty(n, budget, kind)?;
            (t, fast_uncertainty(t, n, budget, kind)?)
        }
        OptimizationTarget::MinimizeRatio => {
            let t = optimal_time_fast_ratio(n, budget, kind);
            (t, fast_ratio(t, n, budget, kind)?)
        }
    };
    Ok(OptimizationResult {
        t_opt_over_t2: t,
        objective_at_opt: objective,
        kind,
        target,
        regime: ReadoutRegime::FastReadout { total_time: n },
    })
}

/// Smallest repetition count (or time budget, for the fast family) at which
/// the privacy ratio at the optimal interaction time reaches one.
///
/// Returns 1 when the ratio already starts at or above one, +infinity when
/// no crossing occurs below 10^15, and otherwise locates the crossing by
/// bisection in log M down to a 1 percent resolution in M. The slow family
/// only supports the uncertainty target; its ratio has no interior optimum
/// in t to track.
pub fn crossing_repetition(
    budget: PreparationErrorBudget,
    kind: NoiseKind,
    family: RegimeFamily,
    target: OptimizationTarget,
) -> Result<f64> {
    if family == RegimeFamily::Slow && target == OptimizationTarget::MinimizeRatio {
        return Err(Error::domain(
            "the slow-regime ratio has no interior time optimum; use the uncertainty target",
        ));
    }
    if eps_product(budget) == 0.0 {
        // a perfect preparation leaks nothing and the ratio is identically 0
        return Ok(f64::INFINITY);
    }

    let ratio_at = |log_m: f64| -> Result<f64> {
        let m = 10f64.powf(log_m);
        match family {
            RegimeFamily::Slow => Ok(optimized_ratio_slow(m, budget, kind)),
            RegimeFamily::Fast => {
                let t = match target {
                    OptimizationTarget::MinimizeClientUncertainty => {
                        optimal_time_fast_uncertainty(m, budget, kind)?
                    }
                    OptimizationTarget::MinimizeRatio => optimal_time_fast_ratio(m, budget, kind),
                };
                fast_ratio(t, m, budget, kind)
            }
        }
    };

    if ratio_at(0.0)? >= 1.0 {
        return Ok(1.0);
    }
    let mut lo = 0.0f64;
    let mut hi = f64::NAN;
    let mut bracketed = false;
    for k in 1..=15 {
        let log_m = k as f64;
        if ratio_at(log_m)? >= 1.0 {
            hi = log_m;
            bracketed = true;
            break;
        }
        lo = log_m;
    }
    if !bracketed {
        return Ok(f64::INFINITY);
    }
    let resolution = 1.01f64.log10();
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if ratio_at(mid)? >= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(10f64.powf(0.5 * (lo + hi)))
}
