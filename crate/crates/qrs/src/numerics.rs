//! Scalar numerical kernels used throughout the crate: the principal branch
//! of the Lambert W function, a safeguarded bracketed root finder, and a
//! central-difference derivative.

use crate::error::{Error, Result};

/// Convergence controls for the iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iters: usize,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iters: 100,
        }
    }
}

impl ToleranceSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iters: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) || !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::domain(format!(
                "tolerances must be positive and finite, got abs_tol={abs_tol}, rel_tol={rel_tol}"
            )));
        }
        if max_iters == 0 {
            return Err(Error::domain("max_iters must be at least 1"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_iters,
        })
    }
}

/// Selects which end of an asymptotic expansion to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticRegime {
    /// Expansion argument far below one.
    Small,
    /// Expansion argument far above one.
    Large,
}

/// Principal branch W0 of w * exp(w) = x, defined for x >= -1/e.
///
/// Halley iteration, seeded from the branch-point series near x = -1/e,
/// from x itself for small x, and from ln(x) - ln(ln(x)) for large x.
/// The result w satisfies |w * exp(w) - x| <= 1e-12 * max(1, |x|) and,
/// for this branch, w >= -1.
pub fn lambert_w0(x: f64) -> Result<f64> {
    use std::f64::consts::E;

    if !x.is_finite() {
        return Err(Error::domain(format!("lambert_w0 needs a finite argument, got {x}")));
    }
    let branch_point = -1.0 / E;
    if x < branch_point {
        return Err(Error::domain(format!(
            "lambert_w0 is real only for x >= -1/e, got {x}"
        )));
    }

    let mut w = if x < -0.25 {
        // series around the branch point in p = sqrt(2 (1 + e x))
        let p = (2.0 * (1.0 + E * x)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    } else if x <= 1.0 {
        x
    } else if x <= E {
        x.ln_1p()
    } else {
        x.ln() - x.ln().ln()
    };

    let tol = ToleranceSpec::default();
    for _ in 0..tol.max_iters {
        let ew = w.exp();
        let r = w * ew - x;
        if r.abs() <= tol.abs_tol * x.abs().max(1.0) {
            return Ok(w.max(-1.0));
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * r / (2.0 * wp1);
        w -= r / denom;
    }
    Err(Error::Convergence { iters: tol.max_iters })
}

/// Asymptotic stand-ins for [`lambert_w0`]: W(x) ~ x as x -> 0 and
/// W(x) ~ ln(x / ln x) as x -> infinity.
///
/// The large form needs x > e so that the nested logarithm is defined
/// and positive; smaller arguments are a domain error.
pub fn lambert_w0_asymptotic(x: f64, regime: AsymptoticRegime) -> Result<f64> {
    use std::f64::consts::E;
    match regime {
        AsymptoticRegime::Small => Ok(x),
        AsymptoticRegime::Large => {
            if !(x > E) {
                return Err(Error::domain(format!(
                    "large-argument form of W needs x > e, got {x}"
                )));
            }
            Ok((x / x.ln()).ln())
        }
    }
}

/// Root of f on [lo, hi], where f(lo) and f(hi) must differ in sign.
///
/// Secant steps across the current bracket, with a forced bisection whenever
/// the previous step failed to halve the bracket, so the width is guaranteed
/// to halve at least every second iteration. Stops when |f(r)| <= abs_tol or
/// the bracket width drops below rel_tol * |r|.
pub fn solve_bracketed_root<F>(f: F, lo: f64, hi: f64, tol: &ToleranceSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi });
    }

    let mut bisect_next = false;
    for _ in 0..tol.max_iters {
        let width = b - a;
        let mid = a + 0.5 * width;
        if mid <= a || mid >= b {
            // bracket is no longer resolvable in f64
            return Ok(mid.clamp(a, b));
        }
        let mut c = if bisect_next {
            mid
        } else {
            b - fb * width / (fb - fa)
        };
        if !c.is_finite() || c <= a || c >= b || c == mid {
            c = mid;
        }
        let fc = f(c);
        if fc == 0.0 || fc.abs() <= tol.abs_tol {
            return Ok(c);
        }
        if fa.signum() == fc.signum() {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
        let new_width = b - a;
        if new_width <= tol.rel_tol * c.abs() {
            return Ok(c);
        }
        bisect_next = new_width > 0.5 * width;
    }
    Err(Error::Convergence { iters: tol.max_iters })
}

/// Central difference (f(x+h) - f(x-h)) / 2h.
///
/// With `step` unset, h = 1e-6 * max(1, |x|).
pub fn numeric_derivative<F>(f: F, x: f64, step: Option<f64>) -> f64
where
    F: Fn(f64) -> f64,
{
    let h = step.unwrap_or_else(|| 1e-6 * x.abs().max(1.0));
    (f(x + h) - f(x - h)) / (2.0 * h)
}
