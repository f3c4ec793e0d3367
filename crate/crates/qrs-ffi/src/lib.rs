//! C interface to the qrs error-analysis library.
//!
//! Every computational entry point returns a [`QrsStatus`] and writes its
//! result through an out pointer, so callers can distinguish domain errors
//! from numerical failures without unwinding across the boundary. Random
//! streams are held behind an opaque handle created with
//! [`qrs_rng_stream_new`] and released with [`qrs_rng_stream_free`].

use qrs::metrology::{client_uncertainty_upper, eve_uncertainty_lower, uncertainty_ratio};
use qrs::noise::{DephasingModel, NoiseKind};
use qrs::numerics::lambert_w0;
use qrs::optimize::{
    crossing_repetition, fast_ratio, fast_uncertainty, optimal_time_fast_ratio,
    optimal_time_fast_uncertainty, optimal_time_slow, optimized_ratio_slow,
    optimized_uncertainty_slow, OptimizationTarget, RegimeFamily,
};
use qrs::simulate::{required_registers, RngStream, SamplingTestParams};
use qrs::states::PreparationErrorBudget;
use qrs::Error;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrsStatus {
    Ok = 0,
    NullPointer = 1,
    DomainError = 2,
    BracketError = 3,
    ConvergenceError = 4,
    DegenerateState = 5,
    IoError = 6,
}

/// Dephasing spectrum selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrsNoiseKind {
    White = 0,
    LowFrequency = 1,
}

/// Readout accounting family: fixed repetition count or fixed time budget.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrsRegimeFamily {
    Slow = 0,
    Fast = 1,
}

/// Quantity minimized over the interaction time.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrsOptimizationTarget {
    Uncertainty = 0,
    Ratio = 1,
}

/// Opaque deterministic random stream.
pub struct QrsRngStream(RngStream);

impl From<QrsNoiseKind> for NoiseKind {
    fn from(kind: QrsNoiseKind) -> Self {
        match kind {
            QrsNoiseKind::White => NoiseKind::White,
            QrsNoiseKind::LowFrequency => NoiseKind::LowFrequency,
        }
    }
}

impl From<QrsRegimeFamily> for RegimeFamily {
    fn from(family: QrsRegimeFamily) -> Self {
        match family {
            QrsRegimeFamily::Slow => RegimeFamily::Slow,
            QrsRegimeFamily::Fast => RegimeFamily::Fast,
        }
    }
}

impl From<QrsOptimizationTarget> for OptimizationTarget {
    fn from(target: QrsOptimizationTarget) -> Self {
        match target {
            QrsOptimizationTarget::Uncertainty => OptimizationTarget::MinimizeClientUncertainty,
            QrsOptimizationTarget::Ratio => OptimizationTarget::MinimizeRatio,
        }
    }
}

fn status_of(err: &Error) -> QrsStatus {
    match err {
        Error::Domain(_) => QrsStatus::DomainError,
        Error::Bracket { .. } => QrsStatus::BracketError,
        Error::Convergence { .. } => QrsStatus::ConvergenceError,
        Error::DegenerateState => QrsStatus::DegenerateState,
        Error::Io(_) => QrsStatus::IoError,
    }
}

/// Writes a computation's value through `out`, translating errors to codes.
unsafe fn store(out: *mut f64, result: qrs::Result<f64>) -> QrsStatus {
    if out.is_null() {
        return QrsStatus::NullPointer;
    }
    match result {
        Ok(v) => {
            unsafe { *out = v };
            QrsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

fn check_time(t: f64) -> qrs::Result<f64> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(Error::Domain(format!(
            "interaction time must be positive and finite, got {t}"
        )))
    }
}

fn check_repetitions(m: f64) -> qrs::Result<f64> {
    if m >= 1.0 && m.is_finite() {
        Ok(m)
    } else {
        Err(Error::Domain(format!(
            "repetition count must be at least 1 and finite, got {m}"
        )))
    }
}

fn check_budget_n(n: f64) -> qrs::Result<f64> {
    if n > 0.0 && n.is_finite() {
        Ok(n)
    } else {
        Err(Error::Domain(format!(
            "time budget must be positive and finite, got {n}"
        )))
    }
}

fn check_exponent(g: f64) -> qrs::Result<f64> {
    if g >= 0.0 && g.is_finite() {
        Ok(g)
    } else {
        Err(Error::Domain(format!(
            "decoherence exponent must be nonnegative and finite, got {g}"
        )))
    }
}

/// Principal branch of the Lambert W function at `x`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_lambert_w0(x: f64, out: *mut f64) -> QrsStatus {
    unsafe { store(out, lambert_w0(x)) }
}

/// Decoherence exponent g(t) for the given spectrum and T2.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_decoherence_exponent(
    kind: QrsNoiseKind,
    t: f64,
    t2: f64,
    out: *mut f64,
) -> QrsStatus {
    let result = DephasingModel::new(kind.into(), t2).and_then(|m| m.decoherence_exponent(t));
    unsafe { store(out, result) }
}

/// Worst-case client uncertainty bound T2 * dw at time t (units of T2).
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_client_uncertainty_upper(
    t: f64,
    m: f64,
    epsilon: f64,
    g: f64,
    out: *mut f64,
) -> QrsStatus {
    let result = (|| {
        Ok(client_uncertainty_upper(
            check_time(t)?,
            check_repetitions(m)?,
            PreparationErrorBudget::new(epsilon)?,
            check_exponent(g)?,
        ))
    })();
    unsafe { store(out, result) }
}

/// Best-case eavesdropper uncertainty at time t; infinite when epsilon = 0.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_eve_uncertainty_lower(
    t: f64,
    m: f64,
    epsilon: f64,
    out: *mut f64,
) -> QrsStatus {
    let result = (|| {
        Ok(eve_uncertainty_lower(
            check_time(t)?,
            check_repetitions(m)?,
            PreparationErrorBudget::new(epsilon)?,
        ))
    })();
    unsafe { store(out, result) }
}

/// Privacy ratio of the client bound to the eavesdropper bound at time t.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_uncertainty_ratio(
    t: f64,
    m: f64,
    epsilon: f64,
    g: f64,
    out: *mut f64,
) -> QrsStatus {
    let result = (|| {
        Ok(uncertainty_ratio(
            check_time(t)?,
            check_repetitions(m)?,
            PreparationErrorBudget::new(epsilon)?,
            check_exponent(g)?,
        ))
    })();
    unsafe { store(out, result) }
}

/// Slow-readout optimal interaction time over T2.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_optimal_time_slow(
    m: f64,
    epsilon: f64,
    kind: QrsNoiseKind,
    out: *mut f64,
) -> QrsStatus {
    let result = (|| {
        Ok(optimal_time_slow(
            check_repetitions(m)?,
            PreparationErrorBudget::new(epsilon)?,
            kind.into(),
        ))
    })();
    unsafe { store(out, result) }
}

/// Client uncertainty bound at the slow-readout optimal time.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_optimized_uncertainty_slow(
    m: f64,
    epsilon: f64,
    kind: QrsNoiseKind,
    out: *mut f64,
) -> QrsStatus {
    let result = (|| {
        Ok(optimized_uncertainty_slow(
            check_repetitions(m)?,
            PreparationErrorBudget::new(epsilon)?,
            kind.into(),
        ))
    })();
    unsafe { store(out, result) }
}

/// Privacy ratio at the slow-readout optimal time.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_optimized_ratio_slow(
    m: f64,
    epsilon: f64,
    kind: QrsNoiseKind,
    out: *mut f64,
) -> QrsStatus {
    let result = (|| {
        Ok(optimized_ratio_slow(
            check_repetitions(m)?,
            PreparationErrorBudget::new(epsilon)?,
            kind.into(),
        ))
    })();
    unsafe { store(out, result) }
}

/// Fast-readout time minimizing the client uncertainty for budget N = T/T2.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_optimal_time_fast_uncertainty(
    n: f64,
    epsilon: f64,
    kind: QrsNoiseKind,
    out: *mut f64,
) -> QrsStatus {
    let result = check_budget_n(n).and_then(|n| {
        optimal_time_fast_uncertainty(n, PreparationErrorBudget::new(epsilon)?, kind.into())
    });
    unsafe { store(out, result) }
}

/// Fast-readout time minimizing the privacy ratio; needs epsilon in (0, 1).
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_optimal_time_fast_ratio(
    n: f64,
    epsilon: f64,
    kind: QrsNoiseKind,
    out: *mut f64,
) -> QrsStatus {
    let result = (|| {
        let n = check_budget_n(n)?;
        let budget = PreparationErrorBudget::new(epsilon)?;
        let e = budget.epsilon();
        if e * (1.0 - e) == 0.0 {
            return Err(Error::Domain(
                "ratio optimization needs a nonzero preparation error budget".into(),
            ));
        }
        Ok(optimal_time_fast_ratio(n, budget, kind.into()))
    })();
    unsafe { store(out, result) }
}

/// Fast-readout client uncertainty bound at time t for budget N.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_fast_uncertainty(
    t: f64,
    n: f64,
    epsilon: f64,
    kind: QrsNoiseKind,
    out: *mut f64,
) -> QrsStatus {
    let result = PreparationErrorBudget::new(epsilon)
        .and_then(|budget| fast_uncertainty(t, n, budget, kind.into()));
    unsafe { store(out, result) }
}

/// Fast-readout privacy ratio at time t for budget N.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_fast_ratio(
    t: f64,
    n: f64,
    epsilon: f64,
    kind: QrsNoiseKind,
    out: *mut f64,
) -> QrsStatus {
    let result = PreparationErrorBudget::new(epsilon)
        .and_then(|budget| fast_ratio(t, n, budget, kind.into()));
    unsafe { store(out, result) }
}

/// Repetition count (slow) or time budget (fast) where the optimized privacy
/// ratio reaches one; infinite when it never does.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_crossing_repetition(
    epsilon: f64,
    kind: QrsNoiseKind,
    family: QrsRegimeFamily,
    target: QrsOptimizationTarget,
    out: *mut f64,
) -> QrsStatus {
    let result = PreparationErrorBudget::new(epsilon)
        .and_then(|budget| crossing_repetition(budget, kind.into(), family.into(), target.into()));
    unsafe { store(out, result) }
}

/// Register count k demanded by the sampling test for the given tolerances.
///
/// # Safety
/// `out` must be null or valid for writing one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn qrs_required_registers(
    epsilon: f64,
    delta: f64,
    capital_delta: f64,
    out: *mut u64,
) -> QrsStatus {
    if out.is_null() {
        return QrsStatus::NullPointer;
    }
    match SamplingTestParams::new(epsilon, delta, capital_delta) {
        Ok(params) => {
            unsafe { *out = required_registers(&params) };
            QrsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Creates a deterministic random stream; identical arguments replay the
/// same sequence. Release with [`qrs_rng_stream_free`].
#[no_mangle]
pub extern "C" fn qrs_rng_stream_new(seed: u64, stream_id: u64) -> *mut QrsRngStream {
    Box::into_raw(Box::new(QrsRngStream(RngStream::new(seed, stream_id))))
}

/// Releases a stream created by [`qrs_rng_stream_new`]. Null is ignored.
///
/// # Safety
/// `stream` must be null or a pointer from [`qrs_rng_stream_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn qrs_rng_stream_free(stream: *mut QrsRngStream) {
    if !stream.is_null() {
        drop(unsafe { Box::from_raw(stream) });
    }
}

/// Draws one random accumulated dephasing phase at time t.
///
/// # Safety
/// `stream` must be a live pointer from [`qrs_rng_stream_new`] and `out`
/// null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn qrs_sample_dephasing_phase(
    kind: QrsNoiseKind,
    t: f64,
    t2: f64,
    stream: *mut QrsRngStream,
    out: *mut f64,
) -> QrsStatus {
    if stream.is_null() {
        return QrsStatus::NullPointer;
    }
    let rng = unsafe { &mut (*stream).0 };
    let result =
        DephasingModel::new(kind.into(), t2).and_then(|m| m.sample_dephasing_phase(t, rng));
    unsafe { store(out, result) }
}
