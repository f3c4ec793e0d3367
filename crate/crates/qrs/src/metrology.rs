//! Ramsey-style frequency estimation under dephasing: exact and linearized
//! readout statistics, the client's uncertainty and its budget-saturating
//! upper bound, the eavesdropper's lower bound, and the privacy ratio
//! between the two.

use crate::error::{Error, Result};
use crate::noise::DephasingModel;
use crate::states::{BlochVector, PreparationErrorBudget};

/// How the repetitions of the protocol are accounted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReadoutRegime {
    /// Readout and reinitialization dominate the duty cycle, so the number
    /// of repetitions M is fixed regardless of the interaction time.
    SlowReadout { repetitions: u64 },
    /// Readout is instantaneous and a total time budget T is split into
    /// T / t repetitions (in the same units as t).
    FastReadout { total_time: f64 },
}

impl ReadoutRegime {
    fn validate(&self) -> Result<()> {
        match *self {
            ReadoutRegime::SlowReadout { repetitions } => {
                if repetitions == 0 {
                    return Err(Error::domain("repetition count must be at least 1"));
                }
            }
            ReadoutRegime::FastReadout { total_time } => {
                if !(total_time > 0.0 && total_time.is_finite()) {
                    return Err(Error::domain(format!(
                        "total time budget must be positive and finite, got {total_time}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Effective number of repetitions for a regime at interaction time t.
pub fn repetition_count(regime: &ReadoutRegime, t: f64) -> f64 {
    assert!(t > 0.0, "interaction time must be positive");
    match *regime {
        ReadoutRegime::SlowReadout { repetitions } => repetitions as f64,
        ReadoutRegime::FastReadout { total_time } => total_time / t,
    }
}

/// Full description of one sensing run: target frequency, interaction time,
/// noise model, preparation budget, and repetition accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensingConfig {
    omega: f64,
    t: f64,
    model: DephasingModel,
    budget: PreparationErrorBudget,
    regime: ReadoutRegime,
}

impl SensingConfig {
    pub fn new(
        omega: f64,
        t: f64,
        model: DephasingModel,
        budget: PreparationErrorBudget,
        regime: ReadoutRegime,
    ) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::domain(format!("frequency must be finite, got {omega}")));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!(
                "interaction time must be positive and finite, got {t}"
            )));
        }
        regime.validate()?;
        Ok(Self {
            omega,
            t,
            model,
            budget,
            regime,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn model(&self) -> DephasingModel {
        self.model
    }

    pub fn budget(&self) -> PreparationErrorBudget {
        self.budget
    }

    pub fn regime(&self) -> ReadoutRegime {
        self.regime
    }

    /// Accumulated phase omega * t.
    pub fn omega_t(&self) -> f64 {
        self.omega * self.t
    }

    /// Decoherence exponent at this configuration's interaction time.
    pub fn g(&self) -> f64 {
        self.model
            .decoherence_exponent(self.t)
            .expect("t validated positive at construction")
    }
}

/// Coefficients of the linearized readout probability P ~ x + y * (omega t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityCoefficients {
    pub x: f64,
    pub y: f64,
}

/// Success probability of a sigma_y readout at total accumulated phase
/// `phase`, after transverse damping by exp(-g).
///
/// Shared by the exact channel-level expression (phase = omega t) and by
/// trajectory-level sampling (phase = omega t + phi, g = 0).
pub(crate) fn outcome_probability_at_phase(state: &BlochVector, phase: f64, g: f64) -> f64 {
    let damp = (-g).exp();
    let p = 0.5 + 0.5 * damp * (state.ry() * phase.cos() + state.rx() * phase.sin());
    p.clamp(0.0, 1.0)
}

/// Exact sigma_y readout probability after free evolution for time t at
/// frequency omega and dephasing with exponent g.
pub fn exact_outcome_probability(state: &BlochVector, omega: f64, t: f64, g: f64) -> f64 {
    assert!(t >= 0.0, "interaction time must be nonnegative");
    assert!(g >= 0.0, "decoherence exponent must be nonnegative");
    outcome_probability_at_phase(state, omega * t, g)
}

/// Linearization of the readout probability around omega t = 0:
/// x = 1/2 + ry exp(-g)/2 and y = rx exp(-g)/2.
pub fn linearized_coefficients(state: &BlochVector, g: f64) -> ProbabilityCoefficients {
    assert!(g >= 0.0, "decoherence exponent must be nonnegative");
    let damp = (-g).exp();
    ProbabilityCoefficients {
        x: 0.5 + 0.5 * state.ry() * damp,
        y: 0.5 * state.rx() * damp,
    }
}

/// The client's frequency estimate from an observed success fraction s_m,
/// inverting the ideal-preparation linearized probability.
pub fn client_estimate(s_m: f64, t: f64, g: f64) -> f64 {
    assert!(t > 0.0, "interaction time must be positive");
    (s_m - 0.5) * 2.0 * g.exp() / t
}

/// Root-mean-square error of the client's estimator for a preparation with
/// transverse component ry, including the systematic bias the client's
/// ideal-preparation assumption leaves behind.
pub fn client_uncertainty(t: f64, m: f64, ry: f64, g: f64) -> f64 {
    assert!(t > 0.0 && m >= 1.0 && g >= 0.0);
    (g.exp() / (t * m.sqrt())) * (1.0 + (m - 1.0) * ry * ry * (-2.0 * g).exp()).sqrt()
}

/// Worst-case client uncertainty over all preparations within the budget:
/// [`client_uncertainty`] at ry = 2 sqrt(eps (1 - eps)).
pub fn client_uncertainty_upper(
    t: f64,
    m: f64,
    budget: PreparationErrorBudget,
    g: f64,
) -> f64 {
    assert!(t > 0.0 && m >= 1.0 && g >= 0.0);
    let e = budget.epsilon();
    let ep = e * (1.0 - e);
    (g.exp() / (t * m.sqrt())) * (1.0 + 4.0 * (m - 1.0) * ep * (-2.0 * g).exp()).sqrt()
}

/// Uncertainty of an eavesdropper who measures the transverse component of
/// the intercepted state directly. Undefined when the state carries no x
/// component at all.
pub fn eve_uncertainty(t: f64, m: f64, state: &BlochVector) -> Result<f64> {
    assert!(t > 0.0 && m >= 1.0);
    let rx = state.rx();
    if rx == 0.0 {
        return Err(Error::DegenerateState);
    }
    let ry = state.ry();
    Ok(((1.0 - ry * ry) / (m * rx * rx)).sqrt() / t)
}

/// Best-case (smallest) eavesdropper uncertainty permitted by the budget:
/// [`eve_uncertainty`] at the state with the largest leaked transverse
/// component, rx = 2 sqrt(eps (1 - eps)). Returns +infinity at eps = 0,
/// where a perfect preparation leaks nothing.
pub fn eve_uncertainty_lower(t: f64, m: f64, budget: PreparationErrorBudget) -> f64 {
    assert!(t > 0.0 && m >= 1.0);
    let e = budget.epsilon();
    let ep = e * (1.0 - e);
    if ep == 0.0 {
        return f64::INFINITY;
    }
    1.0 / (2.0 * t * (m * ep).sqrt())
}

/// Privacy figure of merit: worst-case client uncertainty over best-case
/// eavesdropper uncertainty. Values below one mean the client still holds
/// an accuracy advantage.
///
/// Depends on the interaction time only through g; the explicit 1/t factors
/// of the two bounds cancel.
pub fn uncertainty_ratio(t: f64, m: f64, budget: PreparationErrorBudget, g: f64) -> f64 {
    assert!(t > 0.0 && m >= 1.0 && g >= 0.0);
    let e = budget.epsilon();
    let ep = e * (1.0 - e);
    2.0 * g.exp() * (ep * (1.0 + 4.0 * (m - 1.0) * ep * (-2.0 * g).exp())).sqrt()
}

/// Uncertainty of a reference experiment with a perfect preparation:
/// exp(g) / (t sqrt(M)).
pub fn standard_metrology_uncertainty(t: f64, m: f64, g: f64) -> f64 {
    assert!(t > 0.0 && m >= 1.0 && g >= 0.0);
    g.exp() / (t * m.sqrt())
}
