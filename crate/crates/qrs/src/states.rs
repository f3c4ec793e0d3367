//! Single-qubit states as Bloch vectors, preparation-error budgets, and the
//! extremal states that saturate a fidelity constraint.

use crate::error::{Error, Result};

/// Physicality slack allowed on the Bloch-ball boundary, so that states
/// assembled from rounded arithmetic are not spuriously rejected.
const NORM_SLACK: f64 = 1e-12;

/// A single-qubit state written as Pauli expectation values (rx, ry, rz).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    rx: f64,
    ry: f64,
    rz: f64,
}

impl BlochVector {
    /// Builds a state, rejecting vectors that stick out of the Bloch ball
    /// by more than a small rounding slack.
    pub fn new(rx: f64, ry: f64, rz: f64) -> Result<Self> {
        let n2 = rx * rx + ry * ry + rz * rz;
        if !n2.is_finite() || n2 > 1.0 + NORM_SLACK {
            return Err(Error::domain(format!(
                "({rx}, {ry}, {rz}) lies outside the Bloch ball (|r|^2 = {n2})"
            )));
        }
        Ok(Self { rx, ry, rz })
    }

    /// Constructor for components already known to be physical (channel
    /// outputs, extremal states built from a budget).
    pub(crate) fn new_unchecked(rx: f64, ry: f64, rz: f64) -> Self {
        debug_assert!(rx * rx + ry * ry + rz * rz <= 1.0 + NORM_SLACK);
        Self { rx, ry, rz }
    }

    pub fn rx(&self) -> f64 {
        self.rx
    }

    pub fn ry(&self) -> f64 {
        self.ry
    }

    pub fn rz(&self) -> f64 {
        self.rz
    }

    pub fn norm_squared(&self) -> f64 {
        self.rx * self.rx + self.ry * self.ry + self.rz * self.rz
    }
}

/// Preparation-error budget epsilon in [0, 1/2]: the prepared state is
/// guaranteed to have fidelity at least 1 - epsilon with the ideal |+>.
///
/// Budgets above 1/2 are rejected rather than clamped; at that point the
/// fidelity constraint no longer pins down a useful transverse component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreparationErrorBudget {
    epsilon: f64,
}

impl PreparationErrorBudget {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&epsilon) {
            return Err(Error::domain(format!(
                "preparation error budget must lie in [0, 0.5], got {epsilon}"
            )));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Fidelity of a state with |+> (the +1 eigenstate of sigma_x).
pub fn fidelity_with_plus(state: &BlochVector) -> f64 {
    0.5 * (1.0 + state.rx())
}

/// Fidelity of a state with the maximally mixed state I/2.
pub fn fidelity_with_maximally_mixed(state: &BlochVector) -> f64 {
    0.5 + 0.5 * (1.0 - state.norm_squared()).max(0.0).sqrt()
}

/// Client state that maximizes the readout variance subject to the fidelity
/// budget: rx = 1 - 2 eps pinned to the constraint floor, all the remaining
/// amplitude pushed into ry.
pub fn worst_case_client_state(budget: PreparationErrorBudget) -> BlochVector {
    let e = budget.epsilon();
    BlochVector::new_unchecked(1.0 - 2.0 * e, 2.0 * (e * (1.0 - e)).sqrt(), 0.0)
}

/// State that minimizes the eavesdropper's estimator variance under the same
/// budget: the largest transverse x component an epsilon-poor preparation
/// can carry, with nothing along y or z.
pub fn best_case_eve_state(budget: PreparationErrorBudget) -> BlochVector {
    let e = budget.epsilon();
    BlochVector::new_unchecked(2.0 * (e * (1.0 - e)).sqrt(), 0.0, 0.0)
}
