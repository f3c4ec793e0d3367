//! Error analysis for delegated single-qubit frequency sensing under
//! dephasing.
//!
//! A client asks a remote server to run Ramsey interferometry on a qubit the
//! client prepared with a bounded error budget. The library quantifies both
//! sides of the resulting trade-off: the client's achievable frequency
//! uncertainty, the best precision an eavesdropping server could reach from
//! its measurement transcript, and the ratio between the two as a privacy
//! figure of merit. It covers white and low-frequency dephasing, slow and
//! fast readout duty cycles, closed-form and asymptotic optima for the
//! interaction time, Monte Carlo verification of all analytic uncertainties,
//! and a random-sampling fidelity test for remotely prepared two-qubit
//! registers.
//!
//! All interaction times are expressed in units of the dephasing time T2
//! unless a [`noise::DephasingModel`] with a different T2 is supplied
//! explicitly.

pub mod cli;
pub mod error;
pub mod metrology;
pub mod noise;
pub mod numerics;
pub mod optimize;
pub mod simulate;
pub mod states;

pub use error::{Error, Result};
