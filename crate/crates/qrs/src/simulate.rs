//! Monte Carlo engine: shot-level protocol simulation against the exact
//! measurement statistics, trial batches with deterministic parallel
//! streams, and the random-sampling fidelity test for two-qubit registers.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrology::{client_estimate, exact_outcome_probability, SensingConfig};
use crate::metrology::outcome_probability_at_phase;
use crate::states::BlochVector;

/// Counter-based RNG addressed by a (seed, stream_id) pair. Identical pairs
/// reproduce identical sample sequences, and distinct stream ids give
/// independent streams for parallel trials.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}

/// Where the stochasticity enters a simulated shot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Draw the outcome from the channel-averaged probability.
    ChannelLevel,
    /// Draw a random dephasing phase per shot and measure the noiseless
    /// state rotated by the total accumulated phase.
    TrajectoryLevel,
}

/// One Monte Carlo campaign: a sensing configuration, the prepared state,
/// shots per trial, trial count, and the sampling mode.
#[derive(Debug, Clone, Copy)]
pub struct TrialConfig {
    config: SensingConfig,
    state: BlochVector,
    num_protocol_runs: u64,
    num_trials: u64,
    sampling_mode: SamplingMode,
}

impl TrialConfig {
    pub fn new(
        config: SensingConfig,
        state: BlochVector,
        num_protocol_runs: u64,
        num_trials: u64,
        sampling_mode: SamplingMode,
    ) -> Result<Self> {
        if num_protocol_runs == 0 {
            return Err(Error::domain("need at least one protocol run per trial"));
        }
        if num_trials == 0 {
            return Err(Error::domain("need at least one trial"));
        }
        Ok(Self {
            config,
            state,
            num_protocol_runs,
            num_trials,
            sampling_mode,
        })
    }

    pub fn config(&self) -> SensingConfig {
        self.config
    }

    pub fn state(&self) -> BlochVector {
        self.state
    }

    pub fn num_protocol_runs(&self) -> u64 {
        self.num_protocol_runs
    }

    pub fn num_trials(&self) -> u64 {
        self.num_trials
    }

    pub fn sampling_mode(&self) -> SamplingMode {
        self.sampling_mode
    }
}

/// One simulated readout bit.
pub fn run_single_shot<R: Rng + ?Sized>(
    state: &BlochVector,
    config: &SensingConfig,
    mode: SamplingMode,
    rng: &mut R,
) -> bool {
    match mode {
        SamplingMode::ChannelLevel => {
            let p = exact_outcome_probability(state, config.omega(), config.t(), config.g());
            rng.random_bool(p)
        }
        SamplingMode::TrajectoryLevel => {
            let phi = config
                .model()
                .sample_dephasing_phase(config.t(), rng)
                .expect("t validated positive at construction");
            // the trajectory carries the dephasing, so the measurement itself
            // is noiseless (g = 0)
            let p = outcome_probability_at_phase(state, config.omega_t() + phi, 0.0);
            rng.random_bool(p)
        }
    }
}

/// One frequency estimate from M simulated shots.
pub fn run_protocol_trial<R: Rng + ?Sized>(tc: &TrialConfig, rng: &mut R) -> f64 {
    let m = tc.num_protocol_runs;
    let successes = match tc.sampling_mode {
        SamplingMode::ChannelLevel => {
            // one binomial draw is distributionally identical to M Bernoulli
            // shots at the channel-averaged probability
            let p = exact_outcome_probability(
                &tc.state,
                tc.config.omega(),
                tc.config.t(),
                tc.config.g(),
            );
            Binomial::new(m, p)
                .expect("probability clamped to [0, 1]")
                .sample(rng)
        }
        SamplingMode::TrajectoryLevel => (0..m)
            .filter(|_| run_single_shot(&tc.state, &tc.config, tc.sampling_mode, rng))
            .count() as u64,
    };
    let s_m = successes as f64 / m as f64;
    client_estimate(s_m, tc.config.t(), tc.config.g())
}

/// All trial estimates, computed in parallel with stream_id = trial index.
pub fn run_trials(tc: &TrialConfig, seed: u64) -> Vec<f64> {
    (0..tc.num_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = RngStream::new(seed, trial);
            run_protocol_trial(tc, &mut rng)
        })
        .collect()
}

/// Sample root mean squared error of the trial estimates against the true
/// frequency.
pub fn empirical_rmse(tc: &TrialConfig, seed: u64) -> f64 {
    assert!(
        tc.num_trials >= 100,
        "need at least 100 trials for a meaningful error estimate"
    );
    let omega = tc.config.omega();
    let sum_sq: f64 = run_trials(tc, seed)
        .iter()
        .map(|est| (est - omega) * (est - omega))
        .sum();
    (sum_sq / tc.num_trials as f64).sqrt()
}

/// Parameters of the random-sampling fidelity test: tolerated preparation
/// error epsilon, failure probability delta, and the mismatch threshold
/// fraction Delta.
#[derive(Debug, Clone, Copy)]
pub struct SamplingTestParams {
    epsilon: f64,
    delta: f64,
    capital_delta: f64,
}

impl SamplingTestParams {
    pub fn new(epsilon: f64, delta: f64, capital_delta: f64) -> Result<Self> {
        if !(capital_delta >= 0.0 && capital_delta.is_finite()) {
            return Err(Error::domain(format!(
                "threshold fraction must be nonnegative and finite, got {capital_delta}"
            )));
        }
        if !(epsilon.is_finite() && epsilon > 3.0 * capital_delta) {
            return Err(Error::domain(format!(
                "error tolerance must exceed three times the threshold fraction, \
                 got epsilon = {epsilon}, Delta = {capital_delta}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain(format!(
                "failure probability must lie strictly between 0 and 1, got {delta}"
            )));
        }
        Ok(Self {
            epsilon,
            delta,
            capital_delta,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn capital_delta(&self) -> f64 {
        self.capital_delta
    }
}

/// Measurements per stabilizer basis: k = ceil(75 ln(2/delta) / (8 (epsilon - 3 Delta)^2)).
pub fn required_registers(p: &SamplingTestParams) -> u64 {
    let gap = p.epsilon - 3.0 * p.capital_delta;
    (75.0 * (2.0 / p.delta).ln() / (8.0 * gap * gap)).ceil() as u64
}

/// Noise acting on one remotely prepared two-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegisterNoiseForm {
    IdealBell,
    WernerMix,
}

/// A two-qubit register characterized by its fidelity with the Bell state
/// and the noise family that realizes that fidelity.
#[derive(Debug, Clone, Copy)]
pub struct TwoQubitRegister {
    bell_fidelity: f64,
    noise_form: RegisterNoiseForm,
}

impl TwoQubitRegister {
    pub fn ideal() -> Self {
        Self {
            bell_fidelity: 1.0,
            noise_form: RegisterNoiseForm::IdealBell,
        }
    }

    /// Werner mixture p |Bell><Bell| + (1-p) I/4 with fidelity
    /// F = p + (1-p)/4, so p = (4F-1)/3 must land in [0, 1].
    pub fn werner(bell_fidelity: f64) -> Result<Self> {
        if !(0.25..=1.0).contains(&bell_fidelity) {
            return Err(Error::domain(format!(
                "Werner mixtures only reach fidelities in [0.25, 1], got {bell_fidelity}"
            )));
        }
        Ok(Self {
            bell_fidelity,
            noise_form: RegisterNoiseForm::WernerMix,
        })
    }

    pub fn bell_fidelity(&self) -> f64 {
        self.bell_fidelity
    }

    pub fn noise_form(&self) -> RegisterNoiseForm {
        self.noise_form
    }

    /// Probability that a stabilizer measurement (either basis) disagrees
    /// with the Bell value. Both expectations equal the Werner weight p, so
    /// the mismatch probability is (1 - p) / 2 = 2 (1 - F) / 3.
    pub fn mismatch_probability(&self) -> f64 {
        match self.noise_form {
            RegisterNoiseForm::IdealBell => 0.0,
            RegisterNoiseForm::WernerMix => 2.0 * (1.0 - self.bell_fidelity) / 3.0,
        }
    }
}

/// Result of one random-sampling test run.
#[derive(Debug, Clone, Copy)]
pub struct SamplingTestReport {
    pub k: u64,
    pub n_fail: u64,
    pub passed: bool,
    pub fidelity_lower_bound: f64,
}

/// Simulates the register sampling test: from 4k supplied registers, 2k are
/// chosen uniformly at random, half measured in each stabilizer basis, and
/// mismatches counted. Passing means n_fail <= 2 k Delta, and the certified
/// fidelity lower bound for the remaining registers is
/// 1 - epsilon + 3 Delta - 3 n_fail / (2k).
///
/// Also returns the index of one register drawn uniformly from the 2k
/// unmeasured ones, standing in for the register the protocol would go on to
/// use, so callers can compare its true fidelity against the certified
/// bound.
pub fn run_random_sampling_test<R: Rng + ?Sized>(
    p: &SamplingTestParams,
    registers: &[TwoQubitRegister],
    rng: &mut R,
) -> Result<(SamplingTestReport, usize)> {
    let k = required_registers(p);
    let total = 4 * k as usize;
    if registers.len() != total {
        return Err(Error::domain(format!(
            "register count mismatch: the test needs exactly 4k = {total} registers, got {}",
            registers.len()
        )));
    }
    let measured = rand::seq::index::sample(rng, total, 2 * k as usize).into_vec();
    let mut n_fail = 0u64;
    for &idx in &measured {
        let pm = registers[idx].mismatch_probability();
        if pm > 0.0 && rng.random_bool(pm) {
            n_fail += 1;
        }
    }
    let two_k = 2.0 * k as f64;
    let report = SamplingTestReport {
        k,
        n_fail,
        passed: n_fail as f64 <= two_k * p.capital_delta,
        fidelity_lower_bound: 1.0 - p.epsilon + 3.0 * p.capital_delta
            - 3.0 * n_fail as f64 / two_k,
    };
    let mut is_measured = vec![false; total];
    for &idx in &measured {
        is_measured[idx] = true;
    }
    let unmeasured: Vec<usize> = (0..total).filter(|&i| !is_measured[i]).collect();
    let selected = unmeasured[rng.random_range(0..unmeasured.len())];
    Ok((report, selected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrology::{client_uncertainty, client_uncertainty_upper, ReadoutRegime};
    use crate::noise::{DephasingModel, NoiseKind};
    use crate::states::{worst_case_client_state, PreparationErrorBudget};
    use approx::assert_relative_eq;

    fn config(omega: f64, t: f64, t2: f64, kind: NoiseKind, eps: f64, m: u64) -> SensingConfig {
        SensingConfig::new(
            omega,
            t,
            DephasingModel::new(kind, t2).unwrap(),
            PreparationErrorBudget::new(eps).unwrap(),
            ReadoutRegime::SlowReadout { repetitions: m },
        )
        .unwrap()
    }

    fn plus_state() -> BlochVector {
        BlochVector::new(1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn identical_streams_reproduce_identical_outputs() {
        let cfg = config(0.01, 1.0, 1.0, NoiseKind::White, 0.001, 1000);
        let state =
            worst_case_client_state(PreparationErrorBudget::new(0.001).unwrap());
        for mode in [SamplingMode::ChannelLevel, SamplingMode::TrajectoryLevel] {
            let tc = TrialConfig::new(cfg, state, 1000, 64, mode).unwrap();
            let a = run_trials(&tc, 42);
            let b = run_trials(&tc, 42);
            assert_eq!(a, b);
            let c = run_trials(&tc, 43);
            assert_ne!(a, c);
        }
        let mut r1 = RngStream::new(7, 3);
        let mut r2 = RngStream::new(7, 3);
        assert_eq!(
            (0..32).map(|_| r1.next_u64()).collect::<Vec<_>>(),
            (0..32).map(|_| r2.next_u64()).collect::<Vec<_>>()
        );
        assert_eq!(r1.seed(), 7);
        assert_eq!(r1.stream_id(), 3);
    }

    #[test]
    fn trial_config_rejects_empty_campaigns() {
        let cfg = config(0.0, 1.0, 1.0, NoiseKind::White, 0.0, 1);
        assert!(TrialConfig::new(cfg, plus_state(), 0, 10, SamplingMode::ChannelLevel).is_err());
        assert!(TrialConfig::new(cfg, plus_state(), 10, 0, SamplingMode::ChannelLevel).is_err());
    }

    #[test]
    fn single_shot_is_a_fair_coin_at_zero_frequency() {
        // omega = 0 and a negligible decoherence exponent leave p = 1/2
        let cfg = config(0.0, 1.0, 1e12, NoiseKind::White, 0.0, 1);
        let mut rng = RngStream::new(5, 0);
        let shots = 1_000_000u64;
        let mut ones = 0u64;
        for _ in 0..shots {
            if run_single_shot(&plus_state(), &cfg, SamplingMode::ChannelLevel, &mut rng) {
                ones += 1;
            }
        }
        let mean = ones as f64 / shots as f64;
        let sigma = 0.5 / (shots as f64).sqrt();
        assert!((mean - 0.5).abs() <= 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn both_modes_match_the_exact_probability() {
        let budget = PreparationErrorBudget::new(0.001).unwrap();
        let state = worst_case_client_state(budget);
        let cfg = config(0.01, 1.0, 1.0, NoiseKind::White, 0.001, 1);
        let p_exact =
            exact_outcome_probability(&state, cfg.omega(), cfg.t(), cfg.g());
        let shots = 1_000_000u64;
        let se = (p_exact * (1.0 - p_exact) / shots as f64).sqrt();
        let mut means = Vec::new();
        for (stream, mode) in [
            (0, SamplingMode::ChannelLevel),
            (1, SamplingMode::TrajectoryLevel),
        ] {
            let mut rng = RngStream::new(9, stream);
            let mut ones = 0u64;
            for _ in 0..shots {
                if run_single_shot(&state, &cfg, mode, &mut rng) {
                    ones += 1;
                }
            }
            let mean = ones as f64 / shots as f64;
            assert!(
                (mean - p_exact).abs() <= 3.0 * se,
                "{mode:?} mean {mean} vs exact {p_exact}"
            );
            means.push(mean);
        }
        // two-sample proportion comparison between the modes
        assert!((means[0] - means[1]).abs() <= 3.0 * 2.0f64.sqrt() * se);
    }

    #[test]
    fn modes_agree_across_a_randomized_parameter_matrix() {
        let mut pick = RngStream::new(2024, 0);
        let shots = 100_000u64;
        for case in 0..6 {
            let eps = [0.0, 0.01, 0.1][case % 3];
            let kind = if case % 2 == 0 {
                NoiseKind::White
            } else {
                NoiseKind::LowFrequency
            };
            let t = pick.random_range(0.2..2.0);
            let omega = pick.random_range(-0.5..0.5);
            let budget = PreparationErrorBudget::new(eps).unwrap();
            let state = worst_case_client_state(budget);
            let cfg = config(omega, t, 1.0, kind, eps, 1);
            let p_exact =
                exact_outcome_probability(&state, cfg.omega(), cfg.t(), cfg.g());
            let se = (p_exact * (1.0 - p_exact) / shots as f64).sqrt();
            let mut means = [0.0f64; 2];
            for (slot, mode) in [SamplingMode::ChannelLevel, SamplingMode::TrajectoryLevel]
                .into_iter()
                .enumerate()
            {
                let mut rng = RngStream::new(100 + case as u64, slot as u64);
                let mut ones = 0u64;
                for _ in 0..shots {
                    if run_single_shot(&state, &cfg, mode, &mut rng) {
                        ones += 1;
                    }
                }
                means[slot] = ones as f64 / shots as f64;
                assert!(
                    (means[slot] - p_exact).abs() <= 4.0 * se,
                    "case {case} {mode:?}: {} vs {p_exact}",
                    means[slot]
                );
            }
            assert!((means[0] - means[1]).abs() <= 4.0 * 2.0f64.sqrt() * se, "case {case}");
        }
    }

    #[test]
    fn mean_estimate_recovers_the_true_frequency() {
        // ideal preparation, omega t = 0.01: the estimator is unbiased up to
        // a cubic linearization remainder far below statistical resolution
        let cfg = config(0.01, 1.0, 1.0, NoiseKind::White, 0.0, 10_000);
        let tc = TrialConfig::new(cfg, plus_state(), 10_000, 1000, SamplingMode::ChannelLevel)
            .unwrap();
        let estimates = run_trials(&tc, 11);
        let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
        let sd = (estimates
            .iter()
            .map(|e| (e - mean) * (e - mean))
            .sum::<f64>()
            / (estimates.len() - 1) as f64)
            .sqrt();
        let se = sd / (estimates.len() as f64).sqrt();
        assert!((mean - 0.01).abs() <= 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn null_frequency_estimates_average_to_zero() {
        let cfg = config(0.0, 1.0, 1.0, NoiseKind::White, 0.0, 1_000_000);
        let tc = TrialConfig::new(cfg, plus_state(), 1_000_000, 200, SamplingMode::ChannelLevel)
            .unwrap();
        let estimates = run_trials(&tc, 3);
        let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
        let sd = (estimates
            .iter()
            .map(|e| (e - mean) * (e - mean))
            .sum::<f64>()
            / (estimates.len() - 1) as f64)
            .sqrt();
        assert!(mean.abs() <= 4.0 * sd / (estimates.len() as f64).sqrt() + 1e-12);
    }

    #[test]
    fn imperfect_preparation_biases_the_estimate_as_predicted() {
        let budget = PreparationErrorBudget::new(0.001).unwrap();
        let state = worst_case_client_state(budget);
        let cfg = config(0.05, 1.0, 1.0, NoiseKind::White, 0.001, 10_000);
        let p_exact =
            exact_outcome_probability(&state, cfg.omega(), cfg.t(), cfg.g());
        // estimate = (s_m - 1/2) / (t y_C) with y_C = exp(-g)/2, so its mean
        // sits at the same rescaling of the exact probability
        let predicted = (p_exact - 0.5) * 2.0 * cfg.g().exp() / cfg.t();
        let tc =
            TrialConfig::new(cfg, state, 10_000, 2000, SamplingMode::ChannelLevel).unwrap();
        let estimates = run_trials(&tc, 17);
        let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
        let sd = (estimates
            .iter()
            .map(|e| (e - mean) * (e - mean))
            .sum::<f64>()
            / (estimates.len() - 1) as f64)
            .sqrt();
        let se = sd / (estimates.len() as f64).sqrt();
        assert!(
            (mean - predicted).abs() <= 4.0 * se,
            "mean {mean} vs predicted {predicted} (se {se})"
        );
        // and the bias against the true frequency is visible at this budget
        assert!((predicted - cfg.omega()).abs() > 10.0 * se);
    }

    #[test]
    fn rmse_without_noise_is_the_projection_limit() {
        let cfg = config(0.01, 1.0, 1e12, NoiseKind::White, 0.0, 100);
        let tc = TrialConfig::new(cfg, plus_state(), 100, 10_000, SamplingMode::ChannelLevel)
            .unwrap();
        let rmse = empirical_rmse(&tc, 23);
        assert!((rmse - 0.1).abs() / 0.1 <= 0.05, "rmse {rmse}");
    }

    #[test]
    fn rmse_tracks_the_analytic_uncertainty() {
        let budget = PreparationErrorBudget::new(0.001).unwrap();
        let state = worst_case_client_state(budget);
        let cfg = config(0.01, 1.0, 1.0, NoiseKind::White, 0.001, 100);
        let tc = TrialConfig::new(cfg, state, 100, 10_000, SamplingMode::ChannelLevel).unwrap();
        let rmse = empirical_rmse(&tc, 29);
        let analytic = client_uncertainty(1.0, 100.0, state.ry(), 1.0);
        assert!(
            (rmse - analytic).abs() / analytic <= 0.10,
            "rmse {rmse} vs analytic {analytic}"
        );
    }

    #[test]
    fn rmse_reaches_the_bias_plateau_at_large_shot_counts() {
        let budget = PreparationErrorBudget::new(0.001).unwrap();
        let state = worst_case_client_state(budget);
        let cfg = config(0.01, 1.0, 1.0, NoiseKind::White, 0.001, 1_000_000);
        let tc =
            TrialConfig::new(cfg, state, 1_000_000, 10_000, SamplingMode::ChannelLevel).unwrap();
        let rmse = empirical_rmse(&tc, 31);
        let plateau = client_uncertainty_upper(1.0, 1e6, budget, 1.0);
        assert!(
            (rmse - plateau).abs() / plateau <= 0.10,
            "rmse {rmse} vs plateau {plateau}"
        );
    }

    #[test]
    fn rmse_scales_as_the_square_root_of_the_shot_count() {
        let mut points = Vec::new();
        for (i, m) in [100u64, 1000, 10_000].into_iter().enumerate() {
            let cfg = config(0.01, 1.0, 1e12, NoiseKind::White, 0.0, m);
            let tc =
                TrialConfig::new(cfg, plus_state(), m, 10_000, SamplingMode::ChannelLevel)
                    .unwrap();
            points.push(((m as f64).ln(), empirical_rmse(&tc, 37 + i as u64).ln()));
        }
        // least squares slope over the three decades
        let n = points.len() as f64;
        let (sx, sy): (f64, f64) = points.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!((slope + 0.5).abs() <= 0.05, "slope {slope}");
    }

    #[test]
    fn plateau_approaches_the_preparation_error_floor() {
        let eps = 0.01;
        let budget = PreparationErrorBudget::new(eps).unwrap();
        let state = worst_case_client_state(budget);
        let cfg = config(0.01, 1.0, 1.0, NoiseKind::White, eps, 1_000_000);
        let tc =
            TrialConfig::new(cfg, state, 1_000_000, 10_000, SamplingMode::ChannelLevel).unwrap();
        let rmse = empirical_rmse(&tc, 41);
        let floor = 2.0 * (eps * (1.0 - eps)).sqrt();
        assert!(
            (rmse - floor).abs() / floor <= 0.10,
            "rmse {rmse} vs floor {floor}"
        );
    }

    #[test]
    fn trajectory_trials_agree_with_channel_trials() {
        let budget = PreparationErrorBudget::new(0.001).unwrap();
        let state = worst_case_client_state(budget);
        let cfg = config(0.01, 0.8, 1.0, NoiseKind::LowFrequency, 0.001, 1000);
        let channel = TrialConfig::new(cfg, state, 1000, 2000, SamplingMode::ChannelLevel)
            .unwrap();
        let trajectory = TrialConfig::new(cfg, state, 1000, 2000, SamplingMode::TrajectoryLevel)
            .unwrap();
        let rc = empirical_rmse(&channel, 47);
        let rt = empirical_rmse(&trajectory, 53);
        assert!(
            (rc - rt).abs() / rc <= 0.05,
            "channel rmse {rc} vs trajectory rmse {rt}"
        );
    }

    #[test]
    fn register_count_formula_matches_spot_values() {
        let p = SamplingTestParams::new(0.1, 0.01, 0.0).unwrap();
        assert_eq!(required_registers(&p), 4968);
        // shrinking the failure probability toward 1 leaves only ln 2
        let lax = SamplingTestParams::new(0.1, 0.999, 0.0).unwrap();
        let k_lax = required_registers(&lax);
        assert!(k_lax < 4968 / 5);
        assert_eq!(
            k_lax,
            (75.0 * (2.0f64 / 0.999).ln() / (8.0 * 0.01)).ceil() as u64
        );
        // doubling the gap quarters k up to the ceiling
        let wide = SamplingTestParams::new(0.2, 0.01, 0.0).unwrap();
        let k_wide = required_registers(&wide);
        assert!((k_wide as f64 - 4967.172 / 4.0).abs() <= 1.0);
    }

    #[test]
    fn sampling_params_enforce_their_constraints() {
        assert!(SamplingTestParams::new(0.1, 0.01, 0.04).is_err());
        assert!(SamplingTestParams::new(0.1, 0.0, 0.0).is_err());
        assert!(SamplingTestParams::new(0.1, 1.0, 0.0).is_err());
        assert!(SamplingTestParams::new(0.1, 0.01, -0.01).is_err());
        assert!(SamplingTestParams::new(f64::NAN, 0.01, 0.0).is_err());
        assert!(SamplingTestParams::new(0.13, 0.01, 0.04).is_ok());
    }

    #[test]
    fn werner_registers_expose_the_right_mismatch_statistics() {
        assert_eq!(TwoQubitRegister::ideal().mismatch_probability(), 0.0);
        assert_eq!(TwoQubitRegister::werner(1.0).unwrap().mismatch_probability(), 0.0);
        assert_relative_eq!(
            TwoQubitRegister::werner(0.9).unwrap().mismatch_probability(),
            1.0 / 15.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            TwoQubitRegister::werner(0.25).unwrap().mismatch_probability(),
            0.5,
            max_relative = 1e-15
        );
        assert!(TwoQubitRegister::werner(0.2).is_err());
        assert!(TwoQubitRegister::werner(1.1).is_err());
    }

    #[test]
    fn ideal_registers_always_pass_with_the_maximal_bound() {
        let p = SamplingTestParams::new(0.1, 0.05, 0.02).unwrap();
        let k = required_registers(&p);
        let registers = vec![TwoQubitRegister::ideal(); 4 * k as usize];
        let mut rng = RngStream::new(61, 0);
        let (report, selected) = run_random_sampling_test(&p, &registers, &mut rng).unwrap();
        assert_eq!(report.k, k);
        assert_eq!(report.n_fail, 0);
        assert!(report.passed);
        assert_relative_eq!(
            report.fidelity_lower_bound,
            1.0 - 0.1 + 3.0 * 0.02,
            max_relative = 1e-15
        );
        assert!(selected < registers.len());
        // a full-weight Werner state is the Bell state itself
        let pure = vec![TwoQubitRegister::werner(1.0).unwrap(); 4 * k as usize];
        let (report, _) = run_random_sampling_test(&p, &pure, &mut rng).unwrap();
        assert_eq!(report.n_fail, 0);
        assert!(report.passed);
    }

    #[test]
    fn sampling_test_rejects_wrong_register_counts() {
        let p = SamplingTestParams::new(0.1, 0.05, 0.02).unwrap();
        let k = required_registers(&p);
        let registers = vec![TwoQubitRegister::ideal(); 4 * k as usize - 1];
        let mut rng = RngStream::new(67, 0);
        assert!(run_random_sampling_test(&p, &registers, &mut rng).is_err());
    }

    #[test]
    fn certified_bound_fails_at_most_a_delta_fraction_of_runs() {
        let p = SamplingTestParams::new(0.1, 0.05, 0.02).unwrap();
        let k = required_registers(&p) as usize;
        let fidelity = 0.9;
        let registers = vec![TwoQubitRegister::werner(fidelity).unwrap(); 4 * k];
        let runs = 1000;
        let mut violations = 0u64;
        let mut mismatch_total = 0u64;
        for run in 0..runs {
            let mut rng = RngStream::new(71, run);
            let (report, selected) =
                run_random_sampling_test(&p, &registers, &mut rng).unwrap();
            if report.fidelity_lower_bound > registers[selected].bell_fidelity() {
                violations += 1;
            }
            mismatch_total += report.n_fail;
        }
        // one-sided binomial check at 3 sigma around the guarantee
        let delta = p.delta();
        let ceiling =
            runs as f64 * delta + 3.0 * (runs as f64 * delta * (1.0 - delta)).sqrt();
        assert!((violations as f64) <= ceiling, "violations {violations}");
        // the mismatch counter itself stays near 2k / 15 per run
        let mean_fail = mismatch_total as f64 / runs as f64;
        let expect_fail = 2.0 * k as f64 / 15.0;
        assert!(
            (mean_fail - expect_fail).abs() / expect_fail <= 0.05,
            "mean mismatches {mean_fail} vs {expect_fail}"
        );
    }
}
