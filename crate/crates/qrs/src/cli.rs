//! Command implementations behind the `qrs` binary: parameter sweeps,
//! contour grids, Monte Carlo campaigns, the register sampling test, and
//! canned figure reproductions, all emitted as CSV.
//!
//! Cells are comma separated with 17 significant digits; asymptotic columns
//! are left empty wherever the limiting form is undefined. Re-running a
//! command with identical arguments and seed reproduces the file byte for
//! byte.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrology::{
    client_uncertainty, client_uncertainty_upper, uncertainty_ratio, ReadoutRegime,
    SensingConfig,
};
use crate::noise::{DephasingModel, NoiseKind};
use crate::numerics::AsymptoticRegime;
use crate::optimize::{
    fast_ratio_at_ratio_optimum_asymptotic, fast_ratio_raw,
    fast_uncertainty_at_ratio_optimum_asymptotic, fast_uncertainty_raw, optimal_time_fast_ratio,
    optimal_time_fast_ratio_asymptotic, optimal_time_fast_uncertainty, optimal_time_slow,
    optimal_time_slow_asymptotic, optimized_ratio_slow, optimized_ratio_slow_asymptotic,
    optimized_uncertainty_slow, optimized_uncertainty_slow_asymptotic, OptimizationTarget,
    RegimeFamily,
};
use crate::simulate::{
    required_registers, run_random_sampling_test, run_trials, RngStream, SamplingMode,
    SamplingTestParams, TrialConfig, TwoQubitRegister,
};
use crate::states::{worst_case_client_state, PreparationErrorBudget};

/// Which quantity a sweep ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Slow-readout repetition count M.
    RepetitionCount,
    /// Fast-readout total time budget N = T / T2.
    TimeBudget,
    /// Interaction time t / T2 (contour second axis).
    InteractionTime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

/// An inclusive 1-D sweep axis.
#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    variable: SweepVariable,
    start: f64,
    stop: f64,
    points: usize,
    scale: SweepScale,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        start: f64,
        stop: f64,
        points: usize,
        scale: SweepScale,
    ) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(Error::domain(format!(
                "sweep needs finite start < stop, got {start}..{stop}"
            )));
        }
        if points < 2 {
            return Err(Error::domain("sweep needs at least 2 points"));
        }
        if scale == SweepScale::Log && start <= 0.0 {
            return Err(Error::domain(format!(
                "log sweeps need a positive start, got {start}"
            )));
        }
        Ok(Self {
            variable,
            start,
            stop,
            points,
            scale,
        })
    }

    /// Parses "start:stop:points:lin" or "start:stop:points:log".
    pub fn parse(text: &str, variable: SweepVariable) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::domain(format!(
                "sweep must look like start:stop:points:lin|log, got {text:?}"
            )));
        }
        let bad = |what: &str| Error::domain(format!("bad sweep {what} in {text:?}"));
        let start: f64 = parts[0].parse().map_err(|_| bad("start"))?;
        let stop: f64 = parts[1].parse().map_err(|_| bad("stop"))?;
        let points: usize = parts[2].parse().map_err(|_| bad("point count"))?;
        let scale = match parts[3] {
            "lin" => SweepScale::Linear,
            "log" => SweepScale::Log,
            _ => return Err(bad("scale")),
        };
        Self::new(variable, start, stop, points, scale)
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// The axis values, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        let (a, b) = match self.scale {
            SweepScale::Linear => (self.start, self.stop),
            SweepScale::Log => (self.start.ln(), self.stop.ln()),
        };
        (0..n)
            .map(|i| {
                let x = a + (b - a) * i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => x,
                    SweepScale::Log => x.exp(),
                }
            })
            .collect()
    }
}

fn cell(v: f64) -> String {
    format!("{v:.16e}")
}

/// Empty cell wherever the quantity is undefined.
fn try_cell(v: Result<f64>) -> String {
    v.map(cell).unwrap_or_default()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn budget_for(epsilon: f64) -> Result<PreparationErrorBudget> {
    PreparationErrorBudget::new(epsilon)
}

const SLOW_COLUMNS: [&str; 19] = [
    "M",
    "t_opt_white",
    "t_opt_low",
    "t_opt_small_asym_white",
    "t_opt_small_asym_low",
    "t_opt_large_asym_white",
    "t_opt_large_asym_low",
    "u_exact_white",
    "u_exact_low",
    "u_small_asym_white",
    "u_small_asym_low",
    "u_large_asym_white",
    "u_large_asym_low",
    "ratio_exact_white",
    "ratio_exact_low",
    "ratio_small_asym_white",
    "ratio_small_asym_low",
    "ratio_large_asym_white",
    "ratio_large_asym_low",
];

const FAST_COLUMNS: [&str; 25] = [
    "N",
    "t_opt_uncertainty_white",
    "t_opt_uncertainty_low",
    "t_optR_white",
    "t_optR_low",
    "t_optR_small_asym_white",
    "t_optR_small_asym_low",
    "t_optR_large_asym_white",
    "t_optR_large_asym_low",
    "u_at_topt_white",
    "u_at_topt_low",
    "u_at_toptR_white",
    "u_at_toptR_low",
    "u_at_toptR_small_asym_white",
    "u_at_toptR_small_asym_low",
    "u_at_toptR_large_asym_white",
    "u_at_toptR_large_asym_low",
    "ratio_at_topt_white",
    "ratio_at_topt_low",
    "ratio_at_toptR_white",
    "ratio_at_toptR_low",
    "ratio_at_toptR_small_asym_white",
    "ratio_at_toptR_small_asym_low",
    "ratio_at_toptR_large_asym_white",
    "ratio_at_toptR_large_asym_low",
];

fn kind_keeps(name: &str, kind: Option<NoiseKind>) -> bool {
    match kind {
        None => true,
        Some(NoiseKind::White) => !name.ends_with("_low"),
        Some(NoiseKind::LowFrequency) => !name.ends_with("_white"),
    }
}

fn target_keeps(name: &str, target: Option<OptimizationTarget>) -> bool {
    let ratio_optimum = name.contains("toptR") || name.starts_with("t_optR");
    match target {
        None => true,
        Some(OptimizationTarget::MinimizeClientUncertainty) => !ratio_optimum || name == "N",
        Some(OptimizationTarget::MinimizeRatio) => ratio_optimum || name == "N",
    }
}

fn project(cells: Vec<String>, keep: &[bool]) -> String {
    cells
        .into_iter()
        .zip(keep)
        .filter_map(|(c, &k)| k.then_some(c))
        .collect::<Vec<_>>()
        .join(",")
}

/// Slow-readout sweep over the repetition count: exact optima plus every
/// limiting form, one row per M.
pub fn cmd_sweep_slow(
    epsilon: f64,
    kind: Option<NoiseKind>,
    sweep: &SweepSpec,
    out: &Path,
) -> Result<()> {
    if sweep.variable() != SweepVariable::RepetitionCount {
        return Err(Error::domain("slow sweeps range over the repetition count"));
    }
    let budget = budget_for(epsilon)?;
    let keep: Vec<bool> = SLOW_COLUMNS
        .iter()
        .map(|c| kind_keeps(c, kind))
        .collect();
    let rows: Vec<String> = sweep
        .values()
        .into_par_iter()
        .map(|m| {
            let mut cells = Vec::with_capacity(SLOW_COLUMNS.len());
            cells.push(cell(m));
            let per_kind = [NoiseKind::White, NoiseKind::LowFrequency];
            for k in per_kind {
                cells.push(cell(optimal_time_slow(m, budget, k)));
            }
            for regime in [AsymptoticRegime::Small, AsymptoticRegime::Large] {
                for k in per_kind {
                    cells.push(try_cell(optimal_time_slow_asymptotic(m, budget, k, regime)));
                }
            }
            for k in per_kind {
                cells.push(cell(optimized_uncertainty_slow(m, budget, k)));
            }
            for regime in [AsymptoticRegime::Small, AsymptoticRegime::Large] {
                for k in per_kind {
                    cells.push(try_cell(optimized_uncertainty_slow_asymptotic(
                        m, budget, k, regime,
                    )));
                }
            }
            for k in per_kind {
                cells.push(cell(optimized_ratio_slow(m, budget, k)));
            }
            for regime in [AsymptoticRegime::Small, AsymptoticRegime::Large] {
                for k in per_kind {
                    cells.push(try_cell(optimized_ratio_slow_asymptotic(
                        m, budget, k, regime,
                    )));
                }
            }
            project(cells, &keep)
        })
        .collect();
    let header = project(SLOW_COLUMNS.iter().map(|s| s.to_string()).collect(), &keep);
    let mut text = header;
    text.push('\n');
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    write_file(out, &text)
}

/// Fast-readout sweep over the time budget N: optima of both targets plus
/// every limiting form, one row per N.
pub fn cmd_sweep_fast(
    epsilon: f64,
    target: Option<OptimizationTarget>,
    sweep: &SweepSpec,
    out: &Path,
) -> Result<()> {
    if sweep.variable() != SweepVariable::TimeBudget {
        return Err(Error::domain("fast sweeps range over the total time budget"));
    }
    let budget = budget_for(epsilon)?;
    let ep = epsilon * (1.0 - epsilon);
    let keep: Vec<bool> = FAST_COLUMNS
        .iter()
        .map(|c| target_keeps(c, target))
        .collect();
    let per_kind = [NoiseKind::White, NoiseKind::LowFrequency];
    let rows: Vec<String> = sweep
        .values()
        .into_par_iter()
        .map(|n| {
            let mut cells = Vec::with_capacity(FAST_COLUMNS.len());
            cells.push(cell(n));
            let t_opt: Vec<Option<f64>> = per_kind
                .iter()
                .map(|&k| optimal_time_fast_uncertainty(n, budget, k).ok())
                .collect();
            let t_opt_r: Vec<Option<f64>> = per_kind
                .iter()
                .map(|&k| (ep > 0.0).then(|| optimal_time_fast_ratio(n, budget, k)))
                .collect();
            for t in &t_opt {
                cells.push(t.map(cell).unwrap_or_default());
            }
            for t in &t_opt_r {
                cells.push(t.map(cell).unwrap_or_default());
            }
            for regime in [AsymptoticRegime::Small, AsymptoticRegime::Large] {
                for k in per_kind {
                    cells.push(try_cell(optimal_time_fast_ratio_asymptotic(
                        n, budget, k, regime,
                    )));
                }
            }
            for (i, k) in per_kind.iter().enumerate() {
                match t_opt[i] {
                    Some(t) => cells.push(cell(fast_uncertainty_raw(t, n, budget, *k))),
                    None => cells.push(String::new()),
                }
            }
            for (i, k) in per_kind.iter().enumerate() {
                match t_opt_r[i] {
                    Some(t) => cells.push(cell(fast_uncertainty_raw(t, n, budget, *k))),
                    None => cells.push(String::new()),
                }
            }
            for regime in [AsymptoticRegime::Small, AsymptoticRegime::Large] {
                for k in per_kind {
                    cells.push(try_cell(fast_uncertainty_at_ratio_optimum_asymptotic(
                        n, budget, k, regime,
                    )));
                }
            }
            for (i, k) in per_kind.iter().enumerate() {
                match t_opt[i] {
                    Some(t) => cells.push(cell(fast_ratio_raw(t, n, budget, *k))),
                    None => cells.push(String::new()),
                }
            }
            for (i, k) in per_kind.iter().enumerate() {
                match t_opt_r[i] {
                    Some(t) => cells.push(cell(fast_ratio_raw(t, n, budget, *k))),
                    None => cells.push(String::new()),
                }
            }
            for regime in [AsymptoticRegime::Small, AsymptoticRegime::Large] {
                for k in per_kind {
                    cells.push(try_cell(fast_ratio_at_ratio_optimum_asymptotic(
                        n, budget, k, regime,
                    )));
                }
            }
            project(cells, &keep)
        })
        .collect();
    let header = project(FAST_COLUMNS.iter().map(|s| s.to_string()).collect(), &keep);
    let mut text = header;
    text.push('\n');
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    write_file(out, &text)
}

/// Long-format 2-D grid of the chosen objective with a flag marking, within
/// each fixed M or N column, the interaction time of smallest value.
pub fn cmd_contour(
    epsilon: f64,
    kind: NoiseKind,
    family: RegimeFamily,
    objective: OptimizationTarget,
    grid_mn: &SweepSpec,
    grid_t: &SweepSpec,
    out: &Path,
) -> Result<()> {
    let expected = match family {
        RegimeFamily::Slow => SweepVariable::RepetitionCount,
        RegimeFamily::Fast => SweepVariable::TimeBudget,
    };
    if grid_mn.variable() != expected || grid_t.variable() != SweepVariable::InteractionTime {
        return Err(Error::domain(
            "contours need an M or N axis matching the regime and a t/T2 axis",
        ));
    }
    let budget = budget_for(epsilon)?;
    let ts = grid_t.values();
    let mut text = String::from("m_or_n,t_over_t2,value,is_ridge\n");
    for mn in grid_mn.values() {
        let values: Vec<f64> = ts
            .iter()
            .map(|&t| {
                let g = match kind {
                    NoiseKind::White => t,
                    NoiseKind::LowFrequency => t * t,
                };
                match (family, objective) {
                    (RegimeFamily::Slow, OptimizationTarget::MinimizeClientUncertainty) => {
                        client_uncertainty_upper(t, mn, budget, g)
                    }
                    (RegimeFamily::Slow, OptimizationTarget::MinimizeRatio) => {
                        uncertainty_ratio(t, mn, budget, g)
                    }
                    (RegimeFamily::Fast, OptimizationTarget::MinimizeClientUncertainty) => {
                        fast_uncertainty_raw(t, mn, budget, kind)
                    }
                    (RegimeFamily::Fast, OptimizationTarget::MinimizeRatio) => {
                        fast_ratio_raw(t, mn, budget, kind)
                    }
                }
            })
            .collect();
        let ridge = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        for (i, (&t, &v)) in ts.iter().zip(&values).enumerate() {
            let _ = writeln!(
                text,
                "{},{},{},{}",
                cell(mn),
                cell(t),
                cell(v),
                u8::from(i == ridge)
            );
        }
    }
    write_file(out, &text)
}

/// Everything `cmd_montecarlo` needs beyond the output path.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloParams {
    pub epsilon: f64,
    pub kind: NoiseKind,
    pub t2: f64,
    pub omega_t: f64,
    pub t_over_t2: f64,
    pub shots: u64,
    pub trials: u64,
    pub mode: SamplingMode,
    pub seed: u64,
}

/// Agreement summary between a Monte Carlo campaign and the analytic
/// uncertainty of the simulated state.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloSummary {
    pub empirical_rmse: f64,
    pub analytic_uncertainty: f64,
    pub z_score: f64,
}

/// Simulates the protocol at the worst-case client state and compares the
/// empirical RMSE against the analytic prediction. Writes one estimate per
/// trial and returns the summary.
pub fn cmd_montecarlo(p: &MonteCarloParams, out: &Path) -> Result<MonteCarloSummary> {
    let budget = budget_for(p.epsilon)?;
    let state = worst_case_client_state(budget);
    let model = DephasingModel::new(p.kind, p.t2)?;
    let t = p.t_over_t2 * p.t2;
    if !(t > 0.0) {
        return Err(Error::domain(format!(
            "interaction time must be positive, got t/T2 = {}",
            p.t_over_t2
        )));
    }
    let config = SensingConfig::new(
        p.omega_t / t,
        t,
        model,
        budget,
        ReadoutRegime::SlowReadout {
            repetitions: p.shots,
        },
    )?;
    let tc = TrialConfig::new(config, state, p.shots, p.trials, p.mode)?;
    let estimates = run_trials(&tc, p.seed);
    let mut text = String::from("trial,estimate\n");
    for (i, est) in estimates.iter().enumerate() {
        let _ = writeln!(text, "{i},{}", cell(*est));
    }
    write_file(out, &text)?;
    let omega = config.omega();
    let rmse = (estimates
        .iter()
        .map(|e| (e - omega) * (e - omega))
        .sum::<f64>()
        / estimates.len() as f64)
        .sqrt();
    let analytic = client_uncertainty(t, p.shots as f64, state.ry(), config.g());
    // an RMSE over trials has sampling standard error about analytic / sqrt(2 trials)
    let se = analytic / (2.0 * p.trials as f64).sqrt();
    Ok(MonteCarloSummary {
        empirical_rmse: rmse,
        analytic_uncertainty: analytic,
        z_score: (rmse - analytic) / se,
    })
}

/// Aggregate outcome of repeated sampling-test simulations.
#[derive(Debug, Clone, Copy)]
pub struct SamplingTestSummary {
    pub k: u64,
    pub pass_rate: f64,
    pub violation_rate: f64,
}

/// Runs the register sampling test `runs` times on identically prepared
/// Werner registers of the given fidelity, writing one report row per run.
pub fn cmd_sampling_test(
    p: &SamplingTestParams,
    fidelity: f64,
    runs: u64,
    seed: u64,
    out: &Path,
) -> Result<SamplingTestSummary> {
    if runs == 0 {
        return Err(Error::domain("need at least one test run"));
    }
    let k = required_registers(p);
    let registers = vec![TwoQubitRegister::werner(fidelity)?; 4 * k as usize];
    let mut text =
        String::from("run,k,n_fail,passed,fidelity_lower_bound,selected_fidelity,bound_violated\n");
    let mut passes = 0u64;
    let mut violations = 0u64;
    for run in 0..runs {
        let mut rng = RngStream::new(seed, run);
        let (report, selected) = run_random_sampling_test(p, &registers, &mut rng)?;
        let true_fidelity = registers[selected].bell_fidelity();
        let violated = report.fidelity_lower_bound > true_fidelity;
        passes += u64::from(report.passed);
        violations += u64::from(violated);
        let _ = writeln!(
            text,
            "{run},{},{},{},{},{},{}",
            report.k,
            report.n_fail,
            u8::from(report.passed),
            cell(report.fidelity_lower_bound),
            cell(true_fidelity),
            u8::from(violated)
        );
    }
    write_file(out, &text)?;
    Ok(SamplingTestSummary {
        k,
        pass_rate: passes as f64 / runs as f64,
        violation_rate: violations as f64 / runs as f64,
    })
}

/// Emits the data behind one of the published plots (ids 3 through 11) into
/// `out_dir` and returns the written paths.
///
/// Ids 3 and 4 are the slow-readout sweeps at epsilon = 0.001, ids 5
/// through 8 the fast-readout sweeps at epsilon = 0.0001, and ids 9, 10, 11
/// the uncertainty and ratio contours (one file per noise kind).
pub fn cmd_reproduce_figure(id: u32, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    match id {
        3 | 4 => {
            let sweep = SweepSpec::new(
                SweepVariable::RepetitionCount,
                1.0,
                1e8,
                200,
                SweepScale::Log,
            )?;
            let path = out_dir.join(format!("figure{id:02}.csv"));
            cmd_sweep_slow(0.001, None, &sweep, &path)?;
            written.push(path);
        }
        5..=8 => {
            let sweep =
                SweepSpec::new(SweepVariable::TimeBudget, 1.0, 1e10, 200, SweepScale::Log)?;
            let path = out_dir.join(format!("figure{id:02}.csv"));
            cmd_sweep_fast(0.0001, None, &sweep, &path)?;
            written.push(path);
        }
        9..=11 => {
            let (family, objective, epsilon, t_ranges) = match id {
                9 => (
                    RegimeFamily::Slow,
                    OptimizationTarget::MinimizeClientUncertainty,
                    0.001,
                    [(0.9, 2.0), (0.7, 1.3)],
                ),
                10 => (
                    RegimeFamily::Fast,
                    OptimizationTarget::MinimizeClientUncertainty,
                    0.0001,
                    [(0.5, 2.0), (0.6, 1.4)],
                ),
                _ => (
                    RegimeFamily::Fast,
                    OptimizationTarget::MinimizeRatio,
                    0.0001,
                    [(0.2, 2.0), (0.2, 1.4)],
                ),
            };
            let mn_variable = match family {
                RegimeFamily::Slow => SweepVariable::RepetitionCount,
                RegimeFamily::Fast => SweepVariable::TimeBudget,
            };
            let grid_mn = SweepSpec::new(mn_variable, 1.0, 1e4, 101, SweepScale::Log)?;
            for (kind, label, (t_lo, t_hi)) in [
                (NoiseKind::White, "white", t_ranges[0]),
                (NoiseKind::LowFrequency, "low", t_ranges[1]),
            ] {
                let grid_t = SweepSpec::new(
                    SweepVariable::InteractionTime,
                    t_lo,
                    t_hi,
                    101,
                    SweepScale::Linear,
                )?;
                let path = out_dir.join(format!("figure{id:02}_{label}.csv"));
                cmd_contour(epsilon, kind, family, objective, &grid_mn, &grid_t, &path)?;
                written.push(path);
            }
        }
        _ => {
            return Err(Error::domain(format!(
                "unknown figure id {id}: this tool reproduces figures 3 through 11"
            )));
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing_round_trips() {
        let s = SweepSpec::parse("1:100:5:log", SweepVariable::RepetitionCount).unwrap();
        assert_eq!(s.points(), 5);
        let v = s.values();
        assert_eq!(v.len(), 5);
        assert!((v[0] - 1.0).abs() < 1e-12);
        assert!((v[2] - 10.0).abs() / 10.0 < 1e-12);
        assert!((v[4] - 100.0).abs() / 100.0 < 1e-12);

        let lin = SweepSpec::parse("0:1:3:lin", SweepVariable::InteractionTime).unwrap();
        assert_eq!(lin.values(), vec![0.0, 0.5, 1.0]);

        assert!(SweepSpec::parse("5:1:3:lin", SweepVariable::TimeBudget).is_err());
        assert!(SweepSpec::parse("0:1:3:log", SweepVariable::TimeBudget).is_err());
        assert!(SweepSpec::parse("1:2:1:lin", SweepVariable::TimeBudget).is_err());
        assert!(SweepSpec::parse("1:2:4", SweepVariable::TimeBudget).is_err());
        assert!(SweepSpec::parse("1:2:4:cubic", SweepVariable::TimeBudget).is_err());
    }

    #[test]
    fn cells_carry_seventeen_significant_digits() {
        assert_eq!(cell(1.0), "1.0000000000000000e0");
        assert_eq!(cell(0.5), "5.0000000000000000e-1");
        assert_eq!(cell(-0.03125), "-3.1250000000000000e-2");
        assert_eq!(try_cell(Err(Error::domain("x"))), "");
    }

    #[test]
    fn column_projection_respects_kind_and_target() {
        assert!(kind_keeps("M", Some(NoiseKind::White)));
        assert!(kind_keeps("t_opt_white", Some(NoiseKind::White)));
        assert!(!kind_keeps("t_opt_low", Some(NoiseKind::White)));
        assert!(!kind_keeps("u_small_asym_white", Some(NoiseKind::LowFrequency)));
        assert!(kind_keeps("u_small_asym_low", None));

        let unc = Some(OptimizationTarget::MinimizeClientUncertainty);
        let rat = Some(OptimizationTarget::MinimizeRatio);
        assert!(target_keeps("N", unc) && target_keeps("N", rat));
        assert!(target_keeps("t_opt_uncertainty_white", unc));
        assert!(!target_keeps("t_opt_uncertainty_white", rat));
        assert!(target_keeps("u_at_toptR_small_asym_low", rat));
        assert!(!target_keeps("u_at_toptR_small_asym_low", unc));
        assert!(target_keeps("ratio_at_topt_white", unc));
        assert!(!target_keeps("ratio_at_topt_white", rat));
    }

    #[test]
    fn unknown_figure_ids_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(cmd_reproduce_figure(2, dir.path()).is_err());
        assert!(cmd_reproduce_figure(12, dir.path()).is_err());
    }

    #[test]
    fn contour_marks_one_ridge_point_per_column() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("contour.csv");
        let grid_mn = SweepSpec::new(
            SweepVariable::RepetitionCount,
            1.0,
            100.0,
            4,
            SweepScale::Log,
        )
        .unwrap();
        let grid_t = SweepSpec::new(
            SweepVariable::InteractionTime,
            0.9,
            2.0,
            21,
            SweepScale::Linear,
        )
        .unwrap();
        cmd_contour(
            0.001,
            NoiseKind::White,
            RegimeFamily::Slow,
            OptimizationTarget::MinimizeClientUncertainty,
            &grid_mn,
            &grid_t,
            &path,
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "m_or_n,t_over_t2,value,is_ridge");
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 4 * 21);
        for block in rows.chunks(21) {
            let flags: u32 = block
                .iter()
                .map(|r| r.rsplit(',').next().unwrap().parse::<u32>().unwrap())
                .sum();
            assert_eq!(flags, 1);
        }
    }
}
