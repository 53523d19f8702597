//! Running a configured solver over seeds and collecting records.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::greedy::{ghs_solve_with, hybrid_solve_with, GreedyParams};
use crate::harmony::{hs_solve_with, HarmonyParams, RunStats};
use crate::instance::Instance;
use crate::objective::{Evaluator, Solution};
use crate::oracle::{exact_solve_with, OracleLimits};
use crate::report::{Algorithm, RunRecord};
use crate::validate::validate;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// The seed field is ignored; seeds are passed per run.
    pub harmony: HarmonyParams,
    pub greedy: GreedyParams,
    pub limits: OracleLimits,
    pub validate: bool,
    pub timing: bool,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        SolverConfig {
            algorithm,
            harmony: HarmonyParams::default(),
            greedy: GreedyParams::default(),
            limits: OracleLimits::default(),
            validate: true,
            timing: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub solution: Solution,
    pub stats: RunStats,
    pub record: RunRecord,
}

/// One solver run. Only the solve call is timed.
pub fn run_once(instance: &Instance, config: &SolverConfig, seed: u64) -> Result<RunOutcome> {
    let evaluator = Evaluator::new(instance);
    let harmony = HarmonyParams {
        seed,
        ..config.harmony.clone()
    };
    let started = Instant::now();
    let (solution, stats) = match config.algorithm {
        Algorithm::Hs => hs_solve_with(&evaluator, &harmony)?,
        Algorithm::Ghs => ghs_solve_with(&evaluator, &harmony, &config.greedy)?,
        Algorithm::Hybrid => hybrid_solve_with(&evaluator, &config.greedy, seed)?,
        Algorithm::Oracle => {
            let s = exact_solve_with(instance, config.limits)?;
            let stats = RunStats {
                iterations: 1,
                evaluations: 1,
                ..RunStats::default()
            };
            (s, stats)
        }
    };
    let cpu_seconds = started.elapsed().as_secs_f64();

    if !solution.total().is_finite() {
        return Err(Error::InvalidSolution(format!(
            "{} produced no hop-feasible solution",
            config.algorithm
        )));
    }
    if config.validate {
        let violations = validate(instance, &solution);
        if !violations.is_empty() {
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::InvalidSolution(list.join("; ")));
        }
    }
    let record = RunRecord {
        instance: instance.name().to_string(),
        algorithm: config.algorithm,
        hop: instance.hop_limit(),
        seed,
        objective: solution.total(),
        cpu_seconds: config.timing.then_some(cpu_seconds),
        iterations: stats.iterations,
        open_count: solution.open_count(),
    };
    Ok(RunOutcome {
        solution,
        stats,
        record,
    })
}

/// Runs seeds `master_seed, master_seed + 1, ...` in parallel and returns the
/// outcomes in seed order.
pub fn run_repeats(
    instance: &Instance,
    config: &SolverConfig,
    master_seed: u64,
    repeats: usize,
) -> Result<Vec<RunOutcome>> {
    (0..repeats as u64)
        .into_par_iter()
        .map(|i| run_once(instance, config, master_seed.wrapping_add(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::tiny1;

    #[test]
    fn every_algorithm_on_tiny1() {
        let inst = tiny1();
        for a in Algorithm::ALL {
            let mut config = SolverConfig::new(a);
            config.greedy.max_open = 2;
            let out = run_once(&inst, &config, 1).unwrap();
            assert_eq!(out.record.objective, 10.0, "{a}");
            assert_eq!(out.record.open_count, 2);
            assert_eq!(out.record.hop, 2);
        }
    }

    #[test]
    fn repeats_use_consecutive_seeds() {
        let inst = tiny1();
        let mut config = SolverConfig::new(Algorithm::Hs);
        config.timing = false;
        let out = run_repeats(&inst, &config, 7, 3).unwrap();
        let seeds: Vec<u64> = out.iter().map(|o| o.record.seed).collect();
        assert_eq!(seeds, vec![7, 8, 9]);
        assert!(out.iter().all(|o| o.record.cpu_seconds.is_none()));
    }

    #[test]
    fn oracle_limit_is_an_error() {
        let inst = tiny1();
        let mut config = SolverConfig::new(Algorithm::Oracle);
        config.limits.max_facilities = 1;
        assert!(matches!(run_once(&inst, &config, 0), Err(Error::OracleLimit(_))));
    }
}
