//! Greedy facility closing, greedy harmony search and the sampling +
//! exhaustive hybrid.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmony::{init_bias, random_vector, HarmonyParams, RunStats, SearchContext, Transform};
use crate::hop_paths::HopPathCache;
use crate::instance::Instance;
use crate::objective::{Evaluator, Solution};
use crate::vector::HarmonyVector;

/// Largest `top_k` the hybrid accepts; the exhaustive phase visits
/// `2^(top_k - 1)` subsets.
pub const MAX_TOP_K: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyParams {
    pub max_open: usize,
    pub hms: usize,
    pub sample_count: usize,
    pub top_k: usize,
    pub greedy_limit: usize,
    /// Also cap improvised vectors, not only the initial memory.
    pub close_improvised: bool,
}

impl Default for GreedyParams {
    fn default() -> Self {
        GreedyParams {
            max_open: 6,
            hms: 150,
            sample_count: 1500,
            top_k: 18,
            greedy_limit: 18,
            close_improvised: true,
        }
    }
}

/// Per-facility closing scores, keyed by facility position. The root never
/// appears.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClosingScores {
    pub first_nearest: BTreeMap<usize, f64>,
    pub second_nearest: BTreeMap<usize, f64>,
    pub cost_of_closing: BTreeMap<usize, f64>,
}

impl ClosingScores {
    /// Scores of every open non-root facility of `vector`.
    pub fn compute(paths: &HopPathCache<'_>, vector: &HarmonyVector) -> Self {
        let instance = paths.instance();
        let root = instance.root_position();
        let mut scores = ClosingScores::default();
        for p in vector.open_positions().filter(|&p| p != root) {
            scores.first_nearest.insert(p, 0.0);
            scores.second_nearest.insert(p, 0.0);
        }
        let open: Vec<usize> = vector.open_positions().collect();
        for k in 0..instance.customer_count() {
            // Cheapest facility (ties to the lower position) and the runner-up cost.
            let mut first = (f64::INFINITY, usize::MAX);
            let mut second = f64::INFINITY;
            for &g in &open {
                let c = instance.assignment_cost(g, k);
                if c < first.0 {
                    second = first.0;
                    first = (c, g);
                } else if c < second {
                    second = c;
                }
            }
            let (first, f) = first;
            if f == root {
                continue;
            }
            *scores.first_nearest.get_mut(&f).unwrap() += first;
            *scores.second_nearest.get_mut(&f).unwrap() += second;
        }
        for (&p, &first) in &scores.first_nearest {
            let second = scores.second_nearest[&p];
            let delta = second - first - instance.opening_cost(p) - paths.root_distance(p);
            scores.cost_of_closing.insert(p, delta);
        }
        scores
    }

    /// Facility with the smallest closing cost, ties to the lower position.
    pub fn best_to_close(&self) -> Option<usize> {
        self.cost_of_closing
            .iter()
            .fold(None, |best: Option<(usize, f64)>, (&p, &c)| match best {
                Some((_, b)) if b <= c => best,
                _ => Some((p, c)),
            })
            .map(|(p, _)| p)
    }
}

/// Cheapest and second-cheapest open facility of one customer.
#[derive(Debug, Clone, Copy)]
struct Nearest {
    first: f64,
    first_pos: usize,
    second: f64,
    second_pos: usize,
}

impl Nearest {
    /// `open` must be ascending so that ties go to the lower position.
    fn scan(instance: &Instance, open: &[usize], k: usize) -> Self {
        let mut n = Nearest {
            first: f64::INFINITY,
            first_pos: usize::MAX,
            second: f64::INFINITY,
            second_pos: usize::MAX,
        };
        for &g in open {
            let c = instance.assignment_cost(g, k);
            if c < n.first {
                n.second = n.first;
                n.second_pos = n.first_pos;
                n.first = c;
                n.first_pos = g;
            } else if c < n.second {
                n.second = c;
                n.second_pos = g;
            }
        }
        n
    }
}

/// Closes facilities one at a time, most beneficial first, until at most
/// `max_open` remain open. Gives the same result as recomputing
/// [`ClosingScores`] every round, but only rescans the customers whose two
/// nearest facilities changed.
pub fn greedy_close_with(paths: &HopPathCache<'_>, vector: &HarmonyVector, max_open: usize) -> Result<HarmonyVector> {
    if max_open == 0 {
        return Err(Error::InvalidParams("max_open must be at least 1".into()));
    }
    let instance = paths.instance();
    let root = instance.root_position();
    if vector.len() != instance.facility_count() || !vector.is_open(root) {
        return Err(Error::InvalidVector(
            "expected a root-open vector of facility length".into(),
        ));
    }
    let mut v = vector.clone();
    let mut open: Vec<usize> = v.open_positions().collect();
    if open.len() <= max_open {
        return Ok(v);
    }
    let mut near: Vec<Nearest> = (0..instance.customer_count())
        .map(|k| Nearest::scan(instance, &open, k))
        .collect();
    let mut first_sum = vec![0.0; instance.facility_count()];
    let mut second_sum = vec![0.0; instance.facility_count()];
    while open.len() > max_open {
        first_sum.iter_mut().for_each(|x| *x = 0.0);
        second_sum.iter_mut().for_each(|x| *x = 0.0);
        for n in near.iter().filter(|n| n.first_pos != root) {
            first_sum[n.first_pos] += n.first;
            second_sum[n.first_pos] += n.second;
        }
        let mut best: Option<(usize, f64)> = None;
        for &p in open.iter().filter(|&&p| p != root) {
            let c = second_sum[p] - first_sum[p] - instance.opening_cost(p) - paths.root_distance(p);
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((p, c));
            }
        }
        let Some((p, _)) = best else {
            break;
        };
        v.set(p, false);
        open.retain(|&g| g != p);
        for (k, n) in near.iter_mut().enumerate() {
            if n.first_pos == p || n.second_pos == p {
                *n = Nearest::scan(instance, &open, k);
            }
        }
    }
    Ok(v)
}

pub fn greedy_close(instance: &Instance, vector: &HarmonyVector, max_open: usize) -> Result<HarmonyVector> {
    greedy_close_with(&HopPathCache::new(instance), vector, max_open)
}

/// Harmony search where every candidate is repaired and then capped by
/// [`greedy_close`]. The memory size comes from `greedy.hms`.
pub fn ghs_solve(instance: &Instance, params: &HarmonyParams, greedy: &GreedyParams) -> Result<(Solution, RunStats)> {
    ghs_solve_with(&Evaluator::new(instance), params, greedy)
}

pub fn ghs_solve_with(
    evaluator: &Evaluator<'_>,
    params: &HarmonyParams,
    greedy: &GreedyParams,
) -> Result<(Solution, RunStats)> {
    if greedy.max_open == 0 {
        return Err(Error::InvalidParams("max_open must be at least 1".into()));
    }
    let params = HarmonyParams {
        hms: greedy.hms,
        ..params.clone()
    };
    let paths = evaluator.paths();
    let capped = |v: &mut HarmonyVector| -> Result<()> {
        evaluator.repair(v);
        *v = greedy_close_with(paths, v, greedy.max_open)?;
        Ok(())
    };
    let repaired = |v: &mut HarmonyVector| -> Result<()> {
        evaluator.repair(v);
        Ok(())
    };
    let step: Transform<'_> = if greedy.close_improvised { &capped } else { &repaired };
    let (best, stats) = SearchContext::new(evaluator, &capped, step).run(&params)?;
    Ok((evaluator.evaluate(&best)?, stats))
}

/// Facility positions ranked by how often they are open in `samples`,
/// descending; ties go to the lower position. The root comes first.
pub fn rank_facilities(instance: &Instance, samples: &[HarmonyVector]) -> Vec<usize> {
    let root = instance.root_position();
    let mut counts = vec![0usize; instance.facility_count()];
    for s in samples {
        for p in s.open_positions() {
            counts[p] += 1;
        }
    }
    let mut order: Vec<usize> = (0..instance.facility_count()).filter(|&p| p != root).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    order.insert(0, root);
    order
}

/// Sampling followed by exhaustive search over the most frequently opened
/// facilities. `top_k` counts the root and is clamped to the number of
/// facilities reachable from it.
pub fn hybrid_solve(instance: &Instance, greedy: &GreedyParams, seed: u64) -> Result<(Solution, RunStats)> {
    hybrid_solve_with(&Evaluator::new(instance), greedy, seed)
}

pub fn hybrid_solve_with(evaluator: &Evaluator<'_>, greedy: &GreedyParams, seed: u64) -> Result<(Solution, RunStats)> {
    if greedy.top_k > MAX_TOP_K {
        return Err(Error::InvalidParams(format!(
            "top_k {} is too large for exhaustive search (2^{} subsets); use at most {MAX_TOP_K}",
            greedy.top_k,
            greedy.top_k - 1
        )));
    }
    if greedy.top_k == 0 || greedy.sample_count == 0 || greedy.greedy_limit == 0 {
        return Err(Error::InvalidParams(
            "top_k, sample_count and greedy_limit must be positive".into(),
        ));
    }
    let started = Instant::now();
    let instance = evaluator.instance();
    let root = instance.root_position();
    let paths = evaluator.paths();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bias = init_bias(instance);

    let samples = (0..greedy.sample_count)
        .map(|_| {
            let mut v = random_vector(&bias, root, &mut rng);
            evaluator.repair(&mut v);
            greedy_close_with(paths, &v, greedy.greedy_limit)
        })
        .collect::<Result<Vec<_>>>()?;

    // Facilities the root cannot reach are closed by repair anyway.
    let chosen: Vec<usize> = rank_facilities(instance, &samples)
        .into_iter()
        .skip(1)
        .filter(|&p| paths.reachable_from_root(p))
        .take(greedy.top_k - 1)
        .collect();
    log::debug!("hybrid: exhaustive search over {} facilities", chosen.len() + 1);

    let subsets = 1u64 << chosen.len();
    let best = (0..subsets)
        .into_par_iter()
        .map(|mask| {
            let mut bits = vec![false; instance.facility_count()];
            bits[root] = true;
            for (j, &p) in chosen.iter().enumerate() {
                bits[p] = mask >> j & 1 == 1;
            }
            let mut v = HarmonyVector::new(bits);
            evaluator.repair(&mut v);
            let x = evaluator.objective(&v)?;
            Ok((x, v))
        })
        .try_reduce_with(|a, b| Ok(if (b.0, &b.1) < (a.0, &a.1) { b } else { a }))
        .expect("at least the root-only subset")?;

    let solution = evaluator.evaluate(&best.1)?;
    let stats = RunStats {
        iterations: subsets as usize,
        evaluations: samples.len() + subsets as usize,
        memory_size: 0,
        trajectory: vec![(0, solution.total())],
        elapsed: started.elapsed(),
    };
    Ok((solution, stats))
}
