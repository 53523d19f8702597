//! Harmony search over facility-opening vectors.
//!
//! The memory holds distinct evaluated vectors sorted by objective. New
//! vectors are improvised variable by variable: with probability `HMCR` a bit
//! is copied from a random memory row, otherwise it is drawn fresh using a
//! per-facility opening probability (the facility bias). `HMCR` ramps
//! linearly from its start value to 1. A candidate replaces the worst row
//! only when strictly better, and the run stops once the best value has not
//! improved for `max_no_improve` iterations.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, COST_EPS};
use crate::objective::{Evaluator, Solution};
use crate::vector::HarmonyVector;

pub const BIAS_MIN: f64 = 0.05;
pub const BIAS_MAX: f64 = 0.95;

/// Random draws before falling back to systematic search for a new vector.
const FILL_RETRIES: usize = 64;
/// Free-variable count up to which the fallback enumerates every vector.
const EXHAUSTIVE_FILL_BITS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonyParams {
    pub hms: usize,
    pub hmcr_start: f64,
    pub hmcr_ramp_iters: usize,
    pub par: f64,
    /// Kept for completeness; a binary variable has no bandwidth to speak of.
    pub bw: f64,
    pub max_no_improve: usize,
    pub seed: u64,
}

impl Default for HarmonyParams {
    fn default() -> Self {
        HarmonyParams {
            hms: 50,
            hmcr_start: 0.96,
            hmcr_ramp_iters: 5000,
            par: 0.0,
            bw: 0.0,
            max_no_improve: 1000,
            seed: 0,
        }
    }
}

impl HarmonyParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.into()));
        if self.hms < 2 {
            return bad("hms must be at least 2");
        }
        if !(self.hmcr_start > 0.0 && self.hmcr_start <= 1.0) {
            return bad("hmcr must lie in (0, 1]");
        }
        if !(0.0..1.0).contains(&self.par) || self.par > self.hmcr_start {
            return bad("par must lie in [0, 1) and not exceed hmcr");
        }
        if self.hmcr_ramp_iters == 0 || self.max_no_improve == 0 {
            return bad("hmcr_ramp_iters and max_no_improve must be positive");
        }
        Ok(())
    }

    /// Memory consideration rate at a given iteration.
    pub fn hmcr_at(&self, iteration: usize) -> f64 {
        let t = iteration as f64 / self.hmcr_ramp_iters as f64;
        (self.hmcr_start + (1.0 - self.hmcr_start) * t).min(1.0)
    }
}

/// Counters and incumbent history of one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    pub iterations: usize,
    /// Distinct vectors evaluated.
    pub evaluations: usize,
    pub memory_size: usize,
    /// `(iteration, best objective)` every time the incumbent improved.
    pub trajectory: Vec<(usize, f64)>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemoryEntry {
    pub vector: HarmonyVector,
    pub objective: f64,
}

/// Distinct vectors sorted by ascending objective.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonyMemory {
    capacity: usize,
    entries: Vec<MemoryEntry>,
    members: HashSet<HarmonyVector>,
}

impl HarmonyMemory {
    pub fn new(capacity: usize) -> Self {
        HarmonyMemory {
            capacity,
            entries: Vec::with_capacity(capacity),
            members: HashSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.entries.len() >= self.capacity
    }

    pub fn entries(&self) -> &[MemoryEntry] {
        &self.entries
    }

    pub fn contains(&self, v: &HarmonyVector) -> bool {
        self.members.contains(v)
    }

    pub fn best(&self) -> Option<&MemoryEntry> {
        self.entries.first()
    }

    pub fn worst(&self) -> Option<&MemoryEntry> {
        self.entries.last()
    }

    fn insert_sorted(&mut self, entry: MemoryEntry) {
        let at = self.entries.partition_point(|e| {
            e.objective < entry.objective || (e.objective == entry.objective && e.vector < entry.vector)
        });
        self.members.insert(entry.vector.clone());
        self.entries.insert(at, entry);
    }

    /// Adds a distinct vector. Below capacity it is always stored; at
    /// capacity it must be strictly better than the worst row, which it then
    /// replaces. Returns whether the memory changed.
    pub fn offer(&mut self, vector: HarmonyVector, objective: f64) -> bool {
        if self.contains(&vector) || objective.is_nan() {
            return false;
        }
        if self.is_full() {
            match self.worst() {
                Some(w) if objective < w.objective - COST_EPS => {
                    let gone = self.entries.pop().unwrap();
                    self.members.remove(&gone.vector);
                }
                _ => return false,
            }
        }
        self.insert_sorted(MemoryEntry { vector, objective });
        true
    }

    /// Share of rows in which each facility is open.
    pub fn open_frequencies(&self, facility_count: usize) -> Vec<f64> {
        let mut freq = vec![0.0; facility_count];
        for e in &self.entries {
            for p in e.vector.open_positions() {
                freq[p] += 1.0;
            }
        }
        let n = self.entries.len().max(1) as f64;
        freq.iter_mut().for_each(|f| *f /= n);
        freq
    }
}

fn min_max_normalise(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= COST_EPS {
        return vec![0.5; values.len()];
    }
    values.iter().map(|v| (v - lo) / (hi - lo)).collect()
}

/// Initial opening probability of each facility: cheap facilities with cheap
/// average assignment costs are favoured. The root is always 1.
pub fn init_bias(instance: &Instance) -> Vec<f64> {
    let d = instance.customer_count();
    let mean_assign: Vec<f64> = (0..instance.facility_count())
        .map(|p| {
            if d == 0 {
                0.0
            } else {
                instance.assignment_row(p).iter().sum::<f64>() / d as f64
            }
        })
        .collect();
    let open = min_max_normalise(instance.opening_costs());
    let assign = min_max_normalise(&mean_assign);
    let mut bias: Vec<f64> = open
        .iter()
        .zip(&assign)
        .map(|(o, a)| (0.5 * (1.0 - o) + 0.5 * (1.0 - a)).clamp(BIAS_MIN, BIAS_MAX))
        .collect();
    bias[instance.root_position()] = 1.0;
    bias
}

/// Blends the initial bias with how often each facility is open in memory.
pub fn update_bias(memory: &HarmonyMemory, initial: &[f64], root_position: usize) -> Vec<f64> {
    let freq = memory.open_frequencies(initial.len());
    let mut bias: Vec<f64> = initial
        .iter()
        .zip(&freq)
        .map(|(p, f)| (0.5 * p + 0.5 * f).clamp(BIAS_MIN, BIAS_MAX))
        .collect();
    bias[root_position] = 1.0;
    bias
}

/// Bitwise draw from the bias.
pub fn random_vector<R: Rng + ?Sized>(bias: &[f64], root_position: usize, rng: &mut R) -> HarmonyVector {
    let bits = bias
        .iter()
        .enumerate()
        .map(|(i, &p)| i == root_position || rng.gen::<f64>() < p)
        .collect();
    HarmonyVector::new(bits)
}

/// A new vector from memory consideration and random selection.
pub fn improvise<R: Rng + ?Sized>(
    memory: &HarmonyMemory,
    params: &HarmonyParams,
    bias: &[f64],
    root_position: usize,
    iteration: usize,
    rng: &mut R,
) -> HarmonyVector {
    assert!(!memory.is_empty(), "improvising from an empty memory");
    let hmcr = params.hmcr_at(iteration);
    let rows = memory.entries();
    let bits = (0..bias.len())
        .map(|i| {
            if i == root_position {
                return true;
            }
            if rng.gen::<f64>() < hmcr {
                let bit = rows[rng.gen_range(0..rows.len())].vector.is_open(i);
                if params.par > 0.0 && rng.gen::<f64>() < params.par {
                    !bit
                } else {
                    bit
                }
            } else {
                rng.gen::<f64>() < bias[i]
            }
        })
        .collect();
    HarmonyVector::new(bits)
}

pub(crate) type Transform<'e> = &'e dyn Fn(&mut HarmonyVector) -> Result<()>;

/// Mutable state of one search run: the evaluator, its memo of objective
/// values and the candidate transforms (repair, optionally greedy closing)
/// applied while filling the memory and after each improvisation.
pub(crate) struct SearchContext<'e, 'a> {
    evaluator: &'e Evaluator<'a>,
    fill_transform: Transform<'e>,
    step_transform: Transform<'e>,
    memo: HashMap<HarmonyVector, f64>,
}

impl<'e, 'a> SearchContext<'e, 'a> {
    pub fn new(evaluator: &'e Evaluator<'a>, fill_transform: Transform<'e>, step_transform: Transform<'e>) -> Self {
        SearchContext {
            evaluator,
            fill_transform,
            step_transform,
            memo: HashMap::new(),
        }
    }

    pub fn evaluations(&self) -> usize {
        self.memo.len()
    }

    pub fn objective(&mut self, v: &HarmonyVector) -> Result<f64> {
        if let Some(&x) = self.memo.get(v) {
            return Ok(x);
        }
        let x = self.evaluator.objective(v)?;
        self.memo.insert(v.clone(), x);
        Ok(x)
    }

    fn candidate(&self, mut v: HarmonyVector) -> Result<HarmonyVector> {
        (self.fill_transform)(&mut v)?;
        Ok(v)
    }

    /// Looks for a transformed vector not yet in memory.
    fn fresh_vector<R: Rng>(&self, memory: &HarmonyMemory, bias: &[f64], rng: &mut R) -> Result<Option<HarmonyVector>> {
        let instance = self.evaluator.instance();
        let root = instance.root_position();
        let mut last = None;
        for _ in 0..FILL_RETRIES {
            let v = self.candidate(random_vector(bias, root, rng))?;
            if !memory.contains(&v) {
                return Ok(Some(v));
            }
            last = Some(v);
        }

        let free: Vec<usize> = (0..instance.facility_count())
            .filter(|&p| p != root && self.evaluator.paths().reachable_from_root(p))
            .collect();
        if free.len() <= EXHAUSTIVE_FILL_BITS {
            let total = 1u64 << free.len();
            let offset = rng.gen_range(0..total);
            for step in 0..total {
                let mask = (offset + step) % total;
                let mut bits = vec![false; instance.facility_count()];
                bits[root] = true;
                for (j, &p) in free.iter().enumerate() {
                    bits[p] = mask >> j & 1 == 1;
                }
                let v = self.candidate(HarmonyVector::new(bits))?;
                if !memory.contains(&v) {
                    return Ok(Some(v));
                }
            }
            return Ok(None);
        }

        let base = last.expect("at least one draw was made");
        let start = rng.gen_range(0..free.len());
        for j in 0..free.len() {
            let p = free[(start + j) % free.len()];
            let mut v = base.clone();
            v.set(p, !v.is_open(p));
            let v = self.candidate(v)?;
            if !memory.contains(&v) {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Fills a memory with up to `hms` distinct vectors. Stops early, with a
    /// warning, when no further distinct vector can be found.
    pub fn fill_memory<R: Rng>(&mut self, hms: usize, bias: &[f64], rng: &mut R) -> Result<HarmonyMemory> {
        let mut memory = HarmonyMemory::new(hms);
        while !memory.is_full() {
            let Some(v) = self.fresh_vector(&memory, bias, rng)? else {
                log::warn!(
                    "only {} distinct harmonies exist; memory size reduced from {hms}",
                    memory.len()
                );
                memory.capacity = memory.len();
                break;
            };
            let x = self.objective(&v)?;
            memory.offer(v, x);
        }
        Ok(memory)
    }

    /// Main improvisation loop; returns the best vector with run statistics.
    pub fn run(&mut self, params: &HarmonyParams) -> Result<(HarmonyVector, RunStats)> {
        params.validate()?;
        let started = Instant::now();
        let instance = self.evaluator.instance();
        let root = instance.root_position();
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

        let initial = init_bias(instance);
        let mut memory = self.fill_memory(params.hms, &initial, &mut rng)?;
        let mut bias = update_bias(&memory, &initial, root);
        let mut best = memory.best().expect("memory holds at least the root vector").objective;
        let mut stats = RunStats {
            memory_size: memory.len(),
            trajectory: vec![(0, best)],
            ..RunStats::default()
        };

        let mut stale = 0;
        while stale < params.max_no_improve {
            stats.iterations += 1;
            let mut v = improvise(&memory, params, &bias, root, stats.iterations, &mut rng);
            (self.step_transform)(&mut v)?;
            if !memory.contains(&v) {
                let x = self.objective(&v)?;
                if memory.offer(v, x) {
                    bias = update_bias(&memory, &initial, root);
                }
            }
            let current = memory.best().unwrap().objective;
            if current < best - COST_EPS {
                best = current;
                stale = 0;
                stats.trajectory.push((stats.iterations, best));
            } else {
                stale += 1;
            }
        }

        stats.evaluations = self.evaluations();
        stats.elapsed = started.elapsed();
        Ok((memory.best().unwrap().vector.clone(), stats))
    }
}

/// Fills a harmony memory with repaired random vectors (see
/// [`HarmonyParams::hms`]).
pub fn fill_memory(instance: &Instance, params: &HarmonyParams) -> Result<HarmonyMemory> {
    let evaluator = Evaluator::new(instance);
    let repair = |v: &mut HarmonyVector| {
        evaluator.repair(v);
        Ok(())
    };
    let mut ctx = SearchContext::new(&evaluator, &repair, &repair);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    ctx.fill_memory(params.hms, &init_bias(instance), &mut rng)
}

/// Plain harmony search.
pub fn hs_solve(instance: &Instance, params: &HarmonyParams) -> Result<(Solution, RunStats)> {
    let evaluator = Evaluator::new(instance);
    hs_solve_with(&evaluator, params)
}

pub fn hs_solve_with(evaluator: &Evaluator<'_>, params: &HarmonyParams) -> Result<(Solution, RunStats)> {
    let repair = |v: &mut HarmonyVector| {
        evaluator.repair(v);
        Ok(())
    };
    let mut ctx = SearchContext::new(evaluator, &repair, &repair);
    let (best, stats) = ctx.run(params)?;
    Ok((evaluator.evaluate(&best)?, stats))
}
