//! Cost of a facility-opening vector.
//!
//! Evaluation runs in three steps: build a hop-constrained Steiner tree over
//! the open facilities with NRBI, assign every customer to its cheapest open
//! facility, then close the non-root facilities that serve nobody and prune
//! the tree branches that only led to them.

use crate::error::{Error, Result};
use crate::hop_paths::HopPathCache;
use crate::instance::{Instance, NodeId};
use crate::nrbi::{nrbi_with, NrbiOptions};
use crate::tree::SteinerTree;
use crate::vector::HarmonyVector;

/// The three cost terms of the objective and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub tree: f64,
    pub assignment: f64,
    pub opening: f64,
    pub total: f64,
}

impl CostBreakdown {
    pub fn new(tree: f64, assignment: f64, opening: f64) -> Self {
        CostBreakdown {
            tree,
            assignment,
            opening,
            total: tree + assignment + opening,
        }
    }
}

/// A fully realised solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Facilities open after closing the unused ones.
    pub open: HarmonyVector,
    pub tree: SteinerTree,
    /// Facility position serving each customer.
    pub assignment: Vec<Option<usize>>,
    pub cost: CostBreakdown,
}

impl Solution {
    pub fn total(&self) -> f64 {
        self.cost.total
    }

    pub fn open_count(&self) -> usize {
        self.open.open_count()
    }

    /// Recomputes the cost terms from the solution's own structure.
    pub fn recompute_cost(&self, instance: &Instance) -> CostBreakdown {
        let assignment = self
            .assignment
            .iter()
            .enumerate()
            .filter_map(|(k, f)| f.map(|f| instance.assignment_cost(f, k)))
            .sum();
        let opening = self.open.open_positions().map(|p| instance.opening_cost(p)).sum();
        CostBreakdown::new(self.tree.cost(instance), assignment, opening)
    }
}

/// Cheapest open facility per customer, ties to the lower position.
pub fn cheapest_assignment(instance: &Instance, open: &HarmonyVector) -> Vec<Option<usize>> {
    (0..instance.customer_count())
        .map(|k| {
            open.open_positions().fold(None, |best: Option<usize>, f| match best {
                Some(b) if instance.assignment_cost(b, k) <= instance.assignment_cost(f, k) => Some(b),
                _ => Some(f),
            })
        })
        .collect()
}

/// Evaluates vectors against one instance, reusing hop-path tables between
/// calls. Safe to share across threads.
#[derive(Debug)]
pub struct Evaluator<'a> {
    cache: HopPathCache<'a>,
    options: NrbiOptions,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        Self::with_options(instance, NrbiOptions::default())
    }

    pub fn with_options(instance: &'a Instance, options: NrbiOptions) -> Self {
        Evaluator {
            cache: HopPathCache::new(instance),
            options,
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.cache.instance()
    }

    pub fn paths(&self) -> &HopPathCache<'a> {
        &self.cache
    }

    fn check(&self, vector: &HarmonyVector) -> Result<()> {
        let instance = self.instance();
        if vector.len() != instance.facility_count() {
            return Err(Error::InvalidVector(format!(
                "length {} but the instance has {} facilities",
                vector.len(),
                instance.facility_count()
            )));
        }
        if !vector.is_open(instance.root_position()) {
            return Err(Error::InvalidVector("the root must be open".into()));
        }
        Ok(())
    }

    /// Returns the cost after the assignment step (before closing) together
    /// with the final solution.
    pub fn evaluate_detailed(&self, vector: &HarmonyVector) -> Result<(CostBreakdown, Solution)> {
        self.check(vector)?;
        let instance = self.instance();
        let mut tree = nrbi_with(&self.cache, &vector.open_nodes(instance), self.options)?;
        let assignment = cheapest_assignment(instance, vector);
        let assignment_cost: f64 = assignment
            .iter()
            .enumerate()
            .map(|(k, f)| instance.assignment_cost(f.unwrap(), k))
            .sum();
        let opening = |v: &HarmonyVector| -> f64 { v.open_positions().map(|p| instance.opening_cost(p)).sum() };
        let before = CostBreakdown::new(tree.cost(instance), assignment_cost, opening(vector));

        let mut used = vec![false; instance.facility_count()];
        used[instance.root_position()] = true;
        for f in assignment.iter().flatten() {
            used[*f] = true;
        }
        let mut open = vector.clone();
        for (pos, &u) in used.iter().enumerate() {
            if !u {
                open.set(pos, false);
            }
        }
        if open != *vector {
            let keep: Vec<bool> = (0..instance.node_count())
                .map(|i| {
                    instance
                        .facility_position(NodeId::from_index(i))
                        .is_some_and(|p| open.is_open(p))
                })
                .collect();
            tree.prune(|v| keep[v.index()]);
        }
        let cost = CostBreakdown::new(tree.cost(instance), assignment_cost, opening(&open));
        Ok((
            before,
            Solution {
                open,
                tree,
                assignment,
                cost,
            },
        ))
    }

    pub fn evaluate(&self, vector: &HarmonyVector) -> Result<Solution> {
        self.evaluate_detailed(vector).map(|(_, s)| s)
    }

    /// Objective value, `+inf` for hop-infeasible vectors.
    pub fn objective(&self, vector: &HarmonyVector) -> Result<f64> {
        match self.evaluate(vector) {
            Ok(s) => Ok(s.total()),
            Err(Error::Infeasible { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    }

    /// Closes every open facility the root cannot reach within the hop limit.
    pub fn repair(&self, vector: &mut HarmonyVector) {
        for pos in 0..vector.len() {
            if vector.is_open(pos) && !self.cache.reachable_from_root(pos) {
                vector.set(pos, false);
            }
        }
    }
}

pub fn evaluate(instance: &Instance, vector: &HarmonyVector) -> Result<Solution> {
    Evaluator::new(instance).evaluate(vector)
}
