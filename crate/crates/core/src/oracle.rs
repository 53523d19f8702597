//! Exact solver for tiny instances by exhaustive enumeration.
//!
//! Every subset of core edges is checked for being a tree that hangs from the
//! root within the hop limit. The cheapest tree is recorded per set of covered
//! facilities, and a superset-minimum pass then gives the cheapest tree
//! covering any required facility set.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::instance::{Instance, NodeId};
use crate::objective::{cheapest_assignment, CostBreakdown, Solution};
use crate::tree::{SteinerTree, TreeArc};
use crate::vector::HarmonyVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_core_edges: usize,
    pub max_facilities: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_core_edges: 20,
            max_facilities: 12,
        }
    }
}

impl OracleLimits {
    pub fn check(&self, instance: &Instance) -> Result<()> {
        if instance.edges().len() > self.max_core_edges {
            return Err(Error::OracleLimit(format!(
                "{} core edges exceed the limit of {}",
                instance.edges().len(),
                self.max_core_edges
            )));
        }
        if instance.facility_count() > self.max_facilities {
            return Err(Error::OracleLimit(format!(
                "{} facilities exceed the limit of {}",
                instance.facility_count(),
                self.max_facilities
            )));
        }
        Ok(())
    }
}

/// Cheapest hop-feasible tree for a required node set.
#[derive(Debug, Clone, PartialEq)]
pub struct HcstOptimum {
    pub cost: f64,
    /// Undirected edges, each ordered `(min, max)`.
    pub edges: BTreeSet<(NodeId, NodeId)>,
}

/// Node set reached from the root if the chosen edges form a tree of depth at
/// most `hop_limit` containing the root.
fn tree_nodes(instance: &Instance, mask: u32, adjacency: &[Vec<(usize, usize)>]) -> Option<Vec<bool>> {
    let n = instance.node_count();
    let chosen = mask.count_ones() as usize;
    if chosen >= n {
        return None;
    }
    let mut depth = vec![usize::MAX; n];
    let root = instance.root().index();
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut reached = 1;
    let mut used_edges = 0;
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &adjacency[u] {
            if mask >> e & 1 == 0 {
                continue;
            }
            used_edges += 1;
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                if depth[v] > instance.hop_limit() {
                    return None;
                }
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    // Each tree edge is seen from both ends.
    if used_edges != 2 * chosen || reached != chosen + 1 {
        return None;
    }
    Some(depth.iter().map(|&d| d != usize::MAX).collect())
}

fn adjacency(instance: &Instance) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); instance.node_count()];
    for (e, edge) in instance.edges().iter().enumerate() {
        adj[edge.u.index()].push((edge.v.index(), e));
        adj[edge.v.index()].push((edge.u.index(), e));
    }
    adj
}

fn mask_cost(instance: &Instance, mask: u32) -> f64 {
    instance
        .edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| mask >> e & 1 == 1)
        .map(|(_, edge)| edge.cost)
        .sum()
}

fn mask_edges(instance: &Instance, mask: u32) -> BTreeSet<(NodeId, NodeId)> {
    instance
        .edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| mask >> e & 1 == 1)
        .map(|(_, edge)| (edge.u.min(edge.v), edge.u.max(edge.v)))
        .collect()
}

/// Cheapest hop-feasible tree containing the root and every node of
/// `required`, or `None` when no such tree exists.
pub fn exact_hcst(instance: &Instance, required: &[NodeId]) -> Result<Option<HcstOptimum>> {
    exact_hcst_with(instance, required, OracleLimits::default())
}

pub fn exact_hcst_with(instance: &Instance, required: &[NodeId], limits: OracleLimits) -> Result<Option<HcstOptimum>> {
    if instance.edges().len() > limits.max_core_edges {
        return Err(Error::OracleLimit(format!(
            "{} core edges exceed the limit of {}",
            instance.edges().len(),
            limits.max_core_edges
        )));
    }
    if let Some(&v) = required.iter().find(|v| !instance.contains_node(**v)) {
        return Err(Error::UnknownNode(v));
    }
    let adj = adjacency(instance);
    let mut best: Option<(f64, u32)> = None;
    for mask in 0..1u32 << instance.edges().len() {
        let Some(nodes) = tree_nodes(instance, mask, &adj) else {
            continue;
        };
        if !required.iter().all(|v| nodes[v.index()]) {
            continue;
        }
        let cost = mask_cost(instance, mask);
        if best.is_none_or(|(c, _)| cost < c) {
            best = Some((cost, mask));
        }
    }
    Ok(best.map(|(cost, mask)| HcstOptimum {
        cost,
        edges: mask_edges(instance, mask),
    }))
}

/// Orients an edge set away from the root.
fn orient(instance: &Instance, edges: &BTreeSet<(NodeId, NodeId)>) -> SteinerTree {
    let root = instance.root();
    let mut arcs = Vec::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([(root, 0)]);
    while let Some((u, d)) = queue.pop_front() {
        for &(a, b) in edges {
            let v = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if seen.insert(v) {
                arcs.push(TreeArc {
                    parent: u,
                    child: v,
                    position: d + 1,
                });
                queue.push_back((v, d + 1));
            }
        }
    }
    SteinerTree::from_arcs(root, arcs)
}

/// Cheapest tree per required facility set, indexed by facility bit mask.
fn hcst_by_facility_mask(instance: &Instance) -> Vec<Option<(f64, u32)>> {
    let nf = instance.facility_count();
    let adj = adjacency(instance);
    let mut best: Vec<Option<(f64, u32)>> = vec![None; 1 << nf];
    let better = |a: Option<(f64, u32)>, b: Option<(f64, u32)>| match (a, b) {
        (Some(x), Some(y)) if y.0 < x.0 || (y.0 == x.0 && y.1 < x.1) => b,
        (None, _) => b,
        _ => a,
    };
    for mask in 0..1u32 << instance.edges().len() {
        let Some(nodes) = tree_nodes(instance, mask, &adj) else {
            continue;
        };
        let covered = instance
            .facilities()
            .iter()
            .enumerate()
            .filter(|(_, f)| nodes[f.index()])
            .fold(0usize, |m, (p, _)| m | 1 << p);
        best[covered] = better(best[covered], Some((mask_cost(instance, mask), mask)));
    }
    for bit in 0..nf {
        for m in 0..best.len() {
            if m >> bit & 1 == 0 {
                best[m] = better(best[m], best[m | 1 << bit]);
            }
        }
    }
    best
}

/// Exact optimum over every root-open facility subset. Ties go to fewer open
/// facilities, then to the smaller vector.
pub fn exact_solve(instance: &Instance) -> Result<Solution> {
    exact_solve_with(instance, OracleLimits::default())
}

pub fn exact_solve_with(instance: &Instance, limits: OracleLimits) -> Result<Solution> {
    limits.check(instance)?;
    let nf = instance.facility_count();
    let root = instance.root_position();
    let trees = hcst_by_facility_mask(instance);

    let mut best: Option<(f64, usize, HarmonyVector, u32)> = None;
    for m in (0..1usize << nf).filter(|m| m >> root & 1 == 1) {
        let Some((tree_cost, edge_mask)) = trees[m] else {
            continue;
        };
        let open = HarmonyVector::new((0..nf).map(|p| m >> p & 1 == 1).collect());
        let opening: f64 = open.open_positions().map(|p| instance.opening_cost(p)).sum();
        let assignment: f64 = cheapest_assignment(instance, &open)
            .iter()
            .enumerate()
            .map(|(k, f)| instance.assignment_cost(f.unwrap(), k))
            .sum();
        let total = tree_cost + opening + assignment;
        let key = (total, open.open_count());
        let replace = match &best {
            None => true,
            Some((t, c, v, _)) => key < (*t, *c) || (key == (*t, *c) && open < *v),
        };
        if replace {
            best = Some((total, open.open_count(), open, edge_mask));
        }
    }
    let (_, _, open, edge_mask) = best.expect("the root-only subset is always feasible");
    let tree = orient(instance, &mask_edges(instance, edge_mask));
    let assignment = cheapest_assignment(instance, &open);
    let mut solution = Solution {
        open,
        tree,
        assignment,
        cost: CostBreakdown::new(0.0, 0.0, 0.0),
    };
    solution.cost = solution.recompute_cost(instance);
    Ok(solution)
}
