//! Problem data: the core graph, the facility and customer sets, and every
//! cost that enters the objective.
//!
//! Core node ids are 1-based to match OR-Library files. Facilities are
//! addressed either by their node id or by their position in
//! [`Instance::facilities`]; harmony vectors use positions. Customers live in
//! their own 0-based index space.

mod merge;
mod stp;
mod tiny;
mod uflp;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use merge::{benchmark_name, merge_instances};
pub use stp::{parse_stp, StpGraph};
pub use tiny::{parse_tiny, to_tiny};
pub use uflp::{parse_uflp, UflpData, UflpLayout};

use crate::error::{Error, Result};

/// Absolute tolerance for cost comparisons.
pub const COST_EPS: f64 = 1e-9;

/// A core-graph node, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn from_index(index: usize) -> Self {
        NodeId(index as u32 + 1)
    }

    /// 0-based position of the node in per-node arrays.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected core edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: f64,
}

/// Unvalidated instance contents, turned into an [`Instance`] by
/// [`Instance::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceParts {
    pub name: String,
    pub node_count: usize,
    pub edges: Vec<Edge>,
    pub facilities: Vec<NodeId>,
    pub root: NodeId,
    pub opening_costs: Vec<f64>,
    /// One row per facility, one column per customer.
    pub assignment_costs: Vec<Vec<f64>>,
    pub hop_limit: usize,
}

/// A validated hop-constrained connected facility location instance.
///
/// Immutable after construction and shared by reference between solver runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
    edge_costs: HashMap<(NodeId, NodeId), f64>,
    facilities: Vec<NodeId>,
    facility_pos: Vec<Option<usize>>,
    root: NodeId,
    root_pos: usize,
    customer_count: usize,
    opening_costs: Vec<f64>,
    assignment_costs: Vec<f64>,
    hop_limit: usize,
}

fn ordered(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_cost(what: &str, cost: f64) -> Result<()> {
    if cost.is_finite() && cost >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInstance(format!("{what} has invalid cost {cost}")))
    }
}

impl Instance {
    pub fn new(parts: InstanceParts) -> Result<Self> {
        let InstanceParts {
            name,
            node_count,
            edges,
            facilities,
            root,
            opening_costs,
            assignment_costs,
            hop_limit,
        } = parts;

        if node_count == 0 {
            return Err(Error::InvalidInstance("core graph has no nodes".into()));
        }
        if hop_limit == 0 {
            return Err(Error::InvalidInstance("hop limit must be at least 1".into()));
        }
        let in_range = |v: NodeId| v.0 >= 1 && (v.0 as usize) <= node_count;

        let mut adjacency = vec![Vec::new(); node_count];
        let mut edge_costs: HashMap<(NodeId, NodeId), f64> = HashMap::new();
        for e in &edges {
            if !in_range(e.u) || !in_range(e.v) {
                return Err(Error::InvalidInstance(format!(
                    "edge ({}, {}) references a node outside 1..={node_count}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidInstance(format!("self loop on node {}", e.u)));
            }
            check_cost(&format!("edge ({}, {})", e.u, e.v), e.cost)?;
            adjacency[e.u.index()].push((e.v.index(), e.cost));
            adjacency[e.v.index()].push((e.u.index(), e.cost));
            let slot = edge_costs.entry(ordered(e.u, e.v)).or_insert(e.cost);
            *slot = slot.min(e.cost);
        }
        for list in &mut adjacency {
            list.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        }

        if facilities.is_empty() {
            return Err(Error::InvalidInstance("no facilities".into()));
        }
        let mut facility_pos = vec![None; node_count];
        for (pos, &f) in facilities.iter().enumerate() {
            if !in_range(f) {
                return Err(Error::InvalidInstance(format!("facility {f} is not a core node")));
            }
            if facility_pos[f.index()].replace(pos).is_some() {
                return Err(Error::InvalidInstance(format!("facility {f} listed twice")));
            }
        }
        let root_pos = in_range(root)
            .then(|| facility_pos[root.index()])
            .flatten()
            .ok_or_else(|| Error::InvalidInstance(format!("root {root} is not a facility")))?;

        if opening_costs.len() != facilities.len() {
            return Err(Error::InvalidInstance(format!(
                "{} opening costs for {} facilities",
                opening_costs.len(),
                facilities.len()
            )));
        }
        for (pos, &c) in opening_costs.iter().enumerate() {
            check_cost(&format!("opening of facility {}", facilities[pos]), c)?;
        }
        if assignment_costs.len() != facilities.len() {
            return Err(Error::InvalidInstance(format!(
                "{} assignment rows for {} facilities",
                assignment_costs.len(),
                facilities.len()
            )));
        }
        let customer_count = assignment_costs[0].len();
        let mut flat = Vec::with_capacity(facilities.len() * customer_count);
        for (pos, row) in assignment_costs.iter().enumerate() {
            if row.len() != customer_count {
                return Err(Error::InvalidInstance(format!(
                    "assignment row of facility {} has {} entries, expected {customer_count}",
                    facilities[pos],
                    row.len()
                )));
            }
            for &c in row {
                check_cost(&format!("assignment from facility {}", facilities[pos]), c)?;
            }
            flat.extend_from_slice(row);
        }

        let instance = Instance {
            name,
            node_count,
            edges,
            adjacency,
            edge_costs,
            facilities,
            facility_pos,
            root,
            root_pos,
            customer_count,
            opening_costs,
            assignment_costs: flat,
            hop_limit,
        };
        if let Some(v) = instance.first_disconnected_node() {
            return Err(Error::InvalidInstance(format!(
                "core graph is disconnected: node {v} is unreachable from node 1"
            )));
        }
        Ok(instance)
    }

    fn first_disconnected_node(&self) -> Option<NodeId> {
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|&s| !s).map(NodeId::from_index)
    }

    /// Same instance with a different hop limit.
    pub fn with_hop_limit(&self, hop_limit: usize) -> Result<Self> {
        if hop_limit == 0 {
            return Err(Error::InvalidInstance("hop limit must be at least 1".into()));
        }
        let mut copy = self.clone();
        copy.hop_limit = hop_limit;
        Ok(copy)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count).map(NodeId::from_index)
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        v.0 >= 1 && (v.0 as usize) <= self.node_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of a node as `(node index, cost)` pairs, sorted by index.
    pub fn neighbors(&self, v: NodeId) -> &[(usize, f64)] {
        &self.adjacency[v.index()]
    }

    /// Cheapest edge between `u` and `v`, if they are adjacent.
    pub fn edge_cost(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.edge_costs.get(&ordered(u, v)).copied()
    }

    pub fn facilities(&self) -> &[NodeId] {
        &self.facilities
    }

    pub fn facility_count(&self) -> usize {
        self.facilities.len()
    }

    /// Position of `v` in the facility list, if it is a facility.
    pub fn facility_position(&self, v: NodeId) -> Option<usize> {
        if self.contains_node(v) {
            self.facility_pos[v.index()]
        } else {
            None
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn root_position(&self) -> usize {
        self.root_pos
    }

    pub fn customer_count(&self) -> usize {
        self.customer_count
    }

    pub fn hop_limit(&self) -> usize {
        self.hop_limit
    }

    pub fn opening_cost(&self, facility_pos: usize) -> f64 {
        self.opening_costs[facility_pos]
    }

    pub fn opening_costs(&self) -> &[f64] {
        &self.opening_costs
    }

    pub fn assignment_cost(&self, facility_pos: usize, customer: usize) -> f64 {
        self.assignment_costs[facility_pos * self.customer_count + customer]
    }

    /// Assignment costs of one facility to every customer.
    pub fn assignment_row(&self, facility_pos: usize) -> &[f64] {
        let start = facility_pos * self.customer_count;
        &self.assignment_costs[start..start + self.customer_count]
    }
}
