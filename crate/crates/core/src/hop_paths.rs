//! Hop-limited shortest paths.
//!
//! A [`HopDistanceTable`] holds, for one source and every hop budget
//! `h <= max_hops`, the cheapest path to each node using at most `h` edges.
//! Among equal-cost paths the one with fewer edges wins, then the one whose
//! last edge comes from the smaller node id.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::instance::{Instance, NodeId, COST_EPS};

#[derive(Debug, Clone, Copy)]
struct Cell {
    dist: f64,
    hops: u32,
    /// Previous node and the layer its own path is stored in.
    prev: Option<(u32, u32)>,
}

const UNREACHED: Cell = Cell {
    dist: f64::INFINITY,
    hops: u32::MAX,
    prev: None,
};

impl Cell {
    /// Lexicographic (cost, hops, predecessor) comparison.
    fn beats(&self, other: &Cell) -> bool {
        if self.dist < other.dist - COST_EPS {
            return true;
        }
        if self.dist > other.dist + COST_EPS {
            return false;
        }
        let pred = |c: &Cell| c.prev.map_or(u32::MAX, |p| p.0);
        (self.hops, pred(self)) < (other.hops, pred(other))
    }
}

/// A concrete source-to-target path.
#[derive(Debug, Clone, PartialEq)]
pub struct HopPath {
    pub nodes: Vec<NodeId>,
    pub cost: f64,
}

impl HopPath {
    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn source(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn target(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }
}

#[derive(Debug, Clone)]
pub struct HopDistanceTable {
    source: NodeId,
    max_hops: usize,
    node_count: usize,
    /// Layer-major: `cells[h * node_count + v]`.
    cells: Vec<Cell>,
}

impl HopDistanceTable {
    /// Runs the layered Bellman-Ford recurrence over the instance's core graph.
    pub fn compute(instance: &Instance, source: NodeId, max_hops: usize) -> Result<Self> {
        if !instance.contains_node(source) {
            return Err(Error::UnknownNode(source));
        }
        Ok(Self::compute_with(
            instance.node_count(),
            |v| instance.neighbors(NodeId::from_index(v)),
            source,
            max_hops,
        ))
    }

    /// Same recurrence over an arbitrary adjacency function (node index to
    /// `(neighbour index, cost)` pairs).
    pub fn compute_with<'g>(
        node_count: usize,
        neighbors: impl Fn(usize) -> &'g [(usize, f64)],
        source: NodeId,
        max_hops: usize,
    ) -> Self {
        let mut cells = vec![UNREACHED; node_count * (max_hops + 1)];
        cells[source.index()] = Cell {
            dist: 0.0,
            hops: 0,
            prev: None,
        };
        for h in 1..=max_hops {
            let (done, rest) = cells.split_at_mut(h * node_count);
            let below = &done[(h - 1) * node_count..];
            let layer = &mut rest[..node_count];
            for v in 0..node_count {
                let mut best = below[v];
                for &(u, cost) in neighbors(v) {
                    let from = below[u];
                    if from.dist.is_infinite() {
                        continue;
                    }
                    let cand = Cell {
                        dist: from.dist + cost,
                        hops: from.hops + 1,
                        prev: Some((u as u32, (h - 1) as u32)),
                    };
                    if cand.beats(&best) {
                        best = cand;
                    }
                }
                layer[v] = best;
            }
        }
        HopDistanceTable {
            source,
            max_hops,
            node_count,
            cells,
        }
    }

    fn cell(&self, target: NodeId, budget: usize) -> &Cell {
        assert!(
            budget <= self.max_hops,
            "hop budget {budget} exceeds table depth {}",
            self.max_hops
        );
        &self.cells[budget * self.node_count + target.index()]
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn max_hops(&self) -> usize {
        self.max_hops
    }

    /// Cheapest cost to `target` using at most `budget` edges; `+inf` when none.
    pub fn dist(&self, target: NodeId, budget: usize) -> f64 {
        self.cell(target, budget).dist
    }

    /// Edge count of the path realising [`dist`](Self::dist).
    pub fn hops(&self, target: NodeId, budget: usize) -> Option<usize> {
        let c = self.cell(target, budget);
        c.dist.is_finite().then_some(c.hops as usize)
    }

    /// The path realising [`dist`](Self::dist), or `None` when `target` is
    /// out of reach within `budget` edges.
    pub fn path(&self, target: NodeId, budget: usize) -> Option<HopPath> {
        let start = self.cell(target, budget);
        if start.dist.is_infinite() {
            return None;
        }
        let mut nodes = vec![target];
        let mut cur = *start;
        while let Some((u, layer)) = cur.prev {
            let u = NodeId::from_index(u as usize);
            nodes.push(u);
            cur = *self.cell(u, layer as usize);
        }
        nodes.reverse();
        debug_assert_eq!(nodes[0], self.source);
        Some(HopPath {
            nodes,
            cost: start.dist,
        })
    }
}

pub fn hop_bellman_ford(instance: &Instance, source: NodeId, max_hops: usize) -> Result<HopDistanceTable> {
    if max_hops == 0 {
        return Err(Error::InvalidParams("hop budget must be at least 1".into()));
    }
    HopDistanceTable::compute(instance, source, max_hops)
}

pub fn extract_path(table: &HopDistanceTable, target: NodeId, hop_budget: usize) -> Option<HopPath> {
    table.path(target, hop_budget)
}

/// Lazily computed tables for every source, `hop_limit` layers deep.
///
/// Lives for one solver run. Each table is computed once and then only read,
/// so the cache can be shared between threads.
#[derive(Debug)]
pub struct HopPathCache<'a> {
    instance: &'a Instance,
    tables: Vec<OnceLock<HopDistanceTable>>,
}

impl<'a> HopPathCache<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        HopPathCache {
            instance,
            tables: (0..instance.node_count()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn table(&self, source: NodeId) -> &HopDistanceTable {
        self.tables[source.index()].get_or_init(|| {
            HopDistanceTable::compute_with(
                self.instance.node_count(),
                |v| self.instance.neighbors(NodeId::from_index(v)),
                source,
                self.instance.hop_limit(),
            )
        })
    }

    pub fn root_table(&self) -> &HopDistanceTable {
        self.table(self.instance.root())
    }

    /// Hop-limited root path cost of a facility, `+inf` when out of reach.
    pub fn root_distance(&self, facility_pos: usize) -> f64 {
        let f = self.instance.facilities()[facility_pos];
        self.root_table().dist(f, self.instance.hop_limit())
    }

    pub fn reachable_from_root(&self, facility_pos: usize) -> bool {
        self.root_distance(facility_pos).is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::tiny1;

    #[test]
    fn tiny1_from_root() {
        let inst = tiny1();
        let t = hop_bellman_ford(&inst, NodeId(1), 2).unwrap();
        assert_eq!(t.dist(NodeId(3), 1), f64::INFINITY);
        assert_eq!(t.dist(NodeId(3), 2), 2.0);
        assert_eq!(
            t.path(NodeId(3), 2).unwrap().nodes,
            vec![NodeId(1), NodeId(4), NodeId(3)]
        );
        assert!(extract_path(&t, NodeId(3), 1).is_none());
        assert_eq!(t.path(NodeId(1), 2).unwrap().nodes, vec![NodeId(1)]);
        for h in 0..=2 {
            assert_eq!(t.dist(NodeId(1), h), 0.0);
        }
    }

    #[test]
    fn prefers_fewer_hops_on_equal_cost() {
        // 1-2 costs 2 directly or 1+1 via 3.
        let inst = crate::instance::parse_tiny("3 1 0 2 1\ne 1 2 2\ne 1 3 1\ne 3 2 1\nf 1 0\n").unwrap();
        let t = hop_bellman_ford(&inst, NodeId(1), 2).unwrap();
        assert_eq!(t.hops(NodeId(2), 2), Some(1));
        assert_eq!(t.path(NodeId(2), 2).unwrap().nodes, vec![NodeId(1), NodeId(2)]);
    }

    #[test]
    fn unknown_source() {
        let inst = tiny1();
        assert!(matches!(
            hop_bellman_ford(&inst, NodeId(9), 2),
            Err(Error::UnknownNode(_))
        ));
        assert!(hop_bellman_ford(&inst, NodeId(1), 0).is_err());
    }

    #[test]
    fn cache_matches_direct_computation() {
        let inst = tiny1();
        let cache = HopPathCache::new(&inst);
        let direct = hop_bellman_ford(&inst, NodeId(2), inst.hop_limit()).unwrap();
        for v in inst.nodes() {
            assert_eq!(cache.table(NodeId(2)).dist(v, 2), direct.dist(v, 2));
        }
        assert!(cache.reachable_from_root(2));
        assert_eq!(cache.root_distance(1), 2.0);
    }
}
