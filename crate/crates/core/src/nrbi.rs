//! Not Root Base Insertion: greedy hop-constrained Steiner tree construction.
//!
//! Phase 1 grows a partial graph `G` from the root, Prim style: each step
//! picks the cheapest hop-feasible path from a node of `G` to a basic node
//! (open facility) still outside it, and records for every node the hops `U`
//! used to reach it and for every basic node its insertion epoch `itr`.
//!
//! Phase 2 rebuilds a tree from the root, visiting basic nodes from the last
//! inserted to the first. Each one is hung from the tree node offering the
//! cheapest path whose hop count keeps it within its phase-1 budget `U_v`; a
//! reference path is kept instead unless the fresh one is strictly cheaper.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::hop_paths::{HopDistanceTable, HopPath, HopPathCache};
use crate::instance::{Instance, NodeId, COST_EPS};
use crate::tree::SteinerTree;

/// What a fresh phase-2 path has to beat.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Phase2Reference {
    /// The path that inserted the basic node during phase 1. Only usable when
    /// its start node is already in the tree.
    #[default]
    InsertionPath,
    /// The cheapest hop-feasible path inside the phase-1 graph between the
    /// chosen tree node and the basic node.
    PartialGraphPath,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NrbiOptions {
    pub reference: Phase2Reference,
}

/// Outcome of phase 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NrbiState {
    pub partial_nodes: BTreeSet<NodeId>,
    pub partial_edges: BTreeSet<(NodeId, NodeId)>,
    /// Hops used to reach each node of the partial graph from the root.
    pub hops_used: BTreeMap<NodeId, usize>,
    /// Insertion epoch of every basic node other than the root, from 1.
    pub insertion_epoch: BTreeMap<NodeId, usize>,
    /// Basic nodes not yet in the partial graph; empty after phase 1.
    pub remaining: BTreeSet<NodeId>,
    /// Path that brought each basic node into the partial graph.
    pub insertion_paths: BTreeMap<NodeId, HopPath>,
    pub root: NodeId,
}

fn edge_key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}

/// `(cost, hops, ids...)` ordering with a tolerance on cost.
fn better(a: (f64, usize, NodeId, NodeId), b: (f64, usize, NodeId, NodeId)) -> bool {
    if a.0 < b.0 - COST_EPS {
        return true;
    }
    if a.0 > b.0 + COST_EPS {
        return false;
    }
    (a.1, a.2, a.3) < (b.1, b.2, b.3)
}

fn check_open(instance: &Instance, open: &[NodeId]) -> Result<BTreeSet<NodeId>> {
    let set: BTreeSet<NodeId> = open.iter().copied().collect();
    if !set.contains(&instance.root()) {
        return Err(Error::InvalidVector("the root must be open".into()));
    }
    if let Some(&v) = set.iter().find(|&&v| instance.facility_position(v).is_none()) {
        return Err(Error::InvalidVector(format!("node {v} is not a facility")));
    }
    Ok(set)
}

pub fn nrbi_phase1(cache: &HopPathCache<'_>, open: &[NodeId]) -> Result<NrbiState> {
    let instance = cache.instance();
    let root = instance.root();
    let h_max = instance.hop_limit();
    let mut remaining = check_open(instance, open)?;
    remaining.remove(&root);

    let mut state = NrbiState {
        partial_nodes: BTreeSet::from([root]),
        partial_edges: BTreeSet::new(),
        hops_used: BTreeMap::from([(root, 0)]),
        insertion_epoch: BTreeMap::new(),
        remaining: BTreeSet::new(),
        insertion_paths: BTreeMap::new(),
        root,
    };
    let mut epoch = 0;

    while !remaining.is_empty() {
        let mut best: Option<(f64, usize, NodeId, NodeId)> = None;
        for (&u, &used) in &state.hops_used {
            if used >= h_max {
                continue;
            }
            let table = cache.table(u);
            let budget = h_max - used;
            for &v in &remaining {
                let d = table.dist(v, budget);
                if d.is_infinite() {
                    continue;
                }
                let cand = (d, table.hops(v, budget).unwrap(), u, v);
                if best.is_none_or(|b| better(cand, b)) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, _, u, v)) = best else {
            return Err(Error::Infeasible {
                facility: *remaining.first().unwrap(),
            });
        };

        let base = state.hops_used[&u];
        let path = cache
            .table(u)
            .path(v, h_max - base)
            .expect("finite distance has a path");
        let mut prefix_cost = 0.0;
        for (i, &w) in path.nodes.iter().enumerate() {
            if i > 0 {
                let prev = path.nodes[i - 1];
                prefix_cost += instance.edge_cost(prev, w).expect("path follows core edges");
                state.partial_edges.insert(edge_key(prev, w));
            }
            state.partial_nodes.insert(w);
            let used = state.hops_used.entry(w).or_insert(base + i);
            *used = (*used).min(base + i);
            if remaining.remove(&w) {
                epoch += 1;
                state.insertion_epoch.insert(w, epoch);
                state.insertion_paths.insert(
                    w,
                    HopPath {
                        nodes: path.nodes[..=i].to_vec(),
                        cost: prefix_cost,
                    },
                );
            }
        }
    }
    Ok(state)
}

/// Growing rooted tree with parent pointers and depths.
struct TreeBuilder {
    parent: HashMap<NodeId, NodeId>,
    children: HashMap<NodeId, BTreeSet<NodeId>>,
    depth: BTreeMap<NodeId, usize>,
}

impl TreeBuilder {
    fn new(root: NodeId) -> Self {
        TreeBuilder {
            parent: HashMap::new(),
            children: HashMap::new(),
            depth: BTreeMap::from([(root, 0)]),
        }
    }

    fn contains(&self, v: NodeId) -> bool {
        self.depth.contains_key(&v)
    }

    fn add(&mut self, child: NodeId, parent: NodeId) {
        let d = self.depth[&parent] + 1;
        self.parent.insert(child, parent);
        self.children.entry(parent).or_default().insert(child);
        self.depth.insert(child, d);
    }

    fn reparent(&mut self, child: NodeId, parent: NodeId) {
        let old = self.parent.insert(child, parent).expect("non-root node has a parent");
        self.children.get_mut(&old).unwrap().remove(&child);
        self.children.entry(parent).or_default().insert(child);
        let mut stack = vec![(child, self.depth[&parent] + 1)];
        while let Some((v, d)) = stack.pop() {
            self.depth.insert(v, d);
            if let Some(kids) = self.children.get(&v) {
                stack.extend(kids.iter().map(|&k| (k, d + 1)));
            }
        }
    }

    /// Hangs `path` (which starts at a tree node) into the tree.
    ///
    /// When the depth of the last tree node on the path is consistent with
    /// the path, only the suffix after it is added. Otherwise the path is
    /// walked edge by edge, moving tree nodes under the path whenever that
    /// makes them shallower. Either way no node ends up deeper than
    /// `depth(start) + position on path`.
    fn attach(&mut self, path: &[NodeId]) {
        let start_depth = self.depth[&path[0]];
        let last_in_tree = (0..path.len()).rev().find(|&i| self.contains(path[i])).unwrap();
        if self.depth[&path[last_in_tree]] <= start_depth + last_in_tree {
            for i in last_in_tree + 1..path.len() {
                self.add(path[i], path[i - 1]);
            }
            return;
        }
        for i in 1..path.len() {
            let (prev, cur) = (path[i - 1], path[i]);
            if !self.contains(cur) {
                self.add(cur, prev);
            } else if self.depth[&prev] + 1 < self.depth[&cur] {
                self.reparent(cur, prev);
            }
        }
    }
}

pub fn nrbi_phase2(cache: &HopPathCache<'_>, state: &NrbiState, options: NrbiOptions) -> SteinerTree {
    let instance = cache.instance();
    let mut tree = TreeBuilder::new(state.root);

    let graph_adjacency = (options.reference == Phase2Reference::PartialGraphPath).then(|| {
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); instance.node_count()];
        for &(u, v) in &state.partial_edges {
            let c = instance.edge_cost(u, v).unwrap();
            adj[u.index()].push((v.index(), c));
            adj[v.index()].push((u.index(), c));
        }
        adj
    });

    let mut order: Vec<(usize, NodeId)> = state.insertion_epoch.iter().map(|(&v, &e)| (e, v)).collect();
    order.sort_unstable_by(|a, b| b.cmp(a));

    for (_, v) in order {
        if tree.contains(v) {
            continue;
        }
        let budget_v = state.hops_used[&v];
        let mut best: Option<(f64, usize, NodeId, NodeId)> = None;
        for (&u, &du) in &tree.depth {
            if du >= budget_v {
                continue;
            }
            let table = cache.table(u);
            let d = table.dist(v, budget_v - du);
            if d.is_finite() {
                let cand = (d, table.hops(v, budget_v - du).unwrap(), u, v);
                if best.is_none_or(|b| better(cand, b)) {
                    best = Some(cand);
                }
            }
        }
        // The root always qualifies: phase 1 reached v from it in U_v hops.
        let (_, _, anchor, _) = best.expect("phase-1 walk bounds the root path");
        let fresh = cache.table(anchor).path(v, budget_v - tree.depth[&anchor]).unwrap();

        let reference = match options.reference {
            Phase2Reference::InsertionPath => state.insertion_paths.get(&v).and_then(|p| {
                let start = p.source();
                (tree.contains(start) && tree.depth[&start] + p.hops() <= budget_v).then(|| p.clone())
            }),
            Phase2Reference::PartialGraphPath => {
                let adj = graph_adjacency.as_ref().unwrap();
                let budget = budget_v - tree.depth[&anchor];
                HopDistanceTable::compute_with(instance.node_count(), |i| &adj[i], anchor, budget).path(v, budget)
            }
        };
        let chosen = match reference {
            Some(r) if fresh.cost >= r.cost - COST_EPS => r,
            _ => fresh,
        };
        tree.attach(&chosen.nodes);
    }

    let required: BTreeSet<NodeId> = state.insertion_epoch.keys().copied().chain([state.root]).collect();
    let mut result = SteinerTree::from_parents(state.root, &tree.parent);
    result.prune(|v| required.contains(&v));
    result
}

/// Hop-constrained Steiner tree over the open facilities.
pub fn nrbi_with(cache: &HopPathCache<'_>, open: &[NodeId], options: NrbiOptions) -> Result<SteinerTree> {
    let state = nrbi_phase1(cache, open)?;
    Ok(nrbi_phase2(cache, &state, options))
}

pub fn nrbi(instance: &Instance, open: &[NodeId]) -> Result<SteinerTree> {
    nrbi_with(&HopPathCache::new(instance), open, NrbiOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_tiny;
    use crate::testing::tiny1;

    fn ids(v: &[u32]) -> Vec<NodeId> {
        v.iter().map(|&x| NodeId(x)).collect()
    }

    #[test]
    fn tiny1_phase1_trace() {
        let inst = tiny1();
        let cache = HopPathCache::new(&inst);
        let s = nrbi_phase1(&cache, &ids(&[1, 2, 3])).unwrap();
        let u: Vec<(u32, usize)> = s.hops_used.iter().map(|(k, &v)| (k.0, v)).collect();
        assert_eq!(u, vec![(1, 0), (2, 1), (3, 2), (4, 1)]);
        let itr: Vec<(u32, usize)> = s.insertion_epoch.iter().map(|(k, &v)| (k.0, v)).collect();
        assert_eq!(itr, vec![(2, 1), (3, 2)]);
        assert!(s.remaining.is_empty());
        assert_eq!(s.insertion_paths[&NodeId(3)].nodes, ids(&[1, 4, 3]));
    }

    #[test]
    fn tiny1_tree() {
        let inst = tiny1();
        let t = nrbi(&inst, &ids(&[1, 2, 3])).unwrap();
        assert_eq!(
            t.edge_set(),
            BTreeSet::from([(NodeId(1), NodeId(2)), (NodeId(1), NodeId(4)), (NodeId(3), NodeId(4))])
        );
        assert_eq!(t.cost(&inst), 4.0);
        assert_eq!(t.depth(NodeId(3)), Some(2));
        assert_eq!(t.depth(NodeId(4)), Some(1));
        assert!(t.is_well_formed());
    }

    #[test]
    fn root_only() {
        let inst = tiny1();
        let cache = HopPathCache::new(&inst);
        let s = nrbi_phase1(&cache, &ids(&[1])).unwrap();
        assert_eq!(s.partial_nodes, BTreeSet::from([NodeId(1)]));
        assert!(s.insertion_epoch.is_empty());
        let t = nrbi_phase2(&cache, &s, NrbiOptions::default());
        assert_eq!(t.edge_count(), 0);
        assert_eq!(t.cost(&inst), 0.0);
    }

    #[test]
    fn hop_infeasible_facility() {
        let inst = tiny1().with_hop_limit(1).unwrap();
        let err = nrbi(&inst, &ids(&[1, 3])).unwrap_err();
        assert_eq!(err, Error::Infeasible { facility: NodeId(3) });
    }

    #[test]
    fn root_must_be_open() {
        assert!(nrbi(&tiny1(), &ids(&[2])).is_err());
    }

    #[test]
    fn direct_edge_beats_insertion_path() {
        // Square 1-2-3-4-1. Phase 1 reaches 4 through 2 and 3 (cost 2 from 2),
        // phase 2 hangs 4 straight off the root (2.5 < 1 + 2).
        let inst = parse_tiny("4 3 0 3 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 1 2.5\nf 1 0\nf 2 0\nf 4 0\n").unwrap();
        let cache = HopPathCache::new(&inst);
        let s = nrbi_phase1(&cache, &ids(&[1, 2, 4])).unwrap();
        assert_eq!(s.insertion_paths[&NodeId(4)].nodes, ids(&[2, 3, 4]));
        assert_eq!(s.hops_used[&NodeId(4)], 3);
        let t = nrbi_phase2(&cache, &s, NrbiOptions::default());
        assert_eq!(
            t.edge_set(),
            BTreeSet::from([(NodeId(1), NodeId(2)), (NodeId(1), NodeId(4))])
        );
        assert_eq!(t.cost(&inst), 3.5);
    }

    #[test]
    fn partial_graph_reference_keeps_phase1_route_on_ties() {
        // 1-2 direct costs the same as 1-3-2; phase 1 inserted 3 then 2 via 3.
        let inst = parse_tiny("3 3 0 2 1\ne 1 2 5\ne 1 3 4\ne 3 2 1\nf 1 0\nf 2 0\nf 3 0\n").unwrap();
        let cache = HopPathCache::new(&inst);
        let open = ids(&[1, 2, 3]);
        let by_insertion = nrbi_with(&cache, &open, NrbiOptions::default()).unwrap();
        assert_eq!(by_insertion.cost(&inst), 9.0);
        let by_graph = nrbi_with(
            &cache,
            &open,
            NrbiOptions {
                reference: Phase2Reference::PartialGraphPath,
            },
        )
        .unwrap();
        assert_eq!(by_graph.cost(&inst), 5.0);
        assert!(by_graph.is_well_formed());
    }
}
