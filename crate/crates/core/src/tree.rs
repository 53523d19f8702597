use std::collections::{BTreeSet, HashMap};

use crate::instance::{Instance, NodeId};

/// Directed tree edge; `position` is the hop index of the edge counted from
/// the root, so it equals the depth of `child`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeArc {
    pub parent: NodeId,
    pub child: NodeId,
    pub position: usize,
}

/// A rooted tree over core nodes, stored as positioned arcs.
///
/// Solvers only produce well-formed trees. [`SteinerTree::from_arcs`] accepts
/// anything so that the validator can be exercised on broken input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerTree {
    root: NodeId,
    arcs: Vec<TreeArc>,
}

impl SteinerTree {
    pub fn root_only(root: NodeId) -> Self {
        SteinerTree { root, arcs: Vec::new() }
    }

    pub fn from_arcs(root: NodeId, mut arcs: Vec<TreeArc>) -> Self {
        arcs.sort_by_key(|a| (a.position, a.child, a.parent));
        SteinerTree { root, arcs }
    }

    /// Builds positioned arcs from a parent map by walking up to the root.
    /// Panics if the map contains a cycle.
    pub(crate) fn from_parents(root: NodeId, parents: &HashMap<NodeId, NodeId>) -> Self {
        let mut depth: HashMap<NodeId, usize> = HashMap::from([(root, 0)]);
        fn depth_of(
            v: NodeId,
            parents: &HashMap<NodeId, NodeId>,
            depth: &mut HashMap<NodeId, usize>,
            guard: usize,
        ) -> usize {
            if let Some(&d) = depth.get(&v) {
                return d;
            }
            assert!(guard > 0, "cycle in parent map");
            let d = depth_of(parents[&v], parents, depth, guard - 1) + 1;
            depth.insert(v, d);
            d
        }
        let arcs = parents
            .iter()
            .map(|(&child, &parent)| TreeArc {
                parent,
                child,
                position: depth_of(child, parents, &mut depth, parents.len() + 1),
            })
            .collect();
        Self::from_arcs(root, arcs)
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn arcs(&self) -> &[TreeArc] {
        &self.arcs
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }

    /// Root plus every arc endpoint, ascending.
    pub fn nodes(&self) -> Vec<NodeId> {
        let set: BTreeSet<NodeId> = std::iter::once(self.root)
            .chain(self.arcs.iter().flat_map(|a| [a.parent, a.child]))
            .collect();
        set.into_iter().collect()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v == self.root || self.arcs.iter().any(|a| a.child == v || a.parent == v)
    }

    /// Depth recorded on the arc entering `v`; 0 for the root.
    pub fn depth(&self, v: NodeId) -> Option<usize> {
        if v == self.root {
            return Some(0);
        }
        self.arcs.iter().find(|a| a.child == v).map(|a| a.position)
    }

    pub fn max_depth(&self) -> usize {
        self.arcs.iter().map(|a| a.position).max().unwrap_or(0)
    }

    /// Sum of edge costs; `+inf` if an arc is not a core edge.
    pub fn cost(&self, instance: &Instance) -> f64 {
        self.arcs
            .iter()
            .map(|a| instance.edge_cost(a.parent, a.child).unwrap_or(f64::INFINITY))
            .sum()
    }

    /// Undirected edge set, each pair ordered `(min, max)`.
    pub fn edge_set(&self) -> BTreeSet<(NodeId, NodeId)> {
        self.arcs
            .iter()
            .map(|a| (a.parent.min(a.child), a.parent.max(a.child)))
            .collect()
    }

    /// True when the arcs form a tree hanging from the root: one parent per
    /// non-root node, every node reachable from the root, and each position
    /// one more than the parent's.
    pub fn is_well_formed(&self) -> bool {
        let mut parent: HashMap<NodeId, &TreeArc> = HashMap::new();
        for a in &self.arcs {
            if a.child == self.root || parent.insert(a.child, a).is_some() {
                return false;
            }
        }
        self.arcs.iter().all(|a| {
            let parent_depth = if a.parent == self.root {
                Some(0)
            } else {
                parent.get(&a.parent).map(|p| p.position)
            };
            a.position >= 1 && parent_depth == Some(a.position - 1)
        }) && self.arcs.len() + 1 == self.nodes().len()
    }

    /// Repeatedly removes leaves that are neither the root nor required.
    pub fn prune(&mut self, required: impl Fn(NodeId) -> bool) {
        loop {
            let parents: BTreeSet<NodeId> = self.arcs.iter().map(|a| a.parent).collect();
            let before = self.arcs.len();
            self.arcs.retain(|a| parents.contains(&a.child) || required(a.child));
            if self.arcs.len() == before {
                break;
            }
        }
    }
}
