//! Shared fixture and random tiny-instance generator for tests and benches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::{parse_tiny, Edge, Instance, InstanceParts, NodeId};

/// Four core nodes, three facilities, two customers, hop limit 2.
pub const TINY1_TEXT: &str = "\
# nodes facilities customers hops root
4 3 2 2 1
e 1 2 2
e 1 4 1
e 4 3 1
e 2 3 5
f 1 1
f 2 3
f 3 2
a 1 1 9
a 2 1 1
a 3 1 4
a 1 2 8
a 2 2 7
a 3 2 1
";

pub fn tiny1() -> Instance {
    parse_tiny(TINY1_TEXT).expect("fixture parses").with_name("TINY1")
}

/// Bounds for [`random_instance`].
#[derive(Debug, Clone)]
pub struct TinyConfig {
    pub max_nodes: usize,
    pub max_facilities: usize,
    pub max_customers: usize,
    pub max_edges: usize,
    pub max_hops: usize,
    pub max_cost: u32,
}

impl Default for TinyConfig {
    fn default() -> Self {
        TinyConfig {
            max_nodes: 8,
            max_facilities: 4,
            max_customers: 5,
            max_edges: 12,
            max_hops: 3,
            max_cost: 10,
        }
    }
}

/// Connected random instance with integer costs in `1..=max_cost`.
///
/// The graph is a random spanning tree plus extra random edges; facilities
/// are a random node subset whose first member is the root.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, cfg: &TinyConfig) -> Instance {
    let n = rng.gen_range(2..=cfg.max_nodes.max(2));
    let mut order: Vec<u32> = (1..=n as u32).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        pairs.push((order[i], order[j]));
    }
    let max_edges = cfg.max_edges.clamp(n - 1, n * (n - 1) / 2);
    let target = rng.gen_range(n - 1..=max_edges);
    let mut attempts = 0;
    while pairs.len() < target && attempts < 200 {
        attempts += 1;
        let u = rng.gen_range(1..=n as u32);
        let v = rng.gen_range(1..=n as u32);
        if u != v && !pairs.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)) {
            pairs.push((u, v));
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge {
            u: NodeId(u),
            v: NodeId(v),
            cost: rng.gen_range(1..=cfg.max_cost) as f64,
        })
        .collect();

    let f = rng.gen_range(1..=cfg.max_facilities.min(n).max(1));
    let mut nodes: Vec<u32> = (1..=n as u32).collect();
    nodes.shuffle(rng);
    let facilities: Vec<NodeId> = nodes[..f].iter().map(|&v| NodeId(v)).collect();
    let d = rng.gen_range(0..=cfg.max_customers);
    let mut cost = || rng.gen_range(1..=cfg.max_cost) as f64;
    let opening_costs = (0..f).map(|_| cost()).collect();
    let assignment_costs = (0..f).map(|_| (0..d).map(|_| cost()).collect()).collect();
    let hop_limit = rng.gen_range(1..=cfg.max_hops.max(1));
    Instance::new(InstanceParts {
        name: "random".into(),
        node_count: n,
        edges,
        root: facilities[0],
        facilities,
        opening_costs,
        assignment_costs,
        hop_limit,
    })
    .expect("generator builds valid instances")
}
