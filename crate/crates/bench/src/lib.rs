//! Synthetic instances shaped like the merged Steiner / facility location
//! benchmarks, for timing runs when the real files are not at hand.

use hcconfl_core::{Edge, Instance, InstanceParts, NodeId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shape {
    pub nodes: usize,
    pub edges: usize,
    pub facilities: usize,
    pub customers: usize,
    pub hop_limit: usize,
}

impl Shape {
    /// Size class of the `C5mp1` benchmark.
    pub const C5MP1: Shape = Shape {
        nodes: 500,
        edges: 625,
        facilities: 200,
        customers: 200,
        hop_limit: 3,
    };

    pub const SMALL: Shape = Shape {
        nodes: 60,
        edges: 90,
        facilities: 20,
        customers: 30,
        hop_limit: 3,
    };
}

/// Connected random graph (random spanning tree plus extra edges) with
/// edge costs in 1..=10, opening costs in 1000..=5000 and assignment costs
/// in 1..=100. Facilities are nodes `1..=facilities`; node 1 is the root.
pub fn synthetic(shape: Shape, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = shape.nodes;
    let mut order: Vec<u32> = (1..=n as u32).collect();
    order.shuffle(&mut rng);
    let mut pairs = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        pairs.insert((a.min(b), a.max(b)));
    }
    while pairs.len() < shape.edges.min(n * (n - 1) / 2) {
        let a = rng.gen_range(1..=n as u32);
        let b = rng.gen_range(1..=n as u32);
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge {
            u: NodeId(u),
            v: NodeId(v),
            cost: rng.gen_range(1..=10) as f64,
        })
        .collect();
    let facilities: Vec<NodeId> = (1..=shape.facilities as u32).map(NodeId).collect();
    let opening_costs = (0..shape.facilities)
        .map(|_| rng.gen_range(1000..=5000) as f64)
        .collect();
    let assignment_costs = (0..shape.facilities)
        .map(|_| (0..shape.customers).map(|_| rng.gen_range(1..=100) as f64).collect())
        .collect();
    Instance::new(InstanceParts {
        name: format!("synthetic{}x{}", shape.nodes, shape.facilities),
        node_count: n,
        edges,
        facilities,
        root: NodeId(1),
        opening_costs,
        assignment_costs,
        hop_limit: shape.hop_limit,
    })
    .expect("generated instances are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_is_respected() {
        let inst = synthetic(Shape::C5MP1, 1);
        assert_eq!(inst.node_count(), 500);
        assert_eq!(inst.edges().len(), 625);
        assert_eq!(inst.facility_count(), 200);
        assert_eq!(inst.customer_count(), 200);
        assert_eq!(synthetic(Shape::SMALL, 4), synthetic(Shape::SMALL, 4));
    }
}
