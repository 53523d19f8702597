use super::{Instance, InstanceParts, NodeId, StpGraph, UflpData};
use crate::error::{Error, Result};

/// Combines an STP core graph with UFLP facility data.
///
/// The first `|F|` STP nodes become the facilities, in ascending id order, and
/// node 1 is the root. All costs are copied unchanged.
pub fn merge_instances(
    name: impl Into<String>,
    graph: &StpGraph,
    uflp: &UflpData,
    hop_limit: usize,
) -> Result<Instance> {
    let facility_count = uflp.facility_count();
    if facility_count > graph.node_count {
        return Err(Error::Merge(format!(
            "{facility_count} facilities but the core graph has only {} nodes",
            graph.node_count
        )));
    }
    let facilities: Vec<NodeId> = (1..=facility_count as u32).map(NodeId).collect();
    Instance::new(InstanceParts {
        name: name.into(),
        node_count: graph.node_count,
        edges: graph.edges.clone(),
        root: facilities[0],
        facilities,
        opening_costs: uflp.opening_costs.clone(),
        assignment_costs: uflp.assignment_costs.clone(),
        hop_limit,
    })
    .map_err(|e| match e {
        Error::InvalidInstance(m) => Error::Merge(m),
        other => other,
    })
}

/// Benchmark-style instance name from the two file stems, e.g.
/// `("steinc5", "mp1")` gives `"C5mp1"`.
pub fn benchmark_name(stp_stem: &str, uflp_stem: &str) -> String {
    let lower = stp_stem.to_ascii_lowercase();
    let graph = match lower.strip_prefix("stein") {
        Some(rest) if !rest.is_empty() => {
            let mut chars = rest.chars();
            let class = chars.next().unwrap().to_ascii_uppercase();
            format!("{class}{}", chars.as_str())
        }
        _ => stp_stem.to_string(),
    };
    format!("{graph}{}", uflp_stem.to_ascii_lowercase())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{parse_stp, parse_uflp};

    #[test]
    fn merges_smallest_pair() {
        let g = parse_stp("2 1\n1 2 5\n0\n").unwrap();
        let u = parse_uflp("1 1\n0 3\n1 4\n").unwrap();
        let inst = merge_instances("x", &g, &u, 1).unwrap();
        assert_eq!(inst.facilities(), &[NodeId(1)]);
        assert_eq!(inst.root(), NodeId(1));
        assert_eq!(inst.opening_cost(0), 3.0);
        assert_eq!(inst.assignment_cost(0, 0), 4.0);
        assert_eq!(inst.hop_limit(), 1);
    }

    #[test]
    fn too_many_facilities() {
        let g = parse_stp("2 1\n1 2 5\n0\n").unwrap();
        let u = parse_uflp("3 1\n0 1\n0 1\n0 1\n1 1 1 1\n").unwrap();
        assert!(matches!(merge_instances("x", &g, &u, 2), Err(Error::Merge(_))));
    }

    #[test]
    fn names() {
        assert_eq!(benchmark_name("steinc5", "mp1"), "C5mp1");
        assert_eq!(benchmark_name("steind20", "MQ2"), "D20mq2");
        assert_eq!(benchmark_name("graph", "cap71"), "graphcap71");
    }
}
