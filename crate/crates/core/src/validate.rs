//! Feasibility check of a concrete solution against the model constraints.
//!
//! Tree arcs play the role of the positioned edge variables: an arc at
//! position `p` is an edge used as the `p`-th hop from the root. Violations
//! are returned as data; an empty list means the solution is feasible.

use std::collections::HashSet;
use std::fmt;

use crate::instance::{Instance, NodeId};
use crate::objective::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// An arc at position `p >= 2` must continue an arc at `p - 1` into its
    /// tail; no arc may sit deeper than the hop limit.
    HopChain,
    /// Every open non-root facility has an incoming tree arc.
    FacilityConnected,
    /// Arcs leaving the root sit at position 1, and only those do.
    RootArcPosition,
    /// Every customer is assigned to exactly one facility.
    SingleAssignment,
    /// Customers are only assigned to open facilities.
    AssignedOpen,
    /// The root is open.
    RootOpen,
    /// Variables range over the model's index sets.
    Domain,
}

impl Constraint {
    /// Number of the matching constraint in the integer programming model.
    pub fn equation(self) -> &'static str {
        match self {
            Constraint::HopChain => "(2)",
            Constraint::FacilityConnected => "(3)",
            Constraint::RootArcPosition => "(4)",
            Constraint::SingleAssignment => "(5)",
            Constraint::AssignedOpen => "(6)",
            Constraint::RootOpen => "(7)",
            Constraint::Domain => "(8)-(10)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Constraint,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "constraint {}: {}", self.constraint.equation(), self.detail)
    }
}

pub fn validate(instance: &Instance, solution: &Solution) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut flag = |constraint, detail: String| out.push(Violation { constraint, detail });
    let root = instance.root();
    let h = instance.hop_limit();

    let open_ok = solution.open.len() == instance.facility_count();
    if !open_ok {
        flag(
            Constraint::Domain,
            format!(
                "open vector has {} entries for {} facilities",
                solution.open.len(),
                instance.facility_count()
            ),
        );
    }
    let is_open = |pos: usize| open_ok && solution.open.is_open(pos);

    if open_ok && !is_open(instance.root_position()) {
        flag(Constraint::RootOpen, format!("root {root} is closed"));
    }

    let arcs = solution.tree.arcs();
    let incoming: HashSet<(NodeId, usize)> = arcs.iter().map(|a| (a.child, a.position)).collect();
    for a in arcs {
        let label = format!("arc {}->{} at position {}", a.parent, a.child, a.position);
        if !instance.contains_node(a.parent)
            || !instance.contains_node(a.child)
            || instance.edge_cost(a.parent, a.child).is_none()
        {
            flag(Constraint::Domain, format!("{label} is not a core edge"));
            continue;
        }
        if a.position == 0 {
            flag(Constraint::Domain, format!("{label} has no valid position"));
            continue;
        }
        if a.parent == root {
            if a.position != 1 {
                flag(Constraint::RootArcPosition, format!("{label} leaves the root"));
            }
            continue;
        }
        if a.position == 1 {
            flag(Constraint::RootArcPosition, format!("{label} does not leave the root"));
            continue;
        }
        if !incoming.contains(&(a.parent, a.position - 1)) {
            flag(
                Constraint::HopChain,
                format!("{label} has no predecessor arc at position {}", a.position - 1),
            );
        }
        if a.position > h {
            flag(Constraint::HopChain, format!("{label} exceeds hop limit {h}"));
        }
    }

    let entered: HashSet<NodeId> = arcs.iter().map(|a| a.child).collect();
    for (pos, &f) in instance.facilities().iter().enumerate() {
        if f != root && is_open(pos) && !entered.contains(&f) {
            flag(
                Constraint::FacilityConnected,
                format!("open facility {f} is not connected"),
            );
        }
    }

    if solution.assignment.len() != instance.customer_count() {
        flag(
            Constraint::Domain,
            format!(
                "{} assignments for {} customers",
                solution.assignment.len(),
                instance.customer_count()
            ),
        );
    }
    for (k, a) in solution.assignment.iter().enumerate() {
        match *a {
            None => flag(
                Constraint::SingleAssignment,
                format!("customer {} is unassigned", k + 1),
            ),
            Some(f) if f >= instance.facility_count() => flag(
                Constraint::Domain,
                format!("customer {} assigned to unknown facility #{f}", k + 1),
            ),
            Some(f) if !is_open(f) => flag(
                Constraint::AssignedOpen,
                format!(
                    "customer {} assigned to closed facility {}",
                    k + 1,
                    instance.facilities()[f]
                ),
            ),
            Some(_) => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::evaluate;
    use crate::testing::tiny1;
    use crate::vector::HarmonyVector;

    #[test]
    fn evaluated_solution_is_clean() {
        let inst = tiny1();
        for open in [vec![1], vec![1, 2], vec![1, 3], vec![1, 2, 3]] {
            let nodes: Vec<NodeId> = open.into_iter().map(NodeId).collect();
            let s = evaluate(&inst, &HarmonyVector::from_nodes(&inst, &nodes)).unwrap();
            assert!(validate(&inst, &s).is_empty());
        }
    }

    #[test]
    fn display_names_equation() {
        let v = Violation {
            constraint: Constraint::AssignedOpen,
            detail: "x".into(),
        };
        assert_eq!(v.to_string(), "constraint (6): x");
    }
}
