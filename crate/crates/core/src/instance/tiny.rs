//! Line-oriented text format for small hand-written instances.
//!
//! ```text
//! # comments and blank lines are ignored
//! <nodes> <facilities> <customers> <hop limit> <root>
//! e <u> <v> <cost>          core edge
//! f <node> <cost>           facility and its opening cost
//! a <facility> <customer> <cost>
//! ```
//!
//! Customers are numbered from 1. Every facility/customer pair needs exactly
//! one `a` line. [`to_tiny`] writes the canonical form: header, edges in
//! stored order, facilities in list order, then assignments facility-major.

use std::collections::HashSet;
use std::fmt::Write;

use super::{Edge, Instance, InstanceParts, NodeId};
use crate::error::{Error, Result};

fn field<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} '{tok}'")))
}

pub fn parse_tiny(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 5 {
        return Err(Error::parse(
            hl,
            "header must be '<nodes> <facilities> <customers> <hop limit> <root>'",
        ));
    }
    let node_count: usize = field(hl, h[0], "node count")?;
    let facility_count: usize = field(hl, h[1], "facility count")?;
    let customer_count: usize = field(hl, h[2], "customer count")?;
    let hop_limit: usize = field(hl, h[3], "hop limit")?;
    let root = NodeId(field(hl, h[4], "root")?);

    let mut edges = Vec::new();
    let mut seen_edges = HashSet::new();
    let mut facilities = Vec::new();
    let mut opening_costs = Vec::new();
    let mut pending_assign = Vec::new();

    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let node = |tok: &str| -> Result<NodeId> {
            let id: u32 = field(line, tok, "node id")?;
            if id == 0 || id as usize > node_count {
                return Err(Error::parse(line, format!("node {id} outside 1..={node_count}")));
            }
            Ok(NodeId(id))
        };
        let cost = |tok: &str| -> Result<f64> {
            let c: f64 = field(line, tok, "cost")?;
            if !c.is_finite() || c < 0.0 {
                return Err(Error::parse(line, format!("cost must be nonnegative, got {c}")));
            }
            Ok(c)
        };
        match (toks[0], toks.len()) {
            ("e", 4) => {
                let (u, v) = (node(toks[1])?, node(toks[2])?);
                if u == v {
                    return Err(Error::parse(line, "self loop"));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line, format!("duplicate edge ({u}, {v})")));
                }
                edges.push(Edge {
                    u,
                    v,
                    cost: cost(toks[3])?,
                });
            }
            ("f", 3) => {
                let f = node(toks[1])?;
                if facilities.contains(&f) {
                    return Err(Error::parse(line, format!("facility {f} declared twice")));
                }
                facilities.push(f);
                opening_costs.push(cost(toks[2])?);
            }
            ("a", 4) => {
                let f = node(toks[1])?;
                let k: usize = field(line, toks[2], "customer id")?;
                if k == 0 || k > customer_count {
                    return Err(Error::parse(line, format!("customer {k} outside 1..={customer_count}")));
                }
                pending_assign.push((line, f, k - 1, cost(toks[3])?));
            }
            _ => return Err(Error::parse(line, format!("unrecognised line '{l}'"))),
        }
    }

    if facilities.len() != facility_count {
        return Err(Error::parse(
            hl,
            format!(
                "header declares {facility_count} facilities, found {}",
                facilities.len()
            ),
        ));
    }
    let mut assignment_costs = vec![vec![f64::NAN; customer_count]; facility_count];
    for (line, f, k, c) in pending_assign {
        let pos = facilities
            .iter()
            .position(|&x| x == f)
            .ok_or_else(|| Error::parse(line, format!("node {f} is not a facility")))?;
        let slot = &mut assignment_costs[pos][k];
        if !slot.is_nan() {
            return Err(Error::parse(line, format!("duplicate assignment ({f}, {})", k + 1)));
        }
        *slot = c;
    }
    for (pos, row) in assignment_costs.iter().enumerate() {
        if let Some(k) = row.iter().position(|c| c.is_nan()) {
            return Err(Error::parse(
                hl,
                format!(
                    "missing assignment cost for facility {} and customer {}",
                    facilities[pos],
                    k + 1
                ),
            ));
        }
    }

    Instance::new(InstanceParts {
        name: String::new(),
        node_count,
        edges,
        facilities,
        root,
        opening_costs,
        assignment_costs,
        hop_limit,
    })
    .map_err(|e| match e {
        Error::InvalidInstance(m) => Error::parse(hl, m),
        other => other,
    })
}

/// Canonical text form of an instance.
pub fn to_tiny(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} {} {} {}",
        instance.node_count(),
        instance.facility_count(),
        instance.customer_count(),
        instance.hop_limit(),
        instance.root()
    );
    for e in instance.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.cost);
    }
    for (pos, f) in instance.facilities().iter().enumerate() {
        let _ = writeln!(out, "f {f} {}", instance.opening_cost(pos));
    }
    for (pos, f) in instance.facilities().iter().enumerate() {
        for (k, c) in instance.assignment_row(pos).iter().enumerate() {
            let _ = writeln!(out, "a {f} {} {c}", k + 1);
        }
    }
    out
}
