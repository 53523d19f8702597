use std::fmt;

use crate::instance::{Instance, NodeId};

/// Binary facility-opening vector, indexed by facility position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonyVector(Vec<bool>);

impl HarmonyVector {
    pub fn new(bits: Vec<bool>) -> Self {
        HarmonyVector(bits)
    }

    /// Only the root open.
    pub fn root_only(instance: &Instance) -> Self {
        let mut bits = vec![false; instance.facility_count()];
        bits[instance.root_position()] = true;
        HarmonyVector(bits)
    }

    /// Vector opening exactly the given facility nodes.
    pub fn from_nodes(instance: &Instance, open: &[NodeId]) -> Self {
        let mut bits = vec![false; instance.facility_count()];
        for &v in open {
            let pos = instance
                .facility_position(v)
                .unwrap_or_else(|| panic!("node {v} is not a facility"));
            bits[pos] = true;
        }
        HarmonyVector(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn is_open(&self, pos: usize) -> bool {
        self.0[pos]
    }

    pub fn set(&mut self, pos: usize, open: bool) {
        self.0[pos] = open;
    }

    pub fn open_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn open_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn open_nodes(&self, instance: &Instance) -> Vec<NodeId> {
        self.open_positions().map(|p| instance.facilities()[p]).collect()
    }
}

impl fmt::Display for HarmonyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
