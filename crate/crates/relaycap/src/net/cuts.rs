//! Source/destination cut enumeration.

use super::{NodeId, Topology};
use crate::error::{Error, Result};

/// Default node-count cap for exhaustive cut enumeration.
pub const DEFAULT_CUT_CAP: usize = 24;

/// A source-destination cut: a vertex set `Omega` with `S` inside and the
/// destination outside, stored as a bitmask over node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cut {
    mask: u32,
    nodes: u32,
}

impl Cut {
    /// Builds a cut from an explicit node list.
    #[must_use]
    pub fn from_nodes(members: &[NodeId], node_count: usize) -> Self {
        let mut mask = 0u32;
        for &v in members {
            assert!(v < node_count);
            mask |= 1 << v;
        }
        Self {
            mask,
            nodes: node_count as u32,
        }
    }

    #[must_use]
    pub(crate) fn from_mask(mask: u32, node_count: usize) -> Self {
        Self {
            mask,
            nodes: node_count as u32,
        }
    }

    #[must_use]
    pub fn contains(&self, v: NodeId) -> bool {
        (self.mask >> v) & 1 == 1
    }

    /// Members of `Omega` in ascending order.
    #[must_use]
    pub fn omega(&self) -> Vec<NodeId> {
        (0..self.nodes as usize).filter(|&v| self.contains(v)).collect()
    }

    /// Members of the complement in ascending order.
    #[must_use]
    pub fn complement(&self) -> Vec<NodeId> {
        (0..self.nodes as usize).filter(|&v| !self.contains(v)).collect()
    }

    #[must_use]
    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Renders as `{A,B}` using the owning network's node names.
    #[must_use]
    pub fn display(&self, net: &impl Topology) -> String {
        let names: Vec<&str> = self.omega().iter().map(|&v| net.node_name(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Enumerates all `2^(|V|-2)` cuts separating the source from `dest`, in
/// increasing order of the subset bitmask, under the default cap.
///
/// The iterator is lazy; cuts may be evaluated concurrently downstream.
pub fn enumerate_cuts(net: &impl Topology, dest: NodeId) -> Result<CutIter> {
    enumerate_cuts_capped(net, dest, DEFAULT_CUT_CAP)
}

/// As [`enumerate_cuts`] with an explicit node-count cap.
pub fn enumerate_cuts_capped(net: &impl Topology, dest: NodeId, cap: usize) -> Result<CutIter> {
    let n = net.node_count();
    let source = net.source();
    assert!(dest < n && dest != source, "invalid destination");
    if n > cap {
        return Err(Error::Resource(format!(
            "cut enumeration over {n} nodes exceeds the cap of {cap}; raise the cap flag to force"
        )));
    }
    let free: Vec<NodeId> = (0..n).filter(|&v| v != source && v != dest).collect();
    Ok(CutIter {
        base: 1u32 << source,
        free,
        pattern: 0,
        nodes: n,
    })
}

/// Lazy cut generator. Free (non-source, non-destination) node indices are
/// ascending, so walking patterns in increasing order also walks the full
/// subset bitmask in increasing order.
#[derive(Debug)]
pub struct CutIter {
    base: u32,
    free: Vec<NodeId>,
    pattern: u64,
    nodes: usize,
}

impl Iterator for CutIter {
    type Item = Cut;

    fn next(&mut self) -> Option<Cut> {
        if self.pattern >> self.free.len() != 0 {
            return None;
        }
        let mut mask = self.base;
        for (bit, &v) in self.free.iter().enumerate() {
            if (self.pattern >> bit) & 1 == 1 {
                mask |= 1 << v;
            }
        }
        self.pattern += 1;
        Some(Cut::from_mask(mask, self.nodes))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let total = 1u64 << self.free.len();
        let left = (total - self.pattern) as usize;
        (left, Some(left))
    }
}
