//! Time-unfolding of an arbitrary deterministic network into a layered one.
//!
//! The K-step unfolding has K+2 stages. Stage 0 holds only `S[0]`, stage K+1
//! only `D[K+1]`, and every original node appears once per stage 1..=K.
//! Wired links of capacity `K * cbar` act as per-node memory between
//! consecutive stages; the original channels are copied between consecutive
//! stages wherever both endpoint copies exist. Stage 0 has no channel
//! outputs and stage K+1 no channel inputs other than those into `D[K+1]`:
//! the source injects its message into `S[1]` over the wired link, and the
//! destination's final observation leaves through `D[K] -> D[K+1]` plus the
//! block-K receptions.

use super::{layering_of, DetNetwork, NodeId, Topology};
use crate::error::{Error, Result};
use crate::gf2::{shift_matrix, BitMatrix};

/// Node of an unfolded network: a stage index and the original node it
/// copies (`None` only for the synthetic `S[0]` / `D[K+1]` endpoints'
/// bookkeeping, which still reference S and D).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UNode {
    pub stage: usize,
    pub orig: NodeId,
}

/// A memory link with real-valued capacity in bits per block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WiredEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: f64,
}

/// Layered unfolding of a deterministic network.
#[derive(Debug, Clone)]
pub struct UnfoldedNetwork {
    pub k: usize,
    pub cbar: f64,
    pub q: usize,
    /// Unfolded node table; index 0 is `S[0]`, the last entry is `D[K+1]`.
    pub nodes: Vec<UNode>,
    pub source: usize,
    pub dest: usize,
    /// Channel copies `(from, to, gain)` in unfolded node indices.
    pub det_edges: Vec<(usize, usize, usize)>,
    pub wired_edges: Vec<WiredEdge>,
    orig_count: usize,
}

/// Builds the K-step unfolding with wired capacity `K * cbar` per memory
/// link. The caller supplies `cbar` (normally the min-cut of `net`).
pub fn unfold(net: &DetNetwork, k: usize, cbar: f64) -> Result<UnfoldedNetwork> {
    if k < 1 {
        return Err(Error::Argument("unfold requires K >= 1".into()));
    }
    if cbar < 0.0 {
        return Err(Error::Argument("cbar must be non-negative".into()));
    }
    if net.destinations.len() != 1 {
        return Err(Error::Argument(
            "unfolding is defined for a single destination".into(),
        ));
    }
    let n = net.node_count();
    let (source, dest) = (net.source, net.destinations[0]);

    // Index layout: 0 = S[0]; stage i in 1..=K occupies 1+(i-1)*n .. 1+i*n;
    // last = D[K+1].
    let copy = |stage: usize, v: NodeId| 1 + (stage - 1) * n + v;
    let mut nodes = vec![UNode {
        stage: 0,
        orig: source,
    }];
    for stage in 1..=k {
        for v in 0..n {
            nodes.push(UNode { stage, orig: v });
        }
    }
    nodes.push(UNode {
        stage: k + 1,
        orig: dest,
    });
    let u_source = 0;
    let u_dest = nodes.len() - 1;

    let wired_cap = k as f64 * cbar;
    let mut wired = vec![WiredEdge {
        from: u_source,
        to: copy(1, source),
        capacity: wired_cap,
    }];
    for v in 0..n {
        for stage in 1..k {
            wired.push(WiredEdge {
                from: copy(stage, v),
                to: copy(stage + 1, v),
                capacity: wired_cap,
            });
        }
    }
    wired.push(WiredEdge {
        from: copy(k, dest),
        to: u_dest,
        capacity: wired_cap,
    });

    let mut det_edges = Vec::new();
    for e in net.edges() {
        for stage in 1..=k {
            let to = if stage + 1 <= k {
                Some(copy(stage + 1, e.to))
            } else if e.to == dest {
                Some(u_dest)
            } else {
                None
            };
            if let Some(to) = to {
                det_edges.push((copy(stage, e.from), to, e.gain));
            }
        }
    }

    Ok(UnfoldedNetwork {
        k,
        cbar,
        q: net.q,
        nodes,
        source: u_source,
        dest: u_dest,
        det_edges,
        wired_edges: wired,
        orig_count: n,
    })
}

impl UnfoldedNetwork {
    #[must_use]
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    #[must_use]
    pub fn stage_count(&self) -> usize {
        self.k + 2
    }

    /// True iff every edge (wired and channel) advances exactly one stage.
    /// Holds by construction; exposed so tests can assert it.
    #[must_use]
    pub fn verify_layered(&self) -> bool {
        let arcs: Vec<(usize, usize)> = self
            .det_edges
            .iter()
            .map(|&(a, b, _)| (a, b))
            .chain(self.wired_edges.iter().map(|w| (w.from, w.to)))
            .collect();
        let by_stage = arcs
            .iter()
            .all(|&(a, b)| self.nodes[b].stage == self.nodes[a].stage + 1);
        by_stage
            && layering_of(self.node_count(), self.source, self.dest, &arcs).is_some()
    }

    /// Value of a cut of the unfolded network given as a membership mask
    /// over unfolded node indices: crossing wired capacity plus the GF(2)
    /// rank of the stacked crossing channel blocks.
    ///
    /// Exhaustive enumeration over these masks is only feasible for tiny
    /// instances; it serves as the oracle for the chain-restricted search in
    /// the capacity module.
    #[must_use]
    pub fn cut_value(&self, in_omega: &[bool]) -> f64 {
        let wired: f64 = self
            .wired_edges
            .iter()
            .filter(|w| in_omega[w.from] && !in_omega[w.to])
            .map(|w| w.capacity)
            .sum();
        let crossing: Vec<(usize, usize, usize)> = self
            .det_edges
            .iter()
            .copied()
            .filter(|&(a, b, _)| in_omega[a] && !in_omega[b])
            .collect();
        wired + self.rank_of_edges(&crossing) as f64
    }

    /// Rank of the stacked shift blocks of an arbitrary channel-edge subset.
    fn rank_of_edges(&self, edges: &[(usize, usize, usize)]) -> usize {
        let mut txs: Vec<usize> = edges.iter().map(|&(a, _, _)| a).collect();
        let mut rxs: Vec<usize> = edges.iter().map(|&(_, b, _)| b).collect();
        txs.sort_unstable();
        txs.dedup();
        rxs.sort_unstable();
        rxs.dedup();
        let col = |v: usize| txs.binary_search(&v).unwrap();
        let row = |v: usize| rxs.binary_search(&v).unwrap();
        let q = self.q;
        let mut m = BitMatrix::zeros(q * rxs.len(), q * txs.len());
        for &(a, b, gain) in edges {
            let block = shift_matrix(q, gain).expect("gain <= q");
            m.paste(row(b) * q, col(a) * q, &block);
        }
        m.rank()
    }

    /// Number of original nodes per relay stage.
    #[must_use]
    pub fn originals(&self) -> usize {
        self.orig_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig11_net() -> DetNetwork {
        // Direct S->D edge plus a two-hop path through A: unequal path
        // lengths, the canonical unfolding example.
        DetNetwork::new(
            vec!["S".into(), "A".into(), "D".into()],
            0,
            vec![2],
            &[(0, 1, 2), (0, 2, 1), (1, 2, 2)],
        )
        .unwrap()
    }

    #[test]
    fn smallest_unfolding_has_three_stages() {
        let net = DetNetwork::point_to_point(2);
        let unf = unfold(&net, 1, 2.0).unwrap();
        assert_eq!(unf.stage_count(), 3);
        assert_eq!(unf.node_count(), 2 + 2);
        assert!(unf.verify_layered());
    }

    #[test]
    fn fig11_unfolding_structure() {
        let net = fig11_net();
        let unf = unfold(&net, 3, 2.0).unwrap();
        assert_eq!(unf.stage_count(), 5);
        assert_eq!(unf.node_count(), 3 * 3 + 2);
        // Wired: S[0]->S[1], D[3]->D[4], and one per node per interior step.
        assert_eq!(unf.wired_edges.len(), 2 + 3 * 2);
        assert!(unf.wired_edges.iter().all(|w| w.capacity == 6.0));
        // Channels: S->A at stages 1..2, S->D and A->D at stages 1..3.
        assert_eq!(unf.det_edges.len(), 2 + 3 + 3);
        assert!(unf.verify_layered());
    }

    #[test]
    fn node_count_matches_construction() {
        let net = DetNetwork::diamond(3, 2, 1, 3);
        for k in 1..=4 {
            let unf = unfold(&net, k, 3.0).unwrap();
            assert_eq!(unf.node_count(), 4 * k + 2);
            assert!(unf.verify_layered());
        }
    }

    #[test]
    fn k_zero_rejected() {
        let net = DetNetwork::point_to_point(2);
        assert!(unfold(&net, 0, 2.0).is_err());
    }

    #[test]
    fn point_to_point_cut_values() {
        let net = DetNetwork::point_to_point(2);
        let unf = unfold(&net, 1, 2.0).unwrap();
        // Omega = {S[0], S[1]}: the only crossing is the channel S[1]->D[2].
        let mut omega = vec![false; unf.node_count()];
        omega[unf.source] = true;
        omega[1] = true; // S[1]
        assert_eq!(unf.cut_value(&omega), 2.0);
        // Omega = {S[0]}: crossing is the wired link of capacity K*cbar.
        let mut omega = vec![false; unf.node_count()];
        omega[unf.source] = true;
        assert_eq!(unf.cut_value(&omega), 2.0);
    }
}
