//! Deterministic-network capacity.
//!
//! The capacity of a linear finite-field deterministic relay network is the
//! minimum over source-destination cuts of the GF(2) rank of the cut
//! transfer matrix; multicast takes a further minimum over destinations.
//! This module computes those minima exactly, provides the closed forms for
//! the relay and diamond topologies, evaluates the capacity of time-unfolded
//! networks, and computes the achievable rate of general (function-table)
//! deterministic networks over a grid of product input distributions.

use crate::error::{Error, Result};
use crate::net::{
    enumerate_cuts_capped, is_layered, unfold, Cut, DetNetwork, NodeId, Topology, UnfoldedNetwork,
    DEFAULT_CUT_CAP,
};
use std::collections::HashMap;

/// Outcome of a min-cut computation.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    /// Capacity in bits per channel use.
    pub value: f64,
    /// A minimizing cut.
    pub argmin_cut: Cut,
    /// Per-cut values, populated on request.
    pub per_cut_values: Option<Vec<(Cut, f64)>>,
}

/// Exact unicast capacity: `min_Omega rank(G_{Omega, Omega^c})`.
pub fn min_cut_capacity(net: &DetNetwork) -> Result<CapacityResult> {
    min_cut_capacity_toward(net, net.destinations[0], DEFAULT_CUT_CAP, false)
}

/// As [`min_cut_capacity`] with explicit destination, cap, and the option to
/// retain the full per-cut table.
pub fn min_cut_capacity_toward(
    net: &DetNetwork,
    dest: NodeId,
    cap: usize,
    keep_table: bool,
) -> Result<CapacityResult> {
    let mut best: Option<(Cut, usize)> = None;
    let mut table = Vec::new();
    for cut in enumerate_cuts_capped(net, dest, cap)? {
        let rank = net.cut_transfer_matrix(&cut).rank();
        if keep_table {
            table.push((cut, rank as f64));
        }
        if best.map_or(true, |(_, r)| rank < r) {
            best = Some((cut, rank));
        }
    }
    let (argmin_cut, rank) = best.expect("at least one cut exists");
    Ok(CapacityResult {
        value: rank as f64,
        argmin_cut,
        per_cut_values: keep_table.then_some(table),
    })
}

/// Multicast capacity: minimum over destinations of the per-destination
/// min-cut.
pub fn multicast_capacity(net: &DetNetwork, dests: &[NodeId]) -> Result<CapacityResult> {
    if dests.is_empty() {
        return Err(Error::Argument("destination set must be non-empty".into()));
    }
    let mut best: Option<CapacityResult> = None;
    for &d in dests {
        let r = min_cut_capacity_toward(net, d, DEFAULT_CUT_CAP, false)?;
        if best.as_ref().map_or(true, |b| r.value < b.value) {
            best = Some(r);
        }
    }
    Ok(best.expect("non-empty destination set"))
}

/// Closed form for the three-node relay channel:
/// `min(max(n_SR, n_SD), max(n_RD, n_SD))`, equivalently the two-branch
/// piecewise form from the relay example.
#[must_use]
pub fn relay_closed_form(n_sr: usize, n_sd: usize, n_rd: usize) -> usize {
    let min_max = n_sr.max(n_sd).min(n_rd.max(n_sd));
    let piecewise = if n_sd > n_sr.min(n_rd) {
        n_sd
    } else {
        n_sr.min(n_rd)
    };
    debug_assert_eq!(min_max, piecewise);
    min_max
}

/// Closed form for the two-relay diamond:
/// `min(max(n_SA1, n_SA2), max(n_A1D, n_A2D), n_SA1 + n_A2D, n_SA2 + n_A1D)`.
#[must_use]
pub fn diamond_closed_form(n_sa1: usize, n_sa2: usize, n_a1d: usize, n_a2d: usize) -> usize {
    (n_sa1.max(n_sa2))
        .min(n_a1d.max(n_a2d))
        .min(n_sa1 + n_a2d)
        .min(n_sa2 + n_a1d)
}

/// Capacity of the K-step unfolding: the minimum over unfolded cuts of
/// crossing wired capacity plus crossing channel rank, with wired capacity
/// `K * Cbar` where `Cbar` is the min-cut of the original network.
///
/// Any cut whose per-stage membership is not nested crosses a wired link and
/// is therefore no better than the steady cut at the original argmin, so the
/// search ranges over monotone chains `{S} <= V[1] <= ... <= V[K] <= V \ {D}`
/// only. Satisfies `(K - |V|) * Cbar <= value <= K * Cbar`.
pub fn unfolded_capacity(net: &DetNetwork, k: usize) -> Result<f64> {
    if net.destinations.len() != 1 {
        return Err(Error::Argument(
            "unfolding requires a single destination".into(),
        ));
    }
    let cbar = min_cut_capacity(net)?.value;
    let unf = unfold(net, k, cbar)?;
    Ok(unfolded_capacity_of(net, &unf))
}

/// Min-cut of an already-built unfolding (its wired capacity must be
/// `K * Cbar` for the chain restriction to be exhaustive).
#[must_use]
pub fn unfolded_capacity_of(net: &DetNetwork, unf: &UnfoldedNetwork) -> f64 {
    let n = net.node_count();
    let (source, dest) = (net.source, net.destinations[0]);
    let k = unf.k;
    let free: Vec<NodeId> = (0..n).filter(|&v| v != source && v != dest).collect();
    // Each free node independently joins the chain at some stage in 1..=K or
    // never: (K+1)^(|V|-2) chains.
    let chain_count = (k as u64 + 1).checked_pow(free.len() as u32);
    let chain_count = match chain_count {
        Some(c) if c <= 4_000_000 => c,
        _ => {
            assert!(
                unf.node_count() <= 22,
                "unfolded chain search out of budget: K={k}, |V|={n}"
            );
            return generic_unfolded_min_cut(unf);
        }
    };

    // rank(G_{A, V \ B}) for masks (A, B), cached across chains.
    let mut rank_cache: HashMap<(u32, u32), usize> = HashMap::new();
    let mut rank_between = |tx_mask: u32, keep_mask: u32, into_dest_only: bool| -> usize {
        let key = (tx_mask, if into_dest_only { u32::MAX } else { keep_mask });
        if let Some(&r) = rank_cache.get(&key) {
            return r;
        }
        let tx: Vec<NodeId> = (0..n).filter(|&v| tx_mask >> v & 1 == 1).collect();
        let rx: Vec<NodeId> = if into_dest_only {
            vec![dest]
        } else {
            (0..n).filter(|&v| keep_mask >> v & 1 == 0).collect()
        };
        let r = net.transfer_between(&tx, &rx).rank();
        rank_cache.insert(key, r);
        r
    };

    let mut best = f64::INFINITY;
    for chain in 0..chain_count {
        // Decode per-node join stages; stage masks are monotone by
        // construction (stage K+1 means the node never joins).
        let mut join = vec![0u64; free.len()];
        let mut rem = chain;
        for j in join.iter_mut() {
            *j = rem % (k as u64 + 1) + 1;
            rem /= k as u64 + 1;
        }
        let stage_mask = |i: u64| -> u32 {
            let mut m = 1u32 << source;
            for (b, &v) in free.iter().enumerate() {
                if join[b] <= i {
                    m |= 1 << v;
                }
            }
            m
        };
        let mut value = 0.0;
        for i in 1..k as u64 {
            value += rank_between(stage_mask(i), stage_mask(i + 1), false) as f64;
            if value >= best {
                break;
            }
        }
        if value < best {
            value += rank_between(stage_mask(k as u64), 0, true) as f64;
            best = best.min(value);
        }
    }
    best
}

/// Exhaustive min over all unfolded cuts; exponential in the unfolded node
/// count, used as the cross-check oracle for the chain search.
#[must_use]
pub fn generic_unfolded_min_cut(unf: &UnfoldedNetwork) -> f64 {
    let n = unf.node_count();
    assert!(n <= 26, "generic unfolded enumeration is for tiny instances");
    let free: Vec<usize> = (0..n)
        .filter(|&v| v != unf.source && v != unf.dest)
        .collect();
    let mut best = f64::INFINITY;
    for pattern in 0..(1u64 << free.len()) {
        let mut in_omega = vec![false; n];
        in_omega[unf.source] = true;
        for (b, &v) in free.iter().enumerate() {
            if (pattern >> b) & 1 == 1 {
                in_omega[v] = true;
            }
        }
        best = best.min(unf.cut_value(&in_omega));
    }
    best
}

// ---------------------------------------------------------------------------
// General deterministic networks (function tables)
// ---------------------------------------------------------------------------

/// A deterministic relay network given by complete per-node function tables
/// `y_v = g_v(x_inputs)` over small input alphabets.
#[derive(Debug, Clone)]
pub struct FunctionalNetwork {
    names: Vec<String>,
    pub source: NodeId,
    pub dest: NodeId,
    /// Transmit alphabet size per node (<= 4).
    pub alphabet: Vec<usize>,
    /// Per node: input nodes and the output table, row-major over input
    /// tuples (first listed input varies slowest). Nodes without an entry
    /// receive the constant 0.
    pub tables: Vec<NodeFunction>,
}

#[derive(Debug, Clone)]
pub struct NodeFunction {
    pub node: NodeId,
    pub inputs: Vec<NodeId>,
    pub table: Vec<usize>,
}

impl FunctionalNetwork {
    pub fn new(
        names: Vec<String>,
        source: NodeId,
        dest: NodeId,
        alphabet: Vec<usize>,
        tables: Vec<NodeFunction>,
    ) -> Result<Self> {
        let n = names.len();
        if alphabet.len() != n {
            return Err(Error::Argument(
                "alphabet length must match node count".into(),
            ));
        }
        if alphabet.iter().any(|&a| a == 0 || a > 4) {
            return Err(Error::Argument("alphabets must have size 1..=4".into()));
        }
        if n > 5 {
            return Err(Error::Resource(
                "functional networks are capped at 5 nodes".into(),
            ));
        }
        for t in &tables {
            if t.node >= n || t.inputs.iter().any(|&i| i >= n) {
                return Err(Error::Argument("table references unknown node".into()));
            }
            let expect: usize = t.inputs.iter().map(|&i| alphabet[i]).product();
            if t.table.len() != expect {
                return Err(Error::Argument(format!(
                    "table for node {} must have {expect} entries (one per input tuple), got {}",
                    names[t.node],
                    t.table.len()
                )));
            }
        }
        Ok(Self {
            names,
            source,
            dest,
            alphabet,
            tables,
        })
    }

    fn arcs_vec(&self) -> Vec<(NodeId, NodeId)> {
        let mut arcs = Vec::new();
        for t in &self.tables {
            for &i in &t.inputs {
                arcs.push((i, t.node));
            }
        }
        arcs
    }

    /// Received symbol at every node for the given transmit tuple.
    fn outputs(&self, x: &[usize]) -> Vec<usize> {
        let mut y = vec![0usize; self.names.len()];
        for t in &self.tables {
            let mut idx = 0;
            for &i in &t.inputs {
                idx = idx * self.alphabet[i] + x[i];
            }
            y[t.node] = t.table[idx];
        }
        y
    }
}

impl Topology for FunctionalNetwork {
    fn node_count(&self) -> usize {
        self.names.len()
    }
    fn source(&self) -> NodeId {
        self.source
    }
    fn node_name(&self, v: NodeId) -> &str {
        &self.names[v]
    }
    fn arcs(&self) -> Vec<(NodeId, NodeId)> {
        self.arcs_vec()
    }
}

/// Achievable rate of a layered general deterministic network: the maximum
/// over a grid of product input distributions of the minimum over cuts of
/// `H(y_{Omega^c} | x_{Omega^c})`, computed exactly by marginalizing the
/// function tables. `grid` discretizes each node's simplex at steps of
/// `1/grid`. A lower bound on the true maximum.
pub fn general_det_rate(net: &FunctionalNetwork, grid: usize) -> Result<f64> {
    if grid == 0 {
        return Err(Error::Argument("grid resolution must be positive".into()));
    }
    if is_layered(net, net.dest).is_none() {
        return Err(Error::Argument(
            "general deterministic rate requires a layered network".into(),
        ));
    }
    let n = net.node_count();
    // Nodes whose transmit symbol matters: inputs of some table.
    let mut active = vec![false; n];
    for t in &net.tables {
        for &i in &t.inputs {
            active[i] = true;
        }
    }
    let grids: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|v| {
            if active[v] {
                simplex_grid(net.alphabet[v], grid)
            } else {
                vec![vec![1.0]]
            }
        })
        .collect();
    let total = grids
        .iter()
        .map(Vec::len)
        .try_fold(1usize, |a, b| a.checked_mul(b).filter(|&t| t <= 2_000_000))
        .ok_or_else(|| {
            Error::Resource("distribution grid too large; lower the resolution".into())
        })?;

    let mut index = vec![0usize; n];
    let mut best = f64::NEG_INFINITY;
    for _ in 0..total {
        let dists: Vec<&[f64]> = (0..n).map(|v| grids[v][index[v]].as_slice()).collect();
        let rate = rate_for_distribution(net, &dists)?;
        best = best.max(rate);
        for v in 0..n {
            index[v] += 1;
            if index[v] < grids[v].len() {
                break;
            }
            index[v] = 0;
        }
    }
    Ok(best)
}

/// `min_Omega H(y_{Omega^c} | x_{Omega^c})` for one product distribution
/// (one pmf per node; nodes whose symbol never enters a table may pass
/// `[1.0]`). Exact marginalization of the joint over all input tuples.
pub fn rate_for_distribution(net: &FunctionalNetwork, dists: &[&[f64]]) -> Result<f64> {
    let n = net.node_count();
    if dists.len() != n {
        return Err(Error::Argument("one distribution per node required".into()));
    }
    let sizes: Vec<usize> = (0..n).map(|v| dists[v].len()).collect();
    for v in 0..n {
        if sizes[v] != 1 && sizes[v] != net.alphabet[v] {
            return Err(Error::Argument(format!(
                "distribution for node {} has wrong support",
                net.node_name(v)
            )));
        }
    }
    let tuples: usize = sizes.iter().product();
    let cuts = enumerate_cuts_capped(net, net.dest, DEFAULT_CUT_CAP)?;
    let mut worst = f64::INFINITY;
    for cut in cuts {
        // Joint pmf over (y_{Omega^c}, x_{Omega^c}) keyed by symbol tuples.
        let mut joint: HashMap<(Vec<usize>, Vec<usize>), f64> = HashMap::new();
        let comp = cut.complement();
        let mut x = vec![0usize; n];
        for t in 0..tuples {
            let mut rem = t;
            let mut p = 1.0;
            for v in 0..n {
                x[v] = rem % sizes[v];
                rem /= sizes[v];
                p *= dists[v][x[v]];
            }
            if p == 0.0 {
                continue;
            }
            let y = net.outputs(&x);
            let y_comp: Vec<usize> = comp.iter().map(|&v| y[v]).collect();
            let x_comp: Vec<usize> = comp.iter().map(|&v| x[v]).collect();
            *joint.entry((y_comp, x_comp)).or_insert(0.0) += p;
        }
        // H(Y|X) = H(Y, X) - H(X).
        let mut marg_x: HashMap<&[usize], f64> = HashMap::new();
        for ((_, xc), p) in &joint {
            *marg_x.entry(xc.as_slice()).or_insert(0.0) += p;
        }
        let h_joint: f64 = joint.values().map(|&p| -p * p.log2()).sum();
        let h_x: f64 = marg_x.values().map(|&p| -p * p.log2()).sum();
        worst = worst.min(h_joint - h_x);
    }
    Ok(worst)
}

/// All pmfs on `len` symbols with entries `k/grid`.
fn simplex_grid(len: usize, grid: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut counts = vec![0usize; len];
    fill_simplex(&mut out, &mut counts, 0, grid, grid);
    out
}

fn fill_simplex(
    out: &mut Vec<Vec<f64>>,
    counts: &mut [usize],
    at: usize,
    left: usize,
    grid: usize,
) {
    if at + 1 == counts.len() {
        counts[at] = left;
        out.push(counts.iter().map(|&c| c as f64 / grid as f64).collect());
        return;
    }
    for take in 0..=left {
        counts[at] = take;
        fill_simplex(out, counts, at + 1, left - take, grid);
    }
}

/// Expresses a linear finite-field network as function tables (symbols are
/// GF(2)^q vectors packed with the top signal level in the low bit,
/// alphabet `2^q`); requires `q <= 2` to honor the alphabet cap.
pub fn lff_as_tables(net: &DetNetwork) -> Result<FunctionalNetwork> {
    if net.destinations.len() != 1 {
        return Err(Error::Argument("single destination required".into()));
    }
    let q = net.q;
    if q > 2 {
        return Err(Error::Argument(
            "alphabet 2^q exceeds 4: q must be <= 2".into(),
        ));
    }
    let n = net.node_count();
    let alpha = 1usize << q;
    let mut tables = Vec::new();
    for v in 0..n {
        let inputs: Vec<NodeId> = net
            .edges()
            .iter()
            .filter(|e| e.to == v)
            .map(|e| e.from)
            .collect();
        if inputs.is_empty() {
            continue;
        }
        let rows: usize = inputs.iter().map(|_| alpha).product();
        let mut table = Vec::with_capacity(rows);
        for idx in 0..rows {
            let mut rem = idx;
            let mut symbols = vec![0usize; inputs.len()];
            for s in (0..inputs.len()).rev() {
                symbols[s] = rem % alpha;
                rem /= alpha;
            }
            let mut y = 0usize;
            for (s, &u) in inputs.iter().enumerate() {
                let gain = net.gain(u, v);
                // Down-shift by q - gain levels; bit i holds level i.
                let shifted = (symbols[s] << (q - gain)) & (alpha - 1);
                y ^= shifted;
            }
            table.push(y);
        }
        tables.push(NodeFunction {
            node: v,
            inputs,
            table,
        });
    }
    FunctionalNetwork::new(
        net.node_names().to_vec(),
        net.source,
        net.destinations[0],
        vec![alpha; n],
        tables,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::unfold;

    #[test]
    fn point_to_point_capacity() {
        let net = DetNetwork::point_to_point(4);
        assert_eq!(min_cut_capacity(&net).unwrap().value, 4.0);
    }

    #[test]
    fn relay_capacity_matches_closed_form() {
        let net = DetNetwork::relay_channel(3, 2, 3);
        let r = min_cut_capacity(&net).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(relay_closed_form(3, 2, 3), 3);
    }

    #[test]
    fn diamond_capacity_example() {
        // Reconstruction of the 3-bit diamond example: cut-set bound 3.
        let net = DetNetwork::diamond(3, 2, 1, 3);
        let r = min_cut_capacity(&net).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(diamond_closed_form(3, 2, 1, 3), 3);
    }

    #[test]
    fn relay_closed_form_edge_cases() {
        assert_eq!(relay_closed_form(0, 5, 0), 5);
        assert_eq!(relay_closed_form(2, 0, 7), 2);
    }

    #[test]
    fn diamond_closed_form_edge_cases() {
        assert_eq!(diamond_closed_form(0, 0, 3, 4), 0);
        assert_eq!(diamond_closed_form(5, 5, 5, 5), 5);
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for n_sr in 0..=4 {
            for n_sd in 0..=4 {
                for n_rd in 0..=4 {
                    let net = DetNetwork::relay_channel(n_sr, n_sd, n_rd);
                    assert_eq!(
                        min_cut_capacity(&net).unwrap().value,
                        relay_closed_form(n_sr, n_sd, n_rd) as f64,
                        "relay ({n_sr},{n_sd},{n_rd})"
                    );
                }
            }
        }
    }

    #[test]
    fn multicast_reduces_to_unicast_for_single_destination() {
        let net = DetNetwork::relay_channel(3, 2, 3);
        let m = multicast_capacity(&net, &[2]).unwrap();
        assert_eq!(m.value, 3.0);
    }

    #[test]
    fn multicast_two_pipes() {
        // S -> D1 at 3 levels, S -> D2 at 2 levels: multicast min is 2.
        let net = DetNetwork::new(
            vec!["S".into(), "D1".into(), "D2".into()],
            0,
            vec![1, 2],
            &[(0, 1, 3), (0, 2, 2)],
        )
        .unwrap();
        assert_eq!(multicast_capacity(&net, &[1, 2]).unwrap().value, 2.0);
    }

    #[test]
    fn multicast_unreachable_destination_is_zero() {
        let net = DetNetwork::new(
            vec!["S".into(), "D1".into(), "D2".into()],
            0,
            vec![1, 2],
            &[(0, 1, 3)],
        )
        .unwrap();
        assert_eq!(multicast_capacity(&net, &[1, 2]).unwrap().value, 0.0);
    }

    #[test]
    fn unfolded_point_to_point_scales_with_k() {
        let net = DetNetwork::point_to_point(2);
        assert_eq!(unfolded_capacity(&net, 3).unwrap(), 6.0);
    }

    #[test]
    fn unfolded_single_stage_one_hop_equals_min_cut() {
        let net = DetNetwork::point_to_point(3);
        assert_eq!(unfolded_capacity(&net, 1).unwrap(), 3.0);
    }

    #[test]
    fn chain_search_matches_generic_enumeration() {
        let nets = [
            DetNetwork::relay_channel(3, 2, 3),
            DetNetwork::relay_channel(1, 2, 2),
            DetNetwork::point_to_point(2),
            DetNetwork::new(
                vec!["S".into(), "A".into(), "D".into()],
                0,
                vec![2],
                &[(0, 1, 2), (0, 2, 1), (1, 2, 2)],
            )
            .unwrap(),
        ];
        for net in &nets {
            let cbar = min_cut_capacity(net).unwrap().value;
            for k in 1..=3 {
                let unf = unfold(net, k, cbar).unwrap();
                let fast = unfolded_capacity_of(net, &unf);
                let slow = generic_unfolded_min_cut(&unf);
                assert_eq!(fast, slow, "net q={} K={k}", net.q);
            }
        }
    }

    #[test]
    fn unfolded_sandwich_on_relay() {
        let net = DetNetwork::relay_channel(3, 2, 3);
        let cbar = min_cut_capacity(&net).unwrap().value;
        for k in [2usize, 4, 6] {
            let v = unfolded_capacity(&net, k).unwrap();
            let lo = (k as f64 - net.node_count() as f64) * cbar;
            let hi = k as f64 * cbar;
            assert!(lo <= v && v <= hi, "K={k}: {lo} <= {v} <= {hi}");
        }
    }

    #[test]
    fn capacity_monotone_in_gains() {
        // Bumping any single gain never lowers the min-cut.
        for n_sr in 0..=3 {
            for n_sd in 0..=3 {
                for n_rd in 0..=3 {
                    let base =
                        min_cut_capacity(&DetNetwork::relay_channel(n_sr, n_sd, n_rd)).unwrap();
                    for bump in [
                        (n_sr + 1, n_sd, n_rd),
                        (n_sr, n_sd + 1, n_rd),
                        (n_sr, n_sd, n_rd + 1),
                    ] {
                        let up =
                            min_cut_capacity(&DetNetwork::relay_channel(bump.0, bump.1, bump.2))
                                .unwrap();
                        assert!(up.value >= base.value);
                    }
                }
            }
        }
    }

    // -- general deterministic rate --

    #[test]
    fn identity_channel_reaches_one_bit() {
        let net = FunctionalNetwork::new(
            vec!["S".into(), "D".into()],
            0,
            1,
            vec![2, 2],
            vec![NodeFunction {
                node: 1,
                inputs: vec![0],
                table: vec![0, 1],
            }],
        )
        .unwrap();
        let rate = general_det_rate(&net, 8).unwrap();
        assert!((rate - 1.0).abs() < 1e-12, "rate {rate}");
    }

    #[test]
    fn lff_tables_match_min_cut() {
        // Two-hop chains with q <= 2 expressed as tables; the grid contains
        // the uniform distribution, which attains the min-cut.
        for (n_sr, n_rd) in [(1, 1), (2, 1), (2, 2), (1, 2)] {
            let net = DetNetwork::new(
                vec!["S".into(), "R".into(), "D".into()],
                0,
                vec![2],
                &[(0, 1, n_sr), (1, 2, n_rd)],
            )
            .unwrap();
            let expect = min_cut_capacity(&net).unwrap().value;
            let func = lff_as_tables(&net).unwrap();
            let rate = general_det_rate(&func, 4).unwrap();
            assert!(
                (rate - expect).abs() < 1e-9,
                "({n_sr},{n_rd}): rate {rate} vs min-cut {expect}"
            );
        }
    }

    #[test]
    fn and_channel_conditional_entropy_matches_oracle() {
        // y_D = x_S AND x_R with the relay input forced uniform. For
        // p = P(x_S = 1): cut {S} gives 0.5 * Hb(p), cut {S,R} gives Hb(p/2).
        let net = FunctionalNetwork::new(
            vec!["S".into(), "R".into(), "D".into()],
            0,
            2,
            vec![2, 2, 2],
            vec![NodeFunction {
                node: 2,
                inputs: vec![0, 1],
                table: vec![0, 0, 0, 1],
            }],
        )
        .unwrap();
        let hb = |p: f64| -> f64 {
            if p <= 0.0 || p >= 1.0 {
                0.0
            } else {
                -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
            }
        };
        for p1 in [0.25, 0.5, 0.75] {
            let ds = [vec![1.0 - p1, p1], vec![0.5, 0.5], vec![1.0]];
            let dd: Vec<&[f64]> = ds.iter().map(Vec::as_slice).collect();
            let got = rate_for_distribution(&net, &dd).unwrap();
            let expect = (0.5 * hb(p1)).min(hb(p1 * 0.5));
            assert!((got - expect).abs() < 1e-12, "p1={p1}: {got} vs {expect}");
        }
    }

    #[test]
    fn incomplete_table_rejected() {
        let err = FunctionalNetwork::new(
            vec!["S".into(), "D".into()],
            0,
            1,
            vec![2, 2],
            vec![NodeFunction {
                node: 1,
                inputs: vec![0],
                table: vec![0],
            }],
        )
        .unwrap_err();
        assert!(err.to_string().contains("entries"), "{err}");
    }

    #[test]
    fn non_layered_functional_net_rejected() {
        // y_R = x_S and y_D = f(x_S, x_R): paths of length 1 and 2.
        let net = FunctionalNetwork::new(
            vec!["S".into(), "R".into(), "D".into()],
            0,
            2,
            vec![2, 2, 2],
            vec![
                NodeFunction {
                    node: 1,
                    inputs: vec![0],
                    table: vec![0, 1],
                },
                NodeFunction {
                    node: 2,
                    inputs: vec![0, 1],
                    table: vec![0, 0, 0, 1],
                },
            ],
        )
        .unwrap();
        assert!(general_det_rate(&net, 4).is_err());
    }
}
