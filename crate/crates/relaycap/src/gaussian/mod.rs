//! Gaussian-side numerics: MIMO capacities, cut-set bounds, classical
//! relaying rates with constant-gap guarantees, deterministic-vs-Gaussian
//! region comparisons, the half-duplex schedule bound, ergodic and outage
//! wrappers, and the low-rate orthogonalization bound.
//!
//! Rates are in bits per channel use. Under the complex convention a MIMO
//! cut contributes `log2 det(I + G Q G*)`; the real convention halves every
//! rate.

pub mod eigen;
mod fading;
mod halfduplex;
mod regions;
mod relay;
mod routing;
mod surface;

pub use fading::{ergodic_cutset, outage_curve, EstimateWithCi, OutagePoint};
pub use halfduplex::{half_duplex_cutset, HalfDuplexResult, ModeSchedule};
pub use regions::{region_gap_mac_bc, RegionGapReport};
pub use relay::{
    df_rate_relay, diamond_cutset, diamond_df_bound, pdf_rate_diamond, relay_cutset,
};
pub use routing::orthogonal_routing_bound;
pub use surface::{df_gap_surface, GapSurface, SurfaceSpec};

use crate::error::Result;
use crate::net::{enumerate_cuts_capped, Cut, GaussNetwork, NodeId, SnrConvention, DEFAULT_CUT_CAP};
use eigen::gram_eigenvalues;
use num_complex::Complex64;

/// The MIMO channel a cut induces: transmit antennas on the `Omega` side of
/// the crossing edges against receive antennas on the `Omega^c` side.
#[derive(Debug, Clone)]
pub struct MimoCutChannel {
    /// Row-major complex gain matrix (rows = receive antennas).
    pub g: Vec<Vec<Complex64>>,
    /// Average power constraint per transmit antenna.
    pub per_antenna_power: f64,
}

/// Transmit power allocation across the cut MIMO modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Allocation {
    /// Sum-power water-filling over the singular values (total `m * P`).
    Waterfill,
    /// `m * P / K` on each of the `K = min(m, n)` modes.
    EqualPower,
}

impl MimoCutChannel {
    #[must_use]
    pub fn new(g: Vec<Vec<Complex64>>, per_antenna_power: f64) -> Self {
        assert!(per_antenna_power > 0.0, "power must be positive");
        Self {
            g,
            per_antenna_power,
        }
    }

    fn tx_count(&self) -> usize {
        self.g.first().map_or(0, Vec::len)
    }
}

/// MIMO capacity in bits per complex channel use under the chosen
/// allocation. Always `0 <= waterfill - equal_power <= min(m, n)`.
#[must_use]
pub fn mimo_capacity(ch: &MimoCutChannel, allocation: Allocation) -> f64 {
    let m = ch.tx_count();
    if m == 0 || ch.g.is_empty() {
        return 0.0;
    }
    let eig = gram_eigenvalues(&ch.g);
    let budget = m as f64 * ch.per_antenna_power;
    match allocation {
        Allocation::Waterfill => waterfill_capacity(&eig, budget),
        Allocation::EqualPower => {
            let k = eig.len(); // min(m, n)
            let per_mode = budget / k as f64;
            eig.iter().map(|&l| (1.0 + per_mode * l).log2()).sum()
        }
    }
}

/// Water-filling over modes with total power `budget`: eigenvalues sorted
/// descending, weakest modes peeled off until every active mode gets
/// positive power. Exact (no iterative tolerance).
fn waterfill_capacity(eig_desc: &[f64], budget: f64) -> f64 {
    let positive: Vec<f64> = eig_desc.iter().copied().filter(|&l| l > 0.0).collect();
    if positive.is_empty() {
        return 0.0;
    }
    let mut active = positive.len();
    loop {
        let inv_sum: f64 = positive[..active].iter().map(|&l| 1.0 / l).sum();
        let level = (budget + inv_sum) / active as f64;
        if level >= 1.0 / positive[active - 1] || active == 1 {
            return positive[..active]
                .iter()
                .map(|&l| (level * l).max(1.0).log2())
                .sum();
        }
        active -= 1;
    }
}

/// Cut-set bounds of a Gaussian network toward one destination.
#[derive(Debug, Clone)]
pub struct GaussCutsetResult {
    /// Min over cuts of the per-cut sum-power water-filling relaxation; an
    /// upper bound on the true cut-set bound.
    pub upper: f64,
    /// Min over cuts with i.i.d. unit-power inputs,
    /// `log2 det(I + P G G*)`: the achievable-side benchmark.
    pub iid: f64,
    pub argmin_upper: Cut,
    pub argmin_iid: Cut,
    /// `(cut, waterfill, iid)` per cut when requested.
    pub per_cut: Option<Vec<(Cut, f64, f64)>>,
}

/// Computes both cut-set bounds by assembling, for every cut, the stacked
/// MIMO matrix over the antennas touched by crossing edges.
pub fn cutset_bounds(net: &GaussNetwork, dest: NodeId) -> Result<GaussCutsetResult> {
    cutset_bounds_capped(net, dest, DEFAULT_CUT_CAP, false)
}

pub fn cutset_bounds_capped(
    net: &GaussNetwork,
    dest: NodeId,
    cap: usize,
    keep_table: bool,
) -> Result<GaussCutsetResult> {
    let factor = convention_factor(net.convention);
    let mut best_wf: Option<(Cut, f64)> = None;
    let mut best_iid: Option<(Cut, f64)> = None;
    let mut table = Vec::new();
    for cut in enumerate_cuts_capped(net, dest, cap)? {
        let (wf, iid) = cut_values(net, &cut);
        let (wf, iid) = (wf * factor, iid * factor);
        if keep_table {
            table.push((cut, wf, iid));
        }
        if best_wf.map_or(true, |(_, v)| wf < v) {
            best_wf = Some((cut, wf));
        }
        if best_iid.map_or(true, |(_, v)| iid < v) {
            best_iid = Some((cut, iid));
        }
    }
    let (argmin_upper, upper) = best_wf.expect("at least one cut");
    let (argmin_iid, iid) = best_iid.expect("at least one cut");
    Ok(GaussCutsetResult {
        upper,
        iid,
        argmin_upper,
        argmin_iid,
        per_cut: keep_table.then_some(table),
    })
}

pub(crate) fn convention_factor(conv: SnrConvention) -> f64 {
    match conv {
        SnrConvention::Complex => 1.0,
        SnrConvention::Real => 0.5,
    }
}

/// Water-filled and i.i.d. values of one cut, in complex-convention bits.
fn cut_values(net: &GaussNetwork, cut: &Cut) -> (f64, f64) {
    match assemble_cut_channel(net, cut) {
        None => (0.0, 0.0),
        Some(ch) => {
            let eig = gram_eigenvalues(&ch.g);
            let m = ch.tx_count();
            let wf = waterfill_capacity(&eig, m as f64 * ch.per_antenna_power);
            let iid: f64 = eig
                .iter()
                .map(|&l| (1.0 + ch.per_antenna_power * l).log2())
                .sum();
            (wf, iid)
        }
    }
}

/// Builds the stacked MIMO matrix of a cut over the antennas of nodes with
/// at least one crossing edge; `None` when nothing crosses.
pub fn assemble_cut_channel(net: &GaussNetwork, cut: &Cut) -> Option<MimoCutChannel> {
    let crossing: Vec<&crate::net::GaussEdge> = net
        .edges()
        .iter()
        .filter(|e| cut.contains(e.from) && !cut.contains(e.to))
        .collect();
    if crossing.is_empty() {
        return None;
    }
    let mut tx_nodes: Vec<NodeId> = crossing.iter().map(|e| e.from).collect();
    tx_nodes.sort_unstable();
    tx_nodes.dedup();
    let mut rx_nodes: Vec<NodeId> = crossing.iter().map(|e| e.to).collect();
    rx_nodes.sort_unstable();
    rx_nodes.dedup();

    let col_base: Vec<usize> = tx_nodes
        .iter()
        .scan(0usize, |acc, &v| {
            let base = *acc;
            *acc += net.tx_antennas[v];
            Some(base)
        })
        .collect();
    let row_base: Vec<usize> = rx_nodes
        .iter()
        .scan(0usize, |acc, &v| {
            let base = *acc;
            *acc += net.rx_antennas[v];
            Some(base)
        })
        .collect();
    let cols: usize = tx_nodes.iter().map(|&v| net.tx_antennas[v]).sum();
    let rows: usize = rx_nodes.iter().map(|&v| net.rx_antennas[v]).sum();

    let mut g = vec![vec![Complex64::ZERO; cols]; rows];
    for e in crossing {
        let ci = col_base[tx_nodes.binary_search(&e.from).unwrap()];
        let ri = row_base[rx_nodes.binary_search(&e.to).unwrap()];
        for (r, row) in e.h.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                g[ri + r][ci + c] = v;
            }
        }
    }
    Some(MimoCutChannel::new(g, net.power))
}

/// `n = ceil(factor * log2 snr)+`: the deterministic level count matched to
/// an SNR under the given convention.
#[must_use]
pub fn snr_to_levels(snr: f64, conv: SnrConvention) -> usize {
    if snr <= 1.0 {
        return 0;
    }
    let bits = convention_factor(conv) * snr.log2();
    bits.ceil().max(0.0) as usize
}
