//! Network data model: parsing and validation of deterministic and Gaussian
//! relay networks, cut enumeration, cut transfer matrices, layer detection,
//! and time-unfolding.
//!
//! Networks are described by a JSON document:
//!
//! ```json
//! {
//!   "model": "det",
//!   "nodes": [{"id": "S"}, {"id": "R"}, {"id": "D"}],
//!   "source": "S",
//!   "destinations": ["D"],
//!   "edges": [
//!     {"from": "S", "to": "R", "gain": 3},
//!     {"from": "S", "to": "D", "gain": 2},
//!     {"from": "R", "to": "D", "gain": 3}
//!   ]
//! }
//! ```
//!
//! Gaussian documents use `"model": "gauss"`, an `"snr_convention"` of
//! `"real"` or `"complex"`, per-node `tx_antennas`/`rx_antennas` counts
//! (default 1), and per-edge complex gain matrices
//! `"H": [[[re, im], ...], ...]` with one row per receive antenna. Unknown
//! fields are rejected.

mod cuts;
mod unfold;

pub use cuts::{enumerate_cuts, enumerate_cuts_capped, Cut, CutIter, DEFAULT_CUT_CAP};
pub use unfold::{unfold, UNode, UnfoldedNetwork, WiredEdge};

use crate::error::{Error, Result};
use crate::gf2::{shift_matrix, BitMatrix};
use num_complex::Complex64;
use serde::Deserialize;
use std::collections::HashMap;

pub type NodeId = usize;

/// A directed edge of the deterministic model with integer gain `n_ij >= 1`
/// (zero-gain edges carry no signal and are dropped at parse time).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub gain: usize,
}

/// Linear finite-field deterministic relay network over GF(2).
#[derive(Debug, Clone)]
pub struct DetNetwork {
    names: Vec<String>,
    pub source: NodeId,
    pub destinations: Vec<NodeId>,
    edges: Vec<DetEdge>,
    /// Signal level count: the maximum gain over retained edges.
    pub q: usize,
}

/// A directed Gaussian link with complex gain matrix `H` of shape
/// `rx_antennas(to) x tx_antennas(from)`.
#[derive(Debug, Clone)]
pub struct GaussEdge {
    pub from: NodeId,
    pub to: NodeId,
    /// Row-major, `rows = rx antennas at to`, `cols = tx antennas at from`.
    pub h: Vec<Vec<Complex64>>,
}

/// Rate bookkeeping convention for the Gaussian side.
///
/// `Complex` uses `log(1 + SNR)` per complex dimension and
/// `n = ceil(log2 SNR)+`; `Real` halves rates and uses
/// `n = ceil(0.5 log2 SNR)+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SnrConvention {
    #[default]
    Complex,
    Real,
}

/// Gaussian relay network with unit-variance noise at every receive antenna.
#[derive(Debug, Clone)]
pub struct GaussNetwork {
    names: Vec<String>,
    pub source: NodeId,
    pub destinations: Vec<NodeId>,
    pub tx_antennas: Vec<usize>,
    pub rx_antennas: Vec<usize>,
    edges: Vec<GaussEdge>,
    /// Average power constraint per transmit antenna.
    pub power: f64,
    pub convention: SnrConvention,
}

/// Either flavour of parsed network.
#[derive(Debug, Clone)]
pub enum Network {
    Det(DetNetwork),
    Gauss(GaussNetwork),
}

/// Shared topology view used by cut enumeration and layering.
pub trait Topology {
    fn node_count(&self) -> usize;
    fn source(&self) -> NodeId;
    fn node_name(&self, v: NodeId) -> &str;
    /// Directed adjacency: edges as `(from, to)` pairs.
    fn arcs(&self) -> Vec<(NodeId, NodeId)>;
}

impl Topology for DetNetwork {
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
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }
}

impl Topology for GaussNetwork {
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
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }
}

// ---------------------------------------------------------------------------
// Document schema
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    model: String,
    #[serde(default)]
    snr_convention: Option<String>,
    nodes: Vec<NodeDoc>,
    source: String,
    destinations: Vec<String>,
    edges: Vec<EdgeDoc>,
    #[serde(default)]
    tables: Option<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: String,
    #[serde(default)]
    tx_antennas: Option<usize>,
    #[serde(default)]
    rx_antennas: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    from: String,
    to: String,
    #[serde(default)]
    gain: Option<i64>,
    #[serde(default, rename = "H")]
    h: Option<Vec<Vec<[f64; 2]>>>,
}

/// Parses and validates a network description document.
pub fn parse_network(text: &str) -> Result<Network> {
    let doc: NetworkDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid document: {e}")))?;
    if doc.tables.is_some() {
        return Err(Error::Parse(
            "function tables are only accepted by the functional-network loader".into(),
        ));
    }
    let base = DocBase::resolve(&doc)?;
    match doc.model.as_str() {
        "det" => {
            if doc.snr_convention.is_some() {
                return Err(Error::Parse(
                    "snr_convention only applies to gauss documents".into(),
                ));
            }
            Ok(Network::Det(parse_det(&doc, base)?))
        }
        "gauss" => Ok(Network::Gauss(parse_gauss(&doc, base)?)),
        other => Err(Error::Parse(format!(
            "unknown model {other:?} (expected \"det\" or \"gauss\"; field size is fixed to 2)"
        ))),
    }
}

struct DocBase {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    source: NodeId,
    destinations: Vec<NodeId>,
}

impl DocBase {
    fn resolve(doc: &NetworkDoc) -> Result<Self> {
        let mut names = Vec::with_capacity(doc.nodes.len());
        let mut index = HashMap::new();
        for (i, n) in doc.nodes.iter().enumerate() {
            if index.insert(n.id.clone(), i).is_some() {
                return Err(Error::Parse(format!("nodes[{i}]: duplicate id {:?}", n.id)));
            }
            names.push(n.id.clone());
        }
        let source = *index
            .get(&doc.source)
            .ok_or_else(|| Error::Parse(format!("source: unknown node {:?}", doc.source)))?;
        if doc.destinations.is_empty() {
            return Err(Error::Parse("destinations: must be non-empty".into()));
        }
        let mut destinations = Vec::new();
        for (i, d) in doc.destinations.iter().enumerate() {
            let id = *index
                .get(d)
                .ok_or_else(|| Error::Parse(format!("destinations[{i}]: unknown node {d:?}")))?;
            if id == source {
                return Err(Error::Parse(format!(
                    "destinations[{i}]: source cannot be a destination"
                )));
            }
            if destinations.contains(&id) {
                return Err(Error::Parse(format!("destinations[{i}]: duplicate {d:?}")));
            }
            destinations.push(id);
        }
        Ok(Self {
            names,
            index,
            source,
            destinations,
        })
    }

    fn edge_endpoints(&self, i: usize, e: &EdgeDoc) -> Result<(NodeId, NodeId)> {
        let from = *self
            .index
            .get(&e.from)
            .ok_or_else(|| Error::Parse(format!("edges[{i}]: unknown node {:?}", e.from)))?;
        let to = *self
            .index
            .get(&e.to)
            .ok_or_else(|| Error::Parse(format!("edges[{i}]: unknown node {:?}", e.to)))?;
        if from == to {
            return Err(Error::Parse(format!(
                "edges[{i}]: self-loop at {:?} (memory is modeled by unfolding)",
                e.from
            )));
        }
        Ok((from, to))
    }
}

fn parse_det(doc: &NetworkDoc, base: DocBase) -> Result<DetNetwork> {
    let mut seen = HashMap::new();
    let mut edges = Vec::new();
    for (i, e) in doc.edges.iter().enumerate() {
        let (from, to) = base.edge_endpoints(i, e)?;
        if e.h.is_some() {
            return Err(Error::Parse(format!(
                "edges[{i}]: H matrix not allowed in a det document"
            )));
        }
        let gain = e
            .gain
            .ok_or_else(|| Error::Parse(format!("edges[{i}]: missing gain")))?;
        if gain < 0 {
            return Err(Error::Parse(format!("edges[{i}]: negative gain {gain}")));
        }
        if seen.insert((from, to), i).is_some() {
            return Err(Error::Parse(format!(
                "edges[{i}]: duplicate edge {:?} -> {:?}",
                e.from, e.to
            )));
        }
        if gain > 0 {
            edges.push(DetEdge {
                from,
                to,
                gain: gain as usize,
            });
        }
    }
    let q = edges.iter().map(|e| e.gain).max().unwrap_or(0);
    Ok(DetNetwork {
        names: base.names,
        source: base.source,
        destinations: base.destinations,
        edges,
        q,
    })
}

fn parse_gauss(doc: &NetworkDoc, base: DocBase) -> Result<GaussNetwork> {
    let convention = match doc.snr_convention.as_deref() {
        None | Some("complex") => SnrConvention::Complex,
        Some("real") => SnrConvention::Real,
        Some(other) => {
            return Err(Error::Parse(format!(
                "snr_convention: unknown value {other:?}"
            )))
        }
    };
    let tx: Vec<usize> = doc.nodes.iter().map(|n| n.tx_antennas.unwrap_or(1)).collect();
    let rx: Vec<usize> = doc.nodes.iter().map(|n| n.rx_antennas.unwrap_or(1)).collect();
    let mut seen = HashMap::new();
    let mut edges = Vec::new();
    for (i, e) in doc.edges.iter().enumerate() {
        let (from, to) = base.edge_endpoints(i, e)?;
        if e.gain.is_some() {
            return Err(Error::Parse(format!(
                "edges[{i}]: integer gain not allowed in a gauss document"
            )));
        }
        let h = e
            .h
            .as_ref()
            .ok_or_else(|| Error::Parse(format!("edges[{i}]: missing H matrix")))?;
        if h.len() != rx[to] || h.iter().any(|row| row.len() != tx[from]) {
            return Err(Error::Parse(format!(
                "edges[{i}]: H must be {}x{} (rx antennas at {:?} x tx antennas at {:?})",
                rx[to], tx[from], e.to, e.from
            )));
        }
        let h: Vec<Vec<Complex64>> = h
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        if h.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse(format!("edges[{i}]: non-finite gain entry")));
        }
        if seen.insert((from, to), i).is_some() {
            return Err(Error::Parse(format!(
                "edges[{i}]: duplicate edge {:?} -> {:?}",
                e.from, e.to
            )));
        }
        edges.push(GaussEdge { from, to, h });
    }
    Ok(GaussNetwork {
        names: base.names,
        source: base.source,
        destinations: base.destinations,
        tx_antennas: tx,
        rx_antennas: rx,
        edges,
        power: 1.0,
        convention,
    })
}

// ---------------------------------------------------------------------------
// Deterministic network API
// ---------------------------------------------------------------------------

impl DetNetwork {
    /// Builds a network programmatically; applies the same validation as the
    /// document parser (self-loops and duplicates rejected, zero gains
    /// dropped).
    pub fn new(
        names: Vec<String>,
        source: NodeId,
        destinations: Vec<NodeId>,
        edges: &[(NodeId, NodeId, usize)],
    ) -> Result<Self> {
        let n = names.len();
        if source >= n {
            return Err(Error::Parse("source index out of range".into()));
        }
        if destinations.is_empty() {
            return Err(Error::Parse("destinations: must be non-empty".into()));
        }
        let mut kept = Vec::new();
        let mut seen = HashMap::new();
        for (i, &(from, to, gain)) in edges.iter().enumerate() {
            if from >= n || to >= n {
                return Err(Error::Parse(format!("edges[{i}]: node index out of range")));
            }
            if from == to {
                return Err(Error::Parse(format!("edges[{i}]: self-loop")));
            }
            if seen.insert((from, to), i).is_some() {
                return Err(Error::Parse(format!("edges[{i}]: duplicate edge")));
            }
            if gain > 0 {
                kept.push(DetEdge { from, to, gain });
            }
        }
        for (i, &d) in destinations.iter().enumerate() {
            if d >= n {
                return Err(Error::Parse(format!("destinations[{i}]: out of range")));
            }
            if d == source {
                return Err(Error::Parse(format!(
                    "destinations[{i}]: source cannot be a destination"
                )));
            }
        }
        let q = kept.iter().map(|e| e.gain).max().unwrap_or(0);
        Ok(Self {
            names,
            source,
            destinations,
            edges: kept,
            q,
        })
    }

    /// Three-node relay channel `S -> R -> D` with a direct `S -> D` link.
    /// Node order: S, R, D.
    pub fn relay_channel(n_sr: usize, n_sd: usize, n_rd: usize) -> Self {
        Self::new(
            vec!["S".into(), "R".into(), "D".into()],
            0,
            vec![2],
            &[(0, 1, n_sr), (0, 2, n_sd), (1, 2, n_rd)],
        )
        .expect("fixed topology is valid")
    }

    /// Two-relay diamond. Node order: S, A1, A2, D.
    pub fn diamond(n_sa1: usize, n_sa2: usize, n_a1d: usize, n_a2d: usize) -> Self {
        Self::new(
            vec!["S".into(), "A1".into(), "A2".into(), "D".into()],
            0,
            vec![3],
            &[(0, 1, n_sa1), (0, 2, n_sa2), (1, 3, n_a1d), (2, 3, n_a2d)],
        )
        .expect("fixed topology is valid")
    }

    /// Point-to-point link of gain `n`. Node order: S, D.
    pub fn point_to_point(n: usize) -> Self {
        Self::new(vec!["S".into(), "D".into()], 0, vec![1], &[(0, 1, n)]).expect("valid")
    }

    #[must_use]
    pub fn edges(&self) -> &[DetEdge] {
        &self.edges
    }

    #[must_use]
    pub fn node_names(&self) -> &[String] {
        &self.names
    }

    /// Gain of the edge `from -> to`, or 0 when absent.
    #[must_use]
    pub fn gain(&self, from: NodeId, to: NodeId) -> usize {
        self.edges
            .iter()
            .find(|e| e.from == from && e.to == to)
            .map_or(0, |e| e.gain)
    }

    /// The transfer matrix of a cut: one `q`-row block per receiver in
    /// `Omega^c` (ascending node order), one `q`-column block per transmitter
    /// in `Omega`, with `S^(q - n_ij)` where an edge exists and zero blocks
    /// elsewhere.
    #[must_use]
    pub fn cut_transfer_matrix(&self, cut: &Cut) -> BitMatrix {
        let omega: Vec<NodeId> = (0..self.node_count()).filter(|&v| cut.contains(v)).collect();
        let comp: Vec<NodeId> = (0..self.node_count()).filter(|&v| !cut.contains(v)).collect();
        self.transfer_between(&omega, &comp)
    }

    /// Stacked shift-matrix blocks for all edges from `tx` to `rx`
    /// (node lists give block order).
    #[must_use]
    pub fn transfer_between(&self, tx: &[NodeId], rx: &[NodeId]) -> BitMatrix {
        let q = self.q;
        let col_of: HashMap<NodeId, usize> =
            tx.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let row_of: HashMap<NodeId, usize> =
            rx.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut m = BitMatrix::zeros(q * rx.len(), q * tx.len());
        for e in &self.edges {
            if let (Some(&ci), Some(&ri)) = (col_of.get(&e.from), row_of.get(&e.to)) {
                let block = shift_matrix(q, e.gain).expect("gain <= q by construction");
                m.paste(ri * q, ci * q, &block);
            }
        }
        m
    }

    /// Edges crossing the cut (from inside `Omega` to outside).
    #[must_use]
    pub fn crossing_edges(&self, cut: &Cut) -> Vec<DetEdge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| cut.contains(e.from) && !cut.contains(e.to))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Gaussian network API
// ---------------------------------------------------------------------------

impl GaussNetwork {
    /// Single-antenna network from scalar complex gains.
    pub fn scalar(
        names: Vec<String>,
        source: NodeId,
        destinations: Vec<NodeId>,
        edges: &[(NodeId, NodeId, Complex64)],
        convention: SnrConvention,
    ) -> Result<Self> {
        let n = names.len();
        let mut out_edges = Vec::new();
        let mut seen = HashMap::new();
        for (i, &(from, to, h)) in edges.iter().enumerate() {
            if from >= n || to >= n {
                return Err(Error::Parse(format!("edges[{i}]: node index out of range")));
            }
            if from == to {
                return Err(Error::Parse(format!("edges[{i}]: self-loop")));
            }
            if seen.insert((from, to), ()).is_some() {
                return Err(Error::Parse(format!("edges[{i}]: duplicate edge")));
            }
            out_edges.push(GaussEdge {
                from,
                to,
                h: vec![vec![h]],
            });
        }
        if destinations.is_empty() || destinations.contains(&source) {
            return Err(Error::Parse("bad destination set".into()));
        }
        Ok(Self {
            names,
            source,
            destinations,
            tx_antennas: vec![1; n],
            rx_antennas: vec![1; n],
            edges: out_edges,
            power: 1.0,
            convention,
        })
    }

    /// Single-relay network `S -> R -> D` plus direct link; zero gains drop
    /// the corresponding edge. Node order: S, R, D.
    pub fn relay_channel(
        h_sr: Complex64,
        h_sd: Complex64,
        h_rd: Complex64,
        convention: SnrConvention,
    ) -> Self {
        let mut edges = Vec::new();
        for (from, to, h) in [(0, 1, h_sr), (0, 2, h_sd), (1, 2, h_rd)] {
            if h.norm_sqr() > 0.0 {
                edges.push((from, to, h));
            }
        }
        Self::scalar(
            vec!["S".into(), "R".into(), "D".into()],
            0,
            vec![2],
            &edges,
            convention,
        )
        .expect("fixed topology is valid")
    }

    #[must_use]
    pub fn edges(&self) -> &[GaussEdge] {
        &self.edges
    }

    #[must_use]
    pub fn node_names(&self) -> &[String] {
        &self.names
    }

    /// Scalar gain of the single-antenna edge `from -> to`, 0 when absent.
    #[must_use]
    pub fn scalar_gain(&self, from: NodeId, to: NodeId) -> Complex64 {
        self.edges
            .iter()
            .find(|e| e.from == from && e.to == to)
            .map_or(Complex64::ZERO, |e| e.h[0][0])
    }
}

// ---------------------------------------------------------------------------
// Layering
// ---------------------------------------------------------------------------

/// Per-node layer assignment of a layered network.
///
/// Only nodes on some source-to-destination path receive a layer; nodes off
/// every such path cannot influence the destination and are left unassigned.
#[derive(Debug, Clone)]
pub struct Layering {
    /// `layer[v] = Some(depth)` for nodes on an S-D path (source depth 0).
    pub layer: Vec<Option<usize>>,
    /// Depth of the destination (= number of hops on every S-D path).
    pub depth: usize,
}

/// Tests whether every source-destination path has the same length and, when
/// it does, returns the per-node layer assignment.
pub fn is_layered(net: &impl Topology, dest: NodeId) -> Option<Layering> {
    let n = net.node_count();
    let arcs = net.arcs();
    layering_of(n, net.source(), dest, &arcs)
}

pub(crate) fn layering_of(
    n: usize,
    source: NodeId,
    dest: NodeId,
    arcs: &[(NodeId, NodeId)],
) -> Option<Layering> {
    // Nodes reachable from the source.
    let mut fwd = vec![false; n];
    reach(n, source, arcs.iter().copied(), &mut fwd);
    // Nodes that reach the destination.
    let mut bwd = vec![false; n];
    reach(n, dest, arcs.iter().map(|&(a, b)| (b, a)), &mut bwd);
    let relevant: Vec<bool> = (0..n).map(|v| fwd[v] && bwd[v]).collect();
    if !relevant[source] || !relevant[dest] {
        // Destination unreachable: no S-D path, trivially layered.
        let mut layer = vec![None; n];
        layer[source] = Some(0);
        return Some(Layering { layer, depth: 0 });
    }

    // BFS depth from the source over the relevant subgraph, then check that
    // every relevant edge advances depth by exactly one (this also rules out
    // cycles through relevant nodes).
    let mut layer: Vec<Option<usize>> = vec![None; n];
    layer[source] = Some(0);
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in arcs {
            if a == u && relevant[b] && layer[b].is_none() {
                layer[b] = Some(layer[u].unwrap() + 1);
                queue.push_back(b);
            }
        }
    }
    for &(a, b) in arcs {
        if relevant[a] && relevant[b] {
            let (da, db) = (layer[a]?, layer[b]?);
            if db != da + 1 {
                return None;
            }
        }
    }
    let depth = layer[dest].expect("destination is relevant");
    Some(Layering { layer, depth })
}

fn reach(n: usize, start: NodeId, arcs: impl Iterator<Item = (NodeId, NodeId)> + Clone, seen: &mut [bool]) {
    let _ = n;
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for (a, b) in arcs.clone() {
            if a == u && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
}
