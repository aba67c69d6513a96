//! Information-flow toolkit for relay networks.
//!
//! Computes exact capacities of linear finite-field deterministic networks,
//! simulates random-linear and quantize-map-and-forward relaying at desk
//! scale, and evaluates Gaussian cut-set bounds and classical relaying rates
//! with constant-gap checks.
//!
//! Start from the `examples/` directory of this crate: each example is a
//! runnable tour of one capability (`cargo run -p relaycap --example
//! det_capacity`, and so on). The same functionality is scriptable through
//! the thin `relaycap` binary.

pub mod cli;
pub mod detcap;
pub mod detsim;
mod error;
pub mod gaussian;
pub mod gf2;
pub mod net;
pub mod qmf;
pub mod rng;
pub(crate) mod simplex;

pub use error::{Error, Result};
