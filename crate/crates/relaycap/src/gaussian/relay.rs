//! Decode-forward and partial-decode-forward rates for the single-relay and
//! diamond networks, with their cut-set bounds. Both schemes sit within one
//! bit of the bound for every gain tuple; a decode-forward-style bound for
//! the diamond exhibits the unbounded gap that rules the scheme out there.
//!
//! Gains enter as complex amplitudes; only their magnitudes matter. Rates
//! are complex-convention bits (`log2(1 + SNR)`).

use num_complex::Complex64;

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const RHO_TOL: f64 = 1e-9;

fn log2p(x: f64) -> f64 {
    (1.0 + x).log2()
}

/// Decode-and-forward rate of the single relay channel:
/// `max(log(1+|h_SD|^2), min(log(1+|h_SR|^2), log(1+|h_SD|^2+|h_RD|^2)))`.
#[must_use]
pub fn df_rate_relay(h_sd: Complex64, h_sr: Complex64, h_rd: Complex64) -> f64 {
    let (sd, sr, rd) = (h_sd.norm_sqr(), h_sr.norm_sqr(), h_rd.norm_sqr());
    log2p(sd).max(log2p(sr).min(log2p(sd + rd)))
}

/// Cut-set bound of the single relay channel: the maximum over the
/// transmit correlation `rho` in [0, 1] of
/// `min(log(1+(1-rho^2)(|h_SD|^2+|h_SR|^2)),
///      log(1+|h_SD|^2+|h_RD|^2+2 rho |h_SD||h_RD|))`,
/// found by golden-section search (the broadcast term falls and the MAC
/// term rises in `rho`, so the min is unimodal).
#[must_use]
pub fn relay_cutset(h_sd: Complex64, h_sr: Complex64, h_rd: Complex64) -> f64 {
    let (sd, sr, rd) = (h_sd.norm_sqr(), h_sr.norm_sqr(), h_rd.norm_sqr());
    let value = |rho: f64| -> f64 {
        let bc = log2p((1.0 - rho * rho) * (sd + sr));
        let mac = log2p(sd + rd + 2.0 * rho * (sd * rd).sqrt());
        bc.min(mac)
    };
    golden_max(value, 0.0, 1.0, RHO_TOL)
}

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        }
    }
    f(0.5 * (lo + hi)).max(f1).max(f2)
}

/// Partial-decode-forward rate of the two-relay diamond, by the case
/// analysis behind its one-bit optimality proof: order the relays so
/// `|h_SA1| >= |h_SA2|`; when the first hop is the bottleneck
/// (`|h_SA1| <= |h_A1D|`) route everything through relay 1, otherwise split
/// with `alpha = |h_A1D|^2 / |h_SA1|^2`.
#[must_use]
pub fn pdf_rate_diamond(
    h_sa1: Complex64,
    h_sa2: Complex64,
    h_a1d: Complex64,
    h_a2d: Complex64,
) -> f64 {
    let (mut s1, mut s2) = (h_sa1.norm_sqr(), h_sa2.norm_sqr());
    let (mut d1, mut d2) = (h_a1d.norm_sqr(), h_a2d.norm_sqr());
    if s1 < s2 {
        std::mem::swap(&mut s1, &mut s2);
        std::mem::swap(&mut d1, &mut d2);
    }
    if s1 <= 0.0 {
        return 0.0;
    }
    if s1 <= d1 {
        return log2p(s1);
    }
    let alpha = d1 / s1;
    let split = ((1.0 + s2) * (1.0 + d1) / (alpha * s2 + 1.0)).log2();
    split.min(log2p(d1 + d2))
}

/// Cut-set bound of the diamond:
/// `min(log(1+|h_SA1|^2+|h_SA2|^2), log(1+(|h_A1D|+|h_A2D|)^2),
///      log(1+|h_SA1|^2)+log(1+|h_A2D|^2), log(1+|h_SA2|^2)+log(1+|h_A1D|^2))`.
#[must_use]
pub fn diamond_cutset(
    h_sa1: Complex64,
    h_sa2: Complex64,
    h_a1d: Complex64,
    h_a2d: Complex64,
) -> f64 {
    let (s1, s2) = (h_sa1.norm_sqr(), h_sa2.norm_sqr());
    let (d1, d2) = (h_a1d.norm_sqr(), h_a2d.norm_sqr());
    let broadcast = log2p(s1 + s2);
    let mac = log2p((d1.sqrt() + d2.sqrt()).powi(2));
    let cross1 = log2p(s1) + log2p(d2);
    let cross2 = log2p(s2) + log2p(d1);
    broadcast.min(mac).min(cross1).min(cross2)
}

/// Upper bound on decode-forward-style schemes for the diamond: either both
/// relays decode the full message (rate capped by the weaker source link)
/// or a single relay carries everything. Grows only like `2 log a` on the
/// counterexample gain pattern while the cut-set bound grows like `3 log a`.
#[must_use]
pub fn diamond_df_bound(
    h_sa1: Complex64,
    h_sa2: Complex64,
    h_a1d: Complex64,
    h_a2d: Complex64,
) -> f64 {
    let (s1, s2) = (h_sa1.norm_sqr(), h_sa2.norm_sqr());
    let (d1, d2) = (h_a1d.norm_sqr(), h_a2d.norm_sqr());
    let both = log2p(s1.min(s2)).min(log2p((d1.sqrt() + d2.sqrt()).powi(2)));
    let only1 = log2p(s1).min(log2p(d1));
    let only2 = log2p(s2).min(log2p(d2));
    both.max(only1).max(only2)
}
