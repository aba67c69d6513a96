//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! Sized for the half-duplex schedule optimization (at most ~10^3 variables
//! by ~10^3 constraints); dense tableaus keep the implementation short and
//! dependency-free.

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub objective: f64,
    pub x: Vec<f64>,
}

/// Maximizes `objective . x` subject to the constraints and `x >= 0`.
pub fn maximize(objective: &[f64], constraints: &[Constraint]) -> Result<LpSolution> {
    let n = objective.len();
    let m = constraints.len();
    for (i, c) in constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(Error::Argument(format!(
                "constraint {i} has {} coefficients, expected {n}",
                c.coeffs.len()
            )));
        }
    }

    // Normalize to non-negative right-hand sides; Le rows with negative rhs
    // flip into Ge rows, which take a surplus column plus an artificial.
    #[derive(Clone, Copy, PartialEq)]
    enum Kind {
        Slack,
        SurplusArtificial,
        Artificial,
    }
    let mut rows: Vec<(Vec<f64>, f64, Kind)> = Vec::with_capacity(m);
    for c in constraints {
        let (mut coeffs, mut rhs) = (c.coeffs.clone(), c.rhs);
        let mut flipped = false;
        if rhs < 0.0 {
            for v in &mut coeffs {
                *v = -*v;
            }
            rhs = -rhs;
            flipped = true;
        }
        let kind = match (c.relation, flipped) {
            (Relation::Le, false) => Kind::Slack,
            (Relation::Le, true) => Kind::SurplusArtificial,
            (Relation::Eq, _) => Kind::Artificial,
        };
        rows.push((coeffs, rhs, kind));
    }

    let n_slack = rows
        .iter()
        .filter(|r| matches!(r.2, Kind::Slack | Kind::SurplusArtificial))
        .count();
    let n_art = rows
        .iter()
        .filter(|r| matches!(r.2, Kind::Artificial | Kind::SurplusArtificial))
        .count();
    let total = n + n_slack + n_art;

    // Tableau: one row per constraint, columns [vars | slack | artificial | rhs].
    let mut t = vec![vec![0.0; total + 1]; m];
    let mut basis = vec![0usize; m];
    let (mut s_at, mut a_at) = (n, n + n_slack);
    for (i, (coeffs, rhs, kind)) in rows.iter().enumerate() {
        t[i][..n].copy_from_slice(coeffs);
        t[i][total] = *rhs;
        match kind {
            Kind::Slack => {
                t[i][s_at] = 1.0;
                basis[i] = s_at;
                s_at += 1;
            }
            Kind::SurplusArtificial => {
                t[i][s_at] = -1.0;
                t[i][a_at] = 1.0;
                basis[i] = a_at;
                s_at += 1;
                a_at += 1;
            }
            Kind::Artificial => {
                t[i][a_at] = 1.0;
                basis[i] = a_at;
                a_at += 1;
            }
        }
    }

    // Phase 1: minimize the artificial sum.
    if n_art > 0 {
        let mut cost = vec![0.0; total];
        for c in cost.iter_mut().skip(n + n_slack) {
            *c = -1.0;
        }
        let value = run_simplex(&mut t, &mut basis, &cost)?;
        if value < -EPS {
            return Err(Error::Argument("infeasible linear program".into()));
        }
        // Pivot any artificial still sitting in the basis out of it; rows
        // with no eligible pivot are redundant and harmlessly keep a zero
        // artificial.
        for i in 0..m {
            if basis[i] >= n + n_slack {
                if let Some(j) = (0..n + n_slack).find(|&j| t[i][j].abs() > EPS) {
                    pivot(&mut t, &mut basis, i, j);
                }
            }
        }
    }

    // Phase 2 on the original objective with artificial columns frozen.
    let mut cost = vec![0.0; total];
    cost[..n].copy_from_slice(objective);
    for row in t.iter_mut() {
        for v in row.iter_mut().take(total).skip(n + n_slack) {
            *v = 0.0;
        }
    }
    let value = run_simplex(&mut t, &mut basis, &cost)?;

    let mut x = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = t[i][total];
        }
    }
    Ok(LpSolution {
        objective: value,
        x,
    })
}

/// Runs primal simplex to optimality for `max cost . x`; returns the
/// objective value. `basis` must index an identity submatrix.
fn run_simplex(t: &mut [Vec<f64>], basis: &mut [usize], cost: &[f64]) -> Result<f64> {
    let total = cost.len();
    let rhs = total;
    loop {
        // Reduced costs under the current basis.
        let mut reduced = cost.to_vec();
        let mut obj = 0.0;
        for (i, &b) in basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                obj += cb * t[i][rhs];
                for j in 0..total {
                    reduced[j] -= cb * t[i][j];
                }
            }
        }
        // Bland: entering = lowest index with positive reduced cost.
        let Some(enter) = (0..total).find(|&j| reduced[j] > EPS) else {
            return Ok(obj);
        };
        // Ratio test; ties broken by the lowest basis index (Bland).
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > EPS {
                let ratio = row[rhs] / row[enter];
                let better = ratio < best - EPS
                    || (ratio < best + EPS && leave.map_or(true, |l| basis[i] < basis[l]));
                if better {
                    best = ratio.min(best);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return Err(Error::Argument("unbounded linear program".into()));
        };
        pivot(t, basis, leave, enter);
    }
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    for i in 0..t.len() {
        if i != row && t[i][col] != 0.0 {
            let f = t[i][col];
            for j in 0..t[i].len() {
                let sub = f * t[row][j];
                t[i][j] -= sub;
            }
        }
    }
    basis[row] = col;
}

/// Solves `max_t min_k sum_m values[k][m] * t_m` over the probability
/// simplex: the schedule optimization behind the half-duplex bound.
pub fn max_min_over_simplex(values: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let k = values.len();
    assert!(k > 0, "need at least one row");
    let m = values[0].len();
    assert!(m > 0 && values.iter().all(|r| r.len() == m));
    // Variables: t_1..t_m, z. Maximize z subject to
    // z - sum_m v[k][m] t_m <= 0 and sum t_m = 1.
    let mut objective = vec![0.0; m + 1];
    objective[m] = 1.0;
    let mut constraints = Vec::with_capacity(k + 1);
    for row in values {
        let mut coeffs = vec![0.0; m + 1];
        for (j, &v) in row.iter().enumerate() {
            coeffs[j] = -v;
        }
        coeffs[m] = 1.0;
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Le,
            rhs: 0.0,
        });
    }
    let mut sum = vec![1.0; m];
    sum.push(0.0);
    constraints.push(Constraint {
        coeffs: sum,
        relation: Relation::Eq,
        rhs: 1.0,
    });
    let sol = maximize(&objective, &constraints)?;
    Ok((sol.objective, sol.x[..m].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lp_optimum() {
        // max x + y st x + 2y <= 4, x <= 3: optimum at (3, 0.5).
        let sol = maximize(
            &[1.0, 1.0],
            &[
                Constraint {
                    coeffs: vec![1.0, 2.0],
                    relation: Relation::Le,
                    rhs: 4.0,
                },
                Constraint {
                    coeffs: vec![1.0, 0.0],
                    relation: Relation::Le,
                    rhs: 3.0,
                },
            ],
        )
        .unwrap();
        assert!((sol.objective - 3.5).abs() < 1e-9);
        assert!((sol.x[0] - 3.0).abs() < 1e-9);
        assert!((sol.x[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn equality_constraint() {
        // max 3a + b st a + b = 1: all weight on a.
        let sol = maximize(
            &[3.0, 1.0],
            &[Constraint {
                coeffs: vec![1.0, 1.0],
                relation: Relation::Eq,
                rhs: 1.0,
            }],
        )
        .unwrap();
        assert!((sol.objective - 3.0).abs() < 1e-9);
        assert!((sol.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_detected() {
        // x <= -1 with x >= 0.
        let err = maximize(
            &[1.0],
            &[Constraint {
                coeffs: vec![1.0],
                relation: Relation::Le,
                rhs: -1.0,
            }],
        )
        .unwrap_err();
        assert!(err.to_string().contains("infeasible"));
    }

    #[test]
    fn unbounded_detected() {
        let err = maximize(
            &[1.0, 0.0],
            &[Constraint {
                coeffs: vec![0.0, 1.0],
                relation: Relation::Le,
                rhs: 1.0,
            }],
        )
        .unwrap_err();
        assert!(err.to_string().contains("unbounded"));
    }

    #[test]
    fn max_min_two_mode_split() {
        // Two alternating bottlenecks of equal strength: optimum C/2 at the
        // even split.
        let c = 3.7;
        let (v, t) = max_min_over_simplex(&[vec![c, 0.0], vec![0.0, c]]).unwrap();
        assert!((v - c / 2.0).abs() < 1e-9);
        assert!((t[0] - 0.5).abs() < 1e-9);
        assert!((t[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn max_min_single_row_picks_best_column() {
        let (v, t) = max_min_over_simplex(&[vec![1.0, 4.0]]).unwrap();
        assert!((v - 4.0).abs() < 1e-9);
        assert!((t[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_rows_do_not_cycle() {
        let rows = vec![
            vec![1.0, 1.0, 0.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![1.0, 1.0, 1.0],
        ];
        let (v, t) = max_min_over_simplex(&rows).unwrap();
        assert!(v > 0.0 && v <= 1.0 + 1e-9);
        let sum: f64 = t.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }
}
