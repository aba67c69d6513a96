//! Eigenvalues of small complex Hermitian matrices by cyclic Jacobi
//! rotations. Used for the squared singular values of cut channel matrices;
//! sizes stay below a few dozen, where Jacobi is accurate and simple.

use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix given row-major, sorted descending.
///
/// Only the lower triangle is trusted; the strict upper triangle is rebuilt
/// by conjugate symmetry.
pub fn hermitian_eigenvalues(a: &[Vec<Complex64>]) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    for r in 0..n {
        assert_eq!(m[r].len(), n, "matrix must be square");
        m[r][r] = Complex64::new(m[r][r].re, 0.0);
        for c in 0..r {
            m[c][r] = m[r][c].conj();
        }
    }

    let off = |m: &Vec<Vec<Complex64>>| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..r {
                s += m[r][c].norm_sqr();
            }
        }
        s
    };
    let scale: f64 = (0..n).map(|r| m[r][r].re.abs()).fold(1.0, f64::max);
    let tol = (scale * scale).max(off(&m)) * 1e-28;

    for _sweep in 0..60 {
        if off(&m) <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = m[q][p];
                if g.norm_sqr() <= tol / (n * n) as f64 {
                    continue;
                }
                let (alpha, beta) = (m[p][p].re, m[q][q].re);
                let gabs = g.norm();
                let phase = g / gabs; // e^{i theta} with g = |g| e^{i theta}
                let tau = (beta - alpha) / (2.0 * gabs);
                let tan = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + tan * tan).sqrt();
                let s = tan * c;

                // Columns p and q: col_p' = c col_p + s e^{-i t} col_q,
                // col_q' = -s e^{i t} col_p + c col_q; rows by symmetry.
                for k in 0..n {
                    let (akp, akq) = (m[k][p], m[k][q]);
                    m[k][p] = akp * c + akq * s * phase.conj();
                    m[k][q] = -akp * s * phase + akq * c;
                }
                for k in 0..n {
                    m[p][k] = m[k][p].conj();
                    m[q][k] = m[k][q].conj();
                }
                let app = c * c * alpha + s * s * beta + 2.0 * c * s * gabs;
                let aqq = s * s * alpha + c * c * beta - 2.0 * c * s * gabs;
                m[p][p] = Complex64::new(app, 0.0);
                m[q][q] = Complex64::new(aqq, 0.0);
                m[p][q] = Complex64::ZERO;
                m[q][p] = Complex64::ZERO;
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|r| m[r][r].re).collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eig
}

/// Squared singular values (eigenvalues of `G G^H`) of a complex matrix
/// given row-major, sorted descending; the list has `min(rows, cols)`
/// entries.
pub fn gram_eigenvalues(g: &[Vec<Complex64>]) -> Vec<f64> {
    let rows = g.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = g[0].len();
    if cols == 0 {
        return Vec::new();
    }
    let k = rows.min(cols);
    // Work with the smaller Gram matrix; nonzero spectra coincide.
    let gram: Vec<Vec<Complex64>> = if rows <= cols {
        (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| (0..cols).map(|l| g[i][l] * g[j][l].conj()).sum())
                    .collect()
            })
            .collect()
    } else {
        (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..rows).map(|l| g[l][i].conj() * g[l][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut eig = hermitian_eigenvalues(&gram);
    eig.truncate(k);
    // Clamp the tiny negatives that elimination noise can leave behind.
    for v in &mut eig {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    eig
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn diagonal_matrix() {
        let m = vec![
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ];
        let e = hermitian_eigenvalues(&m);
        assert!((e[0] - 3.0).abs() < 1e-12);
        assert!((e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_by_two_complex() {
        // [[2, 1-i], [1+i, 3]]: eigenvalues (5 +- sqrt(1 + 8)) / 2 = {4, 1}.
        let m = vec![vec![c(2.0, 0.0), c(1.0, -1.0)], vec![c(1.0, 1.0), c(3.0, 0.0)]];
        let e = hermitian_eigenvalues(&m);
        assert!((e[0] - 4.0).abs() < 1e-10, "{e:?}");
        assert!((e[1] - 1.0).abs() < 1e-10, "{e:?}");
    }

    #[test]
    fn gram_of_identity() {
        let g = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ];
        let e = gram_eigenvalues(&g);
        assert_eq!(e.len(), 2);
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_matches_nalgebra_svd() {
        use nalgebra::{Complex, DMatrix};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let g: Vec<Vec<C>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                        .collect()
                })
                .collect();
            let ours = gram_eigenvalues(&g);
            let na = DMatrix::from_fn(rows, cols, |r, ccol| Complex::new(g[r][ccol].re, g[r][ccol].im));
            let mut sv: Vec<f64> = na.svd(false, false).singular_values.iter().map(|s| s * s).collect();
            sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
            assert_eq!(ours.len(), sv.len().min(rows.min(cols)));
            for (a, b) in ours.iter().zip(&sv) {
                assert!((a - b).abs() < 1e-8 * (1.0 + b), "{ours:?} vs {sv:?}");
            }
        }
    }
}
