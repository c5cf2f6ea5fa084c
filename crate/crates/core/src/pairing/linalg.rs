//! Small dense eigen- and singular-value routines for Gram matrices.

use crate::error::{Error, Result};
use crate::specfun::Complex;

const MAX_SWEEPS: usize = 100;

/// Real symmetric matrix `[[A, −B], [B, A]]` for `M = A + iB`. For Hermitian
/// `M` it is symmetric with every eigenvalue of `M` appearing twice; in
/// general its singular values are those of `M`, each twice.
fn real_embedding(m: &[Vec<Complex>]) -> Vec<Vec<f64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![vec![0.0; 2 * cols]; 2 * rows];
    for (i, row) in m.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            out[i][j] = z.re;
            out[i][j + cols] = -z.im;
            out[i + rows][j] = z.im;
            out[i + rows][j + cols] = z.re;
        }
    }
    out
}

fn check_rectangular(m: &[Vec<Complex>]) -> Result<()> {
    let cols = m.first().map_or(0, Vec::len);
    if m.is_empty() || cols == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidArgument("matrix must be nonempty and rectangular".into()));
    }
    Ok(())
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let n = a.len();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob || frob == 0.0 {
            let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
            eig.sort_by(f64::total_cmp);
            return Ok(eig);
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(Error::NonConvergence { what: "Jacobi eigenvalue iteration", iterations: MAX_SWEEPS })
}

/// Singular values by one-sided Jacobi orthogonalization of the columns,
/// descending.
pub fn singular_values_real(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let col_dot = |a: &Vec<Vec<f64>>, p: usize, q: usize| -> f64 {
        (0..rows).map(|k| a[k][p] * a[k][q]).sum()
    };
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = col_dot(&a, p, p);
                let beta = col_dot(&a, q, q);
                let gamma = col_dot(&a, p, q);
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            let mut sv: Vec<f64> = (0..cols).map(|j| col_dot(&a, j, j).sqrt()).collect();
            sv.sort_by(|x, y| y.total_cmp(x));
            return Ok(sv);
        }
    }
    Err(Error::NonConvergence { what: "one-sided Jacobi SVD", iterations: MAX_SWEEPS })
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &[Vec<Complex>]) -> Result<Vec<f64>> {
    check_rectangular(m)?;
    let n = m.len();
    if m[0].len() != n {
        return Err(Error::InvalidArgument("matrix must be square".into()));
    }
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    for i in 0..n {
        for j in 0..n {
            if (m[i][j] - m[j][i].conj()).norm() > 1e-12 * scale {
                return Err(Error::InvalidArgument("matrix is not Hermitian".into()));
            }
        }
    }
    let doubled = symmetric_eigenvalues(real_embedding(m))?;
    Ok(doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}

/// Singular values of a complex matrix, descending.
pub fn singular_values(m: &[Vec<Complex>]) -> Result<Vec<f64>> {
    check_rectangular(m)?;
    let doubled = singular_values_real(real_embedding(m))?;
    Ok(doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}
