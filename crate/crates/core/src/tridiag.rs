//! Implicit QL iteration with Wilkinson shifts for symmetric tridiagonal
//! matrices.
//!
//! Only the first row of the eigenvector matrix is ever needed (Golub–Welsch
//! weights), so the rotations are applied to a single vector and the whole
//! solve stays O(n²).

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 60;

/// Eigen-decomposition result, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct TridiagonalEigen {
    pub eigenvalues: Vec<f64>,
    /// First component of each normalized eigenvector, when requested.
    pub first_components: Option<Vec<f64>>,
}

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// off-diagonal (`off.len() == diag.len() - 1`).
pub fn symmetric_tridiagonal_eigen(
    diag: &[f64],
    off: &[f64],
    want_first_components: bool,
) -> Result<TridiagonalEigen> {
    let n = diag.len();
    if n == 0 {
        return Ok(TridiagonalEigen {
            eigenvalues: Vec::new(),
            first_components: want_first_components.then(Vec::new),
        });
    }
    if off.len() + 1 != n {
        return Err(Error::InvalidInput(format!(
            "off-diagonal length {} does not match diagonal length {}",
            off.len(),
            n
        )));
    }
    if diag.iter().chain(off).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite matrix entry".into()));
    }

    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = want_first_components.then(|| {
        let mut z = vec![0.0; n];
        z[0] = 1.0;
        z
    });

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(Error::EigenNonConvergence { index: l, iterations });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_mut() {
                    let f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let eigenvalues = order.iter().map(|&i| d[i]).collect();
    let first_components = z.map(|z| order.iter().map(|&i| z[i]).collect());
    Ok(TridiagonalEigen {
        eigenvalues,
        first_components,
    })
}
