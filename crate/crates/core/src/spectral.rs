//! Dense symmetric eigenvalue computation and graph spectra.
//!
//! The solver reduces the matrix to tridiagonal form with Householder
//! reflections and then runs QL iterations with implicit shifts; only
//! eigenvalues are accumulated. For the integer matrices this crate feeds
//! it, the results are accurate to machine precision, far inside the
//! default residual target.

use alloc::vec::Vec;

use crate::flt::{abs, copysign, hypot, sqrt};
use crate::graph::{Graph, SignedGraph};

/// Relative off-diagonal convergence threshold of the QL sweeps.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Eigenvalues of a symmetric matrix, descending. Consumes the matrix;
/// only the lower triangle is read.
pub fn symmetric_eigenvalues(a: Vec<Vec<f64>>, tol: f64) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return alloc::vec![a[0][0]];
    }
    let (mut d, mut e) = tridiagonalize(a);
    tridiagonal_eigenvalues(&mut d, &mut e, tol);
    d.sort_unstable_by(|x, y| y.total_cmp(x));
    d
}

/// Largest absolute eigenvalue of a symmetric matrix.
pub fn spectral_norm(a: Vec<Vec<f64>>, tol: f64) -> f64 {
    symmetric_eigenvalues(a, tol)
        .into_iter()
        .map(abs)
        .fold(0.0, f64::max)
}

/// Adjacency spectrum of a graph, descending, at the default tolerance.
pub fn spectrum(g: &Graph) -> Vec<f64> {
    spectrum_with_tol(g, DEFAULT_TOL)
}

pub fn spectrum_with_tol(g: &Graph, tol: f64) -> Vec<f64> {
    symmetric_eigenvalues(adjacency_matrix(g), tol)
}

/// 0/1 adjacency matrix in sorted vertex order.
pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let labels: Vec<_> = g.vertices().collect();
    let n = labels.len();
    let mut m = alloc::vec![alloc::vec![0.0; n]; n];
    for (i, u) in labels.iter().enumerate() {
        for (j, v) in labels.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                m[i][j] = 1.0;
                m[j][i] = 1.0;
            }
        }
    }
    m
}

/// ±1 adjacency matrix of a signed graph in sorted vertex order.
pub fn signed_adjacency_matrix(sg: &SignedGraph) -> Vec<Vec<f64>> {
    signed_matrix(sg, false)
}

/// Componentwise absolute value of the signed adjacency matrix.
pub fn unsigned_adjacency_matrix(sg: &SignedGraph) -> Vec<Vec<f64>> {
    signed_matrix(sg, true)
}

fn signed_matrix(sg: &SignedGraph, absolute: bool) -> Vec<Vec<f64>> {
    let labels: Vec<_> = sg.vertices().collect();
    let n = labels.len();
    let mut m = alloc::vec![alloc::vec![0.0; n]; n];
    for (i, u) in labels.iter().enumerate() {
        for (j, v) in labels.iter().enumerate().skip(i + 1) {
            let w = if sg.has_pos_edge(u, v) {
                1.0
            } else if sg.has_neg_edge(u, v) {
                if absolute {
                    1.0
                } else {
                    -1.0
                }
            } else {
                continue;
            };
            m[i][j] = w;
            m[j][i] = w;
        }
    }
    m
}

/// Householder reduction to tridiagonal form; returns (diagonal,
/// subdiagonal) with the subdiagonal in `e[1..]`.
fn tridiagonalize(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut d = alloc::vec![0.0; n];
    let mut e = alloc::vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += abs(a[i][k]);
            }
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -sqrt(h) } else { sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let ai = a[i].clone();
                let mut f_sum = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j][k] * ai[k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * ai[k];
                    }
                    e[j] = g / h;
                    f_sum += e[j] * ai[j];
                }
                let hh = f_sum / (h + h);
                for j in 0..=l {
                    let f = ai[j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * ai[k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = a[i][i];
    }
    (d, e)
}

/// QL with implicit shifts on a tridiagonal matrix. `d` holds the diagonal
/// and receives the eigenvalues; `e[1..]` holds the subdiagonal.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64], tol: f64) {
    let n = d.len();
    let tol = tol.max(f64::EPSILON);
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = abs(d[m]) + abs(d[m + 1]);
                if abs(e[m]) <= tol * dd || abs(e[m]) < 1e-300 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                // Converged to the threshold long before this on any sane
                // input; bail out rather than loop.
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + copysign(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
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
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}
