//! Normalized-Laplacian spectrum via dense Jacobi (cyclic plane rotations).
//!
//! This is the one corner of the crate that works in floating point; the
//! matrices are desk-scale, and the solver drives the off-diagonal Frobenius
//! norm below 1e-10, far tighter than anything the spectral bounds need.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

const OFF_DIAGONAL_TOLERANCE: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Eigenvalues of `I - D^{-1/2} A D^{-1/2}`, ascending.
    pub eigenvalues: Vec<f64>,
    /// `max_{i != 0} |1 - lambda_i|`, where index 0 is the eigenvalue
    /// closest to zero.
    pub gap: f64,
    pub tolerance: f64,
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if i != j {
                sum += entry * entry;
            }
        }
    }
    sum.sqrt()
}

#[allow(clippy::needless_range_loop)] // rotations update two rows/columns in place
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOLERANCE {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < OFF_DIAGONAL_TOLERANCE / (n as f64 * n as f64) {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigenvalues
}

/// Full spectrum and spectral gap of the normalized Laplacian. Requires a
/// connected graph without zero-degree vertices. Loops enter the adjacency
/// diagonal with twice their weight, matching the degree convention.
pub fn spectral_gap<S: Scalar>(g: &Graph<S>) -> Result<SpectralReport> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::TooFewVertices);
    }
    if g.has_zero_degree_vertex() {
        return Err(Error::ZeroDegreeVertex);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let mut adj = vec![vec![0.0; n]; n];
    for e in g.edges() {
        let w = e.weight.to_f64();
        if e.u == e.v {
            adj[e.u][e.u] += 2.0 * w;
        } else {
            adj[e.u][e.v] += w;
            adj[e.v][e.u] += w;
        }
    }
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / g.degree(v).to_f64().sqrt()).collect();
    let mut lap = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let off = adj[i][j] * inv_sqrt[i] * inv_sqrt[j];
            lap[i][j] = if i == j { 1.0 - off } else { -off };
        }
    }

    let eigenvalues = jacobi_eigenvalues(lap);
    // The smallest eigenvalue of a connected graph is 0; designate the value
    // closest to 0 as lambda_0 and take the gap over the rest.
    let zero_idx = eigenvalues
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.abs().partial_cmp(&b.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let gap = eigenvalues
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != zero_idx)
        .map(|(_, l)| (1.0 - l).abs())
        .fold(0.0, f64::max);

    Ok(SpectralReport {
        eigenvalues,
        gap,
        tolerance: OFF_DIAGONAL_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::Ratio;

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < tol, "{a} vs {e}");
        }
    }

    #[test]
    fn k2_spectrum() {
        let rep = spectral_gap(&families::complete::<Ratio>(2)).unwrap();
        assert_close(&rep.eigenvalues, &[0.0, 2.0], 1e-9);
        assert!((rep.gap - 1.0).abs() < 1e-9);
    }

    #[test]
    fn k4_spectrum() {
        // I - (J - I)/3 has eigenvalues {0, 4/3, 4/3, 4/3}.
        let rep = spectral_gap(&families::complete::<Ratio>(4)).unwrap();
        assert_close(
            &rep.eigenvalues,
            &[0.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0],
            1e-9,
        );
        assert!((rep.gap - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn c4_spectrum() {
        // Circulant eigenvalues of A/2 are {1, 0, -1, 0}.
        let rep = spectral_gap(&families::cycle::<Ratio>(4)).unwrap();
        assert_close(&rep.eigenvalues, &[0.0, 1.0, 1.0, 2.0], 1e-9);
        assert!((rep.gap - 1.0).abs() < 1e-9);
    }

    #[test]
    fn trace_identities() {
        // Loopless graphs: sum of eigenvalues equals n (the trace), and the
        // squared sum equals the Frobenius norm of the Laplacian.
        let g = families::windmill::<Ratio>(3).unwrap();
        let rep = spectral_gap(&g).unwrap();
        let n = g.vertex_count() as f64;
        let sum: f64 = rep.eigenvalues.iter().sum();
        assert!((sum - n).abs() < 1e-8);
        assert!(rep
            .eigenvalues
            .iter()
            .all(|l| (-1e-9..=2.0 + 1e-9).contains(l)));
        assert!(rep.eigenvalues[0].abs() < 1e-9);
    }

    #[test]
    fn degenerate_inputs() {
        let two = families::disjoint_union(&[
            families::complete::<Ratio>(2),
            families::complete::<Ratio>(2),
        ]);
        assert_eq!(spectral_gap(&two).unwrap_err(), Error::Disconnected);
        let g = Graph::<Ratio>::parse("p 2\ne 0 0 1\n").unwrap();
        assert_eq!(spectral_gap(&g).unwrap_err(), Error::ZeroDegreeVertex);
    }

    #[test]
    fn single_loop_vertex() {
        let g = Graph::<Ratio>::parse("p 1\ne 0 0 2\n").unwrap();
        let rep = spectral_gap(&g).unwrap();
        assert_close(&rep.eigenvalues, &[0.0], 1e-12);
        assert_eq!(rep.gap, 0.0);
    }
}
