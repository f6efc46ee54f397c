//! Exact dense eigensolve in the Fourier basis of a free cyclic automorphism.
//!
//! A fixed-point-free automorphism sigma of order m partitions the vertices
//! into n/m orbits of equal size. Because sigma commutes with P, the
//! subspaces spanned by the Fourier modes e_{o,k} = m^{-1/2} sum_j w^{jk}
//! delta_{sigma^j(rep_o)} (w = e^{2 pi i / m}) are P-invariant, and P
//! restricted to mode k is the Hermitian (n/m) x (n/m) block
//!
//!   B_k(o', o) = (1/d) * sum_s w^{s k} A(rep_{o'}, sigma^s rep_o).
//!
//! The full spectrum of P with multiplicities is the union over k of the
//! block spectra (mode k and m-k are complex conjugates, so only k <= m/2
//! is solved and interior modes are counted twice). This is a complete
//! dense eigensolve at (1/m^2) of the n^3 cost, which keeps dense-grade
//! cross-checks affordable on large Cayley graphs.

use ndarray::Array2;
use ndarray_linalg::{c64, EigValsh, UPLO};

use super::{Method, SpectralReport};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Full-spectrum dense report for a graph with a free cyclic automorphism
/// (given as the permutation `v -> sigma(v)`). The automorphism is checked:
/// it must be a bijection, preserve all edges, and have uniform orbit size.
pub fn folded_dense_report(
    graph: &Graph,
    automorphism: &[u32],
    tol: f64,
) -> Result<SpectralReport> {
    let n = graph.n();
    let orbits = orbit_structure(graph, automorphism)?;
    let r = orbits.reps.len();
    let m = orbits.len;
    let inv_d = 1.0 / graph.d() as f64;

    let mut eigenvalues: Vec<f64> = Vec::with_capacity(n);
    for k in 0..=m / 2 {
        let mut block = Array2::<c64>::zeros((r, r));
        for (row, &rep) in orbits.reps.iter().enumerate() {
            for &y in graph.neighbors(rep) {
                let col = orbits.id[y as usize] as usize;
                let s = orbits.phase[y as usize] as f64;
                let angle = std::f64::consts::TAU * s * k as f64 / m as f64;
                block[(row, col)] += c64::new(angle.cos() * inv_d, angle.sin() * inv_d);
            }
        }
        let vals = block
            .eigvalsh(UPLO::Lower)
            .map_err(|e| Error::Internal(format!("block eigensolve failed at mode {k}: {e}")))?;
        let multiplicity = if k == 0 || 2 * k == m { 1 } else { 2 };
        for _ in 0..multiplicity {
            eigenvalues.extend(vals.iter());
        }
    }
    if eigenvalues.len() != n {
        return Err(Error::Internal(format!(
            "folded spectrum has {} values, expected {n}",
            eigenvalues.len()
        )));
    }
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let top = eigenvalues[n - 1];
    if (top - 1.0).abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "top folded eigenvalue {top} of a stochastic operator should be 1"
        )));
    }
    SpectralReport::assemble(
        graph,
        eigenvalues[n - 2],
        eigenvalues[0],
        Method::Dense,
        tol,
    )
}

/// Per-vertex orbit coordinates under the cyclic automorphism.
struct OrbitStructure {
    /// orbit index of each vertex
    id: Vec<u32>,
    /// power of sigma taking the orbit representative to the vertex
    phase: Vec<u32>,
    reps: Vec<u32>,
    /// common orbit length
    len: usize,
}

/// Validates the automorphism and computes the orbit coordinates.
fn orbit_structure(graph: &Graph, sigma: &[u32]) -> Result<OrbitStructure> {
    let n = graph.n();
    if sigma.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: sigma.len(),
        });
    }
    let mut seen = vec![false; n];
    for &img in sigma {
        if img as usize >= n || seen[img as usize] {
            return Err(Error::InvalidParameter(
                "automorphism is not a permutation".into(),
            ));
        }
        seen[img as usize] = true;
    }
    for v in 0..n as u32 {
        let mut image: Vec<u32> = graph
            .neighbors(v)
            .iter()
            .map(|&u| sigma[u as usize])
            .collect();
        image.sort_unstable();
        if image != graph.neighbors(sigma[v as usize]) {
            return Err(Error::InvalidParameter(format!(
                "permutation does not preserve edges at vertex {v}"
            )));
        }
    }

    let mut orbit_id = vec![u32::MAX; n];
    let mut phase = vec![0u32; n];
    let mut reps = Vec::new();
    let mut orbit_len = 0usize;
    for v in 0..n as u32 {
        if orbit_id[v as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(v);
        let mut cur = v;
        let mut len = 0u32;
        loop {
            orbit_id[cur as usize] = id;
            phase[cur as usize] = len;
            cur = sigma[cur as usize];
            len += 1;
            if cur == v {
                break;
            }
        }
        if orbit_len == 0 {
            orbit_len = len as usize;
        } else if orbit_len != len as usize {
            return Err(Error::InvalidParameter(format!(
                "orbit sizes differ ({orbit_len} vs {len}); a free automorphism is required"
            )));
        }
    }
    if orbit_len < 2 {
        return Err(Error::InvalidParameter(
            "automorphism must be fixed-point-free".into(),
        ));
    }
    Ok(OrbitStructure {
        id: orbit_id,
        phase,
        reps,
        len: orbit_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_fixture, Fixture};
    use crate::spectral::{spectral_report, MethodHint, DEFAULT_TOL};

    #[test]
    fn petersen_folded_matches_dense() {
        // rotate outer and inner 5-cycles in step: a free automorphism of order 5
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let sigma: Vec<u32> = (0..10)
            .map(|v| {
                if v < 5 {
                    (v + 1) % 5
                } else {
                    (v - 5 + 1) % 5 + 5
                }
            })
            .collect();
        let folded = folded_dense_report(&g, &sigma, DEFAULT_TOL).unwrap();
        let dense = spectral_report(&g, DEFAULT_TOL, MethodHint::Dense).unwrap();
        assert!((folded.lambda2 - dense.lambda2).abs() < 1e-10);
        assert!((folded.lambda_min - dense.lambda_min).abs() < 1e-10);
        assert!((folded.rho - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn k4_folded_with_even_order() {
        let g = named_fixture(&Fixture::Complete(4)).unwrap();
        let sigma = vec![1u32, 2, 3, 0]; // 4-cycle, m even exercises the k = m/2 mode
        let folded = folded_dense_report(&g, &sigma, DEFAULT_TOL).unwrap();
        assert!((folded.rho - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn circulant_rotation_reduces_to_scalar_blocks() {
        let g = named_fixture(&Fixture::Circulant {
            n: 63,
            offsets: vec![1, 2, 4],
        })
        .unwrap();
        let sigma: Vec<u32> = (0..63).map(|v| (v + 1) % 63).collect();
        let folded = folded_dense_report(&g, &sigma, DEFAULT_TOL).unwrap();
        let dense = spectral_report(&g, DEFAULT_TOL, MethodHint::Dense).unwrap();
        assert!((folded.lambda2 - dense.lambda2).abs() < 1e-10);
        assert!((folded.lambda_min - dense.lambda_min).abs() < 1e-10);
    }

    #[test]
    fn non_automorphism_rejected() {
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let sigma: Vec<u32> = (0..10).map(|v| (v + 1) % 10).collect();
        assert!(folded_dense_report(&g, &sigma, DEFAULT_TOL).is_err());
    }

    #[test]
    fn fixed_point_rejected() {
        let g = named_fixture(&Fixture::Complete(4)).unwrap();
        let sigma = vec![0u32, 1, 2, 3]; // identity fixes everything
        assert!(folded_dense_report(&g, &sigma, DEFAULT_TOL).is_err());
    }
}
