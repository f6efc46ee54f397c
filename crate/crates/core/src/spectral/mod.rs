//! Reduced spectral radius of the walk operator and Ramanujan certification.
//!
//! The reduced spectral radius is the operator norm of P on the orthogonal
//! complement of constants: `rho = max(lambda_2, -lambda_min) < 1` for an
//! admissible graph. Three exact routes are provided:
//!
//! * a dense full eigensolve (LAPACK) for graphs up to [`DENSE_LIMIT`],
//! * a Lanczos iteration with explicit deflation of the constant vector and
//!   full reorthogonalization, run separately for the top of the spectrum
//!   and (on -P) for the bottom,
//! * for Cayley-structured graphs carrying a free cyclic automorphism, an
//!   exact block-diagonalization into Hermitian Fourier blocks followed by
//!   dense eigensolves ([`folded_dense_report`]); this keeps a dense-grade
//!   oracle affordable far beyond [`DENSE_LIMIT`].

mod folded;
mod lanczos;

pub use folded::folded_dense_report;
pub use lanczos::LanczosOptions;

use ndarray::Array2;
use ndarray_linalg::{EigValsh, UPLO};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_RAMANUJAN_SLACK: f64 = 1e-6;
/// Largest n for which the automatic method choice picks the dense path.
pub const DENSE_LIMIT: usize = 2000;
/// Hard refusal point for a forced dense solve (the n x n matrix alone is
/// 3.2 GB here).
pub const DENSE_HARD_LIMIT: usize = 20_000;

/// The Alon–Boppana value `2 sqrt(d-1) / d`: the spectral radius of the
/// walk on the d-regular tree and the asymptotic floor for rho.
pub fn rho_d(d: usize) -> f64 {
    2.0 * (d as f64 - 1.0).sqrt() / d as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Iterative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodHint {
    /// Dense up to [`DENSE_LIMIT`], iterative beyond.
    Auto,
    Dense,
    Iterative,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub d: usize,
    pub rho: f64,
    pub lambda2: f64,
    pub lambda_min: f64,
    pub rho_d: f64,
    pub is_ramanujan: bool,
    pub method: Method,
    pub tol: f64,
}

impl SpectralReport {
    fn assemble(
        graph: &Graph,
        lambda2: f64,
        lambda_min: f64,
        method: Method,
        tol: f64,
    ) -> Result<Self> {
        let rho = lambda2.max(-lambda_min);
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Internal(format!(
                "reduced spectral radius {rho} outside (0, 1); eigenvalue 1 of an admissible graph must be simple"
            )));
        }
        let rd = rho_d(graph.d());
        Ok(SpectralReport {
            n: graph.n(),
            d: graph.d(),
            rho,
            lambda2,
            lambda_min,
            rho_d: rd,
            is_ramanujan: rho <= rd + DEFAULT_RAMANUJAN_SLACK,
            method,
            tol,
        })
    }
}

/// Computes the spectral report with `rho` resolved to within `tol`.
pub fn spectral_report(graph: &Graph, tol: f64, hint: MethodHint) -> Result<SpectralReport> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let dense = match hint {
        MethodHint::Auto => graph.n() <= DENSE_LIMIT,
        MethodHint::Dense => true,
        MethodHint::Iterative => false,
    };
    if dense {
        dense_report(graph, tol)
    } else {
        iterative_report(graph, tol, &LanczosOptions::default())
    }
}

/// Full symmetric eigensolve of P.
fn dense_report(graph: &Graph, tol: f64) -> Result<SpectralReport> {
    let n = graph.n();
    if n > DENSE_HARD_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "dense eigensolve refused for n = {n} > {DENSE_HARD_LIMIT}; use the iterative method (or the folded dense oracle for Cayley graphs)"
        )));
    }
    let inv_d = 1.0 / graph.d() as f64;
    let mut p = Array2::<f64>::zeros((n, n));
    for v in 0..n as u32 {
        for &u in graph.neighbors(v) {
            p[(v as usize, u as usize)] = inv_d;
        }
    }
    let vals = p
        .eigvalsh(UPLO::Lower)
        .map_err(|e| Error::Internal(format!("dense eigensolve failed: {e}")))?;
    // ascending order
    let lambda_top = vals[n - 1];
    if (lambda_top - 1.0).abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "top eigenvalue {lambda_top} of a stochastic operator should be 1"
        )));
    }
    SpectralReport::assemble(graph, vals[n - 2], vals[0], Method::Dense, tol)
}

/// Extremal eigenvalues on the complement of constants via Lanczos.
pub fn iterative_report(
    graph: &Graph,
    tol: f64,
    options: &LanczosOptions,
) -> Result<SpectralReport> {
    let lambda2 = lanczos::extreme_deflated(graph, false, tol, options)?;
    let lambda_min = -lanczos::extreme_deflated(graph, true, tol, options)?;
    SpectralReport::assemble(graph, lambda2, lambda_min, Method::Iterative, tol)
}

/// Family-level trend against the Alon–Boppana floor.
#[derive(Debug, Clone, Serialize)]
pub struct TrendReport {
    pub d: usize,
    pub rho_d: f64,
    pub slack: f64,
    /// (n, rho, rho - rho_d) sorted by n.
    pub rows: Vec<TrendRow>,
    pub max_excess: f64,
    /// Every member satisfies rho <= rho_d + slack.
    pub all_within_slack: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrendRow {
    pub n: usize,
    pub rho: f64,
    pub excess: f64,
}

pub fn ramanujan_family_trend(reports: &[SpectralReport], slack: f64) -> Result<TrendReport> {
    let d = reports
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty family".into()))?
        .d;
    if reports.iter().any(|r| r.d != d) {
        return Err(Error::InvalidParameter(
            "family members must share a degree".into(),
        ));
    }
    let floor = rho_d(d);
    let mut rows: Vec<TrendRow> = reports
        .iter()
        .map(|r| TrendRow {
            n: r.n,
            rho: r.rho,
            excess: r.rho - floor,
        })
        .collect();
    rows.sort_by_key(|r| r.n);
    let max_excess = rows
        .iter()
        .map(|r| r.excess)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(TrendReport {
        d,
        rho_d: floor,
        slack,
        max_excess,
        all_within_slack: max_excess <= slack,
        rows,
    })
}
