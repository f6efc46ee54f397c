//! Constructors for the graph families under study: explicit Ramanujan
//! Cayley graphs, random regular graphs, and deterministic fixtures.

mod lps;
mod random;

pub use lps::{lps_graph, LpsBuild, LpsMeta, LpsParams};
pub use random::{random_regular, RandomRegularParams};

use crate::error::{Error, Result};
use crate::graph::{Graph, RawGraph};

/// Deterministic small fixtures and non-expander baselines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    /// Complete graph on `k` vertices (degree k-1).
    Complete(usize),
    /// The Petersen graph: 10 vertices, 3-regular, girth 5.
    Petersen,
    /// Circulant graph on `n` vertices with the given offsets
    /// (each offset `s` with `0 < s <= n/2` contributes the edges `v ~ v+s`).
    Circulant { n: usize, offsets: Vec<usize> },
}

/// Builds the named fixture and checks admissibility.
pub fn named_fixture(fixture: &Fixture) -> Result<Graph> {
    match fixture {
        Fixture::Complete(k) => {
            let k = *k;
            if k < 4 {
                return Err(Error::InvalidParameter(format!(
                    "complete({k}) has degree {} < 3",
                    k.saturating_sub(1)
                )));
            }
            let mut edges = Vec::with_capacity(k * (k - 1) / 2);
            for u in 0..k as u32 {
                for v in (u + 1)..k as u32 {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(k, k - 1, &edges)
        }
        Fixture::Petersen => {
            let mut edges: Vec<(u32, u32)> = Vec::with_capacity(15);
            for i in 0..5u32 {
                edges.push((i, (i + 1) % 5)); // outer cycle
                edges.push((i, i + 5)); // spokes
                edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
            }
            let edges: Vec<(u32, u32)> = edges
                .into_iter()
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            Graph::from_edges(10, 3, &edges)
        }
        Fixture::Circulant { n, offsets } => circulant(*n, offsets),
    }
}

fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("circulant needs n >= 3".into()));
    }
    let mut offs: Vec<usize> = offsets.to_vec();
    offs.sort_unstable();
    offs.dedup();
    if offs.len() != offsets.len() {
        return Err(Error::InvalidParameter("repeated circulant offset".into()));
    }
    if offs.iter().any(|&s| s == 0 || s > n / 2) {
        return Err(Error::InvalidParameter(format!(
            "circulant offsets must lie in 1..=n/2 for n = {n}"
        )));
    }
    let d: usize = offs.iter().map(|&s| if 2 * s == n { 1 } else { 2 }).sum();
    let mut edges = Vec::with_capacity(n * d / 2);
    for v in 0..n {
        for &s in &offs {
            if 2 * s == n {
                // antipodal offset: one edge per orbit pair
                if v < s {
                    edges.push((v as u32, (v + s) as u32));
                }
            } else {
                // each undirected edge {v, v+s} arises exactly once, from v
                let u = (v + s) % n;
                edges.push((v.min(u) as u32, v.max(u) as u32));
            }
        }
    }
    Graph::from_edges(n, d, &edges)
}

/// A buildable graph description carrying the metadata other modules need
/// (notably whether vertex-transitivity is known by construction).
#[derive(Debug, Clone)]
pub enum GraphSpec {
    Fixture(Fixture),
    Lps(LpsParams),
    RandomRegular(RandomRegularParams),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Fixture(f) => named_fixture(f),
            GraphSpec::Lps(p) => Ok(lps_graph(p)?.graph),
            GraphSpec::RandomRegular(p) => random_regular(p),
        }
    }

    /// True when the construction itself guarantees vertex-transitivity.
    pub fn is_transitive(&self) -> bool {
        match self {
            GraphSpec::Fixture(_) | GraphSpec::Lps(_) => true,
            GraphSpec::RandomRegular(_) => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GraphSpec::Fixture(Fixture::Complete(k)) => format!("complete({k})"),
            GraphSpec::Fixture(Fixture::Petersen) => "petersen".into(),
            GraphSpec::Fixture(Fixture::Circulant { n, offsets }) => {
                format!("circulant({n},{offsets:?})")
            }
            GraphSpec::Lps(p) => format!("lps({},{})", p.p, p.q),
            GraphSpec::RandomRegular(p) => format!("random({},{},seed={})", p.n, p.d, p.seed),
        }
    }
}

pub(crate) fn raw_from_neighbor_lists(
    n: usize,
    d: usize,
    lists: Vec<Vec<u32>>,
) -> Result<RawGraph> {
    let mut edges = Vec::with_capacity(n * d / 2);
    for (v, list) in lists.iter().enumerate() {
        for &u in list {
            if (v as u32) < u {
                edges.push((v as u32, u));
            }
        }
    }
    RawGraph::from_edges(n, d, &edges)
}
