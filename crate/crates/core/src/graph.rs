//! Storage and validation of finite d-regular graphs.
//!
//! Two layers: [`RawGraph`] holds structurally well-formed adjacency that may
//! still violate the standing hypotheses (simple, d-regular, connected,
//! non-bipartite); [`Graph`] is the validated, immutable form used by every
//! other module, with neighbors in one flat sorted array for cache-friendly
//! operator application.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::dist::Dist;
use crate::error::{Error, Result};

/// Minimum supported degree.
pub const MIN_DEGREE: usize = 3;

/// Outcome of checking the four standing hypotheses on a raw graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// No self-loops and no repeated edges.
    pub simple: bool,
    /// Every vertex has exactly the declared degree.
    pub d_regular: bool,
    /// One BFS component.
    pub connected: bool,
    /// BFS 2-coloring fails, i.e. the graph contains an odd cycle.
    pub non_bipartite: bool,
}

impl ValidationReport {
    pub fn admissible(&self) -> bool {
        self.simple && self.d_regular && self.connected && self.non_bipartite
    }

    /// Names of the failing flags, for error messages.
    pub fn failing(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.simple {
            out.push("simple");
        }
        if !self.d_regular {
            out.push("d_regular");
        }
        if !self.connected {
            out.push("connected");
        }
        if !self.non_bipartite {
            out.push("non_bipartite");
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.admissible() {
            write!(f, "admissible")
        } else {
            write!(f, "failing flags: {}", self.failing().join(", "))
        }
    }
}

/// Structurally well-formed adjacency (ids in range, symmetric lists) that
/// has not yet been validated against the standing hypotheses.
#[derive(Debug, Clone)]
pub struct RawGraph {
    n: usize,
    d: usize,
    adj: Vec<Vec<u32>>,
}

impl RawGraph {
    /// Builds undirected adjacency from an edge list. Self-loops and repeated
    /// edges are representable here and flagged by [`RawGraph::validate`];
    /// out-of-range ids and degrees below [`MIN_DEGREE`] are structural errors.
    pub fn from_edges(n: usize, d: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structural("vertex count must be positive".into()));
        }
        if d < MIN_DEGREE {
            return Err(Error::Structural(format!(
                "d >= {MIN_DEGREE} required, got {d}"
            )));
        }
        let mut adj = vec![Vec::with_capacity(d); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Structural(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                adj[u as usize].push(v);
            } else {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { n, d, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Checks the standing hypotheses: simple, d-regular, connected,
    /// non-bipartite.
    pub fn validate(&self) -> ValidationReport {
        let simple = self.adj.iter().enumerate().all(|(v, list)| {
            list.iter().all(|&u| u as usize != v) && list.windows(2).all(|w| w[0] != w[1])
        });
        let d_regular = self.adj.iter().all(|list| list.len() == self.d);

        // Single sweep assigns BFS colors over every component; connectivity
        // asks for one component, bipartiteness for a consistent 2-coloring.
        let mut color = vec![u8::MAX; self.n];
        let mut components = 0usize;
        let mut two_colorable = true;
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if color[root] != u8::MAX {
                continue;
            }
            components += 1;
            color[root] = 0;
            queue.push_back(root as u32);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v as usize] {
                    if color[u as usize] == u8::MAX {
                        color[u as usize] = 1 - color[v as usize];
                        queue.push_back(u);
                    } else if color[u as usize] == color[v as usize] {
                        two_colorable = false;
                    }
                }
            }
        }

        ValidationReport {
            simple,
            d_regular,
            connected: components == 1,
            non_bipartite: !two_colorable,
        }
    }

    /// Validates and freezes into the compressed immutable form.
    pub fn into_graph(self) -> Result<Graph> {
        let report = self.validate();
        if !report.admissible() {
            return Err(Error::NotAdmissible { report });
        }
        let mut adj = Vec::with_capacity(self.n * self.d);
        for list in &self.adj {
            adj.extend_from_slice(list);
        }
        Ok(Graph {
            n: self.n,
            d: self.d,
            adj,
        })
    }
}

/// An immutable simple connected non-bipartite d-regular graph.
///
/// Neighbor lists are stored back to back in one flat array; the constant
/// degree makes offsets implicit. Vertex ids are dense 0-based integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    d: usize,
    adj: Vec<u32>,
}

impl Graph {
    /// Builds and validates a graph from an undirected edge list.
    pub fn from_edges(n: usize, d: usize, edges: &[(u32, u32)]) -> Result<Self> {
        RawGraph::from_edges(n, d, edges)?.into_graph()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let start = v as usize * self.d;
        &self.adj[start..start + self.d]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.n * self.d / 2);
        for u in 0..self.n as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// One step of the normalized adjacency operator:
    /// `(P nu)(x) = (1/d) * sum over neighbors y of nu(y)`.
    pub fn apply_p(&self, nu: &Dist) -> Result<Dist> {
        if nu.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: nu.len(),
            });
        }
        let inv_d = 1.0 / self.d as f64;
        let mass = nu.as_slice();
        let out: Vec<f64> = (0..self.n as u32)
            .map(|x| {
                let s: f64 = self.neighbors(x).iter().map(|&y| mass[y as usize]).sum();
                s * inv_d
            })
            .collect();
        Ok(Dist::from_normalized(out))
    }

    /// All vertices at graph distance at most `radius` from `seeds`, sorted.
    pub fn bfs_neighborhood(&self, seeds: &[u32], radius: usize) -> Result<Vec<u32>> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for &s in seeds {
            if s as usize >= self.n {
                return Err(Error::Structural(format!(
                    "seed {s} out of range for n = {}",
                    self.n
                )));
            }
            if dist[s as usize] == usize::MAX {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        let mut out: Vec<u32> = queue.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            if dist[v as usize] == radius {
                continue;
            }
            for &u in self.neighbors(v) {
                if dist[u as usize] == usize::MAX {
                    dist[u as usize] = dist[v as usize] + 1;
                    queue.push_back(u);
                    out.push(u);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Sizes of the BFS spheres around `root` up to `max_radius`
    /// (index r = number of vertices at distance exactly r).
    pub fn sphere_sizes(&self, root: u32, max_radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[root as usize] = 0;
        let mut sizes = vec![0usize; max_radius + 1];
        sizes[0] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if dist[v as usize] == max_radius {
                continue;
            }
            for &u in self.neighbors(v) {
                if dist[u as usize] == usize::MAX {
                    dist[u as usize] = dist[v as usize] + 1;
                    sizes[dist[u as usize]] += 1;
                    queue.push_back(u);
                }
            }
        }
        sizes
    }

    /// Length of a shortest cycle, by BFS from every root.
    pub fn girth(&self) -> usize {
        (0..self.n as u32)
            .map(|r| self.shortest_cycle_through(r))
            .min()
            .expect("admissible graph has a cycle")
    }

    /// Girth of a vertex-transitive graph via a single BFS root: every vertex
    /// lies on some shortest cycle, so root 0 suffices.
    pub fn girth_transitive(&self) -> usize {
        self.shortest_cycle_through(0)
    }

    fn shortest_cycle_through(&self, root: u32) -> usize {
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![u32::MAX; self.n];
        dist[root as usize] = 0;
        let mut best = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            // Nothing shorter can be found once 2*dist(v) + 1 >= best.
            if 2 * dist[v as usize] + 1 >= best {
                break;
            }
            for &u in self.neighbors(v) {
                if dist[u as usize] == usize::MAX {
                    dist[u as usize] = dist[v as usize] + 1;
                    parent[u as usize] = v;
                    queue.push_back(u);
                } else if parent[v as usize] != u {
                    best = best.min(dist[v as usize] + dist[u as usize] + 1);
                }
            }
        }
        best
    }

    /// Relabels vertices: new id of `v` is `perm[v]`. `perm` must be a
    /// bijection on `0..n`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p as usize >= self.n || seen[p as usize] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p as usize] = true;
        }
        let mut adj = vec![0u32; self.n * self.d];
        for v in 0..self.n as u32 {
            let nv = perm[v as usize] as usize;
            let mut row: Vec<u32> = self
                .neighbors(v)
                .iter()
                .map(|&u| perm[u as usize])
                .collect();
            row.sort_unstable();
            adj[nv * self.d..(nv + 1) * self.d].copy_from_slice(&row);
        }
        Ok(Graph {
            n: self.n,
            d: self.d,
            adj,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_fixture, Fixture};

    pub(crate) fn k4_edges() -> Vec<(u32, u32)> {
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    }

    #[test]
    fn k4_is_admissible() {
        let raw = RawGraph::from_edges(4, 3, &k4_edges()).unwrap();
        let report = raw.validate();
        assert!(report.simple && report.d_regular && report.connected && report.non_bipartite);
        assert!(raw.into_graph().is_ok());
    }

    #[test]
    fn six_cycle_rejected_at_construction() {
        // d = 2 is below the supported range, so the even cycle never
        // reaches validation.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)];
        let err = RawGraph::from_edges(6, 2, &edges).unwrap_err();
        assert!(err.to_string().contains("d >= 3"));
    }

    #[test]
    fn bipartite_flagged() {
        // K_{3,3} is 3-regular, connected and bipartite.
        let edges = [
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
        ];
        let raw = RawGraph::from_edges(6, 3, &edges).unwrap();
        let report = raw.validate();
        assert!(report.simple && report.d_regular && report.connected);
        assert!(!report.non_bipartite);
        assert!(matches!(
            raw.into_graph(),
            Err(Error::NotAdmissible { report }) if report.failing() == ["non_bipartite"]
        ));
    }

    #[test]
    fn petersen_is_admissible() {
        let g = named_fixture(&Fixture::Petersen).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.d(), 3);
    }

    #[test]
    fn duplicate_edge_flagged_as_not_simple() {
        let mut edges = k4_edges();
        edges.push((0, 1));
        let raw = RawGraph::from_edges(4, 3, &edges).unwrap();
        let report = raw.validate();
        assert!(!report.simple);
        assert!(!report.d_regular);
    }

    #[test]
    fn self_loop_flagged_as_not_simple() {
        let mut edges = k4_edges();
        edges.push((2, 2));
        let raw = RawGraph::from_edges(4, 3, &edges).unwrap();
        assert!(!raw.validate().simple);
    }

    #[test]
    fn disconnected_flagged() {
        // Two disjoint K4s.
        let mut edges = k4_edges();
        edges.extend(k4_edges().iter().map(|&(u, v)| (u + 4, v + 4)));
        let raw = RawGraph::from_edges(8, 3, &edges).unwrap();
        let report = raw.validate();
        assert!(!report.connected);
        assert!(report.simple && report.d_regular);
    }

    #[test]
    fn out_of_range_edge_is_structural() {
        let err = RawGraph::from_edges(4, 3, &[(0, 7)]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn apply_p_from_delta_on_k4() {
        let g = Graph::from_edges(4, 3, &k4_edges()).unwrap();
        let mu1 = g.apply_p(&Dist::delta(4, 0)).unwrap();
        assert_eq!(mu1.get(0), 0.0);
        for v in 1..4 {
            assert!((mu1.get(v) - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_is_stationary() {
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let pi = Dist::uniform(10);
        let out = g.apply_p(&pi).unwrap();
        for v in 0..10 {
            assert!((out.get(v) - 0.1).abs() < 1e-15);
        }
    }

    #[test]
    fn apply_p_two_steps_on_petersen() {
        // From a point, two steps put mass 1/3 back on the start and 1/9 on
        // each of the six vertices at distance two.
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let mu1 = g.apply_p(&Dist::delta(10, 0)).unwrap();
        let mu2 = g.apply_p(&mu1).unwrap();
        assert!((mu2.get(0) - 1.0 / 3.0).abs() < 1e-15);
        let mut at_dist2 = 0;
        for v in 0..10u32 {
            if v != 0 && !g.has_edge(0, v) {
                assert!((mu2.get(v) - 1.0 / 9.0).abs() < 1e-15);
                at_dist2 += 1;
            } else if v != 0 {
                assert_eq!(mu2.get(v), 0.0);
            }
        }
        assert_eq!(at_dist2, 6);
    }

    #[test]
    fn apply_p_dimension_mismatch() {
        let g = Graph::from_edges(4, 3, &k4_edges()).unwrap();
        assert!(matches!(
            g.apply_p(&Dist::uniform(5)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bfs_neighborhood_examples() {
        let g = Graph::from_edges(4, 3, &k4_edges()).unwrap();
        assert_eq!(g.bfs_neighborhood(&[0], 0).unwrap(), vec![0]);
        assert_eq!(g.bfs_neighborhood(&[0], 1).unwrap(), vec![0, 1, 2, 3]);

        let p = named_fixture(&Fixture::Petersen).unwrap();
        assert_eq!(p.bfs_neighborhood(&[0], 1).unwrap().len(), 4);
    }

    #[test]
    fn bfs_neighborhood_monotone_and_idempotent() {
        let p = named_fixture(&Fixture::Petersen).unwrap();
        let mut prev = 0;
        for r in 0..5 {
            let size = p.bfs_neighborhood(&[3], r).unwrap().len();
            assert!(size >= prev);
            prev = size;
        }
        // Petersen has diameter 2.
        assert_eq!(p.bfs_neighborhood(&[3], 2).unwrap().len(), 10);
        assert_eq!(p.bfs_neighborhood(&[3], 9).unwrap().len(), 10);
    }

    #[test]
    fn girth_values() {
        let k4 = Graph::from_edges(4, 3, &k4_edges()).unwrap();
        assert_eq!(k4.girth(), 3);
        let p = named_fixture(&Fixture::Petersen).unwrap();
        assert_eq!(p.girth(), 5);
        assert_eq!(p.girth_transitive(), 5);
    }

    #[test]
    fn relabel_preserves_structure() {
        let p = named_fixture(&Fixture::Petersen).unwrap();
        let perm: Vec<u32> = (0..10).map(|v| (v * 3 + 1) % 10).collect();
        let q = p.relabel(&perm).unwrap();
        assert_eq!(q.girth(), 5);
        for u in 0..10u32 {
            for &v in p.neighbors(u) {
                assert!(q.has_edge(perm[u as usize], perm[v as usize]));
            }
        }
    }
}
