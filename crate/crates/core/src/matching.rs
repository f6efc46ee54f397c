//! Decomposition of a d-regular adjacency matrix into d permutation matrices.
//!
//! The edges of the bipartite double cover (left copy x — right copy y for
//! every edge x ~ y) are partitioned into d perfect matchings by repeated
//! maximum matching; König's theorem guarantees each round succeeds on a
//! regular bipartite graph. Each matching defines one permutation sigma_i
//! with {v, sigma_i(v)} an edge, and the permutation matrices sum to the
//! adjacency matrix entrywise.

use std::collections::VecDeque;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// d permutations whose matrices sum to the adjacency matrix.
#[derive(Debug, Clone)]
pub struct PermDecomposition {
    perms: Vec<Vec<u32>>,
}

impl PermDecomposition {
    pub fn count(&self) -> usize {
        self.perms.len()
    }

    /// The i-th permutation as a lookup table: `perm(i)[v] = sigma_i(v)`.
    pub fn perm(&self, i: usize) -> &[u32] {
        &self.perms[i]
    }

    /// Pushforward of a distribution along sigma_i:
    /// `out(sigma_i(v)) = nu(v)`.
    pub fn pushforward(&self, i: usize, nu: &Dist) -> Result<Dist> {
        let sigma = &self.perms[i];
        if nu.len() != sigma.len() {
            return Err(Error::DimensionMismatch {
                expected: sigma.len(),
                got: nu.len(),
            });
        }
        let mut out = vec![0.0; nu.len()];
        for (v, &target) in sigma.iter().enumerate() {
            out[target as usize] = nu.as_slice()[v];
        }
        Dist::new(out)
    }

    /// `(1/d) * sum_i` of the pushforwards; equals one application of the
    /// normalized adjacency operator.
    pub fn average(&self, nu: &Dist) -> Result<Dist> {
        let d = self.perms.len();
        let mut out = vec![0.0; nu.len()];
        let inv_d = 1.0 / d as f64;
        for sigma in &self.perms {
            if nu.len() != sigma.len() {
                return Err(Error::DimensionMismatch {
                    expected: sigma.len(),
                    got: nu.len(),
                });
            }
            for (v, &target) in sigma.iter().enumerate() {
                out[target as usize] += nu.as_slice()[v] * inv_d;
            }
        }
        Ok(Dist::from_normalized(out))
    }
}

/// Splits the graph's edge set into d perfect matchings of the double cover.
/// Deterministic: adjacency is scanned in sorted order, so ties resolve to
/// the lowest vertex id.
pub fn decompose_permutations(graph: &Graph) -> Result<PermDecomposition> {
    let n = graph.n();
    let mut residual: Vec<Vec<u32>> = (0..n as u32).map(|v| graph.neighbors(v).to_vec()).collect();

    let mut perms = Vec::with_capacity(graph.d());
    for round in 0..graph.d() {
        let matching = hopcroft_karp(n, &residual);
        if matching.contains(&u32::MAX) {
            return Err(Error::Internal(format!(
                "matching round {round} is not perfect; regular bipartite double cover should always admit one"
            )));
        }
        for (v, &m) in matching.iter().enumerate() {
            let list = &mut residual[v];
            let pos = list
                .iter()
                .position(|&u| u == m)
                .ok_or_else(|| Error::Internal("matched edge missing from residual".into()))?;
            list.remove(pos);
        }
        perms.push(matching);
    }
    Ok(PermDecomposition { perms })
}

/// Maximum bipartite matching; `adj[v]` lists the right-side vertices
/// reachable from left vertex v. Returns `match_of[v]` with `u32::MAX`
/// for unmatched.
fn hopcroft_karp(n: usize, adj: &[Vec<u32>]) -> Vec<u32> {
    const FREE: u32 = u32::MAX;
    let mut match_left = vec![FREE; n];
    let mut match_right = vec![FREE; n];

    loop {
        // BFS from free left vertices builds the layered graph.
        let mut dist = vec![u32::MAX; n];
        let mut queue: VecDeque<u32> = (0..n as u32)
            .filter(|&v| match_left[v as usize] == FREE)
            .inspect(|&v| dist[v as usize] = 0)
            .collect();
        let mut found_augmenting = false;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v as usize] {
                let w = match_right[u as usize];
                if w == FREE {
                    found_augmenting = true;
                } else if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found_augmenting {
            break;
        }
        // DFS augments along the layers, lowest right id first.
        for v in 0..n as u32 {
            if match_left[v as usize] == FREE {
                augment(v, adj, &mut match_left, &mut match_right, &mut dist);
            }
        }
    }
    match_left
}

fn augment(
    v: u32,
    adj: &[Vec<u32>],
    match_left: &mut [u32],
    match_right: &mut [u32],
    dist: &mut [u32],
) -> bool {
    const FREE: u32 = u32::MAX;
    let dv = std::mem::replace(&mut dist[v as usize], u32::MAX);
    for &u in &adj[v as usize] {
        let w = match_right[u as usize];
        let extends = w == FREE
            || (dist[w as usize] == dv + 1 && augment(w, adj, match_left, match_right, dist));
        if extends {
            match_left[v as usize] = u;
            match_right[u as usize] = v;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_fixture, random_regular, Fixture, RandomRegularParams};

    fn assert_sums_to_adjacency(g: &Graph, decomp: &PermDecomposition) {
        let n = g.n();
        let mut counts = vec![0u32; n * n];
        for i in 0..decomp.count() {
            for (v, &u) in decomp.perm(i).iter().enumerate() {
                counts[u as usize * n + v] += 1;
            }
        }
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let expected = u32::from(g.has_edge(x, y));
                assert_eq!(
                    counts[x as usize * n + y as usize],
                    expected,
                    "entry ({x}, {y})"
                );
            }
        }
    }

    fn assert_are_permutations(decomp: &PermDecomposition, n: usize) {
        for i in 0..decomp.count() {
            let mut seen = vec![false; n];
            for &u in decomp.perm(i) {
                assert!(!seen[u as usize], "sigma_{i} repeats image {u}");
                seen[u as usize] = true;
            }
        }
    }

    #[test]
    fn k4_decomposes_into_three_permutations() {
        let g = named_fixture(&Fixture::Complete(4)).unwrap();
        let decomp = decompose_permutations(&g).unwrap();
        assert_eq!(decomp.count(), 3);
        assert_are_permutations(&decomp, 4);
        assert_sums_to_adjacency(&g, &decomp);
    }

    #[test]
    fn petersen_decomposes() {
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let decomp = decompose_permutations(&g).unwrap();
        assert_eq!(decomp.count(), 3);
        assert_are_permutations(&decomp, 10);
        assert_sums_to_adjacency(&g, &decomp);
    }

    #[test]
    fn random_regular_decomposes() {
        let g = random_regular(&RandomRegularParams::new(40, 5, 3)).unwrap();
        let decomp = decompose_permutations(&g).unwrap();
        assert_eq!(decomp.count(), 5);
        assert_are_permutations(&decomp, 40);
        assert_sums_to_adjacency(&g, &decomp);
    }

    #[test]
    fn average_of_pushforwards_is_one_walk_step() {
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let decomp = decompose_permutations(&g).unwrap();
        let nu = Dist::delta(10, 0);
        let via_perms = decomp.average(&nu).unwrap();
        let via_operator = g.apply_p(&nu).unwrap();
        for v in 0..10 {
            assert!((via_perms.get(v) - via_operator.get(v)).abs() < 1e-12);
        }
    }

    #[test]
    fn decomposition_is_deterministic() {
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let a = decompose_permutations(&g).unwrap();
        let b = decompose_permutations(&g).unwrap();
        for i in 0..3 {
            assert_eq!(a.perm(i), b.perm(i));
        }
    }
}
