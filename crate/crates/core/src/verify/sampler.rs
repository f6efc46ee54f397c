//! Deterministic distribution samplers for the inequality checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist::Dist;
use crate::graph::Graph;
use crate::walk;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// Dirichlet(1, …, 1): uniform on the probability simplex.
    UniformSimplex,
    /// Random point mass mixed into uniform at a random weight; stresses
    /// the near-delta regime where margins are smallest.
    SparseDeltaMix,
    /// The law of the walk from a random start after a random number of
    /// steps (up to about twice the entropic time scale).
    WalkSnapshot,
}

/// Seeded sampler; trial k draws from an independent RNG stream, so results
/// do not depend on execution order or worker count.
#[derive(Debug, Clone, Copy)]
pub struct DistSampler {
    pub mode: SampleMode,
    pub seed: u64,
}

impl DistSampler {
    pub fn new(mode: SampleMode, seed: u64) -> Self {
        Self { mode, seed }
    }

    fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial.wrapping_add(1));
        rng
    }

    /// Sample on a bare n-point space ([`SampleMode::WalkSnapshot`] needs a
    /// graph and falls back to the simplex here).
    pub fn sample_simplex(&self, n: usize, trial: u64) -> Dist {
        let mut rng = self.rng(trial);
        match self.mode {
            SampleMode::SparseDeltaMix => sparse_delta_mix(n, &mut rng),
            _ => uniform_simplex(n, &mut rng),
        }
    }

    /// Sample a measure on the vertex set of `graph`.
    pub fn sample_on_graph(&self, graph: &Graph, trial: u64) -> Dist {
        let mut rng = self.rng(trial);
        match self.mode {
            SampleMode::UniformSimplex => uniform_simplex(graph.n(), &mut rng),
            SampleMode::SparseDeltaMix => sparse_delta_mix(graph.n(), &mut rng),
            SampleMode::WalkSnapshot => {
                let start = rng.gen_range(0..graph.n() as u32);
                let horizon =
                    (2.0 * (graph.n() as f64).ln() / walk::h_d(graph.d())).ceil() as usize + 2;
                let t = rng.gen_range(0..=horizon);
                walk::evolve(graph, start, t).expect("start vertex is in range")
            }
        }
    }
}

fn uniform_simplex(n: usize, rng: &mut ChaCha8Rng) -> Dist {
    // exponentials normalized to total mass one
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = raw.iter().sum();
    Dist::new(raw.into_iter().map(|x| x / sum).collect()).expect("normalized by construction")
}

fn sparse_delta_mix(n: usize, rng: &mut ChaCha8Rng) -> Dist {
    let v = rng.gen_range(0..n);
    let w: f64 = rng.gen();
    let background = (1.0 - w) / n as f64;
    let mut mass = vec![background; n];
    mass[v] += w;
    Dist::new(mass).expect("normalized by construction")
}
