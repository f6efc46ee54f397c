//! Random regular graphs via the pairing (configuration) model.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, MIN_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomRegularParams {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    /// Attempts before giving up; each attempt is one full pairing.
    pub max_attempts: usize,
}

impl RandomRegularParams {
    pub fn new(n: usize, d: usize, seed: u64) -> Self {
        Self {
            n,
            d,
            seed,
            max_attempts: 1000,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d < MIN_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "d >= {MIN_DEGREE} required, got {}",
                self.d
            )));
        }
        if self.n <= self.d {
            return Err(Error::InvalidParameter(format!(
                "n must exceed d, got n = {}, d = {}",
                self.n, self.d
            )));
        }
        if !(self.n * self.d).is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "n*d must be even, got n = {}, d = {}",
                self.n, self.d
            )));
        }
        Ok(())
    }
}

/// Samples a simple connected non-bipartite d-regular graph by pairing
/// half-edges uniformly and rejecting any outcome with loops, repeated
/// edges, or a failing validation flag. Deterministic for a given seed.
pub fn random_regular(params: &RandomRegularParams) -> Result<Graph> {
    params.validate()?;
    let (n, d) = (params.n, params.d);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut stubs: Vec<u32> = (0..n as u32)
        .flat_map(|v| std::iter::repeat_n(v, d))
        .collect();

    'attempt: for _ in 0..params.max_attempts {
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue 'attempt;
        }
        match Graph::from_edges(n, d, &edges) {
            Ok(g) => return Ok(g),
            Err(Error::NotAdmissible { .. }) => continue 'attempt,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonConvergence {
        what: format!(
            "pairing model for (n = {n}, d = {d}) within {} attempts",
            params.max_attempts
        ),
        residual: f64::NAN,
    })
}
