//! Probability vectors over a vertex set.

use crate::error::{Error, Result};

/// Acceptable drift of the total mass before construction rejects the input.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A probability distribution on `{0, …, n-1}`.
///
/// Construction renormalizes when the total mass is within `SUM_TOLERANCE`
/// of one and rejects anything further off. Entries must be nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    mass: Vec<f64>,
}

impl Dist {
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::InvalidParameter("empty distribution".into()));
        }
        if let Some(&bad) = mass.iter().find(|&&m| m.is_nan() || m < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "negative or non-finite mass {bad}"
            )));
        }
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "total mass {sum} deviates from 1 by more than {SUM_TOLERANCE}"
            )));
        }
        let mut mass = mass;
        if sum != 1.0 {
            let inv = 1.0 / sum;
            for m in &mut mass {
                *m *= inv;
            }
        }
        Ok(Self { mass })
    }

    /// Point mass at vertex `v`.
    pub fn delta(n: usize, v: u32) -> Self {
        let mut mass = vec![0.0; n];
        mass[v as usize] = 1.0;
        Self { mass }
    }

    /// Uniform distribution on `n` points.
    pub fn uniform(n: usize) -> Self {
        Self {
            mass: vec![1.0 / n as f64; n],
        }
    }

    /// Wraps a vector that is already normalized by construction
    /// (e.g. the output of a stochastic operator).
    pub(crate) fn from_normalized(mass: Vec<f64>) -> Self {
        debug_assert!(
            (mass.iter().sum::<f64>() - 1.0).abs() < 1e-7,
            "from_normalized called with unnormalized vector"
        );
        Self { mass }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn get(&self, x: u32) -> f64 {
        self.mass[x as usize]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.mass
    }

    /// Number of vertices carrying strictly positive mass. Exact zeros come
    /// from the sparsity structure of the evolution, so no epsilon is applied.
    pub fn support_size(&self) -> usize {
        self.mass.iter().filter(|&&m| m > 0.0).count()
    }

    /// Vertices carrying strictly positive mass.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(x, _)| x as u32)
    }

    /// Total mass on a vertex set.
    pub fn mass_on(&self, set: &[u32]) -> f64 {
        set.iter().map(|&x| self.mass[x as usize]).sum()
    }
}
