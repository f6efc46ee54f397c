//! Exact simple random walk on the d-regular tree via its radial chain.
//!
//! By spherical symmetry the walk's law is determined by the mass q(r) at
//! each radius r; per-vertex mass at radius r is q(r)/N(r) with sphere
//! sizes N(0) = 1, N(r) = d (d-1)^{r-1}. The radial transition moves mass
//! at 0 entirely to 1, and mass at r >= 1 outward with weight (d-1)/d and
//! inward with weight 1/d. Sphere sizes overflow f64 long before the mass
//! recursion degrades, so only log-sizes and size ratios are ever formed.

use serde::Serialize;

use crate::kahan::KahanSum;
use crate::numfmt::sig17;

/// Radius-indexed law of the tree walk after `t` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDist {
    t: usize,
    q: Vec<f64>,
}

impl RadialDist {
    /// The walk at time zero: all mass at the origin.
    pub fn origin() -> Self {
        Self { t: 0, q: vec![1.0] }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Mass at radius `r` (zero beyond the reachable range).
    pub fn mass(&self, r: usize) -> f64 {
        self.q.get(r).copied().unwrap_or(0.0)
    }

    pub fn masses(&self) -> &[f64] {
        &self.q
    }

    pub fn total(&self) -> f64 {
        let mut acc = KahanSum::default();
        for &m in &self.q {
            acc.add(m);
        }
        acc.value()
    }

    /// One radial transition.
    pub fn step(&self, d: usize) -> RadialDist {
        assert!(d >= 3, "degree must be at least 3");
        let d_f = d as f64;
        let out_w = (d_f - 1.0) / d_f;
        let in_w = 1.0 / d_f;
        let mut q = vec![0.0; self.q.len() + 1];
        q[1] += self.q[0];
        for r in 1..self.q.len() {
            let m = self.q[r];
            if m == 0.0 {
                continue;
            }
            q[r + 1] += m * out_w;
            q[r - 1] += m * in_w;
        }
        RadialDist { t: self.t + 1, q }
    }
}

/// The radial law after `t` steps from the origin.
pub fn radial_walk(d: usize, t: usize) -> RadialDist {
    let mut cur = RadialDist::origin();
    for _ in 0..t {
        cur = cur.step(d);
    }
    cur
}

/// `log N(r)` for the sphere sizes N(0) = 1, N(r) = d (d-1)^{r-1}.
pub fn ln_sphere_size(d: usize, r: usize) -> f64 {
    if r == 0 {
        0.0
    } else {
        (d as f64).ln() + (r as f64 - 1.0) * (d as f64 - 1.0).ln()
    }
}

/// Entropy of the tree walk's law: `-sum_r q(r) log(q(r)/N(r))`.
pub fn tree_entropy(d: usize, dist: &RadialDist) -> f64 {
    let mut acc = KahanSum::default();
    for (r, &m) in dist.masses().iter().enumerate() {
        if m > 0.0 {
            acc.add(m * (ln_sphere_size(d, r) - m.ln()));
        }
    }
    acc.value()
}

/// Exact statistics of the step ratio on the tree over the joint radial law.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TreeFStats {
    pub t: usize,
    pub e_neg_log_f: f64,
    pub e_sqrt_f: f64,
    pub e_f: f64,
    pub min_f: f64,
}

/// Aggregates over the radial pair law: an outward step (r -> r+1) carries
/// weight q(r) for r = 0 and q(r)(d-1)/d otherwise; an inward step
/// (r -> r-1) carries weight q(r)/d. The ratio value on a pair is the
/// per-vertex mass ratio `[q'(r')/N(r')] / [q(r)/N(r)]`, assembled from the
/// mass ratio and the exact sphere-size ratio.
pub fn tree_f_stats(d: usize, prev: &RadialDist, cur: &RadialDist) -> TreeFStats {
    assert_eq!(cur.t(), prev.t() + 1, "consecutive laws required");
    let d_f = d as f64;
    let out_w = (d_f - 1.0) / d_f;
    let in_w = 1.0 / d_f;

    let mut e_sqrt = KahanSum::default();
    let mut e_log = KahanSum::default();
    let mut e_f = KahanSum::default();
    let mut min_f = f64::INFINITY;
    let mut tally = |w: f64, f: f64| {
        if w > 0.0 && f > 0.0 {
            e_sqrt.add(w * f.sqrt());
            e_log.add(-w * f.ln());
            e_f.add(w * f);
            min_f = min_f.min(f);
        }
    };

    for (r, &m) in prev.masses().iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        if r == 0 {
            // forced outward step; N(0)/N(1) = 1/d
            tally(m, cur.mass(1) / m / d_f);
        } else {
            // outward: N(r)/N(r+1) = 1/(d-1)
            tally(m * out_w, cur.mass(r + 1) / m / (d_f - 1.0));
            // inward: N(r)/N(r-1) = d-1, except N(1)/N(0) = d
            let size_ratio = if r == 1 { d_f } else { d_f - 1.0 };
            tally(m * in_w, cur.mass(r - 1) / m * size_ratio);
        }
    }
    TreeFStats {
        t: cur.t(),
        e_neg_log_f: e_log.value(),
        e_sqrt_f: e_sqrt.value(),
        e_f: e_f.value(),
        min_f,
    }
}

/// Stats of the ratio at a single time, evolving from the origin.
pub fn tree_f_stats_at(d: usize, t: usize) -> TreeFStats {
    assert!(t >= 1, "ratio undefined at t = 0");
    let prev = radial_walk(d, t - 1);
    tree_f_stats(d, &prev, &prev.step(d))
}

/// Stats for every t in 1..=t_max in one sweep.
pub fn tree_f_stats_sweep(d: usize, t_max: usize) -> Vec<TreeFStats> {
    let mut out = Vec::with_capacity(t_max);
    let mut prev = RadialDist::origin();
    for _ in 1..=t_max {
        let cur = prev.step(d);
        out.push(tree_f_stats(d, &prev, &cur));
        prev = cur;
    }
    out
}

/// First t at which `|E[f~^{1/2}] - rho_d| <= eps`, scanning up to `t_cap`.
pub fn time_to_sqrt_gap(d: usize, eps: f64, t_cap: usize) -> Option<usize> {
    let rho_d = crate::spectral::rho_d(d);
    let mut prev = RadialDist::origin();
    for t in 1..=t_cap {
        let cur = prev.step(d);
        let stats = tree_f_stats(d, &prev, &cur);
        if (stats.e_sqrt_f - rho_d).abs() <= eps {
            return Some(t);
        }
        prev = cur;
    }
    None
}

/// CSV rows `t,r,q_r` for all times up to `t_max`.
pub fn distributions_csv(d: usize, t_max: usize, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str("t,r,q_r\n");
    let mut cur = RadialDist::origin();
    for t in 0..=t_max {
        for (r, &m) in cur.masses().iter().enumerate() {
            if m > 0.0 {
                out.push_str(&format!("{t},{r},{}\n", sig17(m)));
            }
        }
        if t < t_max {
            cur = cur.step(d);
        }
    }
    out
}

/// CSV rows `t,e_neg_log_f,e_sqrt_f,e_f,min_f` for t in 1..=t_max.
pub fn stats_csv(d: usize, t_max: usize, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str("t,e_neg_log_f,e_sqrt_f,e_f,min_f\n");
    for s in tree_f_stats_sweep(d, t_max) {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.t,
            sig17(s.e_neg_log_f),
            sig17(s.e_sqrt_f),
            sig17(s.e_f),
            sig17(s.min_f)
        ));
    }
    out
}
