//! Exact distribution evolution of the simple random walk and its mixing
//! diagnostics: total variation, squared Hellinger distance, Shannon
//! entropy, both mixing times, the entropic/spectral step bounds, and the
//! per-step ratio statistics `E[f_t]`, `E[f_t^{1/2}]`, `E[-log f_t]` for
//! `f_t = mu^t(X^t) / mu^{t-1}(X^{t-1})`.

use serde::Serialize;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numfmt::{sig17, sig17_opt};

/// Retained-values budget for full-sequence evolution (counts f64 entries).
pub const RETENTION_LIMIT: usize = 1 << 27;

/// Tolerance for the `mu_cur = P mu_prev` precondition of [`f_stats`].
pub const F_STATS_PRECONDITION_TOL: f64 = 1e-10;

/// Entropy production rate of the walk on the d-regular tree:
/// `h_d = (d-2) log(d-1) / d` (natural log).
pub fn h_d(d: usize) -> f64 {
    (d as f64 - 2.0) * (d as f64 - 1.0).ln() / d as f64
}

/// Shannon entropy in nats, with 0 log 0 = 0. Compensated summation keeps
/// the value independent of term order to a few ulps, so entropies of
/// permuted measures agree far below the 1e-9 identity tolerances.
pub fn entropy(nu: &Dist) -> f64 {
    let mut acc = crate::kahan::KahanSum::default();
    for &m in nu.as_slice() {
        if m > 0.0 {
            acc.add(m * m.ln());
        }
    }
    -acc.value()
}

/// Total variation distance: half the L1 distance. Equals the maximum of
/// |nu(A) - eta(A)| over vertex subsets A (brute-force checked in tests).
pub fn tv_distance(nu: &Dist, eta: &Dist) -> Result<f64> {
    check_dims(nu, eta)?;
    let sum: f64 = nu
        .as_slice()
        .iter()
        .zip(eta.as_slice())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(0.5 * sum)
}

/// Squared Hellinger-type distance `sum_x (sqrt nu(x) - sqrt eta(x))^2`,
/// i.e. the squared L2 distance of the root vectors; lies in [0, 2].
pub fn hellinger_sq(nu: &Dist, eta: &Dist) -> Result<f64> {
    check_dims(nu, eta)?;
    Ok(nu
        .as_slice()
        .iter()
        .zip(eta.as_slice())
        .map(|(a, b)| {
            let diff = a.sqrt() - b.sqrt();
            diff * diff
        })
        .sum())
}

fn check_dims(nu: &Dist, eta: &Dist) -> Result<()> {
    if nu.len() != eta.len() {
        return Err(Error::DimensionMismatch {
            expected: nu.len(),
            got: eta.len(),
        });
    }
    Ok(())
}

/// Streaming evolution mu^0 = delta_start, mu^{t+1} = P mu^t.
pub struct Walker<'g> {
    graph: &'g Graph,
    t: usize,
    cur: Dist,
}

impl<'g> Walker<'g> {
    pub fn new(graph: &'g Graph, start: u32) -> Result<Self> {
        if start as usize >= graph.n() {
            return Err(Error::InvalidParameter(format!(
                "start vertex {start} out of range (n = {})",
                graph.n()
            )));
        }
        Ok(Self {
            graph,
            t: 0,
            cur: Dist::delta(graph.n(), start),
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn current(&self) -> &Dist {
        &self.cur
    }

    /// Advances one step and returns the new distribution.
    pub fn step(&mut self) -> Result<&Dist> {
        self.cur = self.graph.apply_p(&self.cur)?;
        self.t += 1;
        Ok(&self.cur)
    }
}

/// The law of the walk after exactly `t` steps.
pub fn evolve(graph: &Graph, start: u32, t: usize) -> Result<Dist> {
    let mut walker = Walker::new(graph, start)?;
    for _ in 0..t {
        walker.step()?;
    }
    Ok(walker.cur)
}

/// All laws mu^0 … mu^T. Errors when retention would exceed
/// [`RETENTION_LIMIT`] values; use [`Walker`] to stream instead.
pub fn evolve_sequence(graph: &Graph, start: u32, t_max: usize) -> Result<Vec<Dist>> {
    let requested = (t_max + 1).saturating_mul(graph.n());
    if requested > RETENTION_LIMIT {
        return Err(Error::MemoryBudget {
            requested,
            limit: RETENTION_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(t_max + 1);
    let mut walker = Walker::new(graph, start)?;
    out.push(walker.current().clone());
    for _ in 0..t_max {
        out.push(walker.step()?.clone());
    }
    Ok(out)
}

/// Statistics of the ratio `f_t` over the exact joint law of
/// `(X^{t-1}, X^t)`: the pair (x, y) with x ~ y carries weight
/// `mu^{t-1}(x)/d` and value `f = mu^t(y)/mu^{t-1}(x)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FStats {
    /// `E[f_t]`; at most 1, with deficit controlled by ((d-1)/d)^{t-1}.
    pub e_f: f64,
    /// `E[f_t^{1/2}]`; equals the inner product `<P xi_{t-1}, xi_t>` of the
    /// root vectors.
    pub e_sqrt_f: f64,
    /// min f_t over pairs in the support; at least 1/d.
    pub min_f: f64,
    /// `E[-log f_t]`, computed directly from the pair law (the identity with
    /// the entropy increment H(t) - H(t-1) is checked in tests, not assumed).
    pub e_neg_log_f: f64,
}

/// Checks the precondition `mu_cur = P mu_prev`, then aggregates.
pub fn f_stats(graph: &Graph, mu_prev: &Dist, mu_cur: &Dist) -> Result<FStats> {
    check_dims(mu_prev, mu_cur)?;
    if mu_prev.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            got: mu_prev.len(),
        });
    }
    let expected = graph.apply_p(mu_prev)?;
    let drift = expected
        .as_slice()
        .iter()
        .zip(mu_cur.as_slice())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if drift > F_STATS_PRECONDITION_TOL {
        return Err(Error::InvalidParameter(format!(
            "mu_cur is not P(mu_prev): max deviation {drift:.3e}"
        )));
    }
    Ok(f_stats_unchecked(graph, mu_prev, mu_cur))
}

pub(crate) fn f_stats_unchecked(graph: &Graph, mu_prev: &Dist, mu_cur: &Dist) -> FStats {
    let d = graph.d() as f64;
    let inv_d = 1.0 / d;
    let prev = mu_prev.as_slice();
    let cur = mu_cur.as_slice();
    let sqrt_cur: Vec<f64> = cur.iter().map(|&m| m.sqrt()).collect();

    let mut e_f = 0.0;
    let mut e_sqrt = 0.0;
    let mut e_neg_log = 0.0;
    let mut min_f = f64::INFINITY;
    for x in 0..graph.n() as u32 {
        let px = prev[x as usize];
        if px <= 0.0 {
            continue;
        }
        let ln_px = px.ln();
        let mut sum_cur = 0.0;
        let mut sum_sqrt = 0.0;
        let mut sum_ln = 0.0;
        for &y in graph.neighbors(x) {
            let cy = cur[y as usize];
            sum_cur += cy;
            sum_sqrt += sqrt_cur[y as usize];
            sum_ln += ln_px - cy.ln();
            min_f = min_f.min(cy / px);
        }
        e_f += sum_cur * inv_d;
        e_sqrt += px.sqrt() * sum_sqrt * inv_d;
        e_neg_log += px * inv_d * sum_ln;
    }
    FStats {
        e_f,
        e_sqrt_f: e_sqrt,
        min_f,
        e_neg_log_f: e_neg_log,
    }
}

/// One row of a mixing profile; per-step ratio statistics are absent at t=0.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    pub t: usize,
    pub tv: f64,
    pub hell2: f64,
    pub entropy: f64,
    pub e_f: Option<f64>,
    pub e_sqrt_f: Option<f64>,
    pub support_size: usize,
}

/// Per-step record of the walk's distances to uniform, entropy, support
/// growth and ratio statistics.
#[derive(Debug, Clone, Serialize)]
pub struct MixingProfile {
    pub start: u32,
    pub rows: Vec<ProfileRow>,
}

impl MixingProfile {
    pub const CSV_HEADER: &'static str = "t,tv,hell2,entropy,e_f,e_sqrt_f,support_size";

    pub fn to_csv(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str(&format!("# {c}\n"));
        }
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.t,
                sig17(r.tv),
                sig17(r.hell2),
                sig17(r.entropy),
                sig17_opt(r.e_f),
                sig17_opt(r.e_sqrt_f),
                r.support_size
            ));
        }
        out
    }
}

/// Profiles the walk from `start` for `t_max` steps, streaming with two
/// retained distributions.
pub fn mixing_profile(graph: &Graph, start: u32, t_max: usize) -> Result<MixingProfile> {
    let pi = Dist::uniform(graph.n());
    let mut walker = Walker::new(graph, start)?;
    let mut rows = Vec::with_capacity(t_max + 1);
    let row = |t: usize, cur: &Dist, stats: Option<&FStats>| -> Result<ProfileRow> {
        Ok(ProfileRow {
            t,
            tv: tv_distance(cur, &pi)?,
            hell2: hellinger_sq(cur, &pi)?,
            entropy: entropy(cur),
            e_f: stats.map(|s| s.e_f),
            e_sqrt_f: stats.map(|s| s.e_sqrt_f),
            support_size: cur.support_size(),
        })
    };
    rows.push(row(0, walker.current(), None)?);
    let mut prev = walker.current().clone();
    for t in 1..=t_max {
        walker.step()?;
        let stats = f_stats_unchecked(graph, &prev, walker.current());
        rows.push(row(t, walker.current(), Some(&stats))?);
        prev = walker.current().clone();
    }
    Ok(MixingProfile { start, rows })
}

/// First step at which the TV distance to uniform drops below `alpha`.
pub fn mixing_time_tv(graph: &Graph, start: u32, alpha: f64, step_cap: usize) -> Result<usize> {
    mixing_time_by(graph, start, step_cap, "tv mixing time", |cur, pi| {
        tv_distance(cur, pi).map(|v| v < alpha)
    })
}

/// First step at which the squared Hellinger distance to uniform drops
/// below `2 * alpha`.
pub fn mixing_time_hellinger(
    graph: &Graph,
    start: u32,
    alpha: f64,
    step_cap: usize,
) -> Result<usize> {
    mixing_time_by(
        graph,
        start,
        step_cap,
        "hellinger mixing time",
        |cur, pi| hellinger_sq(cur, pi).map(|v| v < 2.0 * alpha),
    )
}

fn mixing_time_by(
    graph: &Graph,
    start: u32,
    step_cap: usize,
    what: &str,
    mut below: impl FnMut(&Dist, &Dist) -> Result<bool>,
) -> Result<usize> {
    let pi = Dist::uniform(graph.n());
    let mut walker = Walker::new(graph, start)?;
    loop {
        if below(walker.current(), &pi)? {
            return Ok(walker.t());
        }
        if walker.t() >= step_cap {
            return Err(Error::NonConvergence {
                what: format!("{what} within step cap {step_cap}"),
                residual: f64::NAN,
            });
        }
        walker.step()?;
    }
}

/// The two a-priori step estimates bracketing the mixing time.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MixBounds {
    /// Leading term `log n / h_d` of the entropic lower bound (the o(log n)
    /// correction is unknown and reported as zero).
    pub entropic_lb: f64,
    /// `(log n + 2 log(1/(2 alpha))) / (-2 log rho)`, the explicit constant
    /// from the L2-to-L1 comparison `||mu^t - pi||_1 <= sqrt(n) rho^t`.
    pub spectral_ub: f64,
    pub h_d: f64,
}

pub fn mix_bounds(n: usize, d: usize, rho: f64, alpha: f64) -> MixBounds {
    let log_n = (n as f64).ln();
    let hd = h_d(d);
    MixBounds {
        entropic_lb: log_n / hd,
        spectral_ub: (log_n + 2.0 * (1.0 / (2.0 * alpha)).ln()) / (-2.0 * rho.ln()),
        h_d: hd,
    }
}

/// Step cap for mixing-time searches: ten times the spectral upper bound,
/// floored to keep tiny fixtures searchable.
pub fn default_step_cap(n: usize, d: usize, rho: f64, alpha: f64) -> usize {
    let ub = mix_bounds(n, d, rho, alpha).spectral_ub;
    (10.0 * ub).ceil().max(16.0) as usize
}

/// Mass that `mu` puts on the `radius`-neighborhood of the level set
/// `{x : -log mu(x) < threshold}`.
pub fn neg_log_level_measure(
    graph: &Graph,
    mu: &Dist,
    threshold: f64,
    radius: usize,
) -> Result<f64> {
    if mu.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            got: mu.len(),
        });
    }
    let level: Vec<u32> = mu
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0.0 && -m.ln() < threshold)
        .map(|(x, _)| x as u32)
        .collect();
    if level.is_empty() {
        return Ok(0.0);
    }
    let hood = graph.bfs_neighborhood(&level, radius)?;
    Ok(mu.mass_on(&hood))
}
