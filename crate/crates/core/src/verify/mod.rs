//! Numerical verification of the entropy/mixing inequalities.
//!
//! Each check evaluates one inequality on structured inputs (the known
//! worst or degenerate cases always run) plus seeded random trials, and
//! reports the minimum signed margin. The inequalities are exact, so a
//! check passes iff its minimum margin clears a rounding-only tolerance.

mod sampler;

pub use sampler::{DistSampler, SampleMode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::generators::{self, Fixture, LpsParams, RandomRegularParams};
use crate::graph::Graph;
use crate::matching::{decompose_permutations, PermDecomposition};
use crate::spectral::{self, MethodHint};
use crate::walk;

/// Margins below this fail; it absorbs floating-point rounding only.
pub const MARGIN_TOL: f64 = -1e-9;

/// Entropy production constant: `H(P nu) - H(nu) >= c (1 - rho) ||nu - pi||_1^2`
/// with c = 1/16.
pub const ENTROPY_PRODUCTION_CONSTANT: f64 = 1.0 / 16.0;

/// Epsilon grid for the quantitative far-from-uniform Hellinger/TV bullet.
pub const HELLINGER_EPS_GRID: [f64; 3] = [0.1, 0.5, 1.0];

/// Outcome of one verified inequality.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Number of sampled trials (structured cases run in addition).
    pub trials: usize,
    /// Minimum signed margin over all cases; nonnegative when the
    /// inequality holds exactly.
    pub min_margin: f64,
    /// Reproduction descriptor of the input achieving the minimum.
    pub worst_case: String,
    pub pass: bool,
}

impl CheckReport {
    fn collect(name: &str, trials: usize, cases: Vec<(f64, String)>) -> Self {
        let (min_margin, worst_case) = cases
            .into_iter()
            .min_by(|a, b| a.0.partial_cmp(&b.0).expect("margins are ordered"))
            .expect("at least one case per check");
        CheckReport {
            name: name.to_string(),
            trials,
            min_margin,
            worst_case,
            pass: min_margin >= MARGIN_TOL,
        }
    }
}

fn sampled_desc(sampler: &DistSampler, trial: u64) -> String {
    format!(
        "sampled:mode={:?},seed={},trial={trial}",
        sampler.mode, sampler.seed
    )
}

/// Margin of the entropy production inequality for one measure, with the
/// leading constant exposed so the test suite can corrupt it and watch the
/// check fail (mutation self-test).
pub fn entropy_production_margin(graph: &Graph, rho: f64, nu: &Dist, constant: f64) -> Result<f64> {
    let pnu = graph.apply_p(nu)?;
    let gain = walk::entropy(&pnu) - walk::entropy(nu);
    let l1 = 2.0 * walk::tv_distance(nu, &Dist::uniform(graph.n()))?;
    Ok(gain - constant * (1.0 - rho) * l1 * l1)
}

/// Entropy production: one walk step gains entropy at least proportional
/// to the squared L1 distance from uniform.
pub fn check_entropy_production(
    graph: &Graph,
    rho: f64,
    sampler: &DistSampler,
    trials: usize,
) -> Result<CheckReport> {
    let structured = vec![
        (Dist::uniform(graph.n()), "structured:pi".to_string()),
        (Dist::delta(graph.n(), 0), "structured:delta_0".to_string()),
    ];
    let mut cases: Vec<(f64, String)> = Vec::with_capacity(structured.len() + trials);
    for (nu, desc) in &structured {
        cases.push((
            entropy_production_margin(graph, rho, nu, ENTROPY_PRODUCTION_CONSTANT)?,
            desc.clone(),
        ));
    }
    let sampled: Result<Vec<(f64, String)>> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let nu = sampler.sample_on_graph(graph, trial);
            let margin = entropy_production_margin(graph, rho, &nu, ENTROPY_PRODUCTION_CONSTANT)?;
            Ok((margin, sampled_desc(sampler, trial)))
        })
        .collect();
    cases.extend(sampled?);
    Ok(CheckReport::collect("entropy_production", trials, cases))
}

/// Permutation-split form of entropy concavity: with nu_i the pushforwards
/// of nu along the d permutations and nu_bar their average (= P nu),
/// `H(nu_bar) - H(nu) >= (1/2) sum_i (1/d) || nu_i^{1/2} - nu_bar^{1/2} ||_2^2`.
/// Each trial also asserts H(nu_i) = H(nu) up to rounding (1e-12); a
/// violation surfaces as a negative margin.
pub fn check_entropy_split_bound(
    graph: &Graph,
    decomp: &PermDecomposition,
    sampler: &DistSampler,
    trials: usize,
) -> Result<CheckReport> {
    let margin_for = |nu: &Dist| -> Result<f64> {
        let d = decomp.count();
        let nu_bar = decomp.average(nu)?;
        let h_nu = walk::entropy(nu);
        let gain = walk::entropy(&nu_bar) - h_nu;
        let mut split = 0.0;
        let mut perm_entropy_dev: f64 = 0.0;
        for i in 0..d {
            let nu_i = decomp.pushforward(i, nu)?;
            split += walk::hellinger_sq(&nu_i, &nu_bar)? / d as f64;
            perm_entropy_dev = perm_entropy_dev.max((walk::entropy(&nu_i) - h_nu).abs());
        }
        if perm_entropy_dev > 1e-12 {
            return Ok(-perm_entropy_dev);
        }
        Ok(gain - 0.5 * split)
    };

    let mut cases = vec![
        (
            margin_for(&Dist::uniform(graph.n()))?,
            "structured:pi".to_string(),
        ),
        (
            margin_for(&Dist::delta(graph.n(), 0))?,
            "structured:delta_0".to_string(),
        ),
    ];
    let sampled: Result<Vec<(f64, String)>> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let nu = sampler.sample_on_graph(graph, trial);
            Ok((margin_for(&nu)?, sampled_desc(sampler, trial)))
        })
        .collect();
    cases.extend(sampled?);
    Ok(CheckReport::collect("entropy_split_bound", trials, cases))
}

/// The permutation matrices of the decomposition sum to the adjacency
/// matrix entrywise (integer equality, margin 0 or -#violations).
pub fn check_permutation_sum(graph: &Graph, decomp: &PermDecomposition) -> CheckReport {
    let mut violations = 0u64;
    for v in 0..graph.n() as u32 {
        let mut images: Vec<u32> = (0..decomp.count())
            .map(|i| decomp.perm(i)[v as usize])
            .collect();
        images.sort_unstable();
        if images != graph.neighbors(v) {
            violations += 1;
        }
    }
    CheckReport {
        name: "permutation_sum_matches_adjacency".into(),
        trials: 0,
        min_margin: if violations == 0 {
            0.0
        } else {
            -(violations as f64)
        },
        worst_case: if violations == 0 {
            "structured:all_vertices".into()
        } else {
            format!("{violations} vertices with mismatched permutation images")
        },
        pass: violations == 0,
    }
}

/// Hellinger/TV comparison on pairs (nu, pi):
/// (a) hell2 <= L1, (b) L1 <= sqrt(hell2) * ||sqrt(nu) + sqrt(pi)||_2,
/// (c) hell2 < 2 - eps implies L1 < 2 - eps^4/128 on the epsilon grid.
pub fn check_hellinger_tv(n: usize, sampler: &DistSampler, trials: usize) -> Result<CheckReport> {
    let pi = Dist::uniform(n);
    let margin_for = |nu: &Dist| -> Result<f64> {
        let l1 = 2.0 * walk::tv_distance(nu, &pi)?;
        let hell2 = walk::hellinger_sq(nu, &pi)?;
        let sum_norm: f64 = nu
            .as_slice()
            .iter()
            .zip(pi.as_slice())
            .map(|(a, b)| {
                let s = a.sqrt() + b.sqrt();
                s * s
            })
            .sum::<f64>()
            .sqrt();
        let mut margin = (l1 - hell2).min(hell2.sqrt() * sum_norm - l1);
        for eps in HELLINGER_EPS_GRID {
            if hell2 < 2.0 - eps {
                margin = margin.min(2.0 - eps.powi(4) / 128.0 - l1);
            }
        }
        Ok(margin)
    };

    let mut cases = vec![
        (margin_for(&pi)?, "structured:pi".to_string()),
        (
            margin_for(&Dist::delta(n, 0))?,
            "structured:delta_0".to_string(),
        ),
    ];
    let sampled: Result<Vec<(f64, String)>> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let nu = sampler.sample_simplex(n, trial);
            Ok((margin_for(&nu)?, sampled_desc(sampler, trial)))
        })
        .collect();
    cases.extend(sampled?);
    Ok(CheckReport::collect(
        &format!("hellinger_tv_bounds[n={n}]"),
        trials,
        cases,
    ))
}

/// Square-root contraction of conditional expectation: for bounded f >= 0
/// and g = E[f | B] on a finite space,
/// `|| g^{1/2} - f^{1/2} ||_2^2 <= 2 ||f||_inf^{1/2} (E g^{1/2} - E f^{1/2})`.
pub fn check_conditional_sqrt(
    max_space: usize,
    max_blocks: usize,
    trials: usize,
    seed: u64,
) -> CheckReport {
    let margin_for = |weights: &[f64], blocks: &[usize], f: &[f64]| -> f64 {
        let n_blocks = blocks.iter().max().map_or(0, |&b| b + 1);
        let mut block_mass = vec![0.0; n_blocks];
        let mut block_int = vec![0.0; n_blocks];
        for ((&w, &b), &fi) in weights.iter().zip(blocks).zip(f) {
            block_mass[b] += w;
            block_int[b] += w * fi;
        }
        let g = |i: usize| {
            let b = blocks[i];
            if block_mass[b] > 0.0 {
                block_int[b] / block_mass[b]
            } else {
                0.0
            }
        };
        let mut lhs = 0.0;
        let mut e_sqrt_g = 0.0;
        let mut e_sqrt_f = 0.0;
        let mut f_max: f64 = 0.0;
        for (i, (&w, &fi)) in weights.iter().zip(f).enumerate() {
            let gi = g(i);
            let diff = gi.sqrt() - fi.sqrt();
            lhs += w * diff * diff;
            e_sqrt_g += w * gi.sqrt();
            e_sqrt_f += w * fi.sqrt();
            f_max = f_max.max(fi);
        }
        2.0 * f_max.sqrt() * (e_sqrt_g - e_sqrt_f) - lhs
    };

    let mut cases = vec![
        (
            // constant f: g = f on any partition, both sides vanish
            margin_for(&[0.25, 0.25, 0.5], &[0, 0, 1], &[0.7, 0.7, 0.7]),
            "structured:constant_f".to_string(),
        ),
        (
            // two-point space, trivial partition, f = (0, 1)
            margin_for(&[0.5, 0.5], &[0, 0], &[0.0, 1.0]),
            "structured:two_point".to_string(),
        ),
    ];
    let sampled: Vec<(f64, String)> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial.wrapping_add(1));
            let size = rng.gen_range(2..=max_space.max(2));
            let n_blocks = rng.gen_range(1..=max_blocks.min(size).max(1));
            let raw: Vec<f64> = (0..size).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let total: f64 = raw.iter().sum();
            let weights: Vec<f64> = raw.into_iter().map(|x| x / total).collect();
            let blocks: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n_blocks)).collect();
            let f: Vec<f64> = (0..size)
                .map(|_| {
                    if rng.gen::<f64>() < 0.2 {
                        0.0
                    } else {
                        rng.gen::<f64>() * 4.0
                    }
                })
                .collect();
            (
                margin_for(&weights, &blocks, &f),
                format!("sampled:seed={seed},trial={trial}"),
            )
        })
        .collect();
    cases.extend(sampled);
    CheckReport::collect("conditional_sqrt_contraction", trials, cases)
}

/// Hard bounds on the step-ratio statistics along an evolution:
/// `min f_t >= 1/d`, `E[f_t] <= 1`, and `1 - E[f_t] <= ((d-1)/d)^{t-1}`.
pub fn check_f_bounds(graph: &Graph, start: u32, t_max: usize) -> Result<CheckReport> {
    let d = graph.d() as f64;
    let mut walker = walk::Walker::new(graph, start)?;
    let mut prev = walker.current().clone();
    let mut cases = Vec::with_capacity(3 * t_max);
    for t in 1..=t_max {
        walker.step()?;
        let s = walk::f_stats(graph, &prev, walker.current())?;
        cases.push((s.min_f - 1.0 / d, format!("min_f at t={t}")));
        cases.push((1.0 - s.e_f, format!("e_f at t={t}")));
        let deficit_bound = ((d - 1.0) / d).powi(t as i32 - 1);
        cases.push((
            deficit_bound - (1.0 - s.e_f),
            format!("e_f deficit at t={t}"),
        ));
        prev = walker.current().clone();
    }
    Ok(CheckReport::collect("f_ratio_bounds", 0, cases))
}

/// On declared vertex-transitive graphs the entropy increments
/// H(t) - H(t-1) are non-increasing. Refuses graphs without the
/// declaration: the claim is not made in general.
pub fn check_transitive_concavity(
    graph: &Graph,
    declared_transitive: bool,
    start: u32,
    t_max: usize,
) -> Result<CheckReport> {
    if !declared_transitive {
        return Err(Error::InvalidParameter(
            "concavity of entropy is only claimed for vertex-transitive graphs; refusing an undeclared input".into(),
        ));
    }
    let mut walker = walk::Walker::new(graph, start)?;
    let mut h_prev = walk::entropy(walker.current());
    let mut last_inc: Option<f64> = None;
    let mut cases = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        walker.step()?;
        let h = walk::entropy(walker.current());
        let inc = h - h_prev;
        if let Some(prev_inc) = last_inc {
            cases.push((prev_inc - inc, format!("increment step t={t}")));
        }
        last_inc = Some(inc);
        h_prev = h;
    }
    Ok(CheckReport::collect(
        "transitive_entropy_concavity",
        0,
        cases,
    ))
}

/// Configuration of the full verification sweep.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Include the LPS(5,29) fixture (a few seconds of construction).
    pub include_lps: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 7,
            include_lps: true,
        }
    }
}

/// Runs every check over the standard fixture set; the per-fixture report
/// names carry the fixture label.
pub fn run_full_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let mut fixtures: Vec<(String, Graph, bool)> = vec![
        (
            "k4".into(),
            generators::named_fixture(&Fixture::Complete(4))?,
            true,
        ),
        (
            "petersen".into(),
            generators::named_fixture(&Fixture::Petersen)?,
            true,
        ),
        (
            format!("random(100,3,seed={})", cfg.seed),
            generators::random_regular(&RandomRegularParams::new(100, 3, cfg.seed))?,
            false,
        ),
    ];
    if cfg.include_lps {
        fixtures.push((
            "lps(5,29)".into(),
            generators::lps_graph(&LpsParams { p: 5, q: 29 })?.graph,
            true,
        ));
    }

    let mut reports = Vec::new();
    for (label, graph, transitive) in &fixtures {
        let rho = spectral::spectral_report(graph, spectral::DEFAULT_TOL, MethodHint::Auto)?.rho;
        let sampler = DistSampler::new(SampleMode::UniformSimplex, cfg.seed);
        let near_delta = DistSampler::new(SampleMode::SparseDeltaMix, cfg.seed ^ 0xa5a5);
        let snapshot = DistSampler::new(SampleMode::WalkSnapshot, cfg.seed ^ 0x0f0f);

        let mut tagged = |mut r: CheckReport, suffix: &str| {
            r.name = format!("{}{suffix}[{label}]", r.name);
            reports.push(r);
        };
        tagged(
            check_entropy_production(graph, rho, &sampler, cfg.trials)?,
            "",
        );
        tagged(
            check_entropy_production(graph, rho, &near_delta, cfg.trials / 2)?,
            "[near_delta]",
        );
        tagged(
            check_entropy_production(graph, rho, &snapshot, cfg.trials / 4)?,
            "[walk_snapshot]",
        );
        let decomp = decompose_permutations(graph)?;
        tagged(check_permutation_sum(graph, &decomp), "");
        tagged(
            check_entropy_split_bound(graph, &decomp, &sampler, cfg.trials / 2)?,
            "",
        );
        tagged(check_f_bounds(graph, 0, 20)?, "");
        if *transitive {
            tagged(check_transitive_concavity(graph, true, 0, 30)?, "");
        }
    }
    for n in [5usize, 50, 500] {
        let sampler = DistSampler::new(SampleMode::UniformSimplex, cfg.seed);
        reports.push(check_hellinger_tv(n, &sampler, cfg.trials)?);
        let near_delta = DistSampler::new(SampleMode::SparseDeltaMix, cfg.seed ^ 0x5a5a);
        let mut r = check_hellinger_tv(n, &near_delta, cfg.trials / 2)?;
        r.name = format!("{}[near_delta]", r.name);
        reports.push(r);
    }
    reports.push(check_conditional_sqrt(64, 8, cfg.trials, cfg.seed));
    Ok(reports)
}

/// Latitude for consumers: true iff every report passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Scenario from the direct high-entropy mixing argument: any measure with
/// H(nu) > (1 - delta) log n mixes to within 4 sqrt(delta) in L1 after
/// about sqrt(delta) log n / (-2 log rho) steps. Returns the L1 distances
/// after k steps for a family of structured high-entropy measures.
pub fn high_entropy_mixing_scenario(
    graph: &Graph,
    rho: f64,
    delta: f64,
    seed: u64,
) -> Result<Vec<(String, f64)>> {
    let n = graph.n();
    let log_n = (n as f64).ln();
    let k = (delta.sqrt() * log_n / (-2.0 * rho.ln())).ceil() as usize;
    let pi = Dist::uniform(n);

    let mut measures: Vec<(String, Dist)> = Vec::new();
    // uniform on a subset of size ~ n^{1 - delta/2}: entropy (1 - delta/2) log n
    let size = ((n as f64).powf(1.0 - delta / 2.0).ceil() as usize).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<u32> = (0..n as u32).collect();
    for i in 0..size {
        let j = rng.gen_range(i..n);
        ids.swap(i, j);
    }
    let mut mass = vec![0.0; n];
    for &v in &ids[..size] {
        mass[v as usize] = 1.0 / size as f64;
    }
    measures.push((format!("uniform_on_{size}"), Dist::new(mass)?));
    // full uniform background with a point spike of weight delta/2 — the
    // heaviest point mass the entropy premise leaves room for is ~delta
    let spike = delta / 2.0;
    let mut mass = vec![(1.0 - spike) / n as f64; n];
    mass[ids[0] as usize] += spike;
    measures.push((format!("spiked_pi_weight_{spike}"), Dist::new(mass)?));

    let mut out = Vec::new();
    for (label, nu) in measures {
        let h = walk::entropy(&nu);
        if h <= (1.0 - delta) * log_n {
            return Err(Error::Internal(format!(
                "scenario measure {label} has entropy {h} <= (1-delta) log n"
            )));
        }
        let mut cur = nu;
        for _ in 0..k {
            cur = graph.apply_p(&cur)?;
        }
        out.push((label, 2.0 * walk::tv_distance(&cur, &pi)?));
    }
    Ok(out)
}
