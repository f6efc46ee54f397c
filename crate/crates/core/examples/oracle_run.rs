//! Pre-release oracle run: computes the family-level quantities whose
//! frozen values the acceptance suite asserts. Slow-ish; run once per
//! release with `cargo run --release -p cutoff-core --example oracle_run`.

use std::time::Instant;

use cutoff_core::analysis::{cutoff_scan, smb_concentration, FamilyMember, ScanConfig};
use cutoff_core::generators::{lps_graph, named_fixture, Fixture, LpsParams};
use cutoff_core::spectral::{
    folded_dense_report, iterative_report, rho_d, LanczosOptions, DEFAULT_TOL,
};
use cutoff_core::tree::tree_f_stats_at;
use cutoff_core::walk::{self, h_d};

fn main() {
    let t0 = Instant::now();

    println!("== tree limits (d, t, gap_sqrt, gap_log) ==");
    for d in [3usize, 6] {
        for t in [100usize, 1000] {
            let s = tree_f_stats_at(d, t);
            println!(
                "d={d} t={t}: e_sqrt={:.17} gap_sqrt={:.6e} e_neg_log={:.17} gap_log={:.6e}",
                s.e_sqrt_f,
                (s.e_sqrt_f - rho_d(d)).abs(),
                s.e_neg_log_f,
                (s.e_neg_log_f - h_d(d)).abs()
            );
        }
    }

    println!("== LPS family ==");
    let mut builds = Vec::new();
    for q in [29u64, 41, 61, 89] {
        let t = Instant::now();
        let built = lps_graph(&LpsParams { p: 5, q }).unwrap();
        println!(
            "lps(5,{q}): n={} built in {:.1?}, girth={}",
            built.graph.n(),
            t.elapsed(),
            built.graph.girth_transitive()
        );
        builds.push((q, built));
    }

    println!("== spectra ==");
    for (q, built) in &builds {
        let t = Instant::now();
        let iter = iterative_report(&built.graph, DEFAULT_TOL, &LanczosOptions::default()).unwrap();
        let t_iter = t.elapsed();
        print!(
            "lps(5,{q}): iterative rho={:.12} l2={:.12} lmin={:.12} ({t_iter:.1?})",
            iter.rho, iter.lambda2, iter.lambda_min
        );
        if *q <= 29 {
            let t = Instant::now();
            let folded =
                folded_dense_report(&built.graph, &built.unipotent_shift, DEFAULT_TOL).unwrap();
            print!(
                " | folded rho={:.12} diff={:.3e} ({:.1?})",
                folded.rho,
                (folded.rho - iter.rho).abs(),
                t.elapsed()
            );
        }
        println!(
            " | rho_d + 1e-6 = {:.12} ok={}",
            rho_d(6) + 1e-6,
            iter.rho <= rho_d(6) + 1e-6
        );
    }

    println!("== cutoff scan (LPS) ==");
    let t = Instant::now();
    let members: Vec<FamilyMember> = builds
        .iter()
        .map(|(q, b)| FamilyMember {
            label: format!("lps(5,{q})"),
            graph: &b.graph,
            transitive: true,
            rho: rho_d(6), // good to 1e-6 for these, only used for the step cap
        })
        .collect();
    let scan = cutoff_scan(&members, &ScanConfig::default()).unwrap();
    println!("scan in {:.1?}", t.elapsed());
    for row in &scan.rows {
        println!(
            "{}: n={} t_mix={:?} t_mix2={:?} h_at_mix={:?}",
            row.label, row.n, row.t_mix, row.t_mix2, row.h_at_mix
        );
        println!("   normalized={:?}", row.normalized_time);
    }

    println!("== circulant contrast family ==");
    let circulants: Vec<(String, _)> = [64usize, 128, 256]
        .iter()
        .map(|&n| {
            (
                format!("circulant({n})"),
                named_fixture(&Fixture::Circulant {
                    n,
                    offsets: vec![1, 2, 3],
                })
                .unwrap(),
            )
        })
        .collect();
    let members: Vec<FamilyMember> = circulants
        .iter()
        .map(|(label, g)| {
            let rho = cutoff_core::spectral::spectral_report(
                g,
                DEFAULT_TOL,
                cutoff_core::spectral::MethodHint::Dense,
            )
            .unwrap()
            .rho;
            FamilyMember {
                label: label.clone(),
                graph: g,
                transitive: true,
                rho,
            }
        })
        .collect();
    let circ_scan = cutoff_scan(&members, &ScanConfig::default()).unwrap();
    for row in &circ_scan.rows {
        println!(
            "{}: n={} rho={:.6} t_mix={:?} normalized={:?}",
            row.label, row.n, row.rho, row.t_mix, row.normalized_time
        );
    }

    println!("== smb concentration on lps(5,29) ==");
    let g29 = &builds[0].1.graph;
    let cap = walk::default_step_cap(g29.n(), 6, rho_d(6), 0.5);
    let t_half = walk::mixing_time_tv(g29, 0, 0.5, cap).unwrap();
    let smb = smb_concentration(g29, 0, t_half, 0.1, 0.1).unwrap();
    println!(
        "t_mix(0.5)={t_half} smb mass={:.12} radius={} pass={}",
        smb.mass, smb.radius, smb.pass
    );

    println!("== girth window (lps(5,29)) ==");
    let girth = g29.girth_transitive();
    let mut prev = walk::evolve(g29, 0, 0).unwrap();
    for t in 1..=(girth - 1) / 2 {
        let cur = g29.apply_p(&prev).unwrap();
        let s = walk::f_stats(g29, &prev, &cur).unwrap();
        let tree_s = tree_f_stats_at(6, t);
        println!(
            "t={t}: graph e_sqrt={:.17} tree e_sqrt={:.17} diff={:.3e}",
            s.e_sqrt_f,
            tree_s.e_sqrt_f,
            (s.e_sqrt_f - tree_s.e_sqrt_f).abs()
        );
        prev = cur;
    }

    println!("total {:.1?}", t0.elapsed());
}
