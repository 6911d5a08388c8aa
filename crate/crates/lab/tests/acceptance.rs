//! Acceptance checks at their pinned tolerances.
//!
//! Runs without the libtest harness so every check prints exactly one
//! `PASS`/`FAIL` line. The process exits non-zero if any check fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use entrotter_core::bounds::{resource_rows, standard_bound, BoundConstants, C_GROWTH};
use entrotter_core::dense::{
    commutator_action, contiguous_entropies, state_distance, DenseState, ProductPattern, SpectralPropagator,
};
use entrotter_core::hamiltonian::{build_all_to_all_ising, build_heisenberg, build_tfim, HamiltonianModel};
use entrotter_core::mps::MpsState;
use entrotter_core::stats::log_log_fit;
use entrotter_core::trotter::{build_plan, execute, measure_error, order_scaling_fit, Ordering};
use entrotter_lab::output::write_result;
use entrotter_lab::record::load_csv;
use entrotter_lab::states::{controlled_entropy_state, scan_commutators};
use entrotter_lab::{run, ExperimentConfig, ExperimentKind, RunOptions};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn pick(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> u64 {
    lo + rng.next_u64() % (hi - lo + 1)
}

fn random_chain(rng: &mut ChaCha8Rng, n: usize) -> HamiltonianModel {
    let j = uniform(rng, 0.2, 2.0);
    if rng.next_u32() & 1 == 0 {
        build_tfim(n, j, uniform(rng, 0.0, 3.0)).unwrap()
    } else {
        build_heisenberg(n, j).unwrap()
    }
}

fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> ProductPattern {
    ProductPattern::Bits((0..n).map(|_| (rng.next_u32() & 1) as u8).collect())
}

fn random_ordering(rng: &mut ChaCha8Rng) -> Ordering {
    if rng.next_u32() & 1 == 0 {
        Ordering::Forward
    } else {
        Ordering::EvenOdd
    }
}

fn order_scaling() -> Outcome {
    let h = build_tfim(6, 1.0, 2.5).unwrap();
    let psi = DenseState::from_product(6, &ProductPattern::Zeros).unwrap();
    let taus: Vec<f64> = (4..=10).map(|k| 0.5f64.powi(k)).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for (p, want, tol) in [(1, 2.0, 0.15), (2, 3.0, 0.2), (4, 5.0, 0.4)] {
        let fit = order_scaling_fit(&h, &psi, p, &taus, Ordering::Forward).unwrap();
        match fit.slope() {
            Some(s) => {
                pass &= (s - want).abs() <= tol;
                parts.push(format!("p={p} slope {s:.3} (want {want} ± {tol})"));
            }
            None => {
                pass = false;
                parts.push(format!("p={p} degenerate"));
            }
        }
    }
    outcome(pass, parts.join(", "))
}

fn worst_case_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let consts = BoundConstants::default();
    let mut violations = 0;
    let mut max_ratio = 0.0f64;
    for _ in 0..100 {
        let n = pick(&mut rng, 2, 8) as usize;
        let model = random_chain(&mut rng, n);
        let t = uniform(&mut rng, 0.05, 1.0);
        let r = pick(&mut rng, 4, 64);
        let p = pick(&mut rng, 1, 2) as u32;
        let ordering = random_ordering(&mut rng);
        let psi = DenseState::from_product(n, &random_bits(&mut rng, n)).unwrap();
        let err = measure_error(&model, &psi, p, t, r, ordering).unwrap().error;
        let meta = model.metadata();
        let bound = standard_bound(meta.term_count, meta.max_norm, t, r, p, &consts).unwrap();
        max_ratio = max_ratio.max(err / bound);
        if err > bound {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("100 instances, {violations} violations, max error/bound {max_ratio:.2e}"))
}

fn commutator_entropy() -> Outcome {
    let mut pairs = 0;
    let mut violations = 0;
    let mut max_ratio = 0.0f64;
    let mut root_violations = 0;
    let mut worst_root = 0.0f64;
    for k in 0..200usize {
        let n = if k % 2 == 0 { 8 } else { 6 };
        let cut = n / 2;
        let psi = controlled_entropy_state(n, cut, (k / 2) % (cut + 1), 1000 + k as u64).unwrap();
        let scan = scan_commutators(&psi, cut).unwrap();
        pairs += scan.pairs;
        violations += scan.violations;
        max_ratio = max_ratio.max(scan.max_ratio);
        // claimed: Σ√λ ≤ 2^{S/2}
        let lhs = scan.spectrum.root_sum();
        let rhs = (scan.entropy / 2.0).exp2();
        worst_root = worst_root.max(lhs / rhs);
        if lhs > rhs * (1.0 + 1e-9) {
            root_violations += 1;
        }
    }
    outcome(
        violations == 0 && root_violations == 0,
        format!(
            "{pairs} pairs on 200 states: {violations} commutator violations (max ratio {max_ratio:.3}); \
             root-sum claim fails on {root_violations}/200 spectra (max Σ√λ/2^(S/2) = {worst_root:.4})"
        ),
    )
}

fn entanglement_growth() -> Outcome {
    let delta = 1e-3;
    let steps = 2000;
    let mut checks = 0usize;
    let mut violations = 0usize;
    let mut worst = 0.0f64;
    for n in [4usize, 6, 8, 10] {
        for field in [1.0, 2.5] {
            let model = build_tfim(n, 1.0, field).unwrap();
            let j = model.metadata().max_norm;
            // contiguous cuts on a chain have one boundary bond
            let limit = C_GROWTH * j;
            let prop = SpectralPropagator::new(&model).unwrap();
            for pattern in [ProductPattern::Zeros, ProductPattern::Plus] {
                let coeffs = prop.project(&DenseState::from_product(n, &pattern).unwrap()).unwrap();
                let mut prev = contiguous_entropies(&prop.evolve_projected(&coeffs, 0.0)).unwrap();
                for k in 1..=steps {
                    let cur = contiguous_entropies(&prop.evolve_projected(&coeffs, k as f64 * delta)).unwrap();
                    for (a, b) in prev.iter().zip(&cur) {
                        let rate = (b - a).abs() / delta;
                        worst = worst.max(rate / limit);
                        checks += 1;
                        if rate > limit {
                            violations += 1;
                        }
                    }
                    prev = cur;
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{checks} finite differences, {violations} violations, max rate/bound {worst:.3}"),
    )
}

fn lower_bound_construction() -> Outcome {
    let h = 1.0;
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [4usize, 6, 8] {
        let model = build_all_to_all_ising(n, h).unwrap();
        let psi = DenseState::from_product(n, &ProductPattern::Plus).unwrap();
        let v = commutator_action(&psi, model.block("zz"), model.block("x")).unwrap();
        let measured: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let predicted = 4.0 * h * h * (n - 1) as f64;
        let ok = (measured - predicted).abs() <= 1e-9;
        pass &= ok;
        parts.push(format!("n={n} ‖[H_ZZ,H_X]|+⟩‖² = {measured:.6} vs 4h²(n−1) = {predicted}"));
    }
    let ns = [6usize, 8, 10, 12];
    let errors: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let model = build_all_to_all_ising(n, h).unwrap();
            let psi = DenseState::from_product(n, &ProductPattern::Plus).unwrap();
            measure_error(&model, &psi, 1, 1.0, 32, Ordering::Forward).unwrap().error
        })
        .collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let slope = log_log_fit(&xs, &errors).unwrap().slope;
    let slope_ok = (slope - 1.0).abs() <= 0.25;
    pass &= slope_ok;
    parts.push(format!("error slope in n {slope:.3} (want 1.0 ± 0.25)"));
    outcome(pass, parts.join("; "))
}

fn area_law_flatness() -> Outcome {
    let ns = [6usize, 8, 10, 12];
    let mut errors = Vec::new();
    let mut worst_mps = 0.0f64;
    // the default cutoff adds its own truncation on top of the χ cap; report it separately
    let mut worst_default = 0.0f64;
    let mut worst_estimate = 0.0f64;
    for &n in &ns {
        let model = build_tfim(n, 1.0, 2.5).unwrap();
        let psi = DenseState::from_product(n, &ProductPattern::Zeros).unwrap();
        errors.push(measure_error(&model, &psi, 1, 1.0, 20, Ordering::EvenOdd).unwrap().error);
        let plan = build_plan(&model, 1, 1.0, 20, Ordering::EvenOdd).unwrap();
        let dense = execute(&plan, &model, &psi).unwrap();
        let start = MpsState::from_product(n, &ProductPattern::Zeros, 16).unwrap();
        let capped = execute(&plan, &model, &start.clone().with_cutoff(0.0)).unwrap();
        worst_mps = worst_mps.max(state_distance(&capped.to_dense().unwrap(), &dense).unwrap());
        let default = execute(&plan, &model, &start).unwrap();
        worst_default = worst_default.max(state_distance(&default.to_dense().unwrap(), &dense).unwrap());
        worst_estimate = worst_estimate.max(default.cum_discarded().sqrt());
    }
    let hi = errors.iter().cloned().fold(f64::MIN, f64::max);
    let lo = errors.iter().cloned().fold(f64::MAX, f64::min);
    let spread = hi / lo;
    outcome(
        spread < 2.0 && worst_mps < 1e-6,
        format!(
            "errors {:?}, max/min {spread:.3} (want < 2); MPS χ=16 vs dense max distance {worst_mps:.2e} (want < 1e-6); \
             with default cutoff {worst_default:.2e} (√Σdiscarded {worst_estimate:.2e})",
            errors.iter().map(|e| format!("{e:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn mps_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = pick(&mut rng, 2, 10) as usize;
        let model = random_chain(&mut rng, n);
        let p = [1, 2, 4][pick(&mut rng, 0, 2) as usize];
        let r = pick(&mut rng, 1, 6);
        let t = uniform(&mut rng, 0.1, 1.5);
        let ordering = random_ordering(&mut rng);
        let pattern = random_bits(&mut rng, n);
        let plan = build_plan(&model, p, t, r, ordering).unwrap();
        let dense = execute(&plan, &model, &DenseState::from_product(n, &pattern).unwrap()).unwrap();
        let chi = 1usize << (n / 2);
        let mps0 = MpsState::from_product(n, &pattern, chi).unwrap().with_cutoff(0.0);
        let mps = execute(&plan, &model, &mps0).unwrap();
        worst = worst.max(state_distance(&mps.to_dense().unwrap(), &dense).unwrap());
    }
    outcome(worst < 1e-8, format!("50 circuits, max distance {worst:.2e} (want < 1e-8)"))
}

fn resource_table() -> Outcome {
    let rows = resource_rows(1.0);
    let mut pass = true;
    let parts: Vec<String> = rows
        .iter()
        .map(|r| {
            let f = (r.improvement / r.published).max(r.published / r.improvement);
            let ok = f <= 2.0;
            pass &= ok;
            format!(
                "{} n={} ×{:.1} vs ×{} ({})",
                r.geometry.name(),
                r.n,
                r.improvement,
                r.published,
                if ok { "ok" } else { "off by more than 2" }
            )
        })
        .collect();
    outcome(pass, parts.join("; "))
}

fn validation_figure() -> Outcome {
    let cfg = ExperimentConfig::defaults(ExperimentKind::Validate);
    let result = run(&cfg, RunOptions::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_result(&result, &cfg, dir.path(), true, false).unwrap();
    let mut missing = Vec::new();
    for panel in ["a", "b", "c", "d"] {
        for ext in ["csv", "svg"] {
            let f = format!("panel_{panel}.{ext}");
            if !dir.path().join(&f).exists() {
                missing.push(f);
            }
        }
    }
    let a = load_csv(&dir.path().join("panel_a.csv")).unwrap();
    let area: Vec<(usize, f64)> = a
        .iter()
        .filter(|r| r.curve_provenance == "measured")
        .map(|r| (r.n, r.s_max_initial.unwrap()))
        .collect();
    let area_ok = !area.is_empty() && area.iter().all(|&(_, s)| s < 1.0);
    let d = load_csv(&dir.path().join("panel_d.csv")).unwrap();
    let ratios: Vec<f64> = d.iter().map(|r| r.improvement.unwrap()).collect();
    let monotone = ratios.len() == cfg.n.len() && ratios.windows(2).all(|w| w[1] > w[0]);
    let c = load_csv(&dir.path().join("panel_c.csv")).unwrap();
    let measured: Vec<_> = c.iter().filter(|r| r.error.is_some()).collect();
    let unsound = measured
        .iter()
        .filter(|r| r.error.unwrap() > r.bound_ent_first.unwrap())
        .count();
    outcome(
        missing.is_empty() && area_ok && monotone,
        format!(
            "missing files {missing:?}; S_max {:?}; ratios {:?}; ent-bound soundness: {unsound}/{} measured runs exceed ent_bound_first (reported only)",
            area.iter().map(|(n, s)| format!("{n}:{s:.3}")).collect::<Vec<_>>(),
            ratios.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>(),
            measured.len()
        ),
    )
}

type Check = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let checks: [Check; 9] = [
        ("order scaling", order_scaling, Duration::from_secs(60)),
        ("worst-case soundness", worst_case_soundness, Duration::from_secs(300)),
        ("commutator-entropy inequality", commutator_entropy, Duration::from_secs(300)),
        ("entanglement growth", entanglement_growth, Duration::from_secs(300)),
        ("lower-bound construction", lower_bound_construction, Duration::from_secs(600)),
        ("area-law flatness", area_law_flatness, Duration::from_secs(600)),
        ("MPS backend equivalence", mps_equivalence, Duration::from_secs(300)),
        ("resource table", resource_table, Duration::from_secs(1)),
        ("validation figure", validation_figure, Duration::from_secs(900)),
    ];
    // `cargo test -- <filter>` runs matching checks only
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check, limit)) in checks.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || id.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= *limit, o.detail),
            Err(_) => (false, "panicked".to_string()),
        };
        let timing = if elapsed <= *limit { "" } else { " [over time limit]" };
        println!(
            "criterion {id} {name}: {} ({:.1}s / {}s){timing}: {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
