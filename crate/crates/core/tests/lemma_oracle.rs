//! Randomized agreement between the closed-form active-count optimizer
//! and the exhaustive integer search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ris_core::optimize::{aris_count_bounds, brute_force_optimal_aris, lemma1_optimal_aris};
use ris_core::{LinkGains, PowerBudget};

struct Draw {
    gains: LinkGains,
    budget: PowerBudget,
}

fn draw(rng: &mut ChaCha8Rng) -> Draw {
    let log_unif = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| 10f64.powf(rng.random_range(lo..hi));
    let gains = LinkGains::new(
        log_unif(rng, -9.0, -5.0),
        log_unif(rng, -9.0, -5.0),
        log_unif(rng, -9.0, -5.0),
        log_unif(rng, -1.0, 2.5),
        log_unif(rng, -13.0, -10.0),
    )
    .unwrap();
    // Size the per-element costs so the feasible count stays enumerable.
    let total = log_unif(rng, -2.0, 0.0);
    let n_target: f64 = rng.random_range(2.0..3000.0);
    let split: f64 = rng.random_range(0.2..0.8);
    let per_element = total / n_target;
    let budget = PowerBudget::total(
        total,
        split * per_element,
        (1.0 - split) * per_element,
        rng.random_range(0.2..1.0),
        log_unif(rng, 0.25, 3.0),
    )
    .unwrap();
    Draw { gains, budget }
}

#[test]
fn closed_form_candidates_contain_exhaustive_argmax() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e44a);
    for case in 0..100 {
        let Draw { gains, budget } = draw(&mut rng);
        let brute = brute_force_optimal_aris(&gains, &budget, 400).unwrap();
        let lemma = lemma1_optimal_aris(&gains, &budget, 400).unwrap();
        let (n_a1, n_a2) = aris_count_bounds(&gains, &budget).unwrap();
        let n_star = n_a1.max(n_a2);
        let floor = n_star.floor();
        let ceil = n_star.ceil();
        let n_max = (budget.budget_watts / (budget.p_e + budget.p_dc)).floor();
        let in_candidates = |n: f64| {
            let clamped_floor = floor.clamp(1.0, n_max);
            let clamped_ceil = ceil.clamp(1.0, n_max);
            n == clamped_floor || n == clamped_ceil
        };
        assert!(
            in_candidates(brute.best_count as f64),
            "case {case}: argmax {} outside candidates {{{floor}, {ceil}}} (n_max {n_max})",
            brute.best_count,
        );
        let rel = (lemma.best_snr - brute.best_snr).abs() / brute.best_snr;
        assert!(
            rel < 1e-9,
            "case {case}: SNR mismatch, lemma {} vs brute {} (rel {rel})",
            lemma.best_snr,
            brute.best_snr,
        );
        assert_eq!(
            lemma.best_count, brute.best_count,
            "case {case}: count mismatch"
        );
    }
}

#[test]
fn brute_force_sweep_is_unimodal() {
    // The SNR over the count axis rises to the optimum and falls after it.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0551);
    for _ in 0..20 {
        let Draw { gains, budget } = draw(&mut rng);
        let report = brute_force_optimal_aris(&gains, &budget, 400).unwrap();
        let n_max = (budget.budget_watts / (budget.p_e + budget.p_dc)).floor() as usize;
        let snr_at = |n_a: usize| {
            let sc = ris_core::RisScenario::aris(400, n_a, 1.0).unwrap();
            let beta = ris_core::ris::select_beta(&sc, &gains, &budget).unwrap();
            ris_core::ris::snr_closed_form(&sc.with_beta(beta), &gains)
        };
        let mut last = 0.0;
        for n in 1..=report.best_count {
            let s = snr_at(n);
            assert!(s >= last * (1.0 - 1e-12));
            last = s;
        }
        for n in report.best_count + 1..=n_max {
            let s = snr_at(n);
            assert!(s <= last * (1.0 + 1e-12));
            last = s;
        }
    }
}
