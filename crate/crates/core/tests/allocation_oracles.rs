//! Closed-form provider optimum against brute-force oracles.

mod common;

use coinvest_core::utility::{
    contribution_objective, horizon_revenue, optimal_allocation_single, search_upper_bound,
    Maximizer,
};
use coinvest_core::{Coalition, GameInstance, MarketParams};
use common::*;
use proptest::prelude::*;

/// Best value of `f` on `{0, step, 2 step, ...} ∩ [0, hi]`.
fn grid_max(f: impl Fn(f64) -> f64, hi: f64, step: f64) -> (f64, f64) {
    let points = (hi / step).floor() as usize;
    (0..=points)
        .map(|k| {
            let h = k as f64 * step;
            (h, f(h))
        })
        .fold((0.0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

#[test]
fn same_type_reference_provider_matches_frozen_values() {
    // beta = d / (D T), L = 1e6; frozen from a 30-digit evaluation
    let market = MarketParams::default();
    let sp = flat_sp(&market, market.price_per_slot(), 1e6);
    let cf = optimal_allocation_single(&sp, &market, Maximizer::ClosedForm);
    assert!((cf.h_star - 2_343.407_087_514_300_8).abs() < 1e-9);
    assert!((cf.value - 353.662_978_957_618_3).abs() < 1e-9);

    let (h_grid, m_grid) = grid_max(|h| contribution_objective(&sp, &market, h), 20_000.0, 1.0);
    assert!((cf.h_star - h_grid).abs() <= 1.0);
    assert!((cf.value - m_grid).abs() <= 1e-6 * cf.value);
}

#[test]
fn inactive_provider_never_beats_zero_on_grid() {
    let market = MarketParams::default();
    // activation ratio xi L / T = 0.9
    let sp = flat_sp(&market, market.price_per_slot(), 0.9 * 96.0 / market.xi());
    let cf = optimal_allocation_single(&sp, &market, Maximizer::ClosedForm);
    assert_eq!((cf.h_star, cf.value), (0.0, 0.0));
    let hi = search_upper_bound(&sp, &market);
    let (h, v) = grid_max(|h| contribution_objective(&sp, &market, h), hi, hi / 1e5);
    assert_eq!(h, 0.0);
    assert!(v <= 0.0);
}

#[test]
fn two_provider_coalition_matches_joint_brute_force() {
    // maximize D sum_i sum_t u_i - d C with C = h1 + h2 over an (h1, h2) grid
    let market = MarketParams::default();
    let p = market.price_per_slot();
    let cases = [
        (1.0, 3e6, 2.0, 5e5),
        (0.5, 8e6, 3.0, 2e6),
        (4.0, 1e5, 0.0, 1e7),
    ];
    for (b1, l1, b2, l2) in cases {
        let sps = vec![flat_sp(&market, b1 * p, l1), flat_sp(&market, b2 * p, l2)];
        let game = GameInstance::new(market, sps.clone()).unwrap();
        let hi = sps
            .iter()
            .map(|s| search_upper_bound(s, &market))
            .fold(0.0, f64::max);
        let cells = 1500;
        let step = hi / cells as f64;
        let rev: Vec<Vec<f64>> = sps
            .iter()
            .map(|s| {
                (0..=cells)
                    .map(|k| horizon_revenue(s, &market, k as f64 * step))
                    .collect()
            })
            .collect();
        let mut best = f64::NEG_INFINITY;
        for a in 0..=cells {
            for b in 0..=cells {
                let capacity = (a + b) as f64 * step;
                let v = rev[0][a] + rev[1][b] - market.capex_price() * capacity;
                best = best.max(v);
            }
        }
        let v = game
            .coalition_value(Coalition::from_indices([0, 1, 2]))
            .unwrap();
        // slopes are bounded by D xi beta L + d
        let lipschitz: f64 = sps
            .iter()
            .map(|s| {
                market.days() * market.xi() * s.beta * s.load.daily_total() + market.capex_price()
            })
            .sum();
        assert!(
            best <= v + 1e-9 * v.max(1.0),
            "grid {best} beats optimum {v}"
        );
        assert!(
            v - best <= lipschitz * step,
            "gap {} > {}",
            v - best,
            lipschitz * step
        );
    }
}

#[test]
fn scale_shifts_optimum_by_log_factor() {
    let market = MarketParams::default();
    let sp = flat_sp(&market, market.price_per_slot(), 3e6);
    let h = optimal_allocation_single(&sp, &market, Maximizer::ClosedForm).h_star;
    for k in [1.5, 2.0, 10.0] {
        let scaled =
            coinvest_core::ServiceProvider::new("k", sp.beta, sp.load.scaled(k).unwrap()).unwrap();
        let hk = optimal_allocation_single(&scaled, &market, Maximizer::ClosedForm).h_star;
        assert!((hk - h - f64::ln(k) / market.xi()).abs() < 1e-8 * hk);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closed_form_and_golden_section_agree(p in sp_params(), d in 0.005..0.5f64, xi_exp in -4.0..-2.0f64) {
        let market = MarketParams::new(d, 1, 96, 10f64.powf(xi_exp)).unwrap();
        let sp = build_sp(&market, &p, 0);
        let cf = optimal_allocation_single(&sp, &market, Maximizer::ClosedForm);
        let gs = optimal_allocation_single(&sp, &market, Maximizer::GoldenSection);
        prop_assert!((cf.h_star - gs.h_star).abs() <= 1e-6 * cf.h_star.max(1.0),
            "h: {} vs {}", cf.h_star, gs.h_star);
        prop_assert!((cf.value - gs.value).abs() <= 1e-9 * cf.value.max(1.0),
            "m: {} vs {}", cf.value, gs.value);
    }

    #[test]
    fn numeric_optimum_is_locally_maximal(p in sp_params()) {
        let market = MarketParams::default();
        let sp = build_sp(&market, &p, 0);
        let gs = optimal_allocation_single(&sp, &market, Maximizer::GoldenSection);
        let delta = 1e-6 * gs.h_star.max(1.0);
        let at = |h: f64| contribution_objective(&sp, &market, h);
        prop_assert!(gs.value >= 0.0);
        prop_assert!(at(gs.h_star) >= at(gs.h_star + delta) - 1e-12 * gs.value.max(1.0));
        if gs.h_star >= delta {
            prop_assert!(at(gs.h_star) >= at(gs.h_star - delta) - 1e-12 * gs.value.max(1.0));
        }
    }

    #[test]
    fn utility_bounded_monotone_concave(beta in 0.0..10.0f64, xi in 1e-4..1.0f64, load in 0.0..1e6f64, h in 0.0..1e4f64, dh in 1e-3..10.0f64) {
        use coinvest_core::eval_utility;
        let u0 = eval_utility(beta, xi, load, h).unwrap();
        let u1 = eval_utility(beta, xi, load, h + dh).unwrap();
        let u2 = eval_utility(beta, xi, load, h + 2.0 * dh).unwrap();
        prop_assert!(u0 >= 0.0 && u2 <= beta * load * (1.0 + 1e-15));
        prop_assert!(u1 >= u0 && u2 >= u1);
        // midpoint concavity
        prop_assert!(u1 >= 0.5 * (u0 + u2) - 1e-12 * (beta * load).max(1.0));
    }
}
