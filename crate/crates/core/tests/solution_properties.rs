#![allow(clippy::needless_range_loop)]

//! Game-theoretic properties on randomized coinvestment games.

mod common;

use coinvest_core::solution::{
    check_core, check_supermodularity, classify_players, settle, shapley_closed_form,
    shapley_enumeration, shapley_sampling,
};
use coinvest_core::{
    CharacteristicFunction, Coalition, GameInstance, MarketParams, Player, TabularGame,
};
use common::*;
use proptest::prelude::*;

/// Shapley value as the average marginal contribution over all `n!` orders.
fn shapley_by_orders<G: CharacteristicFunction>(game: &G) -> Vec<f64> {
    let n = game.player_count();
    let mut order: Vec<usize> = (0..n).collect();
    let mut totals = vec![0.0; n];
    let mut count = 0usize;
    permute(&mut order, 0, &mut |perm| {
        let mut s = Coalition::EMPTY;
        for &p in perm {
            let before = game.value(s);
            s = s.with(p);
            totals[p] += game.value(s) - before;
        }
        count += 1;
    });
    totals.iter().map(|t| t / count as f64).collect()
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[test]
fn shapley_brute_force_over_orders_small_games() {
    let market = MarketParams::default();
    let p = market.price_per_slot();
    let sps = vec![
        flat_sp(&market, p, 4e6),
        flat_sp(&market, 2.5 * p, 1e6),
        flat_sp(&market, 0.0, 3e6),
        flat_sp(&market, 0.7, 2e6),
    ];
    let game = GameInstance::new(market, sps).unwrap();
    let orders = shapley_by_orders(&game);
    let enumerated = shapley_enumeration(&game).unwrap();
    let closed = shapley_closed_form(&game);
    for i in 0..game.players() {
        assert!(rel_close(orders[i], enumerated.payoffs[i], 1e-9));
        assert!(rel_close(orders[i], closed.payoffs[i], 1e-9));
    }
}

#[test]
fn non_convex_fixture_is_rejected_but_shapley_still_efficient() {
    let mut values = vec![0.0; 8];
    values[0b011] = 1.0;
    values[0b101] = 1.0;
    values[0b111] = 1.0;
    let fixture = TabularGame::new(3, values).unwrap();
    let report = check_supermodularity(&fixture).unwrap();
    assert!(!report.holds);
    let phi = shapley_enumeration(&fixture).unwrap();
    assert!((phi.payoffs.total() - 1.0).abs() < 1e-12);
    let orders = shapley_by_orders(&fixture);
    for i in 0..3 {
        assert!((orders[i] - phi.payoffs[i]).abs() < 1e-12);
    }
}

#[test]
fn all_zero_game() {
    let market = MarketParams::default();
    let game = GameInstance::new(
        market,
        vec![flat_sp(&market, 0.0, 1e6), flat_sp(&market, 0.0, 0.0)],
    )
    .unwrap();
    assert!(check_supermodularity(&game).unwrap().holds);
    let phi = shapley_closed_form(&game).payoffs;
    assert!(check_core(&game, &phi).unwrap().in_core);
    let classes = classify_players(&game).unwrap();
    // v is identically zero: everyone is both veto and null
    assert!(classes.iter().all(|c| c.veto && c.null));
    let s = settle(&game, &phi).unwrap();
    assert!(s
        .entries
        .iter()
        .all(|e| e.payment == 0.0 && e.revenue == 0.0));
}

#[test]
fn giving_everything_to_one_provider_leaves_the_core() {
    let market = MarketParams::default();
    let p = market.price_per_slot();
    let game = GameInstance::new(
        market,
        vec![flat_sp(&market, p, 4e6), flat_sp(&market, p, 3e6)],
    )
    .unwrap();
    assert!(game.optimum(0).value > 0.0 && game.optimum(1).value > 0.0);
    let v = game.value(game.grand_coalition());
    let x = coinvest_core::PayoffVector::new(vec![0.0, v, 0.0]);
    let check = check_core(&game, &x).unwrap();
    assert!(!check.in_core);
    assert!(check.efficient);
    // {NO, SP2} earns m_2 on its own but receives nothing
    let expected = Coalition::from_players([Player::NetworkOwner, Player::ServiceProvider(1)]);
    assert_eq!(check.violating_coalition, Some(expected));
}

#[test]
fn player_classes() {
    let market = MarketParams::default();
    let p = market.price_per_slot();
    let game = GameInstance::new(
        market,
        vec![
            flat_sp(&market, p, 4e6),
            flat_sp(&market, 0.0, 3e6),
            flat_sp(&market, p, 2e6),
        ],
    )
    .unwrap();
    let c = classify_players(&game).unwrap();
    assert!(c[0].veto && !c[0].null);
    assert!(!c[1].veto && !c[1].null);
    assert!(!c[2].veto && c[2].null);
    assert!(!c[3].veto && !c[3].null);
}

#[test]
fn sampling_on_three_players_within_three_standard_errors() {
    use coinvest_core::solution::{shapley_sampling_with, SamplingConfig};
    let market = MarketParams::default();
    let p = market.price_per_slot();
    let game = GameInstance::new(
        market,
        vec![flat_sp(&market, p, 4e6), flat_sp(&market, 2.0 * p, 1e6)],
    )
    .unwrap();
    let exact = shapley_enumeration(&game).unwrap();
    for antithetic in [false, true] {
        let est = shapley_sampling_with(
            &game,
            &SamplingConfig {
                samples: 100_000,
                seed: 17,
                antithetic,
            },
        )
        .unwrap();
        let se = est.std_errors.unwrap();
        for i in 0..3 {
            let slack = 3.0 * se[i] + 1e-9 * exact.payoffs[i].abs().max(1.0);
            assert!(
                (est.payoffs[i] - exact.payoffs[i]).abs() <= slack,
                "antithetic={antithetic} player {i}"
            );
        }
    }
    let again = shapley_sampling(&game, 100_000, 17).unwrap();
    assert_eq!(again, shapley_sampling(&game, 100_000, 17).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_methods_agree_and_split_evenly(game in game_strategy(7)) {
        let en = shapley_enumeration(&game).unwrap();
        let cf = shapley_closed_form(&game);
        let v = game.value(game.grand_coalition());
        for i in 0..game.players() {
            prop_assert!(rel_close(en.payoffs[i], cf.payoffs[i], 1e-9));
        }
        prop_assert!(rel_close(en.payoffs.total(), v, 1e-9));
        prop_assert!(rel_close(en.payoffs[0], v / 2.0, 1e-9));
        let sp_total: f64 = en.payoffs.as_slice()[1..].iter().sum();
        prop_assert!(rel_close(sp_total, v / 2.0, 1e-9));
    }

    #[test]
    fn null_and_symmetric_players(game in game_strategy(5), twin_beta in 0.0..5.0f64) {
        // append a zero-beta provider and a copy of the first provider
        let market = *game.market();
        let mut sps = game.service_providers().to_vec();
        let mut null = sps[0].clone();
        null.beta = 0.0;
        let mut twin = sps[0].clone();
        twin.beta = twin_beta * market.price_per_slot();
        let mut twin2 = twin.clone();
        twin2.id = "twin2".into();
        sps.extend([null, twin, twin2]);
        let g = GameInstance::new(market, sps).unwrap();
        let n = g.players();
        let phi = shapley_enumeration(&g).unwrap().payoffs;
        prop_assert_eq!(phi[n - 3], 0.0);
        prop_assert!(rel_close(phi[n - 2], phi[n - 1], 1e-9));
    }

    #[test]
    fn shapley_in_core(game in game_strategy(7)) {
        let phi = shapley_closed_form(&game).payoffs;
        let check = check_core(&game, &phi).unwrap();
        prop_assert!(check.in_core, "violated by {:?}", check.violating_coalition);
    }

    #[test]
    fn coinvestment_games_are_supermodular(game in game_strategy(4)) {
        prop_assert!(check_supermodularity(&game).unwrap().holds);
    }

    #[test]
    fn veto_and_monotone(game in game_strategy(5)) {
        let grand = game.grand_coalition();
        for s in grand.subsets() {
            let v = game.coalition_value(s).unwrap();
            prop_assert!(v >= 0.0);
            if !s.contains(0) {
                prop_assert_eq!(v, 0.0);
            }
            for i in grand.members().filter(|&i| !s.contains(i)) {
                prop_assert!(game.value(s.with(i)) >= v);
            }
        }
        prop_assert!(classify_players(&game).unwrap()[0].veto);
    }

    #[test]
    fn settlement_balances(game in game_strategy(7)) {
        let phi = shapley_closed_form(&game).payoffs;
        let s = settle(&game, &phi).unwrap();
        let bill = game.market().capex_price() * s.capacity;
        prop_assert!(rel_close(s.total_payment(), bill, 1e-6));
        for e in &s.entries {
            prop_assert!((e.revenue - e.payment - e.payoff).abs() <= 1e-9 * e.revenue.abs().max(e.payoff.abs()).max(1.0));
        }
        let no = s.entry(Player::NetworkOwner);
        prop_assert_eq!(no.revenue, 0.0);
        prop_assert!(no.payment <= 0.0);
    }
}
