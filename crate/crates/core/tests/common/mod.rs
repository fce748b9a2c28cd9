#![allow(dead_code)]

use coinvest_core::scenario::{synth_load, SineComponent, SinusoidalLoadSpec};
use coinvest_core::{GameInstance, LoadProfile, MarketParams, ServiceProvider};
use proptest::prelude::*;

/// Provider drawn from random sinusoid parameters, rescaled to `daily_total`.
#[derive(Debug, Clone)]
pub struct SpParams {
    pub beta_in_price_units: f64,
    pub daily_total: f64,
    pub base: f64,
    pub components: Vec<(f64, f64)>,
}

pub fn sp_params() -> impl Strategy<Value = SpParams> {
    (
        0.0..5.0f64,
        1e4..2e7f64,
        0.2..2.0f64,
        prop::collection::vec((0.0..1.5f64, 0.0..96.0f64), 1..4),
    )
        .prop_map(|(beta, total, base, components)| SpParams {
            beta_in_price_units: beta,
            daily_total: total,
            base,
            components,
        })
}

pub fn build_sp(market: &MarketParams, p: &SpParams, id: usize) -> ServiceProvider {
    let spec = SinusoidalLoadSpec {
        base: p.base,
        components: p
            .components
            .iter()
            .map(|&(amplitude, offset)| SineComponent { amplitude, offset })
            .collect(),
        slots: market.slots_per_day(),
    };
    let shape = synth_load(&spec).unwrap().profile;
    let load = if shape.daily_total() > 0.0 {
        shape.with_daily_total(p.daily_total).unwrap()
    } else {
        LoadProfile::zeros(market.slots_per_day())
    };
    ServiceProvider::new(
        format!("SP{}", id + 1),
        p.beta_in_price_units * market.price_per_slot(),
        load,
    )
    .unwrap()
}

pub fn build_game(params: &[SpParams]) -> GameInstance {
    let market = MarketParams::default();
    let sps = params
        .iter()
        .enumerate()
        .map(|(i, p)| build_sp(&market, p, i))
        .collect();
    GameInstance::new(market, sps).unwrap()
}

pub fn game_strategy(max_sps: usize) -> impl Strategy<Value = GameInstance> {
    prop::collection::vec(sp_params(), 1..=max_sps).prop_map(|ps| build_game(&ps))
}

pub fn flat_sp(market: &MarketParams, beta: f64, daily_total: f64) -> ServiceProvider {
    let slots = market.slots_per_day();
    ServiceProvider::new(
        "flat",
        beta,
        LoadProfile::new(vec![daily_total / slots as f64; slots]).unwrap(),
    )
    .unwrap()
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
