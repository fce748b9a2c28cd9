//! Fixtures shared by the criterion benchmarks.

use coinvest_core::scenario::{scenario_price_sweep, synth_load, SinusoidalLoadSpec};
use coinvest_core::{GameInstance, MarketParams};

/// `n` identical providers with two million daily requests each.
pub fn identical_providers(n: usize) -> GameInstance {
    let shape = synth_load(&SinusoidalLoadSpec::default())
        .expect("default load spec is valid")
        .profile;
    let market = MarketParams::default();
    scenario_price_sweep(n, &[market.capex_price()], 2e6 * n as f64, &market, &shape)
        .expect("valid sweep")
        .remove(0)
}
