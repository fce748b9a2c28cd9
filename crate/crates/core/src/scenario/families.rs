//! The three experiment families: two providers of the same type, two
//! providers with a benefit split `omega`, and `N` identical providers under
//! a range of capacity prices.
//!
//! Benefit factors are expressed in units of the per-slot capacity price
//! `p = d / (D * T)` of the base market.

use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::market::{LoadProfile, MarketParams, ServiceProvider};

/// The heavier provider carries this many times the lighter one's load.
pub const HEAVY_TO_LIGHT_RATIO: f64 = 4.0;

/// Loads for the heavy/light pair: the light one gets a fifth of `l_total`
/// and the heavy one is exactly four times the light one in every slot.
fn heavy_light_loads(l_total: f64, shape: &LoadProfile) -> Result<(LoadProfile, LoadProfile)> {
    if !(l_total.is_finite() && l_total >= 0.0) {
        return Err(Error::domain(
            "l_total",
            format!("must be finite and >= 0, got {l_total}"),
        ));
    }
    let light = shape.with_daily_total(l_total / (HEAVY_TO_LIGHT_RATIO + 1.0))?;
    let heavy = light.scaled(HEAVY_TO_LIGHT_RATIO)?;
    Ok((heavy, light))
}

/// Two providers with `beta = p`, sharing the load shape in a 4:1 ratio.
pub fn scenario_same_type(
    l_total: f64,
    market: &MarketParams,
    shape: &LoadProfile,
) -> Result<GameInstance> {
    scenario_omega(0.5, l_total, market, shape)
}

/// Two providers splitting `beta_tot = 2p` as `(1 - omega, omega)`; the
/// heavily loaded provider gets the smaller share.
pub fn scenario_omega(
    omega: f64,
    l_total: f64,
    market: &MarketParams,
    shape: &LoadProfile,
) -> Result<GameInstance> {
    if !(0.5..=1.0).contains(&omega) {
        return Err(Error::domain(
            "omega",
            format!("must lie in [0.5, 1], got {omega}"),
        ));
    }
    let (heavy, light) = heavy_light_loads(l_total, shape)?;
    let beta_total = 2.0 * market.price_per_slot();
    let sps = vec![
        ServiceProvider::new("SP1", (1.0 - omega) * beta_total, heavy)?,
        ServiceProvider::new("SP2", omega * beta_total, light)?,
    ];
    GameInstance::new(*market, sps)
}

/// `n` identical providers splitting `l_total` evenly, one game per price in
/// `d_values`. Benefit factors stay pinned to the base market's `p`, so only
/// the capacity price moves.
pub fn scenario_price_sweep(
    n: usize,
    d_values: &[f64],
    l_total: f64,
    market_base: &MarketParams,
    shape: &LoadProfile,
) -> Result<Vec<GameInstance>> {
    if d_values.is_empty() {
        return Err(Error::domain("d_values", "need at least one price"));
    }
    if n == 0 {
        return Err(Error::domain("n_sps", "need at least one service provider"));
    }
    if !(l_total.is_finite() && l_total >= 0.0) {
        return Err(Error::domain(
            "l_total",
            format!("must be finite and >= 0, got {l_total}"),
        ));
    }
    let beta = market_base.price_per_slot();
    let load = shape.with_daily_total(l_total / n as f64)?;
    d_values
        .iter()
        .map(|&d| {
            let market = market_base.with_capex_price(d)?;
            let sps = (0..n)
                .map(|i| ServiceProvider::new(format!("SP{}", i + 1), beta, load.clone()))
                .collect::<Result<Vec<_>>>()?;
            GameInstance::new(market, sps)
        })
        .collect()
}

/// Daily totals `1e6, 2e6, ..., 1e7` requests.
pub fn default_load_grid() -> Vec<f64> {
    (1..=10).map(|k| k as f64 * 1e6).collect()
}

/// `0.5, 0.55, ..., 1.0`.
pub fn default_omega_grid() -> Vec<f64> {
    (0..=10).map(|k| (50 + 5 * k) as f64 / 100.0).collect()
}

/// 20 log-spaced prices from 0.005 to 0.5 dollars per millicore.
pub fn default_price_grid() -> Vec<f64> {
    let (lo, hi) = (0.005_f64, 0.5_f64);
    (0..20)
        .map(|k| lo * (hi / lo).powf(k as f64 / 19.0))
        .collect()
}
