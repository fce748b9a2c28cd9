//! The exponential diminishing-return utility and the per-provider
//! capacity optimum.
//!
//! A provider's standalone contribution is
//! `f(h) = D * sum_t beta * l_t * (1 - exp(-xi * h)) - d * h`, maximized over
//! `h >= 0`. With `L = sum_t l_t` the stationary point is
//! `h* = ln(D * xi * beta * L / d) / xi`, clamped to zero when the log
//! argument does not exceed one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::market::{MarketParams, ServiceProvider};
use crate::numeric::{compensated_sum, golden_section_max};

/// Revenue per slot: `beta * load * (1 - exp(-xi * h))`.
pub fn eval_utility(beta: f64, xi: f64, load: f64, h: f64) -> Result<f64> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::domain("beta", format!("must be >= 0, got {beta}")));
    }
    if xi.is_nan() || xi <= 0.0 {
        return Err(Error::domain("xi", format!("must be > 0, got {xi}")));
    }
    if load.is_nan() || load < 0.0 {
        return Err(Error::domain("load", format!("must be >= 0, got {load}")));
    }
    if h.is_nan() || h < 0.0 {
        return Err(Error::domain("h", format!("must be >= 0, got {h}")));
    }
    Ok(saturating_utility(beta, xi, load, h))
}

#[inline]
fn saturating_utility(beta: f64, xi: f64, load: f64, h: f64) -> f64 {
    beta * load * -(-xi * h).exp_m1()
}

/// Revenue collected over the whole horizon with `h` millicores,
/// `D * sum_t u(l_t, h)`.
pub fn horizon_revenue(sp: &ServiceProvider, market: &MarketParams, h: f64) -> f64 {
    let xi = market.xi();
    let daily = compensated_sum(
        sp.load
            .as_slice()
            .iter()
            .map(|&l| saturating_utility(sp.beta, xi, l, h)),
    );
    market.days() * daily
}

/// Standalone objective `D * sum_t u(l_t, h) - d * h`.
pub fn contribution_objective(sp: &ServiceProvider, market: &MarketParams, h: f64) -> f64 {
    horizon_revenue(sp, market, h) - market.capex_price() * h
}

/// Log argument `D * xi * beta * L / d` of the stationary point.
pub fn activation_ratio(sp: &ServiceProvider, market: &MarketParams) -> f64 {
    market.days() * market.xi() * sp.beta * sp.load.daily_total() / market.capex_price()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Maximizer {
    /// Stationary point of the exponential utility.
    ClosedForm,
    /// Bracketed golden-section search on the objective.
    GoldenSection,
}

/// Maximizer `h_star` of a provider's standalone objective and the maximum
/// `value` (always `>= 0`, as `h = 0` is feasible and worth nothing).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleOptimum {
    pub h_star: f64,
    pub value: f64,
}

impl SingleOptimum {
    pub const IDLE: SingleOptimum = SingleOptimum {
        h_star: 0.0,
        value: 0.0,
    };
}

/// Upper end of the golden-section bracket,
/// `ln(max(e, ratio)) / xi + 10 / xi`.
pub fn search_upper_bound(sp: &ServiceProvider, market: &MarketParams) -> f64 {
    let ratio = activation_ratio(sp, market);
    let xi = market.xi();
    ratio.max(std::f64::consts::E).ln() / xi + 10.0 / xi
}

pub fn optimal_allocation_single(
    sp: &ServiceProvider,
    market: &MarketParams,
    method: Maximizer,
) -> SingleOptimum {
    match method {
        Maximizer::ClosedForm => closed_form(sp, market),
        Maximizer::GoldenSection => golden_section(sp, market),
    }
}

fn closed_form(sp: &ServiceProvider, market: &MarketParams) -> SingleOptimum {
    let ratio = activation_ratio(sp, market);
    if ratio.is_nan() || ratio <= 1.0 {
        return SingleOptimum::IDLE;
    }
    let xi = market.xi();
    let h_star = ratio.ln() / xi;
    // exp(-xi * h*) == 1 / ratio
    let revenue = market.days() * sp.beta * sp.load.daily_total() * (1.0 - ratio.recip());
    let value = revenue - market.capex_price() * h_star;
    SingleOptimum {
        h_star,
        value: value.max(0.0),
    }
}

fn golden_section(sp: &ServiceProvider, market: &MarketParams) -> SingleOptimum {
    let hi = search_upper_bound(sp, market);
    let (h, value) = golden_section_max(
        |h| contribution_objective(sp, market, h),
        0.0,
        hi,
        1e-8 * hi,
    );
    if value > 0.0 {
        SingleOptimum { h_star: h, value }
    } else {
        SingleOptimum::IDLE
    }
}
