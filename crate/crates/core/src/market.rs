//! Economic constants, load profiles and service provider descriptors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::compensated_sum;

pub const DAYS_PER_YEAR: u32 = 365;
pub const DEFAULT_CAPEX_PRICE: f64 = 0.05;
pub const DEFAULT_SLOTS_PER_DAY: usize = 96;
pub const DEFAULT_XI: f64 = 1e-3;

/// Market-wide constants of a coinvestment game.
///
/// Prices are in dollars, capacity in millicores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketParams {
    capex_price: f64,
    years: u32,
    slots_per_day: usize,
    xi: f64,
}

impl MarketParams {
    /// `capex_price` is dollars per millicore, `xi` the diminishing-return
    /// rate per millicore.
    pub fn new(capex_price: f64, years: u32, slots_per_day: usize, xi: f64) -> Result<Self> {
        if !(capex_price.is_finite() && capex_price > 0.0) {
            return Err(Error::domain(
                "d",
                format!("must be > 0, got {capex_price}"),
            ));
        }
        if years == 0 {
            return Err(Error::domain("years", "must be >= 1"));
        }
        if slots_per_day == 0 {
            return Err(Error::domain("slots", "must be >= 1"));
        }
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::domain("xi", format!("must be > 0, got {xi}")));
        }
        Ok(MarketParams {
            capex_price,
            years,
            slots_per_day,
            xi,
        })
    }

    pub fn capex_price(&self) -> f64 {
        self.capex_price
    }

    pub fn years(&self) -> u32 {
        self.years
    }

    /// Investment horizon in days, `365 * years`.
    pub fn days(&self) -> f64 {
        f64::from(DAYS_PER_YEAR) * f64::from(self.years)
    }

    pub fn slots_per_day(&self) -> usize {
        self.slots_per_day
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Capacity price amortized over every timeslot of the horizon,
    /// `d / (D * T)`.
    pub fn price_per_slot(&self) -> f64 {
        self.capex_price / (self.days() * self.slots_per_day as f64)
    }

    pub fn with_capex_price(self, capex_price: f64) -> Result<Self> {
        MarketParams::new(capex_price, self.years, self.slots_per_day, self.xi)
    }
}

impl Default for MarketParams {
    fn default() -> Self {
        MarketParams {
            capex_price: DEFAULT_CAPEX_PRICE,
            years: 1,
            slots_per_day: DEFAULT_SLOTS_PER_DAY,
            xi: DEFAULT_XI,
        }
    }
}

/// Expected request load per timeslot of a typical day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LoadProfile(Vec<f64>);

impl LoadProfile {
    pub fn new(loads: Vec<f64>) -> Result<Self> {
        if let Some((t, v)) = loads
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::domain(
                "load",
                format!("slot {t} is {v}, must be finite and >= 0"),
            ));
        }
        Ok(LoadProfile(loads))
    }

    pub fn zeros(slots: usize) -> Self {
        LoadProfile(vec![0.0; slots])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Total expected requests over one day.
    pub fn daily_total(&self) -> f64 {
        compensated_sum(self.0.iter().copied())
    }

    /// Pointwise multiplication by a nonnegative factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor >= 0.0) {
            return Err(Error::domain(
                "factor",
                format!("must be finite and >= 0, got {factor}"),
            ));
        }
        Ok(LoadProfile(self.0.iter().map(|l| l * factor).collect()))
    }

    /// Same shape, rescaled so the daily total equals `total`.
    pub fn with_daily_total(&self, total: f64) -> Result<Self> {
        let current = self.daily_total();
        if total == 0.0 {
            return Ok(LoadProfile::zeros(self.len()));
        }
        if current <= 0.0 {
            return Err(Error::domain("load", "cannot rescale an all-zero profile"));
        }
        self.scaled(total / current)
    }
}

impl TryFrom<Vec<f64>> for LoadProfile {
    type Error = Error;

    fn try_from(loads: Vec<f64>) -> Result<Self> {
        LoadProfile::new(loads)
    }
}

impl From<LoadProfile> for Vec<f64> {
    fn from(profile: LoadProfile) -> Self {
        profile.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServiceProvider {
    pub id: String,
    /// Dollars earned per unit of load served at the edge.
    pub beta: f64,
    pub load: LoadProfile,
}

impl ServiceProvider {
    pub fn new(id: impl Into<String>, beta: f64, load: LoadProfile) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::domain(
                "beta",
                format!("must be finite and >= 0, got {beta}"),
            ));
        }
        Ok(ServiceProvider {
            id: id.into(),
            beta,
            load,
        })
    }
}
