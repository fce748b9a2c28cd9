//! Run configuration: a TOML document, every key optional.
//!
//! ```toml
//! scenario = "same-type"      # same-type | omega | price-sweep | custom
//! method = "closed"           # enum | closed | sample
//! seed = 0
//! samples = 100000            # permutation pairs when method = "sample"
//! out = "out"
//!
//! [market]
//! d = 0.05                    # dollars per millicore
//! years = 1
//! slots = 96
//! xi = 0.001                  # per millicore
//!
//! [load]                      # l_t = a0 + sum_k a_k sin(2 k pi (t - t_k) / T)
//! a0 = 1.0
//! components = [[0.45, 66.0], [0.15, 30.0]]   # [a_k, t_k]
//!
//! [same_type]
//! l_total = [1e6, 2e6, ...]   # daily requests, both providers together
//!
//! [omega]
//! omega = [0.5, 0.55, ..., 1.0]
//! l_total = 5e6
//!
//! [price_sweep]
//! n_sps = 2
//! d_values = [...]            # 20 log-spaced prices in [0.005, 0.5]
//! load_per_sp = 2e6
//!
//! [[custom.sps]]
//! id = "video"
//! beta = 2e-6
//! daily_load = 3e6            # default shape rescaled; or loads = [...]
//!
//! [[custom.tu_games]]         # raw characteristic functions, checks only
//! name = "fixture"
//! players = 3
//! values = [0, 0, 0, 1, 0, 1, 0, 1]   # indexed by coalition bitmask
//! ```

use std::fmt;
use std::path::PathBuf;

use coinvest_core::scenario::{
    default_load_grid, default_omega_grid, default_price_grid, SineComponent, SinusoidalLoadSpec,
};
use coinvest_core::{MarketParams, PayoffVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

impl ConfigError {
    fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    #[default]
    SameType,
    Omega,
    PriceSweep,
    Custom,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::SameType => "same-type",
            ScenarioKind::Omega => "omega",
            ScenarioKind::PriceSweep => "price-sweep",
            ScenarioKind::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Enum,
    #[default]
    Closed,
    Sample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MarketSection {
    pub d: f64,
    pub years: u32,
    pub slots: usize,
    pub xi: f64,
}

impl Default for MarketSection {
    fn default() -> Self {
        let m = MarketParams::default();
        MarketSection {
            d: m.capex_price(),
            years: m.years(),
            slots: m.slots_per_day(),
            xi: m.xi(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LoadSection {
    pub a0: f64,
    pub components: Vec<[f64; 2]>,
}

impl Default for LoadSection {
    fn default() -> Self {
        let spec = SinusoidalLoadSpec::default();
        LoadSection {
            a0: spec.base,
            components: spec
                .components
                .iter()
                .map(|c| [c.amplitude, c.offset])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SameTypeSection {
    pub l_total: Vec<f64>,
}

impl Default for SameTypeSection {
    fn default() -> Self {
        SameTypeSection {
            l_total: default_load_grid(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OmegaSection {
    pub omega: Vec<f64>,
    pub l_total: f64,
}

impl Default for OmegaSection {
    fn default() -> Self {
        OmegaSection {
            omega: default_omega_grid(),
            l_total: 5e6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PriceSweepSection {
    pub n_sps: usize,
    pub d_values: Vec<f64>,
    pub load_per_sp: f64,
}

impl Default for PriceSweepSection {
    fn default() -> Self {
        PriceSweepSection {
            n_sps: 2,
            d_values: default_price_grid(),
            load_per_sp: 2e6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSp {
    pub id: String,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub daily_load: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loads: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuGameSpec {
    pub name: String,
    pub players: usize,
    pub values: Vec<f64>,
    /// Payoffs to test for core membership instead of the Shapley value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payoffs: Option<Vec<f64>>,
}

impl TuGameSpec {
    pub fn payoff_vector(&self) -> Option<PayoffVector> {
        self.payoffs.clone().map(PayoffVector::new)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct CustomSection {
    pub sps: Vec<CustomSp>,
    pub tu_games: Vec<TuGameSpec>,
}

/// Largest raw characteristic function accepted from a config.
pub const MAX_TU_PLAYERS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub scenario: ScenarioKind,
    pub method: MethodChoice,
    pub seed: u64,
    pub samples: usize,
    pub out: PathBuf,
    pub market: MarketSection,
    pub load: LoadSection,
    pub same_type: SameTypeSection,
    pub omega: OmegaSection,
    pub price_sweep: PriceSweepSection,
    pub custom: CustomSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: ScenarioKind::default(),
            method: MethodChoice::default(),
            seed: 0,
            samples: 100_000,
            out: PathBuf::from("out"),
            market: MarketSection::default(),
            load: LoadSection::default(),
            same_type: SameTypeSection::default(),
            omega: OmegaSection::default(),
            price_sweep: PriceSweepSection::default(),
            custom: CustomSection::default(),
        }
    }
}

/// Parses and validates a TOML config; missing keys take their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

fn check_finite(field: &str, value: f64, min: f64) -> Result<(), ConfigError> {
    if value.is_finite() && value >= min {
        Ok(())
    } else {
        Err(ConfigError::invalid(
            field,
            format!("must be finite and >= {min}, got {value}"),
        ))
    }
}

impl RunConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable as TOML")
    }

    pub fn market_params(&self) -> Result<MarketParams, ConfigError> {
        let m = &self.market;
        MarketParams::new(m.d, m.years, m.slots, m.xi).map_err(|e| match e {
            coinvest_core::Error::Domain { field, reason } => {
                ConfigError::invalid(format!("market.{field}"), reason)
            }
            other => ConfigError::invalid("market", other.to_string()),
        })
    }

    pub fn load_spec(&self) -> SinusoidalLoadSpec {
        SinusoidalLoadSpec {
            base: self.load.a0,
            components: self
                .load
                .components
                .iter()
                .map(|&[amplitude, offset]| SineComponent { amplitude, offset })
                .collect(),
            slots: self.market.slots,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.market_params()?;
        if self.samples == 0 {
            return Err(ConfigError::invalid("samples", "must be >= 1"));
        }
        self.load_spec().validate().map_err(|e| match e {
            coinvest_core::Error::Domain { field, reason } => {
                ConfigError::invalid(format!("load.{field}"), reason)
            }
            other => ConfigError::invalid("load", other.to_string()),
        })?;

        match self.scenario {
            ScenarioKind::SameType => {
                if self.same_type.l_total.is_empty() {
                    return Err(ConfigError::invalid("same_type.l_total", "grid is empty"));
                }
                for &l in &self.same_type.l_total {
                    check_finite("same_type.l_total", l, 0.0)?;
                }
            }
            ScenarioKind::Omega => {
                if self.omega.omega.is_empty() {
                    return Err(ConfigError::invalid("omega.omega", "grid is empty"));
                }
                for &w in &self.omega.omega {
                    if !(0.5..=1.0).contains(&w) {
                        return Err(ConfigError::invalid(
                            "omega.omega",
                            format!("{w} outside [0.5, 1]"),
                        ));
                    }
                }
                check_finite("omega.l_total", self.omega.l_total, 0.0)?;
            }
            ScenarioKind::PriceSweep => {
                let p = &self.price_sweep;
                if p.n_sps == 0 || p.n_sps > 63 {
                    return Err(ConfigError::invalid(
                        "price_sweep.n_sps",
                        "must be in 1..=63",
                    ));
                }
                if p.d_values.is_empty() {
                    return Err(ConfigError::invalid(
                        "price_sweep.d_values",
                        "grid is empty",
                    ));
                }
                for &d in &p.d_values {
                    if !(d.is_finite() && d > 0.0) {
                        return Err(ConfigError::invalid(
                            "price_sweep.d_values",
                            format!("{d} is not > 0"),
                        ));
                    }
                }
                check_finite("price_sweep.load_per_sp", p.load_per_sp, 0.0)?;
            }
            ScenarioKind::Custom => self.validate_custom()?,
        }
        Ok(())
    }

    fn validate_custom(&self) -> Result<(), ConfigError> {
        let c = &self.custom;
        if c.sps.is_empty() && c.tu_games.is_empty() {
            return Err(ConfigError::invalid("custom", "needs `sps` or `tu_games`"));
        }
        if c.sps.len() > 63 {
            return Err(ConfigError::invalid("custom.sps", "at most 63 providers"));
        }
        for sp in &c.sps {
            check_finite("custom.sps.beta", sp.beta, 0.0)?;
            match (&sp.daily_load, &sp.loads) {
                (Some(total), None) => check_finite("custom.sps.daily_load", *total, 0.0)?,
                (None, Some(loads)) => {
                    if loads.len() != self.market.slots {
                        return Err(ConfigError::invalid(
                            "custom.sps.loads",
                            format!(
                                "{} has {} slots, market has {}",
                                sp.id,
                                loads.len(),
                                self.market.slots
                            ),
                        ));
                    }
                    for &l in loads {
                        check_finite("custom.sps.loads", l, 0.0)?;
                    }
                }
                _ => {
                    return Err(ConfigError::invalid(
                        "custom.sps",
                        format!("{} needs exactly one of `daily_load` or `loads`", sp.id),
                    ))
                }
            }
        }
        for g in &c.tu_games {
            if g.players == 0 || g.players > MAX_TU_PLAYERS {
                return Err(ConfigError::invalid(
                    "custom.tu_games.players",
                    format!("{} must have 1..={MAX_TU_PLAYERS} players", g.name),
                ));
            }
            if g.values.len() != 1usize << g.players {
                return Err(ConfigError::invalid(
                    "custom.tu_games.values",
                    format!(
                        "{} needs {} values, got {}",
                        g.name,
                        1usize << g.players,
                        g.values.len()
                    ),
                ));
            }
            if let Some(x) = &g.payoffs {
                if x.len() != g.players {
                    return Err(ConfigError::invalid(
                        "custom.tu_games.payoffs",
                        format!("{} needs {} payoffs", g.name, g.players),
                    ));
                }
            }
        }
        Ok(())
    }
}
