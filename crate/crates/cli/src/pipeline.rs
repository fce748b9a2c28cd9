//! Builds the configured games, solves them and runs the property checks.

use coinvest_core::scenario::{
    run_sweep, scenario_omega, scenario_price_sweep, scenario_same_type, synth_load, PayoffRule,
    SweepPoint, SweepRecord,
};
use coinvest_core::solution::{
    check_core, check_supermodularity, classify_players, shapley_closed_form, shapley_enumeration,
    shapley_sampling, CoreCheck, PayoffVector, PlayerClass, SupermodularityReport,
    MAX_ENUMERATION_PLAYERS, MAX_SUPERMODULARITY_PLAYERS,
};
use coinvest_core::{
    CharacteristicFunction, GameInstance, LoadProfile, Player, ServiceProvider, TabularGame,
};
use serde::Serialize;

use crate::config::{ConfigError, MethodChoice, RunConfig, ScenarioKind};
use crate::CliError;

pub const EQUAL_SPLIT_REL: f64 = 1e-9;
pub const BALANCE_REL: f64 = 1e-6;
pub const PAYOFF_IDENTITY_REL: f64 = 1e-9;
pub const ORACLE_REL: f64 = 1e-9;
/// Permutation pairs drawn by the sampling leg of the oracle triangle.
pub const ORACLE_SAMPLES: usize = 100_000;

pub struct Scenario {
    pub points: Vec<SweepPoint>,
    pub tu_games: Vec<(String, TabularGame, Option<PayoffVector>)>,
    /// Slots clamped to zero while synthesizing the load shape.
    pub clamped_slots: usize,
}

pub fn build_scenario(config: &RunConfig) -> Result<Scenario, CliError> {
    let market = config.market_params()?;
    let synthesized = synth_load(&config.load_spec())?;
    let shape = &synthesized.profile;
    let label = config.scenario.to_string();

    let points = match config.scenario {
        ScenarioKind::SameType => config
            .same_type
            .l_total
            .iter()
            .map(|&l| {
                Ok(SweepPoint {
                    scenario: label.clone(),
                    param: "l_total".into(),
                    value: l,
                    game: scenario_same_type(l, &market, shape)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        ScenarioKind::Omega => config
            .omega
            .omega
            .iter()
            .map(|&w| {
                Ok(SweepPoint {
                    scenario: label.clone(),
                    param: "omega".into(),
                    value: w,
                    game: scenario_omega(w, config.omega.l_total, &market, shape)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        ScenarioKind::PriceSweep => {
            let p = &config.price_sweep;
            let l_total = p.load_per_sp * p.n_sps as f64;
            let games = scenario_price_sweep(p.n_sps, &p.d_values, l_total, &market, shape)?;
            games
                .into_iter()
                .zip(&p.d_values)
                .map(|(game, &d)| SweepPoint {
                    scenario: format!("price-sweep-n{}", p.n_sps),
                    param: "d".into(),
                    value: d,
                    game,
                })
                .collect()
        }
        ScenarioKind::Custom => {
            if config.custom.sps.is_empty() {
                Vec::new()
            } else {
                let sps = config
                    .custom
                    .sps
                    .iter()
                    .map(|sp| {
                        let load = match (&sp.loads, sp.daily_load) {
                            (Some(loads), _) => LoadProfile::new(loads.clone())?,
                            (None, Some(total)) => shape.with_daily_total(total)?,
                            (None, None) => unreachable!("validated"),
                        };
                        Ok(ServiceProvider::new(sp.id.clone(), sp.beta, load)?)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                vec![SweepPoint {
                    scenario: label.clone(),
                    param: "instance".into(),
                    value: 0.0,
                    game: GameInstance::new(market, sps)?,
                }]
            }
        }
    };

    let tu_games = config
        .custom
        .tu_games
        .iter()
        .filter(|_| config.scenario == ScenarioKind::Custom)
        .map(|g| {
            let table = TabularGame::new(g.players, g.values.clone()).map_err(|e| {
                ConfigError::Invalid {
                    field: "custom.tu_games".into(),
                    reason: format!("{}: {e}", g.name),
                }
            })?;
            Ok((g.name.clone(), table, g.payoff_vector()))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    Ok(Scenario {
        points,
        tu_games,
        clamped_slots: synthesized.clamped_slots,
    })
}

pub fn payoff_rule(config: &RunConfig) -> PayoffRule {
    match config.method {
        MethodChoice::Enum => PayoffRule::Enumeration,
        MethodChoice::Closed => PayoffRule::ClosedForm,
        MethodChoice::Sample => PayoffRule::Sampling {
            samples: config.samples,
            seed: config.seed,
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleTriangle {
    /// Largest relative gap between enumeration and the closed form.
    pub enumeration_vs_closed: f64,
    /// Largest `|sampled - exact| / (3 se + floor)` over players; at most one
    /// when every estimate lies within three standard errors.
    pub sampling_band: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceChecks {
    pub classes: Option<Vec<PlayerClass>>,
    pub core: Option<CoreCheck>,
    pub supermodularity: Option<SupermodularityReport>,
    pub equal_split: bool,
    pub settlement_balanced: bool,
    pub oracle: Option<OracleTriangle>,
}

impl InstanceChecks {
    pub fn passed(&self) -> bool {
        self.core.as_ref().is_none_or(|c| c.in_core)
            && self.supermodularity.as_ref().is_none_or(|s| s.holds)
            && self.equal_split
            && self.settlement_balanced
            && self.oracle.as_ref().is_none_or(|o| o.passed)
    }
}

fn rel_gap(a: f64, b: f64, reference: f64) -> f64 {
    (a - b).abs() / reference.abs().max(1.0)
}

/// Property checks for one solved instance. `sampling_seed` enables the
/// oracle triangle.
pub fn check_instance(
    game: &GameInstance,
    record: &SweepRecord,
    sampling_seed: Option<u64>,
) -> Result<InstanceChecks, CliError> {
    let n = game.players();
    let payoffs = PayoffVector::new(record.players.iter().map(|p| p.shapley).collect());
    let v = record.grand_value;

    let classes = (n <= MAX_ENUMERATION_PLAYERS)
        .then(|| classify_players(game))
        .transpose()?;
    let core = (n <= MAX_ENUMERATION_PLAYERS)
        .then(|| check_core(game, &payoffs))
        .transpose()?;
    let supermodularity = (n <= MAX_SUPERMODULARITY_PLAYERS)
        .then(|| check_supermodularity(game))
        .transpose()?;

    let owner = payoffs.get(Player::NetworkOwner);
    let providers: f64 = payoffs.as_slice()[1..].iter().sum();
    let equal_split = rel_gap(owner, v / 2.0, v) <= EQUAL_SPLIT_REL
        && rel_gap(providers, v / 2.0, v) <= EQUAL_SPLIT_REL;

    let bill = record.capex_price * record.capacity;
    let settlement_balanced = rel_gap(record.players.iter().map(|p| p.payment).sum(), bill, bill)
        <= BALANCE_REL
        && record.players.iter().all(|p| {
            let scale = p.r_hat.abs().max(p.payoff.abs());
            rel_gap(p.r_hat - p.payment, p.payoff, scale) <= PAYOFF_IDENTITY_REL
        });

    let oracle = match sampling_seed {
        Some(seed) if n <= MAX_ENUMERATION_PLAYERS => Some(oracle_triangle(game, seed)?),
        _ => None,
    };

    Ok(InstanceChecks {
        classes,
        core,
        supermodularity,
        equal_split,
        settlement_balanced,
        oracle,
    })
}

pub fn oracle_triangle(game: &GameInstance, seed: u64) -> Result<OracleTriangle, CliError> {
    let enumerated = shapley_enumeration(game)?;
    let closed = shapley_closed_form(game);
    let sampled = shapley_sampling(game, ORACLE_SAMPLES, seed)?;
    let se = sampled
        .std_errors
        .clone()
        .unwrap_or_else(|| vec![f64::INFINITY; game.players()]);

    let mut worst_rel = 0.0_f64;
    let mut worst_band = 0.0_f64;
    let mut passed = true;
    for (i, &se) in se.iter().enumerate() {
        let exact = enumerated.payoffs[i];
        let gap = rel_gap(exact, closed.payoffs[i], exact);
        worst_rel = worst_rel.max(gap);
        passed &= gap <= ORACLE_REL;

        // float noise floor for estimates with zero spread
        let miss = (sampled.payoffs[i] - exact).abs();
        let floor = ORACLE_REL * exact.abs().max(1.0);
        let band = 3.0 * se + floor;
        passed &= miss <= band;
        worst_band = worst_band.max(miss / band);
    }
    Ok(OracleTriangle {
        enumeration_vs_closed: worst_rel,
        sampling_band: worst_band,
        passed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TuGameChecks {
    pub name: String,
    pub players: usize,
    pub shapley: Vec<f64>,
    pub classes: Vec<PlayerClass>,
    pub core: CoreCheck,
    pub supermodularity: Option<SupermodularityReport>,
    pub passed: bool,
}

pub fn check_tu_game(
    name: &str,
    game: &TabularGame,
    payoffs: Option<&PayoffVector>,
) -> Result<TuGameChecks, CliError> {
    let shapley = shapley_enumeration(game)?.payoffs;
    let core = check_core(game, payoffs.unwrap_or(&shapley))?;
    let supermodularity = (game.player_count() <= MAX_SUPERMODULARITY_PLAYERS)
        .then(|| check_supermodularity(game))
        .transpose()?;
    let passed = core.in_core && supermodularity.as_ref().is_none_or(|s| s.holds);
    Ok(TuGameChecks {
        name: name.to_string(),
        players: game.player_count(),
        shapley: shapley.as_slice().to_vec(),
        classes: classify_players(game)?,
        core,
        supermodularity,
        passed,
    })
}

/// Solves every sweep point; an empty point list yields no records.
pub fn solve(points: &[SweepPoint], rule: PayoffRule) -> Result<Vec<SweepRecord>, CliError> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    Ok(run_sweep(points, rule)?)
}
