use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coalition::Player;
use crate::error::{Error, Result};
use crate::game::{CharacteristicFunction, GameInstance};
use crate::numeric::close_rel;
use crate::solution::{
    settle, shapley_closed_form, shapley_enumeration, shapley_sampling, ShapleyMethod,
    ShapleyResult,
};

/// Closed-form payoffs are cross-checked by enumeration up to this size.
pub const ORACLE_CHECK_MAX_PLAYERS: usize = 10;

/// One labelled game of a parameter sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub scenario: String,
    pub param: String,
    pub value: f64,
    pub game: GameInstance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PayoffRule {
    Enumeration,
    ClosedForm,
    /// Antithetic permutation sampling; instance `k` uses seed `seed + k`.
    Sampling {
        samples: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerRow {
    pub player_id: String,
    pub beta: f64,
    pub daily_load: f64,
    pub h_star: f64,
    pub r_hat: f64,
    pub shapley: f64,
    pub payment: f64,
    pub payoff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub scenario: String,
    pub sweep_param: String,
    pub sweep_value: f64,
    /// Owner first, then providers in order.
    pub players: Vec<PlayerRow>,
    pub capacity: f64,
    pub grand_value: f64,
    pub capex_price: f64,
    pub method: ShapleyMethod,
}

impl SweepRecord {
    pub fn player(&self, player: Player) -> &PlayerRow {
        &self.players[player.index()]
    }
}

/// Solves every point; output order equals input order.
pub fn run_sweep(points: &[SweepPoint], rule: PayoffRule) -> Result<Vec<SweepRecord>> {
    if points.is_empty() {
        return Err(Error::domain(
            "instances",
            "sweep needs at least one instance",
        ));
    }
    points
        .par_iter()
        .enumerate()
        .map(|(index, point)| solve_point(point, rule, index).map_err(|e| e.at_instance(index)))
        .collect()
}

fn payoffs_for(game: &GameInstance, rule: PayoffRule, index: usize) -> Result<ShapleyResult> {
    match rule {
        PayoffRule::Enumeration => shapley_enumeration(game),
        PayoffRule::ClosedForm => {
            let closed = shapley_closed_form(game);
            if game.players() <= ORACLE_CHECK_MAX_PLAYERS {
                let enumerated = shapley_enumeration(game)?;
                let pairs = closed
                    .payoffs
                    .as_slice()
                    .iter()
                    .zip(enumerated.payoffs.as_slice());
                for (player, (&c, &e)) in pairs.enumerate() {
                    if !close_rel(c, e, 1e-9, e) {
                        return Err(Error::OracleMismatch {
                            player,
                            closed: c,
                            enumerated: e,
                        });
                    }
                }
            }
            Ok(closed)
        }
        PayoffRule::Sampling { samples, seed } => {
            shapley_sampling(game, samples, seed.wrapping_add(index as u64))
        }
    }
}

fn solve_point(point: &SweepPoint, rule: PayoffRule, index: usize) -> Result<SweepRecord> {
    let game = &point.game;
    let shapley = payoffs_for(game, rule, index)?;
    let settlement = settle(game, &shapley.payoffs)?;
    let allocation = game.grand_allocation();

    let players = game
        .player_ids()
        .map(|player| {
            let (player_id, beta, daily_load) = match player {
                Player::NetworkOwner => (player.label(), 0.0, 0.0),
                Player::ServiceProvider(i) => {
                    let sp = &game.service_providers()[i];
                    (sp.id.clone(), sp.beta, sp.load.daily_total())
                }
            };
            let entry = settlement.entry(player);
            PlayerRow {
                player_id,
                beta,
                daily_load,
                h_star: allocation.share(player),
                r_hat: entry.revenue,
                shapley: shapley.payoffs.get(player),
                payment: entry.payment,
                payoff: entry.payoff,
            }
        })
        .collect();

    Ok(SweepRecord {
        scenario: point.scenario.clone(),
        sweep_param: point.param.clone(),
        sweep_value: point.value,
        players,
        capacity: allocation.capacity,
        grand_value: game.value(game.grand_coalition()),
        capex_price: game.market().capex_price(),
        method: shapley.method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{LoadProfile, MarketParams};
    use crate::scenario::{
        default_load_grid, default_omega_grid, scenario_omega, scenario_same_type, synth_load,
        SinusoidalLoadSpec,
    };

    fn shape() -> LoadProfile {
        synth_load(&SinusoidalLoadSpec::default()).unwrap().profile
    }

    fn point(game: GameInstance, value: f64) -> SweepPoint {
        SweepPoint {
            scenario: "test".into(),
            param: "x".into(),
            value,
            game,
        }
    }

    #[test]
    fn zero_load_record_is_all_zero() {
        let g = scenario_same_type(0.0, &MarketParams::default(), &shape()).unwrap();
        let r = &run_sweep(&[point(g, 0.0)], PayoffRule::ClosedForm).unwrap()[0];
        assert_eq!(r.capacity, 0.0);
        assert_eq!(r.grand_value, 0.0);
        for p in &r.players {
            assert_eq!(
                (p.h_star, p.r_hat, p.shapley, p.payment, p.payoff),
                (0.0, 0.0, 0.0, 0.0, 0.0)
            );
        }
    }

    #[test]
    fn empty_sweep_rejected() {
        assert!(run_sweep(&[], PayoffRule::ClosedForm).is_err());
    }

    #[test]
    fn load_sweep_value_column_nondecreasing() {
        let market = MarketParams::default();
        let points: Vec<_> = default_load_grid()
            .into_iter()
            .map(|l| point(scenario_same_type(l, &market, &shape()).unwrap(), l))
            .collect();
        let records = run_sweep(&points, PayoffRule::ClosedForm).unwrap();
        assert!(records
            .windows(2)
            .all(|w| w[0].grand_value <= w[1].grand_value));
        for (r, p) in records.iter().zip(&points) {
            assert_eq!(r.sweep_value, p.value);
        }
    }

    #[test]
    fn omega_sweep_heavy_share_nonincreasing() {
        let market = MarketParams::default();
        let points: Vec<_> = default_omega_grid()
            .into_iter()
            .map(|w| point(scenario_omega(w, 5e6, &market, &shape()).unwrap(), w))
            .collect();
        let records = run_sweep(&points, PayoffRule::ClosedForm).unwrap();
        let share: Vec<f64> = records
            .iter()
            .map(|r| r.player(Player::ServiceProvider(0)).h_star / r.capacity)
            .collect();
        assert!(share.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*share.last().unwrap(), 0.0);
    }

    #[test]
    fn record_invariants_hold_for_each_rule() {
        let market = MarketParams::default();
        let g = scenario_omega(0.7, 6e6, &market, &shape()).unwrap();
        for rule in [
            PayoffRule::ClosedForm,
            PayoffRule::Enumeration,
            PayoffRule::Sampling {
                samples: 1000,
                seed: 5,
            },
        ] {
            let r = &run_sweep(&[point(g.clone(), 0.7)], rule).unwrap()[0];
            let h: f64 = r.players.iter().map(|p| p.h_star).sum();
            assert_eq!(h, r.capacity);
            let phi: f64 = r.players.iter().map(|p| p.shapley).sum();
            assert!(close_rel(phi, r.grand_value, 1e-9, r.grand_value));
            let pay: f64 = r.players.iter().map(|p| p.payment).sum();
            assert!(close_rel(
                pay,
                market.capex_price() * r.capacity,
                1e-6,
                market.capex_price() * r.capacity
            ));
            for p in &r.players {
                assert!(close_rel(
                    p.r_hat - p.payment,
                    p.payoff,
                    1e-9,
                    p.r_hat.abs().max(p.payoff.abs())
                ));
            }
        }
    }
}
