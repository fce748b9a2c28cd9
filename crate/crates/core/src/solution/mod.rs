//! Payoff division and stability checks.

mod classify;
mod core_check;
mod settlement;
mod shapley;
mod supermodular;

pub use classify::{classify_players, PlayerClass};
pub use core_check::{check_core, coalition_slacks, CoreCheck, CORE_SLACK};
pub use settlement::{settle, Settlement, SettlementEntry};
pub use shapley::{
    shapley_closed_form, shapley_enumeration, shapley_sampling, shapley_sampling_with,
    SamplingConfig, ShapleyMethod, ShapleyResult, MAX_ENUMERATION_PLAYERS,
};
pub use supermodular::{
    check_supermodularity, SupermodularityReport, SupermodularityViolation,
    MAX_SUPERMODULARITY_PLAYERS, SUPERMODULARITY_SLACK,
};

use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, Player};
use crate::error::{Error, Result};
use crate::game::CharacteristicFunction;
use crate::numeric::compensated_sum;

/// Money assigned to each player, indexed by player index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PayoffVector(Vec<f64>);

impl PayoffVector {
    pub fn new(values: Vec<f64>) -> Self {
        PayoffVector(values)
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

    pub fn get(&self, player: Player) -> f64 {
        self.0[player.index()]
    }

    pub fn total(&self) -> f64 {
        compensated_sum(self.0.iter().copied())
    }

    pub fn coalition_total(&self, coalition: Coalition) -> f64 {
        coalition.members().map(|i| self.0[i]).sum()
    }

    pub(crate) fn check_len(&self, players: usize) -> Result<()> {
        if self.0.len() == players {
            Ok(())
        } else {
            Err(Error::PayoffLength {
                expected: players,
                actual: self.0.len(),
            })
        }
    }
}

impl From<Vec<f64>> for PayoffVector {
    fn from(values: Vec<f64>) -> Self {
        PayoffVector(values)
    }
}

impl std::ops::Index<usize> for PayoffVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

/// `v(S + {i}) - v(S)`; `i` must not already be in `S`.
pub fn marginal_contribution<G>(game: &G, player: usize, coalition: Coalition) -> Result<f64>
where
    G: CharacteristicFunction + ?Sized,
{
    let n = game.player_count();
    if player >= n || !coalition.fits(n) {
        return Err(Error::UnknownPlayer {
            coalition: coalition.with(player.min(63)),
            players: n,
        });
    }
    if coalition.contains(player) {
        return Err(Error::PlayerInCoalition { player, coalition });
    }
    Ok(game.value(coalition.with(player)) - game.value(coalition))
}

pub(crate) fn ensure_players(
    operation: &'static str,
    players: usize,
    limit: usize,
    hint: &'static str,
) -> Result<()> {
    if players > limit {
        Err(Error::TooManyPlayers {
            operation,
            limit,
            players,
            hint,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameInstance;
    use crate::market::{LoadProfile, MarketParams, ServiceProvider};

    fn two_sp_game() -> GameInstance {
        let market = MarketParams::default();
        let p = market.price_per_slot();
        let sps = vec![
            ServiceProvider::new("a", p, LoadProfile::new(vec![4e6 / 96.0; 96]).unwrap()).unwrap(),
            ServiceProvider::new(
                "b",
                2.0 * p,
                LoadProfile::new(vec![1e6 / 96.0; 96]).unwrap(),
            )
            .unwrap(),
        ];
        GameInstance::new(market, sps).unwrap()
    }

    #[test]
    fn marginal_contribution_examples() {
        let g = two_sp_game();
        let sp1 = Player::ServiceProvider(0).index();
        let no = Player::NetworkOwner.index();
        assert_eq!(
            marginal_contribution(&g, sp1, Coalition::EMPTY).unwrap(),
            0.0
        );
        let sps = Coalition::from_indices([1, 2]);
        let m_sum = g.optimum(0).value + g.optimum(1).value;
        assert_eq!(marginal_contribution(&g, no, sps).unwrap(), m_sum);
        let d = marginal_contribution(&g, sp1, Coalition::singleton(no)).unwrap();
        let expected = g.coalition_value(Coalition::from_indices([0, 1])).unwrap()
            - g.coalition_value(Coalition::singleton(0)).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d, g.optimum(0).value);
    }

    #[test]
    fn marginal_contribution_rejects_member() {
        let g = two_sp_game();
        assert!(matches!(
            marginal_contribution(&g, 1, Coalition::from_indices([0, 1])),
            Err(Error::PlayerInCoalition { player: 1, .. })
        ));
        assert!(marginal_contribution(&g, 7, Coalition::EMPTY).is_err());
    }
}
