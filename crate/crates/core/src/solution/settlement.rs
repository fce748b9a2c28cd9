//! Initial payments: each player pays the revenue it brings in minus the
//! payoff it is entitled to.

use serde::{Deserialize, Serialize};

use super::PayoffVector;
use crate::coalition::Player;
use crate::error::{Error, Result};
use crate::game::{CharacteristicFunction, GameInstance};
use crate::numeric::close_rel;
use crate::utility::horizon_revenue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SettlementEntry {
    pub revenue: f64,
    /// Negative when the player is paid.
    pub payment: f64,
    pub payoff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settlement {
    /// Indexed by player index, owner first.
    pub entries: Vec<SettlementEntry>,
    pub capacity: f64,
    pub grand_value: f64,
}

impl Settlement {
    pub fn entry(&self, player: Player) -> &SettlementEntry {
        &self.entries[player.index()]
    }

    pub fn total_payment(&self) -> f64 {
        crate::numeric::compensated_sum(self.entries.iter().map(|e| e.payment))
    }
}

/// Settles payoff vector `payoffs` at the grand-coalition optimum.
///
/// Each provider's revenue is what it collects with its optimal share over
/// the horizon; the owner serves nobody and collects nothing. Payment is
/// revenue minus payoff, so payments add up to the capacity bill `d * C*`.
pub fn settle(game: &GameInstance, payoffs: &PayoffVector) -> Result<Settlement> {
    payoffs.check_len(game.players())?;
    let grand_value = game.value(game.grand_coalition());
    let total = payoffs.total();
    if !close_rel(total, grand_value, 1e-9, grand_value) {
        return Err(Error::NotEfficient { total, grand_value });
    }

    let allocation = game.grand_allocation();
    let entries = game
        .player_ids()
        .map(|player| {
            let revenue = match player {
                Player::NetworkOwner => 0.0,
                Player::ServiceProvider(i) => horizon_revenue(
                    &game.service_providers()[i],
                    game.market(),
                    allocation.share(player),
                ),
            };
            let payoff = payoffs.get(player);
            SettlementEntry {
                revenue,
                payment: revenue - payoff,
                payoff,
            }
        })
        .collect();
    Ok(Settlement {
        entries,
        capacity: allocation.capacity,
        grand_value,
    })
}
