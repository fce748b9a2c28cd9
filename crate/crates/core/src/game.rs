//! Characteristic functions and the coinvestment game instance.

use crate::coalition::{Coalition, Player, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::market::{MarketParams, ServiceProvider};
use crate::utility::{optimal_allocation_single, Maximizer, SingleOptimum};

/// A transferable-utility game over players `0..player_count()`.
///
/// Solution concepts are written against this trait so that hand-built
/// fixtures can be checked alongside coinvestment games.
pub trait CharacteristicFunction: Sync {
    fn player_count(&self) -> usize;

    /// `v(S)`. Callers guarantee `S` fits the player universe.
    fn value(&self, coalition: Coalition) -> f64;

    fn grand_coalition(&self) -> Coalition {
        Coalition::grand(self.player_count())
    }
}

impl<G: CharacteristicFunction + ?Sized> CharacteristicFunction for &G {
    fn player_count(&self) -> usize {
        (**self).player_count()
    }

    fn value(&self, coalition: Coalition) -> f64 {
        (**self).value(coalition)
    }
}

/// A game given by an explicit table of `2^n` coalition values, indexed by
/// coalition bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularGame {
    players: usize,
    values: Vec<f64>,
}

/// Tables beyond this many players are refused.
pub const MAX_TABULATED_PLAYERS: usize = 24;

impl TabularGame {
    pub fn new(players: usize, values: Vec<f64>) -> Result<Self> {
        if players > MAX_TABULATED_PLAYERS {
            return Err(Error::TooManyPlayers {
                operation: "tabular game",
                limit: MAX_TABULATED_PLAYERS,
                players,
                hint: "use an analytic characteristic function",
            });
        }
        let expected = 1usize << players;
        if values.len() != expected {
            return Err(Error::domain(
                "values",
                format!("expected {expected} coalition values, got {}", values.len()),
            ));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain("values", format!("non-finite value {v}")));
        }
        Ok(TabularGame { players, values })
    }

    /// Evaluates `game` on every coalition of its universe.
    pub fn tabulate<G: CharacteristicFunction + ?Sized>(game: &G) -> Result<Self> {
        let n = game.player_count();
        if n > MAX_TABULATED_PLAYERS {
            return Err(Error::TooManyPlayers {
                operation: "tabulation",
                limit: MAX_TABULATED_PLAYERS,
                players: n,
                hint: "evaluate coalitions on demand",
            });
        }
        let values = (0..1u64 << n)
            .map(|bits| game.value(Coalition::from_bits(bits)))
            .collect();
        Ok(TabularGame { players: n, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl CharacteristicFunction for TabularGame {
    fn player_count(&self) -> usize {
        self.players
    }

    fn value(&self, coalition: Coalition) -> f64 {
        self.values[coalition.bits() as usize]
    }
}

/// One network owner and `N >= 1` service providers sharing a market.
///
/// The network owner is implicit: it has no load, no benefit factor and is
/// player index 0. Per-provider optima are computed once at construction;
/// the instance is immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct GameInstance {
    market: MarketParams,
    sps: Vec<ServiceProvider>,
    optima: Vec<SingleOptimum>,
}

impl GameInstance {
    pub fn new(market: MarketParams, sps: Vec<ServiceProvider>) -> Result<Self> {
        if sps.is_empty() {
            return Err(Error::domain("sps", "need at least one service provider"));
        }
        if sps.len() + 1 > MAX_PLAYERS {
            return Err(Error::TooManyPlayers {
                operation: "game instance",
                limit: MAX_PLAYERS,
                players: sps.len() + 1,
                hint: "split the providers into several games",
            });
        }
        for sp in &sps {
            if sp.load.len() != market.slots_per_day() {
                return Err(Error::SlotMismatch {
                    expected: market.slots_per_day(),
                    actual: sp.load.len(),
                });
            }
            if !(sp.beta.is_finite() && sp.beta >= 0.0) {
                return Err(Error::domain(
                    "beta",
                    format!("{} has beta {}", sp.id, sp.beta),
                ));
            }
        }
        let optima = sps
            .iter()
            .map(|sp| optimal_allocation_single(sp, &market, Maximizer::ClosedForm))
            .collect();
        Ok(GameInstance {
            market,
            sps,
            optima,
        })
    }

    pub fn market(&self) -> &MarketParams {
        &self.market
    }

    pub fn service_providers(&self) -> &[ServiceProvider] {
        &self.sps
    }

    pub fn sp_count(&self) -> usize {
        self.sps.len()
    }

    /// `N + 1`.
    pub fn players(&self) -> usize {
        self.sps.len() + 1
    }

    /// Standalone optimum of service provider `sp` (zero based).
    pub fn optimum(&self, sp: usize) -> SingleOptimum {
        self.optima[sp]
    }

    pub fn optima(&self) -> &[SingleOptimum] {
        &self.optima
    }

    pub fn player_ids(&self) -> impl Iterator<Item = Player> {
        (0..self.players()).map(Player::from_index)
    }

    /// `v(S)`, rejecting coalitions outside the player universe.
    pub fn coalition_value(&self, coalition: Coalition) -> Result<f64> {
        if !coalition.fits(self.players()) {
            return Err(Error::UnknownPlayer {
                coalition,
                players: self.players(),
            });
        }
        Ok(self.value_unchecked(coalition))
    }

    fn value_unchecked(&self, coalition: Coalition) -> f64 {
        // nothing is built without the owner
        if !coalition.contains(Player::NetworkOwner.index()) {
            return 0.0;
        }
        coalition
            .without(Player::NetworkOwner.index())
            .members()
            .map(|i| self.optima[i - 1].value)
            .sum()
    }

    /// Capacity and per-player shares maximizing the grand coalition value.
    pub fn grand_allocation(&self) -> Allocation {
        let mut shares = Vec::with_capacity(self.players());
        shares.push(0.0);
        shares.extend(self.optima.iter().map(|o| o.h_star));
        let capacity = shares.iter().sum();
        Allocation { shares, capacity }
    }
}

impl CharacteristicFunction for GameInstance {
    fn player_count(&self) -> usize {
        self.players()
    }

    fn value(&self, coalition: Coalition) -> f64 {
        debug_assert!(coalition.fits(self.players()));
        self.value_unchecked(coalition)
    }
}

/// Per-player capacity shares (millicores, indexed by player index, owner
/// first and always zero) and their total.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    pub shares: Vec<f64>,
    pub capacity: f64,
}

impl Allocation {
    pub fn share(&self, player: Player) -> f64 {
        self.shares[player.index()]
    }

    /// Fraction of the capacity held by `player`; zero when nothing is built.
    pub fn fraction(&self, player: Player) -> f64 {
        if self.capacity > 0.0 {
            self.share(player) / self.capacity
        } else {
            0.0
        }
    }
}
