use serde::{Deserialize, Serialize};

use super::{ensure_players, MAX_ENUMERATION_PLAYERS};
use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::{CharacteristicFunction, TabularGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerClass {
    /// Every coalition lacking the player is worth zero.
    pub veto: bool,
    /// The player never changes any coalition's value.
    pub null: bool,
}

/// Veto and null flags by exhaustive enumeration, exact comparisons.
pub fn classify_players<G>(game: &G) -> Result<Vec<PlayerClass>>
where
    G: CharacteristicFunction + ?Sized,
{
    let n = game.player_count();
    ensure_players(
        "player classification",
        n,
        MAX_ENUMERATION_PLAYERS,
        "classification is exhaustive",
    )?;
    let table = TabularGame::tabulate(game)?;
    let values = table.values();
    let grand = Coalition::grand(n);

    Ok((0..n)
        .map(|i| {
            let mut class = PlayerClass {
                veto: true,
                null: true,
            };
            for s in grand.without(i).subsets() {
                let without = values[s.bits() as usize];
                if without != 0.0 {
                    class.veto = false;
                }
                if values[s.with(i).bits() as usize] != without {
                    class.null = false;
                }
                if !class.veto && !class.null {
                    break;
                }
            }
            class
        })
        .collect())
}
