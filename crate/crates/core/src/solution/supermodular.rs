use serde::{Deserialize, Serialize};

use super::ensure_players;
use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::{CharacteristicFunction, TabularGame};

/// The check visits `n * 3^(n-1)` nested pairs.
pub const MAX_SUPERMODULARITY_PLAYERS: usize = 12;

/// Absolute float slack on `Delta_i(T) <= Delta_i(S)`.
pub const SUPERMODULARITY_SLACK: f64 = 1e-9;

/// A witness `Delta_i(smaller) > Delta_i(larger)` with `smaller ⊆ larger`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupermodularityViolation {
    pub player: usize,
    pub smaller: Coalition,
    pub larger: Coalition,
    /// `Delta_i(smaller) - Delta_i(larger)`, positive.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupermodularityReport {
    pub holds: bool,
    pub counterexample: Option<SupermodularityViolation>,
}

/// Brute-force test that marginal contributions never shrink as the
/// coalition grows: every player `i`, every `T ⊆ S ⊆ N \ {i}`.
pub fn check_supermodularity<G>(game: &G) -> Result<SupermodularityReport>
where
    G: CharacteristicFunction + ?Sized,
{
    let n = game.player_count();
    ensure_players(
        "supermodularity check",
        n,
        MAX_SUPERMODULARITY_PLAYERS,
        "the nested-subset enumeration grows as 3^n",
    )?;
    let table = TabularGame::tabulate(game)?;
    let values = table.values();
    let grand = Coalition::grand(n);
    let mut marginal = vec![0.0; 1usize << n];

    for i in 0..n {
        let others = grand.without(i);
        for s in others.subsets() {
            marginal[s.bits() as usize] =
                values[s.with(i).bits() as usize] - values[s.bits() as usize];
        }
        for larger in others.subsets() {
            let upper = marginal[larger.bits() as usize];
            for smaller in larger.subsets() {
                let lower = marginal[smaller.bits() as usize];
                if lower > upper + SUPERMODULARITY_SLACK {
                    return Ok(SupermodularityReport {
                        holds: false,
                        counterexample: Some(SupermodularityViolation {
                            player: i,
                            smaller,
                            larger,
                            excess: lower - upper,
                        }),
                    });
                }
            }
        }
    }
    Ok(SupermodularityReport {
        holds: true,
        counterexample: None,
    })
}
