use serde::{Deserialize, Serialize};

use super::{ensure_players, PayoffVector, MAX_ENUMERATION_PLAYERS};
use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::{CharacteristicFunction, TabularGame};
use crate::numeric::close_rel;

/// Absolute slack allowed on each coalition-rationality inequality.
pub const CORE_SLACK: f64 = 1e-9;

/// Relative tolerance on the efficiency equality.
const EFFICIENCY_REL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreCheck {
    pub in_core: bool,
    /// `sum_i x_i == v(N)` within tolerance.
    pub efficient: bool,
    /// First coalition (in bitmask order) that could do better on its own;
    /// the grand coalition when only efficiency fails.
    pub violating_coalition: Option<Coalition>,
    /// Smallest `x(S) - v(S)` over all coalitions, and where it occurs.
    pub min_slack: f64,
    pub tightest: Coalition,
}

/// Exhaustive core membership test over all `2^n` coalitions.
pub fn check_core<G>(game: &G, payoffs: &PayoffVector) -> Result<CoreCheck>
where
    G: CharacteristicFunction + ?Sized,
{
    let slacks = coalition_slacks(game, payoffs)?;
    let n = game.player_count();
    let grand = Coalition::grand(n);
    let grand_value = game.value(grand);
    let efficient = close_rel(payoffs.total(), grand_value, EFFICIENCY_REL, grand_value);

    let mut violating = None;
    let mut min_slack = f64::INFINITY;
    let mut tightest = Coalition::EMPTY;
    for (bits, &slack) in slacks.iter().enumerate() {
        if slack < min_slack {
            min_slack = slack;
            tightest = Coalition::from_bits(bits as u64);
        }
        if violating.is_none() && slack < -CORE_SLACK {
            violating = Some(Coalition::from_bits(bits as u64));
        }
    }
    if violating.is_none() && !efficient {
        violating = Some(grand);
    }
    Ok(CoreCheck {
        in_core: violating.is_none(),
        efficient,
        violating_coalition: violating,
        min_slack,
        tightest,
    })
}

/// `x(S) - v(S)` for every coalition, indexed by bitmask.
pub fn coalition_slacks<G>(game: &G, payoffs: &PayoffVector) -> Result<Vec<f64>>
where
    G: CharacteristicFunction + ?Sized,
{
    let n = game.player_count();
    ensure_players(
        "core check",
        n,
        MAX_ENUMERATION_PLAYERS,
        "the core test is exhaustive",
    )?;
    payoffs.check_len(n)?;
    let table = TabularGame::tabulate(game)?;
    let x = payoffs.as_slice();

    let size = 1usize << n;
    let mut sums = vec![0.0; size];
    for bits in 1..size {
        let low = bits.trailing_zeros() as usize;
        sums[bits] = sums[bits & (bits - 1)] + x[low];
    }
    Ok(sums
        .iter()
        .zip(table.values())
        .map(|(s, v)| s - v)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn zero_game_zero_payoff_is_in_core() {
        let t = TabularGame::new(3, vec![0.0; 8]).unwrap();
        let c = check_core(&t, &PayoffVector::new(vec![0.0; 3])).unwrap();
        assert!(c.in_core);
        assert!(c.efficient);
        assert_eq!(c.violating_coalition, None);
    }

    #[test]
    fn inefficient_surplus_flags_grand() {
        let t = TabularGame::new(2, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let c = check_core(&t, &PayoffVector::new(vec![1.0, 1.0])).unwrap();
        assert!(!c.in_core);
        assert!(!c.efficient);
        assert_eq!(c.violating_coalition, Some(Coalition::grand(2)));
    }

    #[test]
    fn length_checked() {
        let t = TabularGame::new(2, vec![0.0; 4]).unwrap();
        assert!(matches!(
            check_core(&t, &PayoffVector::new(vec![0.0])),
            Err(Error::PayoffLength {
                expected: 2,
                actual: 1
            })
        ));
    }

    #[test]
    fn slacks_are_sum_minus_value() {
        let t = TabularGame::new(2, vec![0.0, 1.0, 2.0, 5.0]).unwrap();
        let s = coalition_slacks(&t, &PayoffVector::new(vec![2.0, 3.0])).unwrap();
        assert_eq!(s, vec![0.0, 1.0, 1.0, 0.0]);
    }
}
