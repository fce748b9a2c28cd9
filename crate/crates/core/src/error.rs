use thiserror::Error;

use crate::coalition::Coalition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter violated its domain (negative price, NaN load, ...).
    #[error("invalid {field}: {reason}")]
    Domain { field: &'static str, reason: String },

    #[error("load profile has {actual} slots, market expects {expected}")]
    SlotMismatch { expected: usize, actual: usize },

    #[error("coalition {coalition} references players outside a {players}-player game")]
    UnknownPlayer {
        coalition: Coalition,
        players: usize,
    },

    #[error("player {player} already belongs to coalition {coalition}")]
    PlayerInCoalition { player: usize, coalition: Coalition },

    #[error("{operation} supports at most {limit} players, game has {players}; {hint}")]
    TooManyPlayers {
        operation: &'static str,
        limit: usize,
        players: usize,
        hint: &'static str,
    },

    #[error("payoff vector has {actual} entries, game has {expected} players")]
    PayoffLength { expected: usize, actual: usize },

    #[error("payoffs sum to {total}, grand coalition value is {grand_value}")]
    NotEfficient { total: f64, grand_value: f64 },

    #[error("closed-form Shapley disagrees with enumeration for player {player}: {closed} vs {enumerated}")]
    OracleMismatch {
        player: usize,
        closed: f64,
        enumerated: f64,
    },

    #[error("instance {index}: {source}")]
    Instance {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn at_instance(self, index: usize) -> Self {
        Error::Instance {
            index,
            source: Box::new(self),
        }
    }
}
