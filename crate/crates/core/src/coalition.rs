//! Players and coalitions as bitmasks.
//!
//! Bit 0 is always the network owner; service provider `i` (zero based)
//! lives at bit `i + 1`. Abstract games built through
//! [`TabularGame`](crate::game::TabularGame) use plain indices `0..n`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest player universe a [`Coalition`] can address.
pub const MAX_PLAYERS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    NetworkOwner,
    /// Zero-based service provider index.
    ServiceProvider(usize),
}

impl Player {
    pub const fn index(self) -> usize {
        match self {
            Player::NetworkOwner => 0,
            Player::ServiceProvider(i) => i + 1,
        }
    }

    pub const fn from_index(index: usize) -> Self {
        if index == 0 {
            Player::NetworkOwner
        } else {
            Player::ServiceProvider(index - 1)
        }
    }

    /// `NO`, `SP1`, `SP2`, ... (one based for display).
    pub fn label(self) -> String {
        match self {
            Player::NetworkOwner => "NO".to_string(),
            Player::ServiceProvider(i) => format!("SP{}", i + 1),
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A set of players encoded as a 64-bit mask.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Every player of an `n`-player universe.
    pub fn grand(n: usize) -> Self {
        assert!(
            n <= MAX_PLAYERS,
            "coalition universe limited to {MAX_PLAYERS} players"
        );
        if n == MAX_PLAYERS {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        Coalition::EMPTY.with(index)
    }

    pub fn from_players<I: IntoIterator<Item = Player>>(players: I) -> Self {
        players
            .into_iter()
            .fold(Coalition::EMPTY, |c, p| c.with(p.index()))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Coalition::EMPTY, |c, i| c.with(i))
    }

    #[must_use]
    pub fn with(self, index: usize) -> Self {
        assert!(index < MAX_PLAYERS);
        Coalition(self.0 | (1u64 << index))
    }

    #[must_use]
    pub fn without(self, index: usize) -> Self {
        assert!(index < MAX_PLAYERS);
        Coalition(self.0 & !(1u64 << index))
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_PLAYERS && self.0 & (1u64 << index) != 0
    }

    pub fn contains_player(self, player: Player) -> bool {
        self.contains(player.index())
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when no member has index `>= n`.
    pub fn fits(self, n: usize) -> bool {
        n >= MAX_PLAYERS || self.0 >> n == 0
    }

    /// Member indices in increasing order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let current = self.next?;
        self.next = if current == self.universe {
            None
        } else {
            // next submask above `current`
            Some(((current | !self.universe).wrapping_add(1)) & self.universe)
        };
        Some(Coalition(current))
    }
}
