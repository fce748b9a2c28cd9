//! Coalitional coinvestment between a network owner and service providers.
//!
//! A network owner hosts edge capacity that service providers buy into.
//! The value of a coalition is the revenue its providers earn from the
//! capacity they jointly deploy, net of the capital cost; nothing is built
//! without the owner. This crate computes optimal capacity, coalition
//! values, Shapley payoffs, core and supermodularity checks, the initial
//! payment settlement, and sweeps over the edge-computing scenarios.
//!
//! Player index 0 is always the network owner; service provider `i` (zero
//! based) is player `i + 1`.

pub mod coalition;
pub mod error;
pub mod game;
pub mod market;
pub mod numeric;
pub mod scenario;
pub mod solution;
pub mod utility;

pub use coalition::{Coalition, Player};
pub use error::{Error, Result};
pub use game::{Allocation, CharacteristicFunction, GameInstance, TabularGame};
pub use market::{LoadProfile, MarketParams, ServiceProvider};
pub use solution::{
    check_core, check_supermodularity, classify_players, marginal_contribution, settle,
    shapley_closed_form, shapley_enumeration, shapley_sampling, CoreCheck, PayoffVector,
    PlayerClass, Settlement, ShapleyMethod, ShapleyResult, SupermodularityReport,
};
pub use utility::{eval_utility, optimal_allocation_single, Maximizer, SingleOptimum};
