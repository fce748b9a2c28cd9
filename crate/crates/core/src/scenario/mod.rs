//! Diurnal load synthesis, the experiment families of the edge-computing
//! case study, and the sweep runner that turns them into tables.

mod families;
mod load;
mod sweep;

pub use families::{
    default_load_grid, default_omega_grid, default_price_grid, scenario_omega,
    scenario_price_sweep, scenario_same_type, HEAVY_TO_LIGHT_RATIO,
};
pub use load::{scale_load, synth_load, SineComponent, SinusoidalLoadSpec, SynthesizedLoad};
pub use sweep::{
    run_sweep, PayoffRule, PlayerRow, SweepPoint, SweepRecord, ORACLE_CHECK_MAX_PLAYERS,
};
