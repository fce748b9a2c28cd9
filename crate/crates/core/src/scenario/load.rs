use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::market::{LoadProfile, DEFAULT_SLOTS_PER_DAY};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineComponent {
    pub amplitude: f64,
    /// Phase offset in timeslots.
    pub offset: f64,
}

/// `l_t = a0 + sum_k a_k sin(2 k pi (t - t_k) / T)` for `t = 1..=T`, where
/// component `k` (one based) is the k-th harmonic of the daily period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinusoidalLoadSpec {
    pub base: f64,
    pub components: Vec<SineComponent>,
    pub slots: usize,
}

impl Default for SinusoidalLoadSpec {
    /// Residential profile with an evening peak: a daily harmonic peaking
    /// around slot 90 and a weaker half-day harmonic.
    fn default() -> Self {
        SinusoidalLoadSpec {
            base: 1.0,
            components: vec![
                SineComponent {
                    amplitude: 0.45,
                    offset: 66.0,
                },
                SineComponent {
                    amplitude: 0.15,
                    offset: 30.0,
                },
            ],
            slots: DEFAULT_SLOTS_PER_DAY,
        }
    }
}

impl SinusoidalLoadSpec {
    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::domain(
                "components",
                "need at least one sinusoidal component",
            ));
        }
        if self.slots == 0 {
            return Err(Error::domain("slots", "must be >= 1"));
        }
        if !self.base.is_finite() {
            return Err(Error::domain("a0", "must be finite"));
        }
        if self
            .components
            .iter()
            .any(|c| !(c.amplitude.is_finite() && c.offset.is_finite()))
        {
            return Err(Error::domain(
                "components",
                "amplitudes and offsets must be finite",
            ));
        }
        Ok(())
    }

    fn raw(&self, t: usize) -> f64 {
        let period = self.slots as f64;
        self.components
            .iter()
            .enumerate()
            .fold(self.base, |acc, (k, c)| {
                let harmonic = (k + 1) as f64;
                acc + c.amplitude * (2.0 * harmonic * PI * (t as f64 - c.offset) / period).sin()
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesizedLoad {
    pub profile: LoadProfile,
    /// Slots where the sinusoid dipped below zero and was clamped.
    pub clamped_slots: usize,
}

pub fn synth_load(spec: &SinusoidalLoadSpec) -> Result<SynthesizedLoad> {
    spec.validate()?;
    let mut clamped_slots = 0;
    let loads = (1..=spec.slots)
        .map(|t| {
            let l = spec.raw(t);
            if l < 0.0 {
                clamped_slots += 1;
                0.0
            } else {
                l
            }
        })
        .collect();
    Ok(SynthesizedLoad {
        profile: LoadProfile::new(loads)?,
        clamped_slots,
    })
}

pub fn scale_load(profile: &LoadProfile, factor: f64) -> Result<LoadProfile> {
    profile.scaled(factor)
}
