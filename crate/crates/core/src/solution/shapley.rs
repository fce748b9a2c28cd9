//! Shapley value by subset enumeration, by the equal-split closed form of
//! the coinvestment game, and by Monte Carlo over arrival orders.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ensure_players, PayoffVector};
use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::game::{CharacteristicFunction, GameInstance, TabularGame};
use crate::numeric::compensated_sum;

/// Enumeration visits `n * 2^(n-1)` marginal contributions.
pub const MAX_ENUMERATION_PLAYERS: usize = 20;

/// Sampled permutations are tabulated first below this size.
const TABULATE_FOR_SAMPLING: usize = 16;

const SAMPLES_PER_CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapleyMethod {
    SubsetEnumeration,
    PermutationSampling,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapleyResult {
    pub payoffs: PayoffVector,
    pub method: ShapleyMethod,
    /// Number of samples drawn (sampling only).
    pub sample_count: Option<usize>,
    /// Standard error of each payoff estimate (sampling only).
    pub std_errors: Option<Vec<f64>>,
}

impl ShapleyResult {
    fn exact(payoffs: Vec<f64>, method: ShapleyMethod) -> Self {
        ShapleyResult {
            payoffs: PayoffVector::new(payoffs),
            method,
            sample_count: None,
            std_errors: None,
        }
    }
}

/// `phi_i = sum_{S without i} |S|! (n-|S|-1)! / n! * (v(S+i) - v(S))`.
pub fn shapley_enumeration<G>(game: &G) -> Result<ShapleyResult>
where
    G: CharacteristicFunction + ?Sized,
{
    let n = game.player_count();
    ensure_players(
        "Shapley enumeration",
        n,
        MAX_ENUMERATION_PLAYERS,
        "use permutation sampling instead",
    )?;
    if n == 0 {
        return Ok(ShapleyResult::exact(
            Vec::new(),
            ShapleyMethod::SubsetEnumeration,
        ));
    }
    let table = TabularGame::tabulate(game)?;
    let values = table.values();
    let weights = subset_weights(n);
    let grand = Coalition::grand(n);

    let payoffs = (0..n)
        .into_par_iter()
        .map(|i| {
            let others = grand.without(i);
            compensated_sum(others.subsets().map(|s| {
                let without = values[s.bits() as usize];
                let with = values[s.with(i).bits() as usize];
                weights[s.len()] * (with - without)
            }))
        })
        .collect();
    Ok(ShapleyResult::exact(
        payoffs,
        ShapleyMethod::SubsetEnumeration,
    ))
}

/// `w[k] = k! (n-k-1)! / n! = 1 / (n * C(n-1, k))`.
fn subset_weights(n: usize) -> Vec<f64> {
    let mut binom = 1.0_f64;
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        weights.push(1.0 / (n as f64 * binom));
        binom = binom * (n - 1 - k) as f64 / (k + 1) as f64;
    }
    weights
}

/// The owner precedes a given provider in exactly half of all arrival
/// orders, and a provider only adds value after the owner. Hence each
/// provider receives half its standalone value and the owner the other half
/// of the grand coalition value.
pub fn shapley_closed_form(game: &GameInstance) -> ShapleyResult {
    let halves: Vec<f64> = game.optima().iter().map(|o| 0.5 * o.value).collect();
    let mut payoffs = Vec::with_capacity(game.players());
    payoffs.push(compensated_sum(halves.iter().copied()));
    payoffs.extend(halves);
    ShapleyResult::exact(payoffs, ShapleyMethod::ClosedForm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub samples: usize,
    pub seed: u64,
    /// Pair every drawn order with its reverse; one sample is then the mean
    /// of the two orders' marginal contributions.
    pub antithetic: bool,
}

impl SamplingConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SamplingConfig {
            samples,
            seed,
            antithetic: true,
        }
    }
}

/// Antithetic permutation sampling with `samples` order pairs.
pub fn shapley_sampling<G>(game: &G, samples: usize, seed: u64) -> Result<ShapleyResult>
where
    G: CharacteristicFunction + ?Sized,
{
    shapley_sampling_with(game, &SamplingConfig::new(samples, seed))
}

pub fn shapley_sampling_with<G>(game: &G, config: &SamplingConfig) -> Result<ShapleyResult>
where
    G: CharacteristicFunction + ?Sized,
{
    if config.samples == 0 {
        return Err(Error::domain("samples", "must be >= 1"));
    }
    let n = game.player_count();
    ensure_players(
        "permutation sampling",
        n,
        MAX_PLAYERS,
        "coalitions are 64-bit masks",
    )?;
    if n <= TABULATE_FOR_SAMPLING {
        let table = TabularGame::tabulate(game)?;
        Ok(sample_orders(&table, config))
    } else {
        Ok(sample_orders(game, config))
    }
}

fn sample_orders<G>(game: &G, config: &SamplingConfig) -> ShapleyResult
where
    G: CharacteristicFunction + ?Sized,
{
    let n = game.player_count();
    let chunks = config.samples.div_ceil(SAMPLES_PER_CHUNK);

    // chunk c always draws from stream c, so the schedule cannot change the result
    let partials: Vec<Vec<Welford>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * SAMPLES_PER_CHUNK;
            let count = SAMPLES_PER_CHUNK.min(config.samples - start);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(chunk as u64);

            let mut stats = vec![Welford::default(); n];
            let mut order: Vec<usize> = (0..n).collect();
            let mut forward = vec![0.0; n];
            let mut backward = vec![0.0; n];
            for _ in 0..count {
                order.shuffle(&mut rng);
                accumulate_marginals(game, order.iter().copied(), &mut forward);
                if config.antithetic {
                    accumulate_marginals(game, order.iter().rev().copied(), &mut backward);
                    for (s, (f, b)) in stats.iter_mut().zip(forward.iter().zip(&backward)) {
                        s.push(0.5 * (f + b));
                    }
                } else {
                    for (s, f) in stats.iter_mut().zip(&forward) {
                        s.push(*f);
                    }
                }
            }
            stats
        })
        .collect();

    let mut totals = vec![Welford::default(); n];
    for part in &partials {
        for (t, p) in totals.iter_mut().zip(part) {
            t.merge(p);
        }
    }

    ShapleyResult {
        payoffs: PayoffVector::new(totals.iter().map(|w| w.mean).collect()),
        method: ShapleyMethod::PermutationSampling,
        sample_count: Some(config.samples),
        std_errors: Some(totals.iter().map(Welford::std_error).collect()),
    }
}

fn accumulate_marginals<G, I>(game: &G, order: I, out: &mut [f64])
where
    G: CharacteristicFunction + ?Sized,
    I: Iterator<Item = usize>,
{
    let mut coalition = Coalition::EMPTY;
    let mut previous = game.value(coalition);
    for player in order {
        coalition = coalition.with(player);
        let current = game.value(coalition);
        out[player] = current - previous;
        previous = current;
    }
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Welford) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let (a, b, c) = (self.count as f64, other.count as f64, count as f64);
        self.mean += delta * b / c;
        self.m2 += other.m2 + delta * delta * a * b / c;
        self.count = count;
    }

    fn std_error(&self) -> f64 {
        if self.count < 2 {
            return f64::INFINITY;
        }
        let n = self.count as f64;
        (self.m2.max(0.0) / (n - 1.0) / n).sqrt()
    }
}
