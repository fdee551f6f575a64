//! Reproducible Monte Carlo for random races.
//!
//! Trial `i` of a run with seed `s` draws from its own ChaCha8 stream
//! (key derived from `s`, stream id `i`), so a trial's outcome depends only
//! on `(s, i)`. Runs may be split across any number of threads and the
//! counters merged by addition without changing a single bit of the result.

use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// Tie rate at or above which an estimate is flagged.
pub const TIE_RATE_LIMIT: f64 = 1e-6;

/// Per-trial random source.
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn new(seed: u64, trial_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial_index);
        TrialRng(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on the open interval (0, 1), 53 bits.
    pub fn open01(&mut self) -> f64 {
        ((self.0.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `1..=n`.
    fn below_inclusive(&mut self, n: u32) -> u32 {
        1 + ((u128::from(self.0.next_u64()) * u128::from(n)) >> 64) as u32
    }
}

/// Step-size law for both racers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DistributionSpec {
    Uniform { lo: f64, hi: f64 },
    Exponential { rate: f64 },
    Normal { mean: f64, sd: f64 },
    LogNormal { log_mean: f64, log_sd: f64 },
    /// `3^K (1 + noise * xi)` with `K` uniform on `1..=max_exponent` and
    /// `xi` uniform on `(-1, 1)`.
    PowersOfThree { max_exponent: u32, noise: f64 },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64, what: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::domain(format!("{what} must be finite")))
            }
        };
        match *self {
            DistributionSpec::Uniform { lo, hi } => {
                finite(lo, "lo")?;
                finite(hi, "hi")?;
                if lo >= hi {
                    return Err(Error::domain(format!("uniform needs lo < hi, got ({lo}, {hi})")));
                }
            }
            DistributionSpec::Exponential { rate } => {
                if !(rate.is_finite() && rate > 0.0) {
                    return Err(Error::domain(format!("exponential rate must be > 0, got {rate}")));
                }
            }
            DistributionSpec::Normal { mean, sd } => {
                finite(mean, "mean")?;
                if !(sd.is_finite() && sd > 0.0) {
                    return Err(Error::domain(format!("normal sd must be > 0, got {sd}")));
                }
            }
            DistributionSpec::LogNormal { log_mean, log_sd } => {
                finite(log_mean, "log-mean")?;
                if !(log_sd.is_finite() && log_sd > 0.0) {
                    return Err(Error::domain(format!("lognormal log-sd must be > 0, got {log_sd}")));
                }
            }
            DistributionSpec::PowersOfThree { max_exponent, noise } => {
                if max_exponent == 0 || max_exponent > 600 {
                    return Err(Error::domain(format!(
                        "powers-of-three max exponent must be in 1..=600, got {max_exponent}"
                    )));
                }
                if !(noise.is_finite() && (0.0..1.0).contains(&noise)) {
                    return Err(Error::domain(format!("powers-of-three noise must be in [0, 1), got {noise}")));
                }
            }
        }
        Ok(())
    }

    /// Builds a spec from a CLI family name and positional parameters;
    /// missing parameters take the standard defaults.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self> {
        let p = |i: usize, default: f64| params.get(i).copied().unwrap_or(default);
        let expected = match name {
            "uniform" | "normal" | "lognormal" | "pow3" => 2,
            "exp" | "exponential" => 1,
            _ => return Err(Error::domain(format!("unknown distribution {name:?}"))),
        };
        if params.len() > expected {
            return Err(Error::domain(format!("{name} takes at most {expected} parameters")));
        }
        let spec = match name {
            "uniform" => DistributionSpec::Uniform { lo: p(0, 0.0), hi: p(1, 1.0) },
            "exp" | "exponential" => DistributionSpec::Exponential { rate: p(0, 1.0) },
            "normal" => DistributionSpec::Normal { mean: p(0, 0.0), sd: p(1, 1.0) },
            "lognormal" => DistributionSpec::LogNormal { log_mean: p(0, 0.0), log_sd: p(1, 1.0) },
            _ => {
                let n = p(0, 40.0);
                if n.fract() != 0.0 || n < 1.0 {
                    return Err(Error::domain(format!("max exponent must be a positive integer, got {n}")));
                }
                DistributionSpec::PowersOfThree { max_exponent: n as u32, noise: p(1, 0.0) }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Draws one value. Every family consumes a fixed number of words.
    pub fn sample(&self, rng: &mut TrialRng) -> f64 {
        match *self {
            DistributionSpec::Uniform { lo, hi } => lo + (hi - lo) * rng.open01(),
            DistributionSpec::Exponential { rate } => -rng.open01().ln() / rate,
            DistributionSpec::Normal { mean, sd } => mean + sd * standard_normal(rng),
            DistributionSpec::LogNormal { log_mean, log_sd } => (log_mean + log_sd * standard_normal(rng)).exp(),
            DistributionSpec::PowersOfThree { max_exponent, noise } => {
                let k = rng.below_inclusive(max_exponent);
                let xi = 2.0 * rng.open01() - 1.0;
                3f64.powi(k as i32) * (1.0 + noise * xi)
            }
        }
    }
}

/// Box-Muller, cosine branch only: two uniforms per normal, no carried state.
fn standard_normal(rng: &mut TrialRng) -> f64 {
    let u1 = rng.open01();
    let u2 = rng.open01();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Uniform { lo, hi } => write!(f, "uniform({lo},{hi})"),
            DistributionSpec::Exponential { rate } => write!(f, "exponential({rate})"),
            DistributionSpec::Normal { mean, sd } => write!(f, "normal({mean},{sd})"),
            DistributionSpec::LogNormal { log_mean, log_sd } => write!(f, "lognormal({log_mean},{log_sd})"),
            DistributionSpec::PowersOfThree { max_exponent, noise } => {
                write!(f, "powers_of_three({max_exponent},{noise})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Racer {
    X,
    Y,
}

/// One stopping point: a racer's position after some step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stop {
    pub position: f64,
    pub owner: Racer,
}

/// Both racers' steps, their prefix sums, and the merged stopping points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaceTrace {
    pub n: usize,
    pub x_steps: Vec<f64>,
    pub y_steps: Vec<f64>,
    pub x_prefix: Vec<f64>,
    pub y_prefix: Vec<f64>,
    /// All `2n` positions sorted ascending; equal positions keep X first.
    pub stops: Vec<Stop>,
}

fn prefix_sums(v: &[f64]) -> Vec<f64> {
    v.iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

impl RaceTrace {
    pub fn from_steps(x_steps: Vec<f64>, y_steps: Vec<f64>) -> Result<Self> {
        if x_steps.len() != y_steps.len() || x_steps.is_empty() {
            return Err(Error::domain("racers need the same positive number of steps"));
        }
        let x_prefix = prefix_sums(&x_steps);
        let y_prefix = prefix_sums(&y_steps);
        let mut stops: Vec<Stop> = x_prefix
            .iter()
            .map(|&p| Stop { position: p, owner: Racer::X })
            .chain(y_prefix.iter().map(|&p| Stop { position: p, owner: Racer::Y }))
            .collect();
        stops.sort_by(|a, b| a.position.total_cmp(&b.position));
        Ok(RaceTrace {
            n: x_steps.len(),
            x_steps,
            y_steps,
            x_prefix,
            y_prefix,
            stops,
        })
    }

    /// Step differences `Z_i = X_i - Y_i`.
    pub fn differences(&self) -> Vec<f64> {
        self.x_steps.iter().zip(&self.y_steps).map(|(x, y)| x - y).collect()
    }
}

/// `n` steps per racer, X first, from the trial's own stream.
pub fn sample_race(dist: &DistributionSpec, n: usize, seed: u64, trial_index: u64) -> Result<RaceTrace> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::domain("race needs at least one step"));
    }
    let mut rng = TrialRng::new(seed, trial_index);
    let x: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
    let y: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
    RaceTrace::from_steps(x, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Failure,
    /// A comparison required to be strict landed on exact equality.
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventSpec {
    /// `sum X > sum Y` after every step.
    LeadAllTheWay,
    /// `sum X >= sum Y` after every step.
    NeverBehind,
    /// X strictly ahead after odd steps, Y strictly ahead after even steps.
    Alternation,
    /// `X_i > Y_i` for all `i`, or `X_i < Y_i` for all `i`.
    ComparableVectors,
    /// Sorted draws `U_(i) > V_(i)` for all `i`, where `U` are X's draws
    /// and `V` are Y's; the race length plays the role of `m`.
    TiedDominance,
}

impl EventSpec {
    pub fn name(&self) -> &'static str {
        match self {
            EventSpec::LeadAllTheWay => "lead_all_the_way",
            EventSpec::NeverBehind => "never_behind",
            EventSpec::Alternation => "alternation",
            EventSpec::ComparableVectors => "comparable_vectors",
            EventSpec::TiedDominance => "tied_dominance",
        }
    }
}

fn all_strict(pairs: impl Iterator<Item = (f64, f64)>, want_greater: impl Fn(usize) -> bool) -> Outcome {
    for (k, (a, b)) in pairs.enumerate() {
        if a == b {
            return Outcome::Tie;
        }
        if (a > b) != want_greater(k + 1) {
            return Outcome::Failure;
        }
    }
    Outcome::Success
}

/// Scans comparisons in step order and stops at the first one that decides
/// the event, reporting a tie if that comparison is an exact equality.
pub fn evaluate_event(trace: &RaceTrace, event: EventSpec) -> Outcome {
    let prefixes = || trace.x_prefix.iter().copied().zip(trace.y_prefix.iter().copied());
    match event {
        EventSpec::LeadAllTheWay => all_strict(prefixes(), |_| true),
        EventSpec::NeverBehind => {
            if prefixes().all(|(x, y)| x >= y) {
                Outcome::Success
            } else {
                Outcome::Failure
            }
        }
        EventSpec::Alternation => all_strict(prefixes(), |k| k % 2 == 1),
        EventSpec::ComparableVectors => {
            let pairs = || trace.x_steps.iter().copied().zip(trace.y_steps.iter().copied());
            let (x1, y1) = (trace.x_steps[0], trace.y_steps[0]);
            if x1 == y1 {
                return Outcome::Tie;
            }
            let up = x1 > y1;
            all_strict(pairs(), |_| up)
        }
        EventSpec::TiedDominance => {
            let mut u = trace.x_steps.clone();
            let mut v = trace.y_steps.clone();
            u.sort_by(f64::total_cmp);
            v.sort_by(f64::total_cmp);
            all_strict(u.into_iter().zip(v), |_| true)
        }
    }
}

/// Ownership of the merged stopping points: `-1` for X, `+1` for Y.
pub fn ownership_signs(trace: &RaceTrace) -> Result<Vec<i8>> {
    leading_ownership(trace, trace.stops.len())
}

/// Ownership of the first `count` merged stopping points.
pub fn leading_ownership(trace: &RaceTrace, count: usize) -> Result<Vec<i8>> {
    if count > trace.stops.len() {
        return Err(Error::domain(format!("trace has only {} stops", trace.stops.len())));
    }
    // a tie among the first `count` stops, or at the boundary, changes the labels
    let window = (count + 1).min(trace.stops.len());
    if trace.stops[..window].windows(2).any(|w| w[0].position == w[1].position) {
        return Err(Error::Tie("two stopping points coincide".into()));
    }
    Ok(trace.stops[..count]
        .iter()
        .map(|s| match s.owner {
            Racer::X => -1,
            Racer::Y => 1,
        })
        .collect())
}

/// All partial sums of a sign sequence are `>= 0`.
pub fn signs_nonneg(signs: &[i8]) -> bool {
    signs
        .iter()
        .scan(0i64, |acc, &s| {
            *acc += i64::from(s);
            Some(*acc)
        })
        .all(|h| h >= 0)
}

/// `m` draws per racer, sorted; success iff X's `i`-th smallest beats Y's
/// for every `i`.
pub fn tied_dominance_trial(m: usize, dist: &DistributionSpec, seed: u64, trial_index: u64) -> Result<Outcome> {
    let trace = sample_race(dist, m, seed, trial_index)?;
    Ok(evaluate_event(&trace, EventSpec::TiedDominance))
}

fn require_lognormal(dist: &DistributionSpec) -> Result<(f64, f64)> {
    match *dist {
        DistributionSpec::LogNormal { log_mean, log_sd } => Ok((log_mean, log_sd)),
        other => Err(Error::domain(format!("multiplicative race needs a lognormal law, got {other}"))),
    }
}

/// Growth race: each step multiplies a racer's account by a lognormal
/// factor; success iff X's running product is strictly larger after every step.
pub fn multiplicative_race_trial(dist: &DistributionSpec, n: usize, seed: u64, trial_index: u64) -> Result<Outcome> {
    require_lognormal(dist)?;
    let trace = sample_race(dist, n, seed, trial_index)?;
    let products = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .scan(1.0, |acc, f| {
                *acc *= f;
                Some(*acc)
            })
            .collect()
    };
    let (px, py) = (products(&trace.x_steps), products(&trace.y_steps));
    Ok(all_strict(px.into_iter().zip(py), |_| true))
}

/// The same trial as [`multiplicative_race_trial`], run additively on the
/// log-factors: a normal race with the lognormal's parameters.
pub fn additive_log_race_trial(dist: &DistributionSpec, n: usize, seed: u64, trial_index: u64) -> Result<Outcome> {
    let (log_mean, log_sd) = require_lognormal(dist)?;
    let logs = DistributionSpec::Normal { mean: log_mean, sd: log_sd };
    let trace = sample_race(&logs, n, seed, trial_index)?;
    Ok(evaluate_event(&trace, EventSpec::LeadAllTheWay))
}

/// Two-sided confidence level for Wilson intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Confidence {
    P95,
    P999,
}

impl Confidence {
    pub fn z(self) -> f64 {
        match self {
            Confidence::P95 => 1.959_963_984_540_054,
            Confidence::P999 => 3.290_526_731_491_926,
        }
    }

    pub fn level(self) -> f64 {
        match self {
            Confidence::P95 => 0.95,
            Confidence::P999 => 0.999,
        }
    }
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo.min(p), hi.max(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Warning,
}

/// Outcome counts of a Monte Carlo run with a 95% Wilson interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub event: String,
    pub dist: String,
    pub n: usize,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub ties: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub status: Status,
}

impl Estimate {
    fn from_counts(event: &str, dist: String, n: usize, seed: u64, counts: Counts) -> Self {
        let (ci_low, ci_high) = wilson_interval(counts.successes, counts.trials, Confidence::P95.z());
        let tie_rate = counts.ties as f64 / counts.trials as f64;
        Estimate {
            event: event.to_string(),
            dist,
            n,
            seed,
            trials: counts.trials,
            successes: counts.successes,
            ties: counts.ties,
            point: counts.successes as f64 / counts.trials as f64,
            ci_low,
            ci_high,
            status: if tie_rate >= TIE_RATE_LIMIT { Status::Warning } else { Status::Ok },
        }
    }

    pub fn interval(&self, confidence: Confidence) -> (f64, f64) {
        wilson_interval(self.successes, self.trials, confidence.z())
    }

    pub fn contains(&self, value: &Rational, confidence: Confidence) -> bool {
        let (lo, hi) = self.interval(confidence);
        let v = to_f64(value);
        lo <= v && v <= hi
    }

    pub fn tie_rate(&self) -> f64 {
        self.ties as f64 / self.trials as f64
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Counts {
    trials: u64,
    successes: u64,
    ties: u64,
}

impl Counts {
    fn merge(self, other: Counts) -> Counts {
        Counts {
            trials: self.trials + other.trials,
            successes: self.successes + other.successes,
            ties: self.ties + other.ties,
        }
    }

    fn record(outcome: Outcome) -> Counts {
        Counts {
            trials: 1,
            successes: u64::from(outcome == Outcome::Success),
            ties: u64::from(outcome == Outcome::Tie),
        }
    }
}

/// Runs `trial(i)` for `i in 0..trials` on the current rayon pool.
pub fn estimate_trials<F>(event: &str, dist: String, n: usize, trials: u64, seed: u64, trial: F) -> Result<Estimate>
where
    F: Fn(u64) -> Result<Outcome> + Sync,
{
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    let counts = (0..trials)
        .into_par_iter()
        .map(|i| trial(i).map(Counts::record))
        .try_reduce(Counts::default, |a, b| Ok(a.merge(b)))?;
    Ok(Estimate::from_counts(event, dist, n, seed, counts))
}

/// Monte Carlo estimate of `event` over `trials` races of length `n`.
pub fn estimate_probability(
    event: EventSpec,
    dist: &DistributionSpec,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    estimate_trials(event.name(), dist.to_string(), n, trials, seed, |i| {
        sample_race(dist, n, seed, i).map(|t| evaluate_event(&t, event))
    })
}

/// [`estimate_probability`] on a dedicated pool of `workers` threads.
pub fn estimate_probability_with_workers(
    event: EventSpec,
    dist: &DistributionSpec,
    n: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Estimate> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
    pool.install(|| estimate_probability(event, dist, n, trials, seed))
}
