//! Projective statistics over solution sets: exact evaluation, histograms
//! and empirical proportions.

use crate::arith::{odd_primes_between, OddPrime};
use crate::error::{Error, Result};
use crate::lattice::{monochromatic_basis, reduce_black, Color};
use crate::solutions::{enumerate, SolutionQuadruplet};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Comparison tolerance for the one statistic evaluated in floating point.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// Built-in statistics, each invariant under `(a, b, c, d) ↦ λ(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// `(c + d) / (a + b)`
    SumRatio,
    /// `cd / ab`
    ProductRatio,
    /// `(c + d) / √(ab)`, the only non-rational one
    SumOverRootProduct,
    /// `min(c, d) / max(a, b)`
    MinOverMax,
    /// `min(a, b) / max(a, b)`
    Balance,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [
        Statistic::SumRatio,
        Statistic::ProductRatio,
        Statistic::SumOverRootProduct,
        Statistic::MinOverMax,
        Statistic::Balance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::SumRatio => "sum-ratio",
            Statistic::ProductRatio => "product-ratio",
            Statistic::SumOverRootProduct => "sum-over-root-product",
            Statistic::MinOverMax => "min-over-max",
            Statistic::Balance => "balance",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Statistic::SumRatio => "(c+d)/(a+b)",
            Statistic::ProductRatio => "cd/(ab)",
            Statistic::SumOverRootProduct => "(c+d)/sqrt(ab)",
            Statistic::MinOverMax => "min(c,d)/max(a,b)",
            Statistic::Balance => "min(a,b)/max(a,b)",
        }
    }

    /// Whether the denominator is nonzero.
    pub fn guard(self, q: &SolutionQuadruplet) -> bool {
        match self {
            Statistic::SumRatio => q.a + q.b > 0,
            Statistic::ProductRatio | Statistic::SumOverRootProduct => q.a * q.b > 0,
            Statistic::MinOverMax | Statistic::Balance => q.a.max(q.b) > 0,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StatValue {
    Exact(Ratio<i128>),
    Real(f64),
}

impl StatValue {
    pub fn to_f64(self) -> f64 {
        match self {
            StatValue::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            StatValue::Real(x) => x,
        }
    }

    /// Exact equality for rationals, `REAL_TOLERANCE` (relative) otherwise.
    pub fn approx_eq(self, other: StatValue) -> bool {
        match (self, other) {
            (StatValue::Exact(x), StatValue::Exact(y)) => x == y,
            (x, y) => {
                let (x, y) = (x.to_f64(), y.to_f64());
                (x - y).abs() <= REAL_TOLERANCE * x.abs().max(y.abs()).max(1.0)
            }
        }
    }
}

pub fn eval_stat(stat: Statistic, q: &SolutionQuadruplet) -> Result<StatValue> {
    if !stat.guard(q) {
        return Err(Error::GuardViolation(stat.name()));
    }
    let (a, b, c, d) = (q.a as i128, q.b as i128, q.c as i128, q.d as i128);
    let exact = |n: i128, m: i128| StatValue::Exact(Ratio::new(n, m));
    Ok(match stat {
        Statistic::SumRatio => exact(c + d, a + b),
        Statistic::ProductRatio => exact(c * d, a * b),
        Statistic::SumOverRootProduct => StatValue::Real((c + d) as f64 / ((a * b) as f64).sqrt()),
        Statistic::MinOverMax => exact(c.min(d), a.max(b)),
        Statistic::Balance => exact(a.min(b), a.max(b)),
    })
}

/// Equal-width histogram over `[0, max observed]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    /// Items skipped because the statistic's guard failed.
    pub excluded: u64,
}

fn bin_index(v: StatValue, max: StatValue, bins: usize) -> usize {
    let idx = match (v, max) {
        (StatValue::Exact(v), StatValue::Exact(m)) if *m.numer() != 0 => {
            (v * Ratio::from_integer(bins as i128) / m).floor().to_integer() as usize
        }
        (v, m) if m.to_f64() > 0.0 => (v.to_f64() / m.to_f64() * bins as f64).floor() as usize,
        _ => 0,
    };
    idx.min(bins - 1)
}

pub fn histogram<'a>(
    stat: Statistic,
    items: impl IntoIterator<Item = &'a SolutionQuadruplet>,
    bins: usize,
) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::OutOfRange { value: 0, expected: "bins >= 1" });
    }
    let mut excluded = 0;
    let mut values = Vec::new();
    for q in items {
        match eval_stat(stat, q) {
            Ok(v) => values.push(v),
            Err(Error::GuardViolation(_)) => excluded += 1,
            Err(e) => return Err(e),
        }
    }
    let max = values
        .iter()
        .copied()
        .max_by(|x, y| match (x, y) {
            (StatValue::Exact(x), StatValue::Exact(y)) => x.cmp(y),
            _ => x.to_f64().total_cmp(&y.to_f64()),
        })
        .unwrap_or(StatValue::Exact(Ratio::from_integer(0)));
    let mut counts = vec![0u64; bins];
    for v in &values {
        counts[bin_index(*v, max, bins)] += 1;
    }
    let top = max.to_f64();
    let edges = (0..=bins).map(|i| top * i as f64 / bins as f64).collect();
    Ok(Histogram { edges, counts, total: values.len() as u64, excluded })
}

/// Histogram of `stat` over the full solution set of `p`.
pub fn distribution(p: OddPrime, stat: Statistic, bins: usize) -> Result<Histogram> {
    histogram(stat, &enumerate(p)?, bins)
}

/// An open interval `(lo, hi)`; infinite ends are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, v: StatValue) -> bool {
        let x = v.to_f64();
        self.lo < x && x < self.hi
    }
}

impl FromStr for Interval {
    type Err = Error;
    /// `LO:HI`, with `inf` / `-inf` for open ends.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("interval {s:?} is not LO:HI"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(bad());
        }
        Ok(Interval { lo, hi })
    }
}

/// Where [`estimate`] draws its solutions from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMode {
    /// Every solution of every prime in `[p_min, p_max]`.
    Exhaustive { p_min: u64, p_max: u64 },
    /// `samples` seeded draws of a prime in `[p_min, p_max]` and a uniform
    /// `μ ∈ [2, p - 2]`; draws whose lattice is white are discarded.
    Sampling { samples: u64, seed: u64, p_min: u64, p_max: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub proportion: f64,
    pub hits: u64,
    pub evaluated: u64,
    pub discarded: u64,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    hits: u64,
    evaluated: u64,
    discarded: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            hits: self.hits + o.hits,
            evaluated: self.evaluated + o.evaluated,
            discarded: self.discarded + o.discarded,
        }
    }

    fn record(&mut self, stat: Statistic, q: &SolutionQuadruplet, interval: Interval) -> Result<()> {
        match eval_stat(stat, q) {
            Ok(v) => {
                self.evaluated += 1;
                self.hits += interval.contains(v) as u64;
            }
            Err(Error::GuardViolation(_)) => self.discarded += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

fn sample_once(stat: Statistic, interval: Interval, seed: u64, index: u64, lo: u64, hi: u64) -> Result<Tally> {
    // One stream per sample keeps the draws independent of scheduling.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let p = loop {
        if let Ok(p) = OddPrime::new(rng.gen_range(lo..=hi)) {
            break p;
        }
    };
    let mu = rng.gen_range(2..=p.get() - 2) as i64;
    let mut tally = Tally::default();
    match monochromatic_basis(p, mu)? {
        Some((Color::Black, basis)) => {
            let r = reduce_black(p, &basis)?;
            tally.record(stat, &SolutionQuadruplet::new(r.a, r.b, r.c, r.d), interval)?;
        }
        Some((Color::White, _)) => tally.discarded += 1,
        None => return Err(Error::Invariant(format!("Λ_{mu}({p}) has no monochromatic basis"))),
    }
    Ok(tally)
}

/// Proportion of evaluated solutions whose statistic falls in `interval`.
pub fn estimate(mode: EstimateMode, stat: Statistic, interval: Interval) -> Result<Estimate> {
    let tally = match mode {
        EstimateMode::Exhaustive { p_min, p_max } => odd_primes_between(p_min, p_max)
            .into_par_iter()
            .map(|p| {
                let mut t = Tally::default();
                for q in &enumerate(p)? {
                    t.record(stat, q, interval)?;
                }
                Ok(t)
            })
            .try_reduce(Tally::default, |x, y| Ok(x.merge(y)))?,
        EstimateMode::Sampling { samples, seed, p_min, p_max } => {
            let lo = p_min.max(5);
            let hi = p_max.min(OddPrime::LIMIT - 1);
            if lo > hi || !(lo..=hi).any(|n| OddPrime::new(n).is_ok()) {
                return Err(Error::OutOfRange {
                    value: p_max as i128,
                    expected: "a sampling range containing a prime >= 5",
                });
            }
            (0..samples)
                .into_par_iter()
                .map(|i| sample_once(stat, interval, seed, i, lo, hi))
                .try_reduce(Tally::default, |x, y| Ok(x.merge(y)))?
        }
    };
    if tally.evaluated == 0 {
        return Err(Error::EmptySample);
    }
    Ok(Estimate {
        proportion: tally.hits as f64 / tally.evaluated as f64,
        hits: tally.hits,
        evaluated: tally.evaluated,
        discarded: tally.discarded,
    })
}
