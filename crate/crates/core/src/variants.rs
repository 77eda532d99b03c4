//! Brute-force counters for `n = ab + cd` and `n = ab - cd` with arbitrary
//! `n`, and the divisor-sum formula proposed for the difference equation.
//!
//! The formula's quadruplet convention is not pinned down, so every
//! combination of inequality and zero handling is counted and the
//! comparison report says which (if any) agree with the formula.

use crate::error::{Error, Result};
use crate::solutions::SolutionQuadruplet;
use rayon::prelude::*;
use std::collections::HashSet;
use std::fmt;

pub const SUM_LIMIT: u64 = 100_000;
pub const DIFF_LIMIT: u64 = 10_000;
pub const FORMULA_LIMIT: u64 = 1_000_000_000;
pub const REPORT_LIMIT: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inequality {
    /// `min(a, b) > max(c, d)`
    Strict,
    /// `min(a, b) >= max(c, d)`
    NonStrict,
}

/// Treatment of quadruplets with `cd = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZeroHandling {
    /// Only `c = d = 0`.
    Require,
    /// Any `cd = 0` quadruplet satisfying the inequality.
    Admit,
    /// `cd = 0` with `c + d <= min(a, b) - 1`.
    Range,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariantConvention {
    pub inequality: Inequality,
    pub zero: ZeroHandling,
}

impl VariantConvention {
    pub const ALL: [VariantConvention; 6] = [
        VariantConvention::new(Inequality::Strict, ZeroHandling::Require),
        VariantConvention::new(Inequality::Strict, ZeroHandling::Admit),
        VariantConvention::new(Inequality::Strict, ZeroHandling::Range),
        VariantConvention::new(Inequality::NonStrict, ZeroHandling::Require),
        VariantConvention::new(Inequality::NonStrict, ZeroHandling::Admit),
        VariantConvention::new(Inequality::NonStrict, ZeroHandling::Range),
    ];

    pub const fn new(inequality: Inequality, zero: ZeroHandling) -> Self {
        VariantConvention { inequality, zero }
    }

    /// Smallest admissible `min(a, b)` when `max(c, d) = m`.
    fn lower(&self, m: u64) -> u64 {
        match self.inequality {
            Inequality::Strict => m + 1,
            Inequality::NonStrict => m.max(1),
        }
    }

    /// Whether `(c, d)` is allowed next to `min(a, b) = s`.
    pub fn admits(&self, s: u64, c: u64, d: u64) -> bool {
        let m = c.max(d);
        let ordered = match self.inequality {
            Inequality::Strict => s > m,
            Inequality::NonStrict => s >= m,
        };
        if !ordered {
            return false;
        }
        if c != 0 && d != 0 {
            return true;
        }
        match self.zero {
            ZeroHandling::Require => c == 0 && d == 0,
            ZeroHandling::Admit => true,
            ZeroHandling::Range => c + d < s,
        }
    }
}

impl fmt::Display for VariantConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ineq = match self.inequality {
            Inequality::Strict => "strict",
            Inequality::NonStrict => "nonstrict",
        };
        let zero = match self.zero {
            ZeroHandling::Require => "require",
            ZeroHandling::Admit => "admit",
            ZeroHandling::Range => "range",
        };
        write!(f, "{ineq}/{zero}")
    }
}

fn check(n: u64, limit: u64, expected: &'static str) -> Result<()> {
    if n == 0 || n > limit {
        return Err(Error::OutOfRange { value: n as i128, expected });
    }
    Ok(())
}

/// Push every `(a, b, c, d)` and `(b, a, c, d)` for `ab = r`, `a >= b >= lower`,
/// that the convention admits.
fn push_factorizations(
    out: &mut HashSet<SolutionQuadruplet>,
    conv: VariantConvention,
    r: u64,
    lower: u64,
    c: u64,
    d: u64,
) {
    let mut b = lower;
    while b * b <= r {
        if r.is_multiple_of(b) {
            let a = r / b;
            if conv.admits(b, c, d) {
                out.insert(SolutionQuadruplet::new(a, b, c, d));
                out.insert(SolutionQuadruplet::new(b, a, c, d));
            }
        }
        b += 1;
    }
}

fn sorted(set: HashSet<SolutionQuadruplet>) -> Vec<SolutionQuadruplet> {
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort_unstable_by_key(SolutionQuadruplet::table_key);
    v
}

/// All quadruplets with `n = ab + cd` under `conv`.
pub fn sum_solutions(n: u64, conv: VariantConvention) -> Result<Vec<SolutionQuadruplet>> {
    check(n, SUM_LIMIT, "n in [1, 10^5]")?;
    let mut out = HashSet::new();
    // m = max(c, d), k = min(c, d); ab = n - mk >= lower(m)^2.
    let mut m = 0;
    while conv.lower(m).pow(2) <= n {
        let lower = conv.lower(m);
        for k in 0..=m {
            let Some(r) = n.checked_sub(m * k).filter(|r| *r >= lower * lower) else {
                break;
            };
            push_factorizations(&mut out, conv, r, lower, m, k);
            push_factorizations(&mut out, conv, r, lower, k, m);
        }
        m += 1;
    }
    Ok(sorted(out))
}

pub fn count_sum(n: u64, conv: VariantConvention) -> Result<u64> {
    Ok(sum_solutions(n, conv)?.len() as u64)
}

/// Upper bound on `max(c, d)` for `n = ab - cd`.
///
/// Strict: `(m + 1)² <= ab = n + cd <= n + m²` gives `m <= (n - 1) / 2`.
/// Non-strict: `min(a, b) <= n`, hence `m <= n`.
fn diff_max_cd(n: u64, conv: VariantConvention) -> u64 {
    match conv.inequality {
        Inequality::Strict => (n - 1) / 2,
        Inequality::NonStrict => n,
    }
}

/// `n = ab - cd` by iterating `(c, d)` and factoring `n + cd`.
///
/// `slack` widens every search bound; tests use it to confirm the bounds
/// lose nothing.
pub fn diff_solutions_by_cd(
    n: u64,
    conv: VariantConvention,
    slack: u64,
) -> Result<Vec<SolutionQuadruplet>> {
    check(n, DIFF_LIMIT, "n in [1, 10^4]")?;
    let mut out = HashSet::new();
    for m in 0..=diff_max_cd(n, conv) + slack {
        let lower = conv.lower(m);
        // lower² <= n + mk bounds k from below.
        let k_min = match (lower * lower).checked_sub(n) {
            Some(gap) if m > 0 => gap.div_ceil(m).saturating_sub(slack),
            _ => 0,
        };
        for k in k_min..=m {
            let r = n + m * k;
            push_factorizations(&mut out, conv, r, lower, m, k);
            push_factorizations(&mut out, conv, r, lower, k, m);
        }
    }
    Ok(sorted(out))
}

/// `n = ab - cd` by iterating `s = min(a, b) <= t = max(a, b)` and
/// splitting `st - n` into `cd`.
pub fn diff_solutions_by_ab(
    n: u64,
    conv: VariantConvention,
    slack: u64,
) -> Result<Vec<SolutionQuadruplet>> {
    check(n, DIFF_LIMIT, "n in [1, 10^4]")?;
    let mut out = HashSet::new();
    let (s_max, cap_of): (u64, fn(u64) -> u64) = match conv.inequality {
        // n >= st - (s - 1)² >= 2s - 1
        Inequality::Strict => (n.div_ceil(2), |s| s - 1),
        Inequality::NonStrict => (n, |s| s),
    };
    for s in 1..=s_max + slack {
        let cap = cap_of(s);
        // st - n = cd <= cap²
        let t_max = (n + cap * cap) / s + slack;
        for t in s..=t_max {
            let Some(r) = (s * t).checked_sub(n) else { continue };
            let mut pairs = Vec::new();
            if r == 0 {
                for x in 0..=cap {
                    pairs.push((x, 0));
                    pairs.push((0, x));
                }
            } else {
                for c in 1..=cap {
                    if r % c == 0 && r / c <= cap {
                        pairs.push((c, r / c));
                    }
                }
            }
            for (c, d) in pairs {
                if conv.admits(s, c, d) {
                    out.insert(SolutionQuadruplet::new(s, t, c, d));
                    out.insert(SolutionQuadruplet::new(t, s, c, d));
                }
            }
        }
    }
    Ok(sorted(out))
}

pub fn count_diff(n: u64, conv: VariantConvention) -> Result<u64> {
    Ok(diff_solutions_by_cd(n, conv, 0)?.len() as u64)
}

/// `Σ (d + 1 + n/d)` over divisors `d` of `n` with `d² >= n`.
pub fn divisor_formula(n: u64) -> Result<u64> {
    check(n, FORMULA_LIMIT, "n in [1, 10^9]")?;
    // d² >= n exactly when its cofactor e = n/d has e² <= n.
    let mut total = 0;
    let mut e = 1;
    while e * e <= n {
        if n.is_multiple_of(e) {
            total += n / e + 1 + e;
        }
        e += 1;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareRow {
    pub n: u64,
    pub formula: u64,
    /// Brute-force counts, indexed like [`VariantConvention::ALL`].
    pub counts: [u64; 6],
}

impl CompareRow {
    pub fn matches(&self, i: usize) -> bool {
        self.counts[i] == self.formula
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    /// Conventions whose count equals the formula for every row.
    pub matching: Vec<VariantConvention>,
}

impl CompareReport {
    pub fn summary(&self) -> String {
        let n_max = self.rows.last().map_or(0, |r| r.n);
        if self.matching.is_empty() {
            format!("no convention matches the divisor formula on all n <= {n_max}")
        } else {
            let names: Vec<_> = self.matching.iter().map(|c| c.to_string()).collect();
            format!("conventions matching the divisor formula on all n <= {n_max}: {}", names.join(", "))
        }
    }

    /// First `n` where each convention disagrees with the formula.
    pub fn first_mismatch(&self) -> [Option<u64>; 6] {
        std::array::from_fn(|i| self.rows.iter().find(|r| !r.matches(i)).map(|r| r.n))
    }
}

/// Brute-force difference counts against the divisor formula for every
/// `n <= n_max` and every convention.
pub fn compare_report(n_max: u64) -> Result<CompareReport> {
    check(n_max, REPORT_LIMIT, "n_max in [1, 500]")?;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut counts = [0; 6];
            for (slot, conv) in counts.iter_mut().zip(VariantConvention::ALL) {
                *slot = count_diff(n, conv)?;
            }
            Ok(CompareRow { n, formula: divisor_formula(n)?, counts })
        })
        .collect::<Result<Vec<_>>>()?;
    let matching = VariantConvention::ALL
        .into_iter()
        .enumerate()
        .filter(|(i, _)| rows.iter().all(|r| r.matches(*i)))
        .map(|(_, c)| c)
        .collect();
    Ok(CompareReport { rows, matching })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::odd_primes_between;

    const STRICT_REQUIRE: VariantConvention =
        VariantConvention::new(Inequality::Strict, ZeroHandling::Require);
    const STRICT_ADMIT: VariantConvention = VariantConvention::new(Inequality::Strict, ZeroHandling::Admit);
    const LOOSE_REQUIRE: VariantConvention =
        VariantConvention::new(Inequality::NonStrict, ZeroHandling::Require);

    /// Quartic scan of a box large enough for both equations
    /// (`min(a, b) <= n`, `max(a, b) <= 2n`, `max(c, d) <= n`).
    fn box_scan(n: u64, conv: VariantConvention, diff: bool) -> HashSet<SolutionQuadruplet> {
        let mut out = HashSet::new();
        for a in 1..=2 * n {
            for b in 1..=2 * n {
                for c in 0..=n {
                    for d in 0..=n {
                        let hit = if diff { a * b == n + c * d } else { a * b + c * d == n };
                        if hit && conv.admits(a.min(b), c, d) {
                            out.insert(SolutionQuadruplet::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        out
    }

    fn as_set(v: Vec<SolutionQuadruplet>) -> HashSet<SolutionQuadruplet> {
        v.into_iter().collect()
    }

    #[test]
    fn sum_examples() {
        assert_eq!(count_sum(29, STRICT_REQUIRE).unwrap(), 15);
        assert_eq!(count_sum(4, STRICT_REQUIRE).unwrap(), 3);
        assert_eq!(count_sum(3, STRICT_REQUIRE).unwrap(), 2);
        assert!(count_sum(0, STRICT_REQUIRE).is_err());
        assert!(count_sum(SUM_LIMIT + 1, STRICT_REQUIRE).is_err());
    }

    #[test]
    fn sum_matches_box_scan() {
        for n in 1..=14 {
            for conv in VariantConvention::ALL {
                assert_eq!(as_set(sum_solutions(n, conv).unwrap()), box_scan(n, conv, false), "n={n} {conv}");
            }
        }
    }

    #[test]
    fn sum_count_law_for_primes() {
        for p in odd_primes_between(3, 1000) {
            let n = p.get();
            assert_eq!(count_sum(n, STRICT_REQUIRE).unwrap(), n.div_ceil(2));
            // cd = 0 forces c = d = 0 for primes under the strict inequality.
            assert_eq!(count_sum(n, STRICT_ADMIT).unwrap(), n.div_ceil(2));
        }
    }

    #[test]
    fn diff_examples() {
        assert_eq!(count_diff(1, STRICT_ADMIT).unwrap(), 1);
        assert_eq!(count_diff(2, STRICT_ADMIT).unwrap(), 2);
        assert_eq!(
            diff_solutions_by_cd(2, LOOSE_REQUIRE, 0).unwrap(),
            sorted(box_scan(2, LOOSE_REQUIRE, true))
        );
        assert!(count_diff(DIFF_LIMIT + 1, STRICT_ADMIT).is_err());
    }

    #[test]
    fn diff_matches_box_scan() {
        for n in 1..=12 {
            for conv in VariantConvention::ALL {
                let expect = box_scan(n, conv, true);
                assert_eq!(as_set(diff_solutions_by_cd(n, conv, 0).unwrap()), expect, "n={n} {conv}");
                assert_eq!(as_set(diff_solutions_by_ab(n, conv, 0).unwrap()), expect, "n={n} {conv}");
            }
        }
    }

    #[test]
    fn diff_strategies_agree() {
        for n in 1..=300 {
            for conv in VariantConvention::ALL {
                let by_cd = diff_solutions_by_cd(n, conv, 0).unwrap();
                assert_eq!(by_cd, diff_solutions_by_ab(n, conv, 0).unwrap(), "n={n} {conv}");
            }
        }
    }

    #[test]
    fn search_bounds_have_no_slack() {
        for n in (1..=120).step_by(7) {
            for conv in VariantConvention::ALL {
                let tight = diff_solutions_by_cd(n, conv, 0).unwrap();
                assert_eq!(tight, diff_solutions_by_cd(n, conv, 2).unwrap());
                assert_eq!(tight, diff_solutions_by_ab(n, conv, 2).unwrap());
            }
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(divisor_formula(29).unwrap(), 31);
        assert_eq!(divisor_formula(1).unwrap(), 3);
        assert_eq!(divisor_formula(12).unwrap(), 31);
        assert_eq!(divisor_formula(2).unwrap(), 4);
        assert_eq!(divisor_formula(16).unwrap(), (16 + 1 + 1) + (8 + 1 + 2) + (4 + 1 + 4));
        assert!(divisor_formula(0).is_err());
        assert!(divisor_formula(FORMULA_LIMIT).is_ok());
    }

    #[test]
    fn formula_matches_direct_scan() {
        for n in 1..=10_000u64 {
            let direct: u64 = (1..=n).filter(|d| n % d == 0 && d * d >= n).map(|d| d + 1 + n / d).sum();
            assert_eq!(divisor_formula(n).unwrap(), direct, "n={n}");
        }
    }

    #[test]
    fn report_shape() {
        let r = compare_report(2).unwrap();
        assert_eq!(r.rows.iter().map(|r| r.formula).collect::<Vec<_>>(), [3, 4]);
        assert_eq!(r.rows[0].counts[0], 1);
        assert!(compare_report(0).is_err());
        assert!(compare_report(501).is_err());
        let r = compare_report(29).unwrap();
        assert_eq!(r.rows[28].formula, 31);
        assert!(!r.summary().is_empty());
    }
}
