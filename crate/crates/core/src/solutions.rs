//! The solution set `S_p` of `p = ab + cd`, `min(a, b) > max(c, d)`, its
//! correspondence with the classes `{μ, p - μ}`, Klein orbits, and the
//! two-squares extractor.

use crate::arith::{mod_inverse, sqrt_minus_one, OddPrime};
use crate::error::{Error, Result};
use crate::lattice::{monochromatic_basis, reduce_black, Color};
use rayon::prelude::*;
use std::cmp::Reverse;
use std::collections::HashSet;
use std::fmt;

/// Largest input accepted by [`brute_force`].
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Primes up to this bound have [`two_squares`] cross-checked against the
/// full enumeration.
pub const TWO_SQUARES_CROSS_CHECK_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolutionQuadruplet {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl SolutionQuadruplet {
    pub const fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        SolutionQuadruplet { a, b, c, d }
    }

    /// `n = ab + cd` and `min(a, b) > max(c, d)`.
    pub fn solves(&self, n: u64) -> bool {
        let sum = self.a as u128 * self.b as u128 + self.c as u128 * self.d as u128;
        sum == n as u128 && self.a.min(self.b) > self.c.max(self.d)
    }

    pub fn swap_ab(self) -> Self {
        Self::new(self.b, self.a, self.c, self.d)
    }

    pub fn swap_cd(self) -> Self {
        Self::new(self.a, self.b, self.d, self.c)
    }

    pub fn swap_both(self) -> Self {
        Self::new(self.b, self.a, self.d, self.c)
    }

    /// The orbit under the Klein four-group, with repetitions.
    pub fn klein_images(self) -> [Self; 4] {
        [self, self.swap_ab(), self.swap_cd(), self.swap_both()]
    }

    /// `4 / |stabilizer|`.
    pub fn orbit_size(&self) -> u8 {
        4 / if self.a == self.b { 2 } else { 1 } / if self.c == self.d { 2 } else { 1 }
    }

    pub fn is_klein_fixed(&self) -> bool {
        self.a == self.b && self.c == self.d
    }

    /// Ordering of the printed tables: growing `cd`, then decreasing `a, b, c, d`.
    pub fn table_key(&self) -> (u128, Reverse<u64>, Reverse<u64>, Reverse<u64>, Reverse<u64>) {
        (
            self.c as u128 * self.d as u128,
            Reverse(self.a),
            Reverse(self.b),
            Reverse(self.c),
            Reverse(self.d),
        )
    }
}

impl fmt::Display for SolutionQuadruplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

pub fn validate(p: OddPrime, quad: (u64, u64, u64, u64)) -> bool {
    let (a, b, c, d) = quad;
    SolutionQuadruplet::new(a, b, c, d).solves(p.get())
}

fn sort_canonical(items: &mut [SolutionQuadruplet]) {
    items.sort_unstable_by_key(SolutionQuadruplet::table_key);
}

/// A class of the projective line over `F_p` that carries a solution.
///
/// `Zero` is the lattice `{x ≡ 0}` (`μ = 0`), `Infinity` the lattice
/// `{y ≡ 0}`, and `Pair(μ)` the mirror pair `{μ, p - μ}` stored by its
/// smaller member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MuClass {
    Zero,
    Infinity,
    Pair(u64),
}

impl MuClass {
    /// The pair containing `mu`; `mu ≡ 0, ±1` are rejected.
    pub fn pair(p: OddPrime, mu: u64) -> Result<Self> {
        let n = p.get();
        let mu = mu % n;
        if mu == 0 || mu == 1 || mu == n - 1 {
            return Err(Error::OutOfRange { value: mu as i128, expected: "mu in [2, p-2]" });
        }
        Ok(MuClass::Pair(mu.min(n - mu)))
    }

    /// Both members `(μ, p - μ)` of a pair class.
    pub fn members(&self, p: OddPrime) -> Option<(u64, u64)> {
        match *self {
            MuClass::Pair(lo) => Some((lo, p.get() - lo)),
            _ => None,
        }
    }

    /// The class of `μ⁻¹`; exchanges `Zero` and `Infinity`.
    pub fn inverse(&self, p: OddPrime) -> Result<Self> {
        match *self {
            MuClass::Zero => Ok(MuClass::Infinity),
            MuClass::Infinity => Ok(MuClass::Zero),
            MuClass::Pair(mu) => MuClass::pair(p, mod_inverse(mu as i128, p)?),
        }
    }

    /// Every class for `p`: `Zero`, `Infinity` and the `(p - 3) / 2` pairs.
    pub fn all(p: OddPrime) -> Vec<Self> {
        let mut out = vec![MuClass::Zero, MuClass::Infinity];
        out.extend((2..=(p.get() - 1) / 2).map(MuClass::Pair));
        out
    }
}

impl fmt::Display for MuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuClass::Zero => f.write_str("0"),
            MuClass::Infinity => f.write_str("inf"),
            MuClass::Pair(mu) => write!(f, "±{mu}"),
        }
    }
}

/// `S_p` in table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    p: OddPrime,
    items: Vec<SolutionQuadruplet>,
}

impl SolutionSet {
    /// Checks validity, distinctness and the `(p + 1) / 2` count.
    pub fn new(p: OddPrime, mut items: Vec<SolutionQuadruplet>) -> Result<Self> {
        if let Some(q) = items.iter().find(|q| !q.solves(p.get())) {
            return Err(Error::InvalidQuadruplet { n: p.get(), a: q.a, b: q.b, c: q.c, d: q.d });
        }
        sort_canonical(&mut items);
        if items.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!("duplicate solutions for p = {p}")));
        }
        if items.len() != p.solution_count() {
            return Err(Error::Invariant(format!(
                "p = {p} has {} solutions, expected {}",
                items.len(),
                p.solution_count()
            )));
        }
        Ok(SolutionSet { p, items })
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    pub fn items(&self) -> &[SolutionQuadruplet] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, q: &SolutionQuadruplet) -> bool {
        self.items.contains(q)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SolutionQuadruplet> {
        self.items.iter()
    }
}

impl<'a> IntoIterator for &'a SolutionSet {
    type Item = &'a SolutionQuadruplet;
    type IntoIter = std::slice::Iter<'a, SolutionQuadruplet>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// The solution attached to a class.
///
/// For a pair `{μ, p - μ}` exactly one of the two lattices has black
/// monochromatic bases; its reduced black basis `(a, c), (-d, b)` is the
/// solution.
pub fn solve_class(p: OddPrime, class: MuClass) -> Result<SolutionQuadruplet> {
    let n = p.get();
    let (lo, hi) = match class {
        MuClass::Zero => return Ok(SolutionQuadruplet::new(n, 1, 0, 0)),
        MuClass::Infinity => return Ok(SolutionQuadruplet::new(1, n, 0, 0)),
        MuClass::Pair(_) => class.members(p).expect("pair class"),
    };
    if lo < 2 || lo > hi {
        return Err(Error::OutOfRange { value: lo as i128, expected: "pair member in [2, (p-1)/2]" });
    }
    let lo_basis = monochromatic_basis(p, lo as i64)?;
    let hi_basis = monochromatic_basis(p, hi as i64)?;
    let black = match (lo_basis, hi_basis) {
        (Some((Color::Black, b)), Some((Color::White, _)))
        | (Some((Color::White, _)), Some((Color::Black, b))) => b,
        other => {
            return Err(Error::Invariant(format!(
                "class {class} of p = {p} does not have exactly one black member: {other:?}"
            )))
        }
    };
    let r = reduce_black(p, &black)?;
    Ok(SolutionQuadruplet::new(r.a, r.b, r.c, r.d))
}

/// All `(p + 1) / 2` solutions, one per class.
pub fn enumerate(p: OddPrime) -> Result<SolutionSet> {
    let items = MuClass::all(p)
        .into_par_iter()
        .map(|class| solve_class(p, class))
        .collect::<Result<Vec<_>>>()?;
    SolutionSet::new(p, items)
}

/// All solutions of `n = ab + cd`, `min(a, b) > max(c, d)`, by direct search.
pub fn brute_force(n: u64) -> Result<Vec<SolutionQuadruplet>> {
    if n == 0 || n > BRUTE_FORCE_LIMIT {
        return Err(Error::OutOfRange { value: n as i128, expected: "n in [1, 10^6]" });
    }
    let mut found = HashSet::new();
    // c >= d; then ab = n - cd with b <= a and b > c.
    let mut c = 0;
    while (c + 1) * (c + 1) <= n {
        for d in 0..=c {
            let rest = n - c * d;
            if (c + 1) * (c + 1) > rest {
                break;
            }
            let mut b = c + 1;
            while b * b <= rest {
                if rest.is_multiple_of(b) {
                    let q = SolutionQuadruplet::new(rest / b, b, c, d);
                    found.extend(q.klein_images());
                }
                b += 1;
            }
        }
        c += 1;
    }
    let mut items: Vec<_> = found.into_iter().collect();
    sort_canonical(&mut items);
    Ok(items)
}

/// The class whose lattice is spanned by `(a, c)` and `(-d, b)`.
pub fn mu_class_of(p: OddPrime, sol: &SolutionQuadruplet) -> Result<MuClass> {
    let n = p.get();
    if !sol.solves(n) {
        return Err(Error::InvalidQuadruplet { n, a: sol.a, b: sol.b, c: sol.c, d: sol.d });
    }
    if sol.c == 0 || sol.d == 0 {
        return match (sol.a, sol.b) {
            (a, 1) if a == n => Ok(MuClass::Zero),
            (1, b) if b == n => Ok(MuClass::Infinity),
            _ => Err(Error::InvalidQuadruplet { n, a: sol.a, b: sol.b, c: sol.c, d: sol.d }),
        };
    }
    // (a, c) in Λ_μ: a + μc ≡ 0.
    let mu = (mod_inverse(sol.c as i128, p)? as u128 * (n - sol.a % n) as u128 % n as u128) as u64;
    let fits = |m: u64| (m as u128 * sol.b as u128 + (n - sol.d % n) as u128).is_multiple_of(n as u128);
    if !fits(mu) && !fits(n - mu) {
        return Err(Error::InvalidQuadruplet { n, a: sol.a, b: sol.b, c: sol.c, d: sol.d });
    }
    MuClass::pair(p, mu)
}

/// One row of the orbit table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitRecord {
    /// The orbit member with `a >= b` and `c >= d`.
    pub representative: SolutionQuadruplet,
    pub size: u8,
}

/// Klein orbits of a solution set, in table order.
pub fn klein_orbits(set: &SolutionSet) -> Result<Vec<OrbitRecord>> {
    let members: HashSet<_> = set.iter().copied().collect();
    let mut records = Vec::new();
    for q in set {
        if q.klein_images().iter().any(|img| !members.contains(img)) {
            return Err(Error::NotKleinClosed);
        }
        if q.a >= q.b && q.c >= q.d {
            records.push(OrbitRecord { representative: *q, size: q.orbit_size() });
        }
    }
    records.sort_unstable_by_key(|r| r.representative.table_key());
    let total: usize = records.iter().map(|r| r.size as usize).sum();
    if total != set.len() {
        return Err(Error::Invariant(format!("orbit sizes sum to {total}, not {}", set.len())));
    }
    Ok(records)
}

/// The solutions fixed by `(a, b, c, d) ↦ (b, a, d, c)`.
pub fn klein_fixed_points(set: &SolutionSet) -> Vec<SolutionQuadruplet> {
    set.iter().filter(|q| q.is_klein_fixed()).copied().collect()
}

/// `(a, c)` with `a² + c² = p` and `a > c >= 1`, for `p ≡ 1 (mod 4)`.
///
/// The class of a square root of -1 is its own inverse, so its solution is
/// the fixed point `(a, a, c, c)`.
pub fn two_squares(p: OddPrime) -> Result<(u64, u64)> {
    let mu = sqrt_minus_one(p).ok_or(Error::NotSumOfTwoSquares(p.get()))?;
    let q = solve_class(p, MuClass::pair(p, mu)?)?;
    if !q.is_klein_fixed() || q.a * q.a + q.c * q.c != p.get() {
        return Err(Error::Invariant(format!("class of sqrt(-1) gave non-fixed solution {q}")));
    }
    if p.get() <= TWO_SQUARES_CROSS_CHECK_LIMIT {
        let fixed = klein_fixed_points(&enumerate(p)?);
        if fixed != [q] {
            return Err(Error::Invariant(format!("fixed points of S_{p} are {fixed:?}, fast path gave {q}")));
        }
    }
    Ok((q.a, q.c))
}
