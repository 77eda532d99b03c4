//! Plane lattices `Λ_μ(p) = {(x, y) : x + μy ≡ 0 (mod p)}`, windmill cones,
//! and the search for monochromatic and reduced black bases.
//!
//! The eight windmill cones are the open 45° sectors cut out by the lines
//! `x = 0`, `y = 0` and `y = ±x`. They are coloured alternately, starting
//! with the black sector `0 < y < x`. All geometry is exact integer sign
//! tests; nothing here touches floating point.

use crate::arith::OddPrime;
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn norm2(self) -> i128 {
        let (x, y) = (self.x as i128, self.y as i128);
        x * x + y * y
    }

    pub fn dot(self, other: Self) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    /// `self.x * other.y - self.y * other.x`; positive when `other` lies
    /// counterclockwise of `self`.
    pub fn cross(self, other: Self) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    /// Counterclockwise quarter turn.
    pub fn quarter_turn(self) -> Self {
        LatticeVector::new(-self.y, self.x)
    }

    /// Reflection in the horizontal axis.
    pub fn mirror(self) -> Self {
        LatticeVector::new(self.x, -self.y)
    }

    /// The representative of `±self` whose first nonzero coordinate is positive.
    pub fn sign_normalized(self) -> Self {
        if self.x < 0 || (self.x == 0 && self.y < 0) {
            -self
        } else {
            self
        }
    }
}

impl Add for LatticeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        LatticeVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        LatticeVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * v.x, self * v.y)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((x, y): (i64, i64)) -> Self {
        LatticeVector::new(x, y)
    }
}

/// An ordered pair of linearly independent vectors with cached determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    first: LatticeVector,
    second: LatticeVector,
    det: i128,
}

impl LatticeBasis {
    pub fn new(first: impl Into<LatticeVector>, second: impl Into<LatticeVector>) -> Result<Self> {
        let (first, second) = (first.into(), second.into());
        let det = first.cross(second);
        if det == 0 {
            return Err(Error::DegenerateBasis);
        }
        Ok(LatticeBasis { first, second, det })
    }

    pub fn first(&self) -> LatticeVector {
        self.first
    }

    pub fn second(&self) -> LatticeVector {
        self.second
    }

    pub fn det(&self) -> i128 {
        self.det
    }

    pub fn vectors(&self) -> (LatticeVector, LatticeVector) {
        (self.first, self.second)
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flipped(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The eight open windmill cones, counterclockwise from `0 < y < x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeLabel {
    EastNorthEast,
    NorthNorthEast,
    NorthNorthWest,
    WestNorthWest,
    WestSouthWest,
    SouthSouthWest,
    SouthSouthEast,
    EastSouthEast,
}

impl ConeLabel {
    pub const ALL: [ConeLabel; 8] = [
        ConeLabel::EastNorthEast,
        ConeLabel::NorthNorthEast,
        ConeLabel::NorthNorthWest,
        ConeLabel::WestNorthWest,
        ConeLabel::WestSouthWest,
        ConeLabel::SouthSouthWest,
        ConeLabel::SouthSouthEast,
        ConeLabel::EastSouthEast,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i % 8]
    }

    pub fn color(self) -> Color {
        if self.index().is_multiple_of(2) {
            Color::Black
        } else {
            Color::White
        }
    }

    pub fn opposite(self) -> Self {
        Self::from_index(self.index() + 4)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConeLabel::EastNorthEast => "E-NE",
            ConeLabel::NorthNorthEast => "N-NE",
            ConeLabel::NorthNorthWest => "N-NW",
            ConeLabel::WestNorthWest => "W-NW",
            ConeLabel::WestSouthWest => "W-SW",
            ConeLabel::SouthSouthWest => "S-SW",
            ConeLabel::SouthSouthEast => "S-SE",
            ConeLabel::EastSouthEast => "E-SE",
        }
    }
}

impl fmt::Display for ConeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The open cone containing `v`, or `None` on the lines `xy(x² - y²) = 0`.
pub fn cone_of(v: LatticeVector) -> Option<ConeLabel> {
    let LatticeVector { x, y } = v;
    if x == 0 || y == 0 || x == y || x == -y {
        return None;
    }
    use ConeLabel::*;
    Some(match (x > 0, y > 0) {
        (true, true) if y < x => EastNorthEast,
        (true, true) => NorthNorthEast,
        (false, true) if y > -x => NorthNorthWest,
        (false, true) => WestNorthWest,
        (false, false) if y > x => WestSouthWest,
        (false, false) => SouthSouthWest,
        (true, false) if -y > x => SouthSouthEast,
        (true, false) => EastSouthEast,
    })
}

pub fn classify(v: LatticeVector) -> Option<(ConeLabel, Color)> {
    cone_of(v).map(|c| (c, c.color()))
}

/// Whether `x + μy ≡ 0 (mod p)`.
pub fn contains(p: OddPrime, mu: i64, v: LatticeVector) -> bool {
    (v.x as i128 + mu as i128 * v.y as i128).rem_euclid(p.get() as i128) == 0
}

fn check_mu(p: OddPrime, mu: i64) -> Result<()> {
    if mu < 0 || mu as u64 >= p.get() {
        return Err(Error::OutOfRange { value: mu as i128, expected: "mu in [0, p-1]" });
    }
    Ok(())
}

/// The basis `(p, 0), (-μ, 1)` of `Λ_μ(p)`.
pub fn lambda_basis(p: OddPrime, mu: i64) -> Result<LatticeBasis> {
    check_mu(p, mu)?;
    LatticeBasis::new((p.get() as i64, 0), (-mu, 1))
}

/// Nearest integer to `num / den` (`den > 0`), halves rounded up.
fn round_div(num: i128, den: i128) -> i128 {
    (2 * num + den).div_euclid(2 * den)
}

fn shift(v: LatticeVector, k: i128, w: LatticeVector) -> LatticeVector {
    LatticeVector::new(
        (v.x as i128 - k * w.x as i128) as i64,
        (v.y as i128 - k * w.y as i128) as i64,
    )
}

/// Tie-break key among sign-normalised candidates of equal norm.
fn tie_key(v: LatticeVector) -> (i64, i64) {
    (v.y, v.x)
}

fn pick_shortest(cands: impl IntoIterator<Item = LatticeVector>) -> LatticeVector {
    cands
        .into_iter()
        .map(LatticeVector::sign_normalized)
        .min_by(|a, b| a.norm2().cmp(&b.norm2()).then(tie_key(*a).cmp(&tie_key(*b))))
        .expect("non-empty candidate list")
}

/// Lagrange-Gauss reduction.
///
/// Returns `(w1, w2)` spanning the same lattice with
/// `|w1| <= |w2| <= |w2 ± w1|`. Among equal-length choices the output is
/// canonical: vectors are sign-normalised (first nonzero coordinate
/// positive) and the one with the smallest `(y, x)` wins.
pub fn gauss_reduce(basis: LatticeBasis) -> Result<LatticeBasis> {
    if basis.det == 0 {
        return Err(Error::DegenerateBasis);
    }
    let (mut a, mut b) = basis.vectors();
    if a.norm2() > b.norm2() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let m = round_div(a.dot(b), a.norm2());
        b = shift(b, m, a);
        if b.norm2() < a.norm2() {
            std::mem::swap(&mut a, &mut b);
        } else {
            break;
        }
    }

    // Every shortest vector of the lattice is among ±a, ±b, ±(b ± a).
    let around = [a, b, b + a, b - a];
    let min1 = a.norm2();
    let w1 = pick_shortest(around.into_iter().filter(|v| v.norm2() == min1));
    let det = basis.det.abs();
    let partner = around
        .into_iter()
        .find(|v| w1.cross(*v).abs() == det)
        .ok_or_else(|| Error::Invariant("reduced basis lost a partner vector".into()))?;
    let partner = shift(partner, round_div(w1.dot(partner), min1), w1);
    let w2 = pick_shortest([partner, partner - w1, partner + w1]);
    LatticeBasis::new(w1, w2)
}

/// One step of the monochromatic-basis search, for external visualisers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub stage: &'static str,
    pub first: LatticeVector,
    pub second: LatticeVector,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cone = |v| cone_of(v).map_or("-", ConeLabel::name);
        write!(
            f,
            "step={} e1={} e2={} cones={},{}",
            self.stage,
            self.first,
            self.second,
            cone(self.first),
            cone(self.second)
        )
    }
}

/// A rotation by a multiple of 90°, optionally preceded by the horizontal
/// mirror. Rotations keep cone colours; the mirror swaps them.
#[derive(Debug, Clone, Copy)]
struct Symmetry {
    mirror: bool,
    quarter_turns: usize,
}

impl Symmetry {
    /// The symmetry taking `cone` onto E-NE.
    fn onto_east_north_east(cone: ConeLabel) -> Self {
        let mut i = cone.index();
        let mirror = i % 2 == 1;
        if mirror {
            i = 7 - i;
        }
        Symmetry { mirror, quarter_turns: (8 - i) / 2 % 4 }
    }

    fn apply(self, v: LatticeVector) -> LatticeVector {
        let mut v = if self.mirror { v.mirror() } else { v };
        for _ in 0..self.quarter_turns {
            v = v.quarter_turn();
        }
        v
    }

    fn invert(self, v: LatticeVector) -> LatticeVector {
        let mut v = v;
        for _ in 0..(4 - self.quarter_turns) % 4 {
            v = v.quarter_turn();
        }
        if self.mirror {
            v.mirror()
        } else {
            v
        }
    }
}

/// The colour of `(e1, e2)` if `{±e1, ±e2}` meets all four open cones of
/// one colour.
pub fn monochromatic_color(basis: &LatticeBasis) -> Option<Color> {
    let c1 = cone_of(basis.first)?;
    let c2 = cone_of(basis.second)?;
    (c1.color() == c2.color() && c1.index() % 4 != c2.index() % 4).then(|| c1.color())
}

/// Orient both vectors into the upper cones (E-NE .. W-NW), ordered by cone.
fn orient_upper(e1: LatticeVector, e2: LatticeVector) -> Result<LatticeBasis> {
    let up = |v: LatticeVector| match cone_of(v) {
        Some(c) if c.index() >= 4 => (-v, c.opposite().index()),
        Some(c) => (v, c.index()),
        None => (v, 8),
    };
    let (a, ia) = up(e1);
    let (b, ib) = up(e2);
    if ia <= ib {
        LatticeBasis::new(a, b)
    } else {
        LatticeBasis::new(b, a)
    }
}

pub fn monochromatic_basis(p: OddPrime, mu: i64) -> Result<Option<(Color, LatticeBasis)>> {
    monochromatic_basis_traced(p, mu, &mut |_| {})
}

/// Monochromatic basis of `Λ_μ(p)`, reporting each search step to `trace`.
///
/// `None` for `μ ∈ {0, 1, p - 1}`: those lattices contain nonzero points on
/// the cone boundaries and have no monochromatic basis.
///
/// The search starts from a shortest vector `w`, moves it into E-NE with a
/// symmetry, then walks the nearest lattice line above `ℝw`. Either that line
/// meets N-NW (black basis `w, r`) or its last W-NW point and first N-NE
/// point form a white basis.
pub fn monochromatic_basis_traced(
    p: OddPrime,
    mu: i64,
    trace: &mut dyn FnMut(TraceStep),
) -> Result<Option<(Color, LatticeBasis)>> {
    check_mu(p, mu)?;
    let n = p.get() as i64;
    if mu == 0 || mu == 1 || mu == n - 1 {
        return Ok(None);
    }
    let reduced = gauss_reduce(lambda_basis(p, mu)?)?;
    let (w, other) = reduced.vectors();
    trace(TraceStep { stage: "reduced", first: w, second: other });

    let cone = cone_of(w)
        .ok_or_else(|| Error::Invariant(format!("shortest vector {w} lies on a cone boundary")))?;
    let sym = Symmetry::onto_east_north_east(cone);
    let w = sym.apply(w);
    let mut above = sym.apply(other);
    if w.cross(above) < 0 {
        above = -above;
    }
    trace(TraceStep { stage: "normalized", first: w, second: above });

    // Points of the line are above + k w; take the rightmost one left of x = 0.
    let k = (-above.x - 1).div_euclid(w.x);
    let left = above + k * w;
    let right = left + w;
    trace(TraceStep { stage: "line", first: left, second: right });

    let (color, e1, e2) = match (cone_of(left), cone_of(right)) {
        (Some(ConeLabel::NorthNorthWest), _) => (Color::Black, w, left),
        (Some(ConeLabel::WestNorthWest), Some(ConeLabel::NorthNorthEast)) => {
            (Color::White, right, left)
        }
        _ => {
            return Err(Error::Invariant(format!(
                "no monochromatic pair on the line through {left} and {right} (p = {p}, mu = {mu})"
            )))
        }
    };
    let color = if sym.mirror { color.flipped() } else { color };
    let basis = orient_upper(sym.invert(e1), sym.invert(e2))?;
    trace(TraceStep { stage: color.name(), first: basis.first, second: basis.second });

    let in_lattice = contains(p, mu, basis.first) && contains(p, mu, basis.second);
    if !in_lattice || basis.det.abs() != n as i128 || monochromatic_color(&basis) != Some(color) {
        return Err(Error::Invariant(format!(
            "search produced {basis}, not a {color} monochromatic basis of Λ_{mu}({p})"
        )));
    }
    Ok(Some((color, basis)))
}

pub fn color_of(p: OddPrime, mu: i64) -> Result<Option<Color>> {
    Ok(monochromatic_basis(p, mu)?.map(|(c, _)| c))
}

/// A reduced black monochromatic basis `u = (a, c)`, `v = (-d, b)` with
/// `min(a, b) > max(c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedBlackBasis {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ReducedBlackBasis {
    pub fn u(&self) -> LatticeVector {
        LatticeVector::new(self.a as i64, self.c as i64)
    }

    pub fn v(&self) -> LatticeVector {
        LatticeVector::new(-(self.d as i64), self.b as i64)
    }

    pub fn basis(&self) -> LatticeBasis {
        LatticeBasis::new(self.u(), self.v()).expect("reduced bases are non-degenerate")
    }

    pub fn determinant(&self) -> u64 {
        self.a * self.b + self.c * self.d
    }
}

/// Move `start` by multiples of `step` as far as it stays inside `cone`.
///
/// `guess` is a closed-form estimate of the number of steps; the cone
/// predicates decide the final position.
fn slide(start: LatticeVector, step: LatticeVector, cone: ConeLabel, guess: i64) -> LatticeVector {
    let at = |k: i64| start + k * step;
    let mut k = guess.max(0);
    while k > 0 && cone_of(at(k)) != Some(cone) {
        k -= 1;
    }
    while cone_of(at(k + 1)) == Some(cone) {
        k += 1;
    }
    at(k)
}

/// Normalise a black monochromatic basis of some `Λ_μ(p)` to its unique
/// reduced form.
pub fn reduce_black(p: OddPrime, basis: &LatticeBasis) -> Result<ReducedBlackBasis> {
    if basis.det.abs() != p.get() as i128 {
        return Err(Error::NotBlackMonochromatic("determinant is not ±p"));
    }
    match monochromatic_color(basis) {
        Some(Color::Black) => {}
        Some(Color::White) => return Err(Error::NotBlackMonochromatic("basis is white")),
        None => return Err(Error::NotBlackMonochromatic("basis is not monochromatic")),
    }
    let pick = |cone: ConeLabel| {
        [basis.first, -basis.first, basis.second, -basis.second]
            .into_iter()
            .find(|v| cone_of(*v) == Some(cone))
            .expect("black monochromatic bases meet every black cone")
    };
    let mut u = pick(ConeLabel::EastNorthEast);
    let mut v = pick(ConeLabel::NorthNorthWest);

    for _ in 0..64 {
        // Lowest E-NE point on u + ℝv, then rightmost N-NW point on v + ℝu.
        let u_next = slide(u, -v, ConeLabel::EastNorthEast, (u.y - 1) / v.y);
        let v_next = slide(v, u_next, ConeLabel::NorthNorthWest, (-v.x - 1) / u_next.x);
        if u_next == u && v_next == v {
            let reduced = ReducedBlackBasis {
                a: u.x as u64,
                b: v.y as u64,
                c: u.y as u64,
                d: (-v.x) as u64,
            };
            let ok = reduced.a.min(reduced.b) > reduced.c.max(reduced.d)
                && reduced.determinant() == p.get();
            return if ok {
                Ok(reduced)
            } else {
                Err(Error::Invariant(format!("normalisation stopped at unreduced {u}, {v}")))
            };
        }
        u = u_next;
        v = v_next;
    }
    Err(Error::Invariant("black basis normalisation did not settle".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{mod_inverse, odd_primes_between};
    use proptest::prelude::*;

    fn prime(n: u64) -> OddPrime {
        OddPrime::new(n).unwrap()
    }

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    /// Minimum of x² + y² over nonzero lattice points with |x|, |y| <= p.
    fn brute_min_norm(p: OddPrime, mu: i64) -> i128 {
        let n = p.get() as i64;
        let mut best = i128::MAX;
        for y in -n..=n {
            let x0 = (-(mu as i128) * y as i128).rem_euclid(n as i128) as i64;
            for x in [x0 - 2 * n, x0 - n, x0, x0 + n] {
                if x.abs() <= n && (x, y) != (0, 0) {
                    best = best.min(v(x, y).norm2());
                }
            }
        }
        best
    }

    #[test]
    fn lambda_basis_examples() {
        assert_eq!(lambda_basis(prime(29), 12).unwrap().vectors(), (v(29, 0), v(-12, 1)));
        assert_eq!(lambda_basis(prime(29), 0).unwrap().vectors(), (v(29, 0), v(0, 1)));
        assert_eq!(lambda_basis(prime(5), 3).unwrap().vectors(), (v(5, 0), v(-3, 1)));
        assert_eq!(lambda_basis(prime(5), 3).unwrap().det(), 5);
        assert!(lambda_basis(prime(5), 5).is_err());
        assert!(lambda_basis(prime(5), -1).is_err());
    }

    #[test]
    fn membership() {
        assert!(contains(prime(29), 12, v(5, 2)));
        assert!(!contains(prime(29), 12, v(1, 0)));
        assert!(contains(prime(29), 12, v(-2, 5)));
        assert!(contains(prime(29), 12, v(-29, 0)));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(v(3, 1)), Some((ConeLabel::EastNorthEast, Color::Black)));
        assert_eq!(classify(v(1, 1)), None);
        assert_eq!(classify(v(-2, 5)), Some((ConeLabel::NorthNorthWest, Color::Black)));
        assert_eq!(classify(v(0, 0)), None);
        assert_eq!(classify(v(0, 4)), None);
        assert_eq!(classify(v(-3, 3)), None);
        let expected = [(2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)];
        for (i, (x, y)) in expected.into_iter().enumerate() {
            let (cone, color) = classify(v(x, y)).unwrap();
            assert_eq!(cone.index(), i);
            assert_eq!(color, if i % 2 == 0 { Color::Black } else { Color::White });
        }
    }

    proptest! {
        #[test]
        fn opposite_vectors_share_color(x in -1000i64..1000, y in -1000i64..1000) {
            let here = classify(v(x, y));
            let there = classify(v(-x, -y));
            prop_assert_eq!(here.is_some(), there.is_some());
            if let (Some((c1, k1)), Some((c2, k2))) = (here, there) {
                prop_assert_eq!(k1, k2);
                prop_assert_eq!(c1.opposite(), c2);
            }
            let on_line = x == 0 || y == 0 || x == y || x == -y;
            prop_assert_eq!(here.is_none(), on_line);
        }

        #[test]
        fn gauss_reduction_is_reduced(
            a in -500i64..500, b in -500i64..500, c in -500i64..500, d in -500i64..500
        ) {
            prop_assume!(a * d - b * c != 0);
            let input = LatticeBasis::new((a, b), (c, d)).unwrap();
            let out = gauss_reduce(input).unwrap();
            let (w1, w2) = out.vectors();
            prop_assert_eq!(out.det().abs(), input.det().abs());
            prop_assert!(w1.norm2() <= w2.norm2());
            prop_assert!(w2.norm2() <= (w2 + w1).norm2());
            prop_assert!(w2.norm2() <= (w2 - w1).norm2());
            // w1, w2 lie in the input lattice: integer coordinates in the input basis.
            for w in [w1, w2] {
                let s = w.cross(input.second());
                let t = input.first().cross(w);
                prop_assert_eq!(s % input.det(), 0);
                prop_assert_eq!(t % input.det(), 0);
            }
            // Reduction is canonical: reducing the output again changes nothing.
            prop_assert_eq!(gauss_reduce(out).unwrap().vectors(), out.vectors());
        }
    }

    #[test]
    fn gauss_examples() {
        let out = gauss_reduce(LatticeBasis::new((29, 0), (-12, 1)).unwrap()).unwrap();
        assert_eq!(out.first().norm2(), 29);
        assert!([v(5, 2), v(-5, -2), v(2, -5), v(-2, 5)].contains(&out.first()));
        let id = gauss_reduce(LatticeBasis::new((1, 0), (0, 1)).unwrap()).unwrap();
        assert_eq!(id.vectors(), (v(1, 0), v(0, 1)));
        let five = gauss_reduce(LatticeBasis::new((5, 0), (-3, 1)).unwrap()).unwrap();
        assert_eq!(five.first().norm2(), 5);
        assert!(gauss_reduce(lambda_basis(prime(5), 3).unwrap()).is_ok());
        assert!(LatticeBasis::new((2, 4), (1, 2)).is_err());
    }

    #[test]
    fn gauss_finds_shortest_vector() {
        for p in odd_primes_between(3, 499) {
            for mu in 0..p.get() as i64 {
                let out = gauss_reduce(lambda_basis(p, mu).unwrap()).unwrap();
                assert_eq!(out.det().abs(), p.get() as i128);
                assert!(contains(p, mu, out.first()) && contains(p, mu, out.second()));
                assert_eq!(out.first().norm2(), brute_min_norm(p, mu), "p={p} mu={mu}");
            }
        }
    }

    #[test]
    fn monochromatic_examples() {
        let (color, basis) = monochromatic_basis(prime(29), 12).unwrap().unwrap();
        assert_eq!(color, Color::Black);
        assert_eq!(basis.vectors(), (v(5, 2), v(-2, 5)));
        assert_eq!(monochromatic_basis(prime(29), 1).unwrap(), None);
        assert_eq!(monochromatic_basis(prime(29), 0).unwrap(), None);
        assert_eq!(monochromatic_basis(prime(29), 28).unwrap(), None);
        let (color, basis) = monochromatic_basis(prime(5), 2).unwrap().unwrap();
        assert_eq!(color, Color::White);
        assert_eq!(basis.vectors(), (v(1, 2), v(-2, 1)));
        assert!(monochromatic_basis(prime(5), 7).is_err());
        for mu in 0..3 {
            assert_eq!(monochromatic_basis(prime(3), mu).unwrap(), None);
        }
    }

    #[test]
    fn trace_records_each_stage() {
        let mut steps = Vec::new();
        monochromatic_basis_traced(prime(29), 12, &mut |s| steps.push(s)).unwrap();
        let stages: Vec<_> = steps.iter().map(|s| s.stage).collect();
        assert_eq!(stages, ["reduced", "normalized", "line", "black"]);
        assert_eq!(steps[3].to_string(), "step=black e1=(5,2) e2=(-2,5) cones=E-NE,N-NW");
    }

    #[test]
    fn colors_and_reflections() {
        assert_eq!(color_of(prime(29), 12).unwrap(), Some(Color::Black));
        assert_eq!(color_of(prime(29), 17).unwrap(), Some(Color::White));
        assert_eq!(color_of(prime(29), 1).unwrap(), None);
        for p in odd_primes_between(5, 499) {
            let n = p.get() as i64;
            let mut black = 0;
            for mu in 2..=n - 2 {
                let c = color_of(p, mu).unwrap().expect("monochromatic basis exists");
                let inv = mod_inverse(mu as i128, p).unwrap() as i64;
                assert_ne!(Some(c), color_of(p, n - mu).unwrap());
                assert_ne!(Some(c), color_of(p, inv).unwrap());
                black += (c == Color::Black) as i64;
            }
            assert_eq!(black, (n - 3) / 2);
        }
    }

    #[test]
    fn reduce_black_examples() {
        let expect = ReducedBlackBasis { a: 5, b: 5, c: 2, d: 2 };
        let b = LatticeBasis::new((5, 2), (-2, 5)).unwrap();
        assert_eq!(reduce_black(prime(29), &b).unwrap(), expect);
        let b = LatticeBasis::new((-5, -2), (2, -5)).unwrap();
        assert_eq!(reduce_black(prime(29), &b).unwrap(), expect);
        let b = LatticeBasis::new((2, 1), (-1, 2)).unwrap();
        assert_eq!(reduce_black(prime(5), &b).unwrap(), ReducedBlackBasis { a: 2, b: 2, c: 1, d: 1 });
    }

    #[test]
    fn reduce_black_rejections() {
        let white = LatticeBasis::new((1, 2), (-2, 1)).unwrap();
        assert!(matches!(reduce_black(prime(5), &white), Err(Error::NotBlackMonochromatic(_))));
        let same_pair = LatticeBasis::new((5, 2), (-5, -3)).unwrap();
        assert!(reduce_black(prime(5), &same_pair).is_err());
        let wrong_det = LatticeBasis::new((5, 2), (-2, 5)).unwrap();
        assert!(reduce_black(prime(31), &wrong_det).is_err());
    }

    #[test]
    fn reduce_black_is_idempotent() {
        for p in odd_primes_between(5, 499) {
            for mu in 2..=p.get() as i64 - 2 {
                if let Some((Color::Black, basis)) = monochromatic_basis(p, mu).unwrap() {
                    let r = reduce_black(p, &basis).unwrap();
                    assert_eq!(r.determinant(), p.get());
                    assert!(r.c >= 1 && r.c < r.a && r.d >= 1 && r.d < r.b);
                    assert_eq!(reduce_black(p, &r.basis()).unwrap(), r);
                    assert!(contains(p, mu, r.u()) && contains(p, mu, r.v()));
                }
            }
        }
    }
}
