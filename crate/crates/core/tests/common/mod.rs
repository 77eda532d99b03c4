//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use windmill::arith::OddPrime;
use windmill::lattice::{contains, LatticeVector};
use windmill::solutions::SolutionQuadruplet;

/// Twice the signed area of `(o, q, r)`.
fn orient(o: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i128 {
    (q.0 - o.0) as i128 * (r.1 - o.1) as i128 - (q.1 - o.1) as i128 * (r.0 - o.0) as i128
}

/// Whether the closed triangle `(0,0), e1, e2` holds no point of `Λ_μ(p)`
/// besides its vertices. Scans the bounding box point by point.
pub fn triangle_is_empty(p: OddPrime, mu: i64, e1: LatticeVector, e2: LatticeVector) -> bool {
    let verts = [(0, 0), (e1.x, e1.y), (e2.x, e2.y)];
    if orient(verts[0], verts[1], verts[2]) == 0 {
        return false;
    }
    let (xs, ys): (Vec<i64>, Vec<i64>) = verts.iter().copied().unzip();
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    for x in x0..=x1 {
        for y in y0..=y1 {
            if verts.contains(&(x, y)) {
                continue;
            }
            let s = [
                orient(verts[0], verts[1], (x, y)).signum(),
                orient(verts[1], verts[2], (x, y)).signum(),
                orient(verts[2], verts[0], (x, y)).signum(),
            ];
            let inside = !(s.contains(&1) && s.contains(&-1));
            if inside && contains(p, mu, LatticeVector::new(x, y)) {
                return false;
            }
        }
    }
    true
}

/// Every `(a, b, c, d)` with `ab + cd = p`, `min(a,b) > max(c,d)` whose
/// vectors `(a, c)` and `(-d, b)` lie in `Λ_μ(p)`, by exhaustive search.
pub fn reduced_black_candidates(p: OddPrime, mu: i64) -> Vec<SolutionQuadruplet> {
    let n = p.get();
    let mut found = Vec::new();
    for a in 1..=n {
        for c in 0..a {
            if a * c >= n || !contains(p, mu, LatticeVector::new(a as i64, c as i64)) {
                continue;
            }
            for d in 0..a {
                let rest = match n.checked_sub(c * d) {
                    Some(r) if r % a == 0 => r,
                    _ => continue,
                };
                let b = rest / a;
                if b > c.max(d) && a > d && contains(p, mu, LatticeVector::new(-(d as i64), b as i64)) {
                    found.push(SolutionQuadruplet::new(a, b, c, d));
                }
            }
        }
    }
    found
}
