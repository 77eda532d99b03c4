//! Sums of two squares read off the Klein fixed point.
//!
//!     cargo run --example two_squares -- 1000 1100

use windmill::arith::odd_primes_between;
use windmill::solutions::{enumerate, klein_fixed_points, two_squares};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let lo: u64 = args.next().map_or(Ok(3), |s| s.parse())?;
    let hi: u64 = args.next().map_or(Ok(200), |s| s.parse())?;
    for p in odd_primes_between(lo, hi) {
        if p.get() % 4 == 3 {
            let fixed = klein_fixed_points(&enumerate(p)?);
            assert!(fixed.is_empty());
            continue;
        }
        let (a, c) = two_squares(p)?;
        println!("{p} = {a}^2 + {c}^2");
    }
    Ok(())
}
