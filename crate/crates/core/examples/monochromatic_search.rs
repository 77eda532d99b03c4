//! Follow the cone search for one lattice Λ_μ(p) step by step.
//!
//!     cargo run --example monochromatic_search -- 29 12

use windmill::arith::OddPrime;
use windmill::lattice::{lambda_basis, monochromatic_basis_traced, reduce_black, Color};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p = OddPrime::new(args.next().map_or(Ok(29), |s| s.parse())?)?;
    let mu: i64 = args.next().map_or(Ok(12), |s| s.parse())?;

    println!("Λ_{mu}({p}) has basis {}", lambda_basis(p, mu)?);
    let found = monochromatic_basis_traced(p, mu, &mut |step| println!("  {step}"))?;
    match found {
        None => println!("no monochromatic basis: the lattice is axis-aligned or mu = ±1"),
        Some((Color::White, basis)) => {
            println!("white basis {basis}; the mirror lattice Λ_{}({p}) is black", p.get() as i64 - mu)
        }
        Some((Color::Black, basis)) => {
            let r = reduce_black(p, &basis)?;
            println!("black basis {basis}");
            println!("reduced: u = {}, v = {}  =>  {p} = {}*{} + {}*{}", r.u(), r.v(), r.a, r.b, r.c, r.d);
        }
    }
    Ok(())
}
