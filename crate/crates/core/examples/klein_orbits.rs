//! Pair each solution with its parameter class and check that the full
//! swap (a,b,c,d) -> (b,a,d,c) inverts the class.
//!
//!     cargo run --example klein_orbits -- 37

use windmill::arith::OddPrime;
use windmill::solutions::{enumerate, klein_orbits, mu_class_of};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = OddPrime::new(std::env::args().nth(1).map_or(Ok(37), |s| s.parse())?)?;
    let set = enumerate(p)?;
    println!("{:>16}  {:>8}  {:>8}", "(a,b,c,d)", "class", "swapped");
    for q in &set {
        let class = mu_class_of(p, q)?;
        let swapped = mu_class_of(p, &q.swap_both())?;
        assert_eq!(swapped, class.inverse(p)?);
        println!("{:>16}  {:>8}  {:>8}", q.to_string(), class.to_string(), swapped.to_string());
    }
    let orbits = klein_orbits(&set)?;
    let sizes: Vec<u8> = orbits.iter().map(|o| o.size).collect();
    println!("{} orbits, sizes {sizes:?}, total {}", orbits.len(), set.len());
    Ok(())
}
