//! Batch check of the (p+1)/2 count law with a brute-force cross-check.
//!
//!     cargo run --release --example verify_count_law -- 100000 2000

use windmill::cli::verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p_max: u64 = args.next().map_or(Ok(10_000), |s| s.parse())?;
    let oracle_max: u64 = args.next().map_or(Ok(1_000), |s| s.parse())?;
    let s = verify(p_max, oracle_max)?;
    println!("{} primes checked, {} against brute force", s.primes_checked, s.oracle_checked);
    match s.first_failure {
        None => println!("no violations"),
        Some((p, why)) => {
            println!("first failure at p = {p}: {why}");
            std::process::exit(2);
        }
    }
    Ok(())
}
