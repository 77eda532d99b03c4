//! Print every solution of p = ab + cd, then the orbit summary.
//!
//!     cargo run --example enumerate_tables -- 31

use windmill::arith::OddPrime;
use windmill::cli::{format_solutions, OutputFormat};
use windmill::solutions::enumerate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args().nth(1).map_or(Ok(29), |s| s.parse())?;
    let set = enumerate(OddPrime::new(p)?)?;
    println!("all {} solutions for p = {p}:", set.len());
    print!("{}", String::from_utf8(format_solutions(&set, false, OutputFormat::Table)?)?);
    println!("\norbit representatives:");
    print!("{}", String::from_utf8(format_solutions(&set, true, OutputFormat::Table)?)?);
    Ok(())
}
