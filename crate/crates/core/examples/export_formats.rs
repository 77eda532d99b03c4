//! Write a solution set as csv and jsonl, then read both back.
//!
//!     cargo run --example export_formats -- 13

use windmill::arith::OddPrime;
use windmill::cli::{format_solutions, parse_solutions, OutputFormat};
use windmill::solutions::enumerate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = OddPrime::new(std::env::args().nth(1).map_or(Ok(13), |s| s.parse())?)?;
    let set = enumerate(p)?;
    for fmt in [OutputFormat::Csv, OutputFormat::Jsonl] {
        let bytes = format_solutions(&set, false, fmt)?;
        print!("{}", String::from_utf8_lossy(&bytes));
        assert_eq!(parse_solutions(&bytes, fmt)?, set);
        println!("-- {fmt:?} round trip ok\n");
    }
    Ok(())
}
