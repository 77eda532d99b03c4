//! Brute-force counts for n = ab + cd and n = ab - cd under each convention,
//! compared with the divisor-sum formula.
//!
//!     cargo run --release --example variant_counts -- 300

use windmill::variants::{compare_report, count_sum, VariantConvention};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: u64 = std::env::args().nth(1).map_or(Ok(300), |s| s.parse())?;
    println!("n = ab + cd at n = 30:");
    for conv in VariantConvention::ALL {
        println!("  {:<18} {}", conv.to_string(), count_sum(30, conv)?);
    }
    let report = compare_report(n_max)?;
    println!("n = ab - cd against the divisor formula, n <= {n_max}:");
    for (conv, first) in VariantConvention::ALL.iter().zip(report.first_mismatch()) {
        match first {
            Some(n) => println!("  {:<18} first differs at n = {n}", conv.to_string()),
            None => println!("  {:<18} agrees everywhere", conv.to_string()),
        }
    }
    println!("{}", report.summary());
    Ok(())
}
