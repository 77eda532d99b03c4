//! Histograms over one prime and a seeded sampling estimate over large ones.
//!
//!     cargo run --release --example projective_stats

use windmill::arith::OddPrime;
use windmill::stats::{distribution, estimate, EstimateMode, Interval, Statistic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = OddPrime::new(1009)?;
    for stat in Statistic::ALL {
        let h = distribution(p, stat, 8)?;
        println!("{stat} = {} over S_{p}: {:?}", stat.formula(), h.counts);
    }
    let mode = EstimateMode::Sampling { samples: 20_000, seed: 1, p_min: 100_000, p_max: 1_000_000 };
    let below_quarter = Interval::new(f64::NEG_INFINITY, 0.25);
    for stat in Statistic::ALL {
        let e = estimate(mode, stat, below_quarter)?;
        println!(
            "P({stat} < 0.25) ~ {:.4} ({} of {}, {} white draws discarded)",
            e.proportion, e.hits, e.evaluated, e.discarded
        );
    }
    Ok(())
}
