// Median solve time against cloud size and the fitted log-log slope.
//
// Pass `--full` for the 10^4..10^6 sweep; the default is a quick one.

use minisphere::bench::{run_scaling, ScalingConfig};

pub fn run_example() -> minisphere::Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    let cfg = if full {
        ScalingConfig::default()
    } else {
        ScalingConfig {
            sizes: vec![2_000, 8_000, 32_000],
            min_sample_ms: 5.0,
            ..ScalingConfig::default()
        }
    };
    let report = run_scaling(&cfg)?;
    for s in &report.sizes {
        println!("n = {:>8}: {:>9.3} ms", s.n, s.median_ms);
    }
    println!("slope {:.3}", report.slope);
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
