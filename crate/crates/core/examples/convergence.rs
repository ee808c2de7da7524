// Hull coverage and repair rounds as the number of planes grows.

use minisphere::bench::run_convergence;
use minisphere::CloudKind;

pub fn run_example() -> minisphere::Result<()> {
    let seeds: Vec<u64> = (1..=20).collect();
    let report = run_convergence(CloudKind::UniformBall, 30, &[6, 12, 24, 48, 96], &seeds, true)?;
    println!("{:>4} {:>9} {:>8} {:>8}", "k", "coverage", "repairs", "|P_s|");
    for row in &report.rows {
        println!(
            "{:>4} {:>9.3} {:>8.2} {:>8.1}",
            row.k,
            row.coverage_mean.unwrap_or(f64::NAN),
            row.repairs_mean,
            row.reduced_mean
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
