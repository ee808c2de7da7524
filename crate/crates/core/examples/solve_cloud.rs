// Solve a generated cloud with the projection strategy and compare it to a
// direct randomized incremental solve.
//
// ```text
// cargo run --release --example solve_cloud
// ```

use minisphere::projection::select_k;
use minisphere::{generate, solve, welzl_solve, CloudKind, GenParams, KMode, Tolerance};

pub fn run_example() -> minisphere::Result<()> {
    let n = 200_000;
    let cloud = generate(CloudKind::UniformBall, n, 7, &GenParams::default())?;
    let tol = Tolerance::for_points(&cloud, 1e-9);

    let sel = select_k(n, KMode::General);
    let report = solve(&cloud, &sel, 7, &tol)?;
    println!(
        "k = {}, kept {} of {} points, {} repair round(s)",
        sel.k, report.reduced_size, n, report.repair_rounds
    );
    println!(
        "center {} radius {:.12} in {:.2} ms",
        report.sphere.center, report.sphere.radius, report.timings.total_ms
    );

    let (full, support) = welzl_solve(&cloud, 7, &tol)?;
    println!("full solve radius {:.12}, support {:?}", full.radius, support.indices());
    assert!((full.radius - report.sphere.radius).abs() <= 1e-9 * full.radius);
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
