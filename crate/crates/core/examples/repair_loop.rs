// With too few planes the reduced set misses support points; the verify
// pass catches them and the repair loop restores the exact answer.

use minisphere::{generate, solve, welzl_solve, CloudKind, GenParams, KSelection, Tolerance};

pub fn run_example() -> minisphere::Result<()> {
    let cloud = generate(CloudKind::CoSpherical, 5_000, 11, &GenParams::default())?;
    let tol = Tolerance::for_points(&cloud, 1e-9);
    let (full, _) = welzl_solve(&cloud, 0, &tol)?;
    for k in [1, 2, 6, 24, 96] {
        let r = solve(&cloud, &KSelection::fixed(k)?, 0, &tol)?;
        println!(
            "k = {k:>3}: |P_s| = {:>3}, repairs = {}, r = {:.12}",
            r.reduced_size, r.repair_rounds, r.sphere.radius
        );
        assert!((r.sphere.radius - full.radius).abs() <= 1e-9 * full.radius);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
