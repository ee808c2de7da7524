// Collinear, coplanar and co-spherical clouds, plus the primitive
// constructions that refuse degenerate support sets.

use minisphere::{
    generate, sphere_from_three, welzl_solve, CloudKind, Degenerate, GenParams, Point3, Tolerance,
};

pub fn run_example() -> minisphere::Result<()> {
    let tol = Tolerance::default();
    let err = sphere_from_three(
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(1.0, 1.0, 1.0),
        Point3::new(2.0, 2.0, 2.0),
        &tol,
    );
    assert_eq!(err, Err(Degenerate::Collinear));
    println!("three points on a line: {err:?}");

    for kind in [CloudKind::Collinear, CloudKind::CoplanarDisk, CloudKind::CoSpherical, CloudKind::NearDegenerate] {
        let cloud = generate(kind, 10_000, 1, &GenParams::default())?;
        let tol = Tolerance::for_points(&cloud, 1e-9);
        let (s, support) = welzl_solve(&cloud, 1, &tol)?;
        println!("{kind:>16}: r = {:.12}, {} support point(s)", s.radius, support.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
