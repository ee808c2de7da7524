// Cross-check a solve against the brute-force oracles: the exhaustive
// enclosing sphere and the linear-programming hull-vertex test.

use minisphere::oracle::hull_vertices;
use minisphere::{
    brute_force_ses, generate, is_hull_vertex, reduce, welzl_solve, CloudKind, GenParams,
    KSelection, Tolerance,
};

pub fn run_example() -> minisphere::Result<()> {
    let cloud = generate(CloudKind::UniformCube, 40, 3, &GenParams::default())?;
    let tol = Tolerance::for_points(&cloud, 1e-9);

    let exact = brute_force_ses(&cloud, &tol)?;
    let (fast, _) = welzl_solve(&cloud, 3, &tol)?;
    println!("brute force r = {:.15}\nwelzl       r = {:.15}", exact.radius, fast.radius);

    let hull = hull_vertices(&cloud, &tol)?;
    let reduced = reduce(&cloud, &KSelection::fixed(24)?)?;
    for &i in &reduced.indices {
        assert!(is_hull_vertex(i, &cloud, &tol)?);
    }
    println!(
        "{} hull vertices, {} captured by 24 planes, all reduced points are vertices",
        hull.len(),
        reduced.indices.iter().filter(|i| hull.contains(i)).count()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
