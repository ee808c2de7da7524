// Projection frames and the four extreme points harvested on each.

use minisphere::projection::{extreme4, spiral_normals};
use minisphere::{generate_orientations, reduce, KSelection, Point3};

pub fn run_example() -> minisphere::Result<()> {
    for f in generate_orientations(6)? {
        println!("n = {}  u = {}  v = {}", f.normal, f.u, f.v);
    }

    // The spiral is nested: the first 8 of 32 directions are the 8-direction set.
    assert_eq!(spiral_normals(32)[..8], spiral_normals(8)[..]);

    let mut cube: Vec<Point3> = (0..8)
        .map(|c| Point3::new((c & 1) as f64, ((c >> 1) & 1) as f64, (c >> 2) as f64))
        .collect();
    cube.push(Point3::new(0.5, 0.5, 0.5));
    let frames = generate_orientations(6)?;
    for (i, f) in frames.iter().enumerate() {
        println!("plane {i}: [+u, -u, +v, -v] = {:?}", extreme4(&cube, f));
    }
    let r = reduce(&cube, &KSelection::symmetric())?;
    println!("reduced set {:?} (the center, index 8, never appears)", r.indices);
    Ok(())
}

#[allow(dead_code)]
fn main() -> minisphere::Result<()> {
    run_example()
}
