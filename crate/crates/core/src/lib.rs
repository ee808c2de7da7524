//! Smallest enclosing sphere of 3D point clouds.
//!
//! The cloud is first reduced to the points that are extreme on a set of
//! projection planes; only those can be hull vertices, and only hull
//! vertices can touch the enclosing sphere. A randomized incremental solver
//! with explicit handling of degenerate support sets then runs on the
//! reduced set, and a verify-and-repair pass guarantees the result encloses
//! the whole cloud.
//!
//! ```
//! use minisphere::{solve, KSelection, Point3, Tolerance};
//!
//! let cloud: Vec<Point3> = (0..8)
//!     .map(|i| Point3::new((i & 1) as f64, ((i >> 1) & 1) as f64, (i >> 2) as f64))
//!     .collect();
//! let tol = Tolerance::for_points(&cloud, 1e-9);
//! let report = solve(&cloud, &KSelection::symmetric(), 42, &tol).unwrap();
//! assert!((report.sphere.radius - 3f64.sqrt() / 2.0).abs() < 1e-12);
//! ```

pub mod bench;
pub mod cli;
pub mod datagen;
pub mod error;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod projection;
pub mod solve;
pub mod welzl;

pub use datagen::{generate, CloudKind, GenParams};
pub use error::{Error, Result};
pub use geom::{
    contains, sphere_from_four, sphere_from_three, sphere_from_two, Degenerate, Point3, Sphere,
    Tolerance,
};
pub use oracle::{brute_force_ses, is_hull_vertex};
pub use projection::{
    extreme4, generate_orientations, make_frame, project, reduce, select_k, KMode, KSelection,
    ProjectionFrame, ReducedSet,
};
pub use solve::{solve, solve_full, solve_with, SolveReport, Strategy, Timings};
pub use welzl::{min_sphere_with_boundary, welzl_solve, SupportSet};
