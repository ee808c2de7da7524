//! End-to-end solver: reduce, solve the reduced set, verify against the
//! whole cloud, and repair.
//!
//! A finite number of planes can miss a hull vertex, so the sphere found for
//! the reduced set is checked against every input point. Points left outside
//! are added to the working set and the reduced problem is solved again.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{contains, Point3, Sphere, Tolerance};
use crate::projection::{reduce, KSelection};
use crate::welzl::welzl_solve;

/// Repair rounds allowed before falling back to a full-cloud solve.
pub const MAX_REPAIR_ROUNDS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Reduce by projection, solve, verify and repair.
    Projection,
    /// Randomized incremental solve over the whole cloud.
    Welzl,
    /// Projection, unless the cloud is too small for reduction to shrink it.
    Auto,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Projection => "projection",
            Strategy::Welzl => "welzl",
            Strategy::Auto => "auto",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "projection" => Ok(Strategy::Projection),
            "welzl" => Ok(Strategy::Welzl),
            "auto" => Ok(Strategy::Auto),
            other => Err(Error::InvalidParams(format!("unknown strategy `{other}`"))),
        }
    }
}

/// Wall-clock milliseconds per stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub reduce_ms: f64,
    pub solve_ms: f64,
    pub verify_ms: f64,
    pub total_ms: f64,
}

impl Timings {
    pub fn stage_sum_ms(&self) -> f64 {
        self.reduce_ms + self.solve_ms + self.verify_ms
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub sphere: Sphere,
    /// Indices into the input cloud.
    pub support_indices: Vec<usize>,
    /// The strategy that actually ran (`auto` resolves to one of the others).
    pub strategy: Strategy,
    /// Plane count; absent for a full-cloud solve.
    pub k: Option<usize>,
    /// Size of the reduced set before any repair.
    pub reduced_size: usize,
    pub repair_rounds: usize,
    /// Repairs did not converge and the full cloud was solved instead.
    pub repair_overflow: bool,
    pub timings: Timings,
    pub input_count: usize,
    pub seed: u64,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Projection strategy with verify-and-repair.
///
/// The returned sphere always encloses every input point within `tol`.
pub fn solve(
    points: &[Point3],
    sel: &KSelection,
    seed: u64,
    tol: &Tolerance,
) -> Result<SolveReport> {
    let start = Instant::now();
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut timings = Timings::default();

    let t = Instant::now();
    let reduced = reduce(points, sel)?;
    timings.reduce_ms = ms(t);

    let mut active = reduced.indices;
    let reduced_size = active.len();
    let mut repair_rounds = 0;
    let mut repair_overflow = false;
    let mut subset = Vec::with_capacity(active.len());

    let (sphere, support_indices) = loop {
        let t = Instant::now();
        subset.clear();
        subset.extend(active.iter().map(|&i| points[i]));
        let (sphere, support) = welzl_solve(&subset, seed, tol)?;
        timings.solve_ms += ms(t);

        let t = Instant::now();
        let violators: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|&(_, &p)| !contains(&sphere, p, tol))
            .map(|(i, _)| i)
            .collect();
        timings.verify_ms += ms(t);

        if violators.is_empty() {
            let support = support.indices().iter().map(|&i| active[i]).collect();
            break (sphere, support);
        }
        if repair_rounds == MAX_REPAIR_ROUNDS {
            repair_overflow = true;
            let t = Instant::now();
            let (sphere, support) = welzl_solve(points, seed, tol)?;
            timings.solve_ms += ms(t);
            break (sphere, support.indices().to_vec());
        }
        repair_rounds += 1;
        // Violators lie outside a sphere that encloses every active point,
        // so none of them is already active.
        active.extend(violators);
    };

    timings.total_ms = ms(start);
    Ok(SolveReport {
        sphere,
        support_indices,
        strategy: Strategy::Projection,
        k: Some(sel.k),
        reduced_size,
        repair_rounds,
        repair_overflow,
        timings,
        input_count: points.len(),
        seed,
    })
}

/// Full-cloud randomized incremental solve, reported in the same shape.
pub fn solve_full(points: &[Point3], seed: u64, tol: &Tolerance) -> Result<SolveReport> {
    let start = Instant::now();
    let (sphere, support) = welzl_solve(points, seed, tol)?;
    let solve_ms = ms(start);
    Ok(SolveReport {
        sphere,
        support_indices: support.indices().to_vec(),
        strategy: Strategy::Welzl,
        k: None,
        reduced_size: points.len(),
        repair_rounds: 0,
        repair_overflow: false,
        timings: Timings {
            solve_ms,
            total_ms: ms(start),
            ..Timings::default()
        },
        input_count: points.len(),
        seed,
    })
}

/// Dispatches on `strategy`. `Auto` uses projection unless the cloud has no
/// more than `4k` points, where reduction cannot shrink it.
pub fn solve_with(
    points: &[Point3],
    strategy: Strategy,
    sel: &KSelection,
    seed: u64,
    tol: &Tolerance,
) -> Result<SolveReport> {
    match strategy {
        Strategy::Projection => solve(points, sel, seed, tol),
        Strategy::Welzl => solve_full(points, seed, tol),
        Strategy::Auto if points.len() <= 4 * sel.k => solve_full(points, seed, tol),
        Strategy::Auto => solve(points, sel, seed, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::{select_k, KMode};
    use approx::assert_relative_eq;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    fn cube_with_center() -> Vec<Point3> {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push(p(x, y, z));
                }
            }
        }
        v.push(p(0.5, 0.5, 0.5));
        v
    }

    #[test]
    fn cube_matches_full_solve_without_repairs() {
        let pts = cube_with_center();
        let tol = Tolerance::for_points(&pts, 1e-9);
        let r = solve(&pts, &KSelection::symmetric(), 42, &tol).unwrap();
        let full = welzl_solve(&pts, 42, &tol).unwrap().0;
        assert_eq!(r.repair_rounds, 0);
        assert!(!r.repair_overflow);
        assert_relative_eq!(r.sphere.radius, full.radius, max_relative = 1e-9);
        assert_relative_eq!(r.sphere.radius, 0.8660254037844386, max_relative = 1e-15);
        assert!(!r.support_indices.contains(&8));
        assert_eq!(r.reduced_size, 8);
    }

    #[test]
    fn collinear_chain() {
        let len = 7.5;
        let pts: Vec<Point3> = (0..1000)
            .map(|i| p(len * i as f64 / 999.0, 0.0, 0.0))
            .collect();
        let tol = Tolerance::for_points(&pts, 1e-9);
        let r = solve(&pts, &select_k(pts.len(), KMode::General), 3, &tol).unwrap();
        assert_relative_eq!(r.sphere.radius, len / 2.0, max_relative = 1e-9);
    }

    #[test]
    fn repair_loop_recovers_from_too_few_planes() {
        // One plane looking down z cannot see the extreme z points.
        let mut pts = vec![
            p(1., 0., 0.),
            p(-1., 0., 0.),
            p(0., 1., 0.),
            p(0., -1., 0.),
        ];
        pts.push(p(0.1, 0.1, 5.0));
        pts.push(p(-0.1, 0.1, -5.0));
        let tol = Tolerance::for_points(&pts, 1e-9);
        let r = solve(&pts, &KSelection::fixed(1).unwrap(), 0, &tol).unwrap();
        assert!(r.repair_rounds >= 1);
        for &q in &pts {
            assert!(contains(&r.sphere, q, &tol));
        }
        let full = welzl_solve(&pts, 0, &tol).unwrap().0;
        assert_relative_eq!(r.sphere.radius, full.radius, max_relative = 1e-9);
    }

    #[test]
    fn empty_input() {
        let tol = Tolerance::default();
        assert!(matches!(
            solve(&[], &KSelection::symmetric(), 0, &tol),
            Err(Error::EmptyInput)
        ));
        assert!(matches!(solve_full(&[], 0, &tol), Err(Error::EmptyInput)));
    }

    #[test]
    fn auto_resolves_strategy() {
        let pts = cube_with_center();
        let tol = Tolerance::for_points(&pts, 1e-9);
        let sel = KSelection::symmetric();
        let small = solve_with(&pts, Strategy::Auto, &sel, 1, &tol).unwrap();
        assert_eq!(small.strategy, Strategy::Welzl);
        let big: Vec<Point3> = (0..100).map(|i| p(i as f64, (i * i % 7) as f64, 0.5)).collect();
        let tol = Tolerance::for_points(&big, 1e-9);
        let r = solve_with(&big, Strategy::Auto, &sel, 1, &tol).unwrap();
        assert_eq!(r.strategy, Strategy::Projection);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::Projection, Strategy::Welzl, Strategy::Auto] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("fast".parse::<Strategy>().is_err());
    }
}
