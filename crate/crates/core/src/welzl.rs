//! Randomized incremental smallest-enclosing-sphere solver.
//!
//! Move-to-front formulation: the recursion only descends when a point is
//! added to the support set, so its depth never exceeds five regardless of
//! the number of input points. Degenerate support sets (a collinear triple,
//! a coplanar quadruple) are resolved locally by falling back to the
//! smallest lower-order sphere that still encloses the support points.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{
    contains, sphere_from_four, sphere_from_three, sphere_from_two, Point3, Sphere, Tolerance,
};

/// Up to four points on the boundary of a sphere, with their indices in the
/// caller's point list.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportSet {
    len: usize,
    indices: [usize; 4],
    points: [Point3; 4],
}

impl Default for SupportSet {
    fn default() -> Self {
        SupportSet {
            len: 0,
            indices: [0; 4],
            points: [Point3::ORIGIN; 4],
        }
    }
}

impl SupportSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a support set from `(index, point)` pairs.
    ///
    /// # Panics
    ///
    /// If more than four members are given or an index repeats.
    pub fn from_members(members: &[(usize, Point3)]) -> Self {
        let mut s = SupportSet::new();
        for &(i, p) in members {
            assert!(!s.indices().contains(&i), "duplicate support index {i}");
            s.push(i, p);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices[..self.len]
    }

    pub fn points(&self) -> &[Point3] {
        &self.points[..self.len]
    }

    fn push(&mut self, index: usize, p: Point3) {
        assert!(self.len < 4, "support set holds at most four points");
        self.indices[self.len] = index;
        self.points[self.len] = p;
        self.len += 1;
    }

    fn pop(&mut self) {
        self.len -= 1;
    }

    fn subset(&self, which: &[usize]) -> SupportSet {
        let mut s = SupportSet::new();
        for &k in which {
            s.push(self.indices[k], self.points[k]);
        }
        s
    }
}

#[derive(Clone, Copy)]
struct Item {
    p: Point3,
    index: usize,
}

/// Smallest sphere through the support points, or, when they are
/// degenerate, the smallest lower-order sphere enclosing all of them.
/// Returns the sphere together with the members that actually define it.
fn support_sphere(support: &SupportSet, tol: &Tolerance) -> Option<(Sphere, SupportSet)> {
    let p = support.points();
    let sphere = match support.len() {
        0 => return None,
        1 => Sphere::point(p[0]),
        2 => sphere_from_two(p[0], p[1]),
        3 => match sphere_from_three(p[0], p[1], p[2], tol) {
            Ok(s) => s,
            Err(_) => return Some(enclosing_fallback(support, tol)),
        },
        4 => match sphere_from_four(p[0], p[1], p[2], p[3], tol) {
            Ok(s) => s,
            Err(_) => return Some(enclosing_fallback(support, tol)),
        },
        _ => unreachable!(),
    };
    Some((sphere, *support))
}

/// Smallest pair or triple sphere that encloses every support point.
///
/// For a collinear triple this is the diameter sphere of the two extreme
/// points; for a coplanar quadruple it is the best enclosing circle sphere.
fn enclosing_fallback(support: &SupportSet, tol: &Tolerance) -> (Sphere, SupportSet) {
    let p = support.points();
    let n = p.len();
    let mut best: Option<(Sphere, SupportSet)> = None;
    let mut consider = |s: Sphere, members: &[usize]| {
        if p.iter().all(|&q| contains(&s, q, tol))
            && best.as_ref().is_none_or(|(b, _)| s.radius < b.radius)
        {
            best = Some((s, support.subset(members)));
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            consider(sphere_from_two(p[i], p[j]), &[i, j]);
        }
    }
    if n == 4 {
        for skip in 0..4 {
            let t: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
            if let Ok(s) = sphere_from_three(p[t[0]], p[t[1]], p[t[2]], tol) {
                consider(s, &t);
            }
        }
    }
    best.unwrap_or_else(|| {
        // Only reachable through pathological rounding; the farthest pair
        // still gives a sphere that contains the rest up to rounding.
        let (mut bi, mut bj, mut bd) = (0, 0, -1.0);
        for i in 0..n {
            for j in i + 1..n {
                let d = p[i].distance_squared(p[j]);
                if d > bd {
                    (bi, bj, bd) = (i, j, d);
                }
            }
        }
        let s = sphere_from_two(p[bi], p[bj]);
        let r = p.iter().map(|q| q.distance(s.center)).fold(s.radius, f64::max);
        (Sphere::new(s.center, r), support.subset(&[bi, bj]))
    })
}

fn move_to_front(
    items: &mut [Item],
    end: usize,
    support: &mut SupportSet,
    tol: &Tolerance,
) -> Option<(Sphere, SupportSet)> {
    let mut current = support_sphere(support, tol);
    if support.len() == 4 {
        return current;
    }
    for i in 0..end {
        let item = items[i];
        let inside = current
            .as_ref()
            .is_some_and(|(s, _)| contains(s, item.p, tol));
        if !inside {
            support.push(item.index, item.p);
            current = move_to_front(items, i, support, tol);
            support.pop();
            items[..=i].rotate_right(1);
        }
    }
    current
}

fn validate(points: &[Point3]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(index) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(())
}

/// Smallest enclosing sphere of `points`.
///
/// The input order is shuffled once with a generator seeded from `seed`, so
/// identical `(points, seed, tol)` always yield the identical result. Support
/// indices refer to positions in `points`.
pub fn welzl_solve(points: &[Point3], seed: u64, tol: &Tolerance) -> Result<(Sphere, SupportSet)> {
    validate(points)?;
    let mut items: Vec<Item> = points
        .iter()
        .enumerate()
        .map(|(index, &p)| Item { p, index })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    items.shuffle(&mut rng);
    let end = items.len();
    let mut support = SupportSet::new();
    Ok(move_to_front(&mut items, end, &mut support, tol).expect("non-empty input"))
}

/// Smallest sphere enclosing `points` with every `boundary` point on its
/// surface, falling back to a lower-order sphere when the boundary is
/// degenerate. `points` are processed in the given order.
pub fn min_sphere_with_boundary(
    points: &[Point3],
    boundary: &SupportSet,
    tol: &Tolerance,
) -> Result<Sphere> {
    validate(points).or_else(|e| match e {
        Error::EmptyInput if !boundary.is_empty() => Ok(()),
        e => Err(e),
    })?;
    let mut items: Vec<Item> = points
        .iter()
        .enumerate()
        .map(|(index, &p)| Item { p, index })
        .collect();
    let end = items.len();
    let mut support = *boundary;
    Ok(move_to_front(&mut items, end, &mut support, tol)
        .expect("non-empty input or boundary")
        .0)
}
