//! Desk-scale ground truth.
//!
//! These routines are deliberately slow and share no construction code with
//! the solver: candidate spheres are built from closed-form barycentric and
//! determinant formulas, and hull membership is decided by linear
//! programming rather than by any projection argument.

use crate::error::{Error, Result};
use crate::geom::{bounding_box_diagonal, Point3, Sphere, Tolerance};

pub const MAX_BRUTE_FORCE_POINTS: usize = 80;
pub const MAX_HULL_ORACLE_POINTS: usize = 60;

/// Circumcenter of a triangle from barycentric weights
/// `a^2 (b^2 + c^2 - a^2)` etc., where `a` is the side opposite vertex A.
fn circumcircle(p: [Point3; 3], eps_rel: f64) -> Option<Sphere> {
    let a2 = p[1].distance_squared(p[2]);
    let b2 = p[0].distance_squared(p[2]);
    let c2 = p[0].distance_squared(p[1]);
    let area2 = (p[1] - p[0]).cross(p[2] - p[0]).norm_squared();
    let longest = a2.max(b2).max(c2);
    if area2 <= (eps_rel * longest).powi(2) {
        return None;
    }
    let wa = a2 * (b2 + c2 - a2);
    let wb = b2 * (a2 + c2 - b2);
    let wc = c2 * (a2 + b2 - c2);
    let sum = wa + wb + wc;
    let center = (p[0] * wa + p[1] * wb + p[2] * wc) / sum;
    let radius = p.iter().map(|q| q.distance(center)).fold(0.0, f64::max);
    Some(Sphere::new(center, radius))
}

fn det3(a: Point3, b: Point3, c: Point3) -> f64 {
    a.dot(b.cross(c))
}

/// Circumsphere of a tetrahedron by Cramer's rule on the system
/// `2 (p_i - p_0) . x = |p_i - p_0|^2`.
fn circumsphere(p: [Point3; 4], eps_rel: f64) -> Option<Sphere> {
    let r1 = p[1] - p[0];
    let r2 = p[2] - p[0];
    let r3 = p[3] - p[0];
    let det = det3(r1, r2, r3);
    let mut longest: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            longest = longest.max(p[i].distance(p[j]));
        }
    }
    if det.abs() <= eps_rel * longest.powi(3) {
        return None;
    }
    let (s1, s2, s3) = (r1.norm_squared(), r2.norm_squared(), r3.norm_squared());
    // x = (s1 (r2 x r3) + s2 (r3 x r1) + s3 (r1 x r2)) / (2 det)
    let offset = (r2.cross(r3) * s1 + r3.cross(r1) * s2 + r1.cross(r2) * s3) / (2.0 * det);
    let center = p[0] + offset;
    let radius = p.iter().map(|q| q.distance(center)).fold(0.0, f64::max);
    (center.is_finite() && radius.is_finite()).then(|| Sphere::new(center, radius))
}

fn encloses(s: &Sphere, points: &[Point3], slack: f64) -> bool {
    let bound = (s.radius + slack).powi(2);
    points.iter().all(|q| s.center.distance_squared(*q) <= bound)
}

fn lex_less(a: Point3, b: Point3) -> bool {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .find(|(x, y)| **x != *y)
        .is_some_and(|(x, y)| *x < y)
}

struct Best {
    sphere: Option<Sphere>,
}

impl Best {
    /// Radius first; near-ties within 1e-12 relative go to the
    /// lexicographically smaller center.
    fn improves(&self, s: &Sphere) -> bool {
        match &self.sphere {
            None => true,
            Some(b) => {
                let band = 1e-12 * b.radius.max(1.0);
                s.radius < b.radius - band
                    || (s.radius <= b.radius + band && lex_less(s.center, b.center))
            }
        }
    }

    fn pruned(&self, s: &Sphere) -> bool {
        self.sphere
            .as_ref()
            .is_some_and(|b| s.radius > b.radius + 1e-12 * b.radius.max(1.0))
    }
}

/// Smallest enclosing sphere by enumerating every pair, non-collinear triple
/// and non-coplanar quadruple. `O(N^5)`; limited to 80 points.
pub fn brute_force_ses(points: &[Point3], tol: &Tolerance) -> Result<Sphere> {
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > MAX_BRUTE_FORCE_POINTS {
        return Err(Error::TooLarge {
            n,
            max: MAX_BRUTE_FORCE_POINTS,
        });
    }
    if n == 1 {
        return Ok(Sphere::point(points[0]));
    }
    let slack = tol.absolute();
    let mut best = Best { sphere: None };
    let offer = |s: Sphere, best: &mut Best| {
        if !best.pruned(&s) && best.improves(&s) && encloses(&s, points, slack) {
            best.sphere = Some(s);
        }
    };

    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (points[i], points[j]);
            offer(Sphere::new(a.midpoint(b), 0.5 * a.distance(b)), &mut best);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let Some(s) = circumcircle([points[i], points[j], points[k]], tol.eps_rel) {
                    offer(s, &mut best);
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let quad = [points[i], points[j], points[k], points[l]];
                    if let Some(s) = circumsphere(quad, tol.eps_rel) {
                        offer(s, &mut best);
                    }
                }
            }
        }
    }
    let sphere = best
        .sphere
        .expect("the farthest pair or a larger candidate always encloses the cloud");
    assert!(encloses(&sphere, points, slack), "oracle self-check failed");
    Ok(sphere)
}

/// Whether `points[index]` is a vertex of the convex hull, i.e. not a convex
/// combination of the other points.
///
/// Decided by a phase-1 simplex minimizing the L1 residual of
/// `sum_j lambda_j (p_j - p) = 0, sum_j lambda_j = 1, lambda >= 0` in
/// coordinates normalized by the bounding-box diagonal. The point is a
/// vertex iff the minimum exceeds `tol.eps_rel`; points within that band of
/// the hull of the others are classified as non-vertices.
pub fn is_hull_vertex(index: usize, points: &[Point3], tol: &Tolerance) -> Result<bool> {
    let n = points.len();
    if n > MAX_HULL_ORACLE_POINTS {
        return Err(Error::TooLarge {
            n,
            max: MAX_HULL_ORACLE_POINTS,
        });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    assert!(index < n, "index {index} out of range");
    if n == 1 {
        return Ok(true);
    }
    let scale = bounding_box_diagonal(points);
    if scale == 0.0 {
        // All points coincide; the first copy stands for the hull.
        return Ok(index == 0);
    }
    let target = points[index];
    let others: Vec<[f64; 3]> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, &q)| ((q - target) / scale).to_array())
        .collect();
    let residual = min_l1_residual(&others);
    Ok(residual > tol.eps_rel)
}

/// Indices of all hull vertices.
pub fn hull_vertices(points: &[Point3], tol: &Tolerance) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        if is_hull_vertex(i, points, tol)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Dense-tableau simplex with Bland's rule.
///
/// Columns: `lambda_0..lambda_{m-1}`, then `s+_x, s+_y, s+_z`,
/// `s-_x, s-_y, s-_z`, then `a` (slack on the unit-sum row). Rows are the
/// three coordinate equations and the sum equation. Returns the optimal
/// `sum(s+) + sum(s-) + a`.
fn min_l1_residual(q: &[[f64; 3]]) -> f64 {
    const PIVOT_EPS: f64 = 1e-12;
    let m = q.len();
    let cols = m + 7;
    let rows = 4;
    let mut tab = vec![vec![0.0; cols + 1]; rows];
    for (j, qj) in q.iter().enumerate() {
        for r in 0..3 {
            tab[r][j] = qj[r];
        }
        tab[3][j] = 1.0;
    }
    for r in 0..3 {
        tab[r][m + r] = 1.0;
        tab[r][m + 3 + r] = -1.0;
    }
    tab[3][m + 6] = 1.0;
    tab[3][cols] = 1.0;

    let cost = |j: usize| if j < m { 0.0 } else { 1.0 };
    let mut basis: Vec<usize> = vec![m, m + 1, m + 2, m + 6];

    let max_iter = 50 * cols;
    for _ in 0..max_iter {
        // Reduced cost d_j = c_j - c_B . column_j, lowest entering index.
        let entering = (0..cols).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let d = cost(j) - (0..rows).map(|r| cost(basis[r]) * tab[r][j]).sum::<f64>();
            d < -1e-13
        });
        let Some(e) = entering else { break };

        let mut leave: Option<(usize, f64)> = None;
        for r in 0..rows {
            if tab[r][e] > PIVOT_EPS {
                let ratio = tab[r][cols] / tab[r][e];
                let better = match leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - 1e-15 || (ratio <= lratio + 1e-15 && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // Unbounded is impossible: the objective is bounded below by zero.
        let Some((pr, _)) = leave else { break };

        let pv = tab[pr][e];
        tab[pr].iter_mut().for_each(|v| *v /= pv);
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            let f = row[e];
            if r != pr && f != 0.0 {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
        basis[pr] = e;
    }
    (0..rows)
        .map(|r| cost(basis[r]) * tab[r][cols].max(0.0))
        .sum()
}

/// 2D convex hull by monotone chain; collinear boundary points are dropped.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Smallest enclosing circle of planar points by enumeration over the
/// 2D hull. Returns `(center, radius)`.
pub fn planar_enclosing_circle(points: &[[f64; 2]]) -> Result<([f64; 2], f64)> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let hull = convex_hull_2d(points);
    let h = hull.len();
    if h == 1 {
        return Ok((hull[0], 0.0));
    }
    let scale = {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &hull {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt()
    };
    let slack = 1e-12 * scale.max(1.0);
    let dist = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let covers = |c: [f64; 2], r: f64| hull.iter().all(|&p| dist(p, c) <= r + slack);

    let mut best: Option<([f64; 2], f64)> = None;
    let offer = |c: [f64; 2], r: f64, best: &mut Option<([f64; 2], f64)>| {
        if best.is_none_or(|(_, br)| r < br) && covers(c, r) {
            *best = Some((c, r));
        }
    };
    for i in 0..h {
        for j in i + 1..h {
            let c = [(hull[i][0] + hull[j][0]) / 2.0, (hull[i][1] + hull[j][1]) / 2.0];
            offer(c, dist(hull[i], hull[j]) / 2.0, &mut best);
        }
    }
    for i in 0..h {
        for j in i + 1..h {
            for k in j + 1..h {
                let (a, b, c) = (hull[i], hull[j], hull[k]);
                let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
                if d.abs() <= 1e-300 {
                    continue;
                }
                let (a2, b2, c2) = (
                    a[0] * a[0] + a[1] * a[1],
                    b[0] * b[0] + b[1] * b[1],
                    c[0] * c[0] + c[1] * c[1],
                );
                let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
                let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
                let center = [ux, uy];
                let r = dist(center, a).max(dist(center, b)).max(dist(center, c));
                offer(center, r, &mut best);
            }
        }
    }
    Ok(best.expect("the hull always has an enclosing candidate"))
}
