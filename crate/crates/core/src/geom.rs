//! Points, spheres, the tolerance model, and minimal spheres through
//! one to four support points.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A position (or displacement) in 3D Euclidean space. Serializes as `[x, y, z]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn distance_squared(self, o: Point3) -> f64 {
        (self - o).norm_squared()
    }

    #[inline]
    pub fn distance(self, o: Point3) -> f64 {
        self.distance_squared(o).sqrt()
    }

    #[inline]
    pub fn midpoint(self, o: Point3) -> Point3 {
        Point3::new(
            0.5 * (self.x + o.x),
            0.5 * (self.y + o.y),
            0.5 * (self.z + o.z),
        )
    }

    /// Returns `None` for the zero vector.
    pub fn normalized(self) -> Option<Point3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Point3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Point3::new(x, y, z)
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        p.to_array()
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for Point3 {
    type Output = Point3;
    #[inline]
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    #[inline]
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    #[inline]
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Point3 {
    type Output = Point3;
    #[inline]
    fn div(self, s: f64) -> Point3 {
        Point3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    #[inline]
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

/// A closed ball: every point within `radius` of `center`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub center: Point3,
    pub radius: f64,
}

impl Sphere {
    pub fn new(center: Point3, radius: f64) -> Self {
        debug_assert!(radius >= 0.0, "negative radius {radius}");
        Sphere { center, radius }
    }

    /// Zero-radius sphere at `p`.
    pub fn point(p: Point3) -> Self {
        Sphere::new(p, 0.0)
    }

    /// Whether `p` lies inside or within the tolerance band around the surface.
    #[inline]
    pub fn contains(&self, p: Point3, tol: &Tolerance) -> bool {
        contains(self, p, tol)
    }
}

/// Relative tolerance model.
///
/// Absolute comparisons use `eps_rel * max(scale, 1)`, where `scale` is
/// the bounding-box diagonal of the input cloud.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_rel: f64,
    pub scale: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_rel: Tolerance::DEFAULT_EPS_REL,
            scale: 0.0,
        }
    }
}

impl Tolerance {
    pub const DEFAULT_EPS_REL: f64 = 1e-9;

    pub fn new(eps_rel: f64, scale: f64) -> Self {
        assert!(eps_rel > 0.0, "eps_rel must be positive");
        assert!(scale >= 0.0, "scale must be non-negative");
        Tolerance { eps_rel, scale }
    }

    /// Tolerance scaled to the bounding box of `points`.
    pub fn for_points(points: &[Point3], eps_rel: f64) -> Self {
        Tolerance::new(eps_rel, bounding_box_diagonal(points))
    }

    #[inline]
    pub fn absolute(&self) -> f64 {
        self.eps_rel * self.scale.max(1.0)
    }
}

/// Length of the axis-aligned bounding box diagonal; zero for empty input.
pub fn bounding_box_diagonal(points: &[Point3]) -> f64 {
    let Some(first) = points.first() else {
        return 0.0;
    };
    let (lo, hi) = points.iter().fold((*first, *first), |(lo, hi), p| {
        (
            Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z)),
            Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z)),
        )
    });
    lo.distance(hi)
}

/// Why a support set does not determine a unique sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Degenerate {
    #[error("support points are collinear")]
    Collinear,
    #[error("support points are coplanar")]
    Coplanar,
}

/// Sphere with segment `ab` as a diameter.
pub fn sphere_from_two(a: Point3, b: Point3) -> Sphere {
    Sphere::new(a.midpoint(b), 0.5 * a.distance(b))
}

/// Smallest sphere through three points: centered on the triangle's
/// circumcenter, in the triangle's plane.
pub fn sphere_from_three(
    a: Point3,
    b: Point3,
    c: Point3,
    tol: &Tolerance,
) -> Result<Sphere, Degenerate> {
    let u = b - a;
    let v = c - a;
    let w = u.cross(v);
    let w2 = w.norm_squared();

    let longest2 = u
        .norm_squared()
        .max(v.norm_squared())
        .max((c - b).norm_squared());
    // |u x v| <= eps * L^2, compared squared.
    if w2 <= (tol.eps_rel * longest2).powi(2) {
        return Err(Degenerate::Collinear);
    }

    let offset = (v.cross(w) * u.norm_squared() + w.cross(u) * v.norm_squared()) / (2.0 * w2);
    let center = a + offset;
    let radius = [a, b, c]
        .iter()
        .map(|p| p.distance(center))
        .fold(0.0, f64::max);
    Ok(Sphere::new(center, radius))
}

/// Circumsphere of a tetrahedron.
///
/// Solves the equidistance system `2 (p_i - a) . x = |p_i - a|^2` for the
/// center offset `x` relative to `a`.
pub fn sphere_from_four(
    a: Point3,
    b: Point3,
    c: Point3,
    d: Point3,
    tol: &Tolerance,
) -> Result<Sphere, Degenerate> {
    let rows = [b - a, c - a, d - a];

    let mut longest2: f64 = 0.0;
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            longest2 = longest2.max(pts[i].distance_squared(pts[j]));
        }
    }
    let det = rows[0].dot(rows[1].cross(rows[2]));
    if det.abs() <= tol.eps_rel * longest2 * longest2.sqrt() {
        return Err(Degenerate::Coplanar);
    }

    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for (i, r) in rows.iter().enumerate() {
        m[i] = [2.0 * r.x, 2.0 * r.y, 2.0 * r.z];
        rhs[i] = r.norm_squared();
    }
    let x = solve3(m, rhs).ok_or(Degenerate::Coplanar)?;
    let center = a + Point3::from(x);
    let radius = pts
        .iter()
        .map(|p| p.distance(center))
        .fold(0.0, f64::max);
    if !radius.is_finite() || !center.is_finite() {
        return Err(Degenerate::Coplanar);
    }
    Ok(Sphere::new(center, radius))
}

/// Gaussian elimination with partial pivoting on a 3x3 system.
fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (v, p) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *v -= f * p;
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = rhs[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// `|p - center| <= radius + tol`, evaluated on squared distances.
#[inline]
pub fn contains(s: &Sphere, p: Point3, tol: &Tolerance) -> bool {
    let bound = s.radius + tol.absolute();
    s.center.distance_squared(p) <= bound * bound
}
