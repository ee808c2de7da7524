//! Projection-based extreme-point reduction.
//!
//! The cloud is projected onto `k` planes. On each plane the four points
//! extreme along the in-plane axes (+u, -u, +v, -v) are harvested; the union
//! over all planes is the reduced set. A point extreme in some direction is
//! a convex-hull vertex, so the reduced set never contains an interior point.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point3;

/// Orthonormal right-handed basis `(u, v, normal)` attached to a plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionFrame {
    pub normal: Point3,
    pub u: Point3,
    pub v: Point3,
}

/// Builds the frame for plane normal `n`.
///
/// `e` is the canonical axis with the smallest `|n_i|` (the last such axis
/// on ties), `u = normalize(e x n)` and `v = n x u`. For `n = z` this gives
/// `u = x`, `v = y`.
pub fn make_frame(n: Point3) -> Result<ProjectionFrame> {
    let len = n.norm();
    if !(len.is_finite() && len > 1e-12) {
        return Err(Error::ZeroNormal);
    }
    let n = n / len;
    let mags = [n.x.abs(), n.y.abs(), n.z.abs()];
    let mut axis = 0;
    for i in 1..3 {
        if mags[i] <= mags[axis] {
            axis = i;
        }
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let u = Point3::from(e).cross(n).normalized().ok_or(Error::ZeroNormal)?;
    let v = n.cross(u);
    Ok(ProjectionFrame { normal: n, u, v })
}

impl ProjectionFrame {
    /// In-plane coordinates `(p . u, p . v)` of the orthogonal projection of `p`.
    #[inline]
    pub fn project(&self, p: Point3) -> (f64, f64) {
        (p.dot(self.u), p.dot(self.v))
    }
}

/// In-plane coordinates of `p` on frame `f`.
#[inline]
pub fn project(p: Point3, f: &ProjectionFrame) -> (f64, f64) {
    f.project(p)
}

/// The three coordinate-plane normals followed by three diagonal normals.
pub fn canonical_normals() -> [Point3; 6] {
    let h = FRAC_1_SQRT_2;
    [
        Point3::new(0.0, 0.0, 1.0),
        Point3::new(0.0, 1.0, 0.0),
        Point3::new(1.0, 0.0, 0.0),
        Point3::new(h, h, 0.0),
        Point3::new(0.0, h, h),
        Point3::new(h, 0.0, h),
    ]
}

const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

fn radical_inverse_base2(mut i: u64) -> f64 {
    let mut inv = 0.5;
    let mut acc = 0.0;
    while i > 0 {
        if i & 1 == 1 {
            acc += inv;
        }
        inv *= 0.5;
        i >>= 1;
    }
    acc
}

/// The `i`-th direction of the hemisphere spiral.
///
/// Height follows the base-2 radical inverse and azimuth advances by the
/// golden angle, so the sequence does not depend on how many directions are
/// requested: the first `k` of any longer run are exactly `spiral_normals(k)`.
pub fn spiral_normal(i: usize) -> Point3 {
    let z = 1.0 - radical_inverse_base2(i as u64);
    let r = (1.0 - z * z).max(0.0).sqrt();
    let theta = GOLDEN_ANGLE * i as f64;
    Point3::new(r * theta.cos(), r * theta.sin(), z)
}

pub fn spiral_normals(k: usize) -> Vec<Point3> {
    (0..k).map(spiral_normal).collect()
}

/// Frame for the `i`-th spiral direction: [`make_frame`] turned in-plane
/// by `i` golden angles. Without the turn every `u` lies in a coordinate
/// plane and the sampled in-plane directions bunch up on three great
/// circles.
pub fn spiral_frame(i: usize) -> Result<ProjectionFrame> {
    let f = make_frame(spiral_normal(i))?;
    let (s, c) = (GOLDEN_ANGLE * i as f64).sin_cos();
    Ok(ProjectionFrame {
        normal: f.normal,
        u: f.u * c + f.v * s,
        v: f.v * c - f.u * s,
    })
}

/// `k` projection frames: the canonical six for `k = 6`, otherwise the
/// first `k` spiral frames.
pub fn generate_orientations(k: usize) -> Result<Vec<ProjectionFrame>> {
    if k == 6 {
        canonical_normals().into_iter().map(make_frame).collect()
    } else {
        spiral_orientations(k)
    }
}

/// The first `k` spiral frames, bypassing the canonical set.
pub fn spiral_orientations(k: usize) -> Result<Vec<ProjectionFrame>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    (0..k).map(spiral_frame).collect()
}

#[derive(Clone, Copy)]
struct Extreme {
    primary: f64,
    secondary: f64,
    index: usize,
}

impl Extreme {
    const fn new() -> Self {
        Extreme {
            primary: f64::NAN,
            secondary: f64::NAN,
            index: usize::MAX,
        }
    }

    /// Keeps the lexicographically largest `(primary, secondary, depth)`;
    /// a full tie keeps the earlier index. `depth` is only evaluated on an
    /// exact tie of the first two keys.
    #[inline(always)]
    fn offer(&mut self, primary: f64, secondary: f64, index: usize, depth: impl Fn(usize) -> f64) {
        let take = self.index == usize::MAX
            || primary > self.primary
            || (primary == self.primary
                && (secondary > self.secondary
                    || (secondary == self.secondary && depth(index) > depth(self.index))));
        if take {
            self.primary = primary;
            self.secondary = secondary;
            self.index = index;
        }
    }
}

/// Extreme points for several frames in one pass over the cloud.
///
/// Slots per frame are ordered `[+u, -u, +v, -v]`. Ties on a direction `d`
/// go to the larger coordinate along `n x d` (the direction turned a quarter
/// towards the next slot), then to the larger `+-(p . n)` with the sign of
/// the slot, then to the lower index. Every tie-break lands on an endpoint
/// of the tied set, so the pick stays a hull vertex, and `-d` picks the
/// mirror image of what `d` picks.
pub fn extreme4_many(points: &[Point3], frames: &[ProjectionFrame]) -> Vec<[usize; 4]> {
    let mut state = vec![[Extreme::new(); 4]; frames.len()];
    for (i, &p) in points.iter().enumerate() {
        for (f, st) in frames.iter().zip(state.iter_mut()) {
            let a = p.dot(f.u);
            let b = p.dot(f.v);
            let up = |j: usize| points[j].dot(f.normal);
            let down = |j: usize| -points[j].dot(f.normal);
            st[0].offer(a, b, i, up);
            st[1].offer(-a, -b, i, down);
            st[2].offer(b, -a, i, up);
            st[3].offer(-b, a, i, down);
        }
    }
    state
        .into_iter()
        .map(|st| st.map(|e| e.index))
        .collect()
}

/// Indices of the points extreme along `+u`, `-u`, `+v`, `-v` on frame `f`.
///
/// # Panics
///
/// If `points` is empty.
pub fn extreme4(points: &[Point3], f: &ProjectionFrame) -> [usize; 4] {
    assert!(!points.is_empty(), "extreme4 needs at least one point");
    extreme4_many(points, std::slice::from_ref(f))[0]
}

/// The reduced subset: deduplicated indices plus the per-plane picks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedSet {
    /// First-seen order over frames, then slots.
    pub indices: Vec<usize>,
    pub per_plane: Vec<[usize; 4]>,
}

impl ReducedSet {
    fn from_picks(n: usize, per_plane: Vec<[usize; 4]>) -> Self {
        let mut seen = vec![false; n];
        let mut indices = Vec::with_capacity(4 * per_plane.len());
        for &i in per_plane.iter().flatten() {
            if !seen[i] {
                seen[i] = true;
                indices.push(i);
            }
        }
        ReducedSet { indices, per_plane }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// How the number of planes is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KMode {
    /// Fixed canonical six planes, adequate for highly symmetric clouds.
    Symmetric6,
    /// Grows with the cloud size.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KSelection {
    pub mode: KMode,
    pub k: usize,
    pub c1: f64,
    pub c2: f64,
}

impl KSelection {
    pub const DEFAULT_C1: f64 = 2.0;
    pub const DEFAULT_C2: f64 = 1.0;

    pub fn symmetric() -> Self {
        KSelection {
            mode: KMode::Symmetric6,
            k: 6,
            c1: Self::DEFAULT_C1,
            c2: Self::DEFAULT_C2,
        }
    }

    /// Caller-chosen plane count.
    pub fn fixed(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        Ok(KSelection {
            mode: KMode::General,
            k,
            c1: Self::DEFAULT_C1,
            c2: Self::DEFAULT_C2,
        })
    }
}

/// Plane count for a cloud of `n` points with the default constants.
pub fn select_k(n: usize, mode: KMode) -> KSelection {
    select_k_with(n, mode, KSelection::DEFAULT_C1, KSelection::DEFAULT_C2)
}

/// General mode: `ceil(c1 n^(1/4))` capped at `ceil(c2 sqrt(n))`, never
/// below six. The floor of six wins when the cap falls under it.
pub fn select_k_with(n: usize, mode: KMode, c1: f64, c2: f64) -> KSelection {
    let k = match mode {
        KMode::Symmetric6 => 6,
        KMode::General => {
            let n = n.max(1) as f64;
            let raw = (c1 * n.powf(0.25)).ceil();
            let cap = (c2 * n.sqrt()).ceil();
            raw.min(cap).max(6.0) as usize
        }
    };
    KSelection { mode, k, c1, c2 }
}

/// Union of per-plane extreme points over `sel.k` planes. One pass over the
/// cloud; cost is `O(k N)`.
pub fn reduce(points: &[Point3], sel: &KSelection) -> Result<ReducedSet> {
    let frames = generate_orientations(sel.k)?;
    reduce_with_frames(points, &frames)
}

pub fn reduce_with_frames(points: &[Point3], frames: &[ProjectionFrame]) -> Result<ReducedSet> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if frames.is_empty() {
        return Err(Error::InvalidK);
    }
    Ok(ReducedSet::from_picks(
        points.len(),
        extreme4_many(points, frames),
    ))
}

/// Same result as [`reduce`], with frames scanned on the rayon pool.
pub fn reduce_parallel(points: &[Point3], sel: &KSelection) -> Result<ReducedSet> {
    let frames = generate_orientations(sel.k)?;
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let chunk = frames.len().div_ceil(rayon::current_num_threads()).max(1);
    let per_plane: Vec<[usize; 4]> = frames
        .par_chunks(chunk)
        .flat_map_iter(|fs| extreme4_many(points, fs))
        .collect();
    Ok(ReducedSet::from_picks(points.len(), per_plane))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    fn assert_orthonormal(f: &ProjectionFrame) {
        for w in [f.normal, f.u, f.v] {
            assert_abs_diff_eq!(w.norm(), 1.0, epsilon = 1e-12);
        }
        assert!(f.u.dot(f.v).abs() <= 1e-12);
        assert!(f.u.dot(f.normal).abs() <= 1e-12);
        assert!(f.v.dot(f.normal).abs() <= 1e-12);
        // det[u v n] = (u x v) . n
        assert_abs_diff_eq!(f.u.cross(f.v).dot(f.normal), 1.0, epsilon = 1e-12);
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
    fn frame_for_z_axis() {
        let f = make_frame(p(0., 0., 1.)).unwrap();
        assert_eq!(f.u, p(1., 0., 0.));
        assert_eq!(f.v, p(0., 1., 0.));
    }

    #[test]
    fn frames_are_orthonormal() {
        for n in [
            p(1., 0., 0.),
            p(0., 1., 0.),
            p(1., 1., 1.) / 3f64.sqrt(),
            p(-0.3, 0.9, 0.1),
            p(1e-3, -2.0, 7.0),
        ] {
            assert_orthonormal(&make_frame(n).unwrap());
        }
        assert!(matches!(make_frame(Point3::ORIGIN), Err(Error::ZeroNormal)));
        assert!(matches!(make_frame(p(1e-13, 0., 0.)), Err(Error::ZeroNormal)));
    }

    #[test]
    fn frame_is_deterministic() {
        let n = p(0.2, -0.4, 0.9);
        assert_eq!(make_frame(n).unwrap(), make_frame(n).unwrap());
    }

    #[test]
    fn projection_drops_normal_component() {
        let f = make_frame(p(0., 0., 1.)).unwrap();
        assert_eq!(project(p(3., 4., 5.), &f), (3.0, 4.0));
        let g = make_frame(p(1., 2., 3.)).unwrap();
        let (a, b) = project(g.normal * 2.0, &g);
        assert!(a.abs() < 1e-15 && b.abs() < 1e-15);
    }

    #[test]
    fn canonical_six() {
        let frames = generate_orientations(6).unwrap();
        let h = FRAC_1_SQRT_2;
        let expected = [
            p(0., 0., 1.),
            p(0., 1., 0.),
            p(1., 0., 0.),
            p(h, h, 0.),
            p(0., h, h),
            p(h, 0., h),
        ];
        for (f, e) in frames.iter().zip(expected) {
            assert!(f.normal.distance(e) < 1e-15);
            assert_orthonormal(f);
        }
        assert_eq!(generate_orientations(1).unwrap()[0].normal, p(0., 0., 1.));
        assert!(matches!(generate_orientations(0), Err(Error::InvalidK)));
    }

    #[test]
    fn spiral_hundred_directions_are_distinct() {
        let frames = generate_orientations(100).unwrap();
        assert_eq!(frames.len(), 100);
        let mut max_dot: f64 = -1.0;
        for i in 0..100 {
            assert!(frames[i].normal.z > 0.0);
            for j in i + 1..100 {
                max_dot = max_dot.max(frames[i].normal.dot(frames[j].normal));
            }
        }
        assert!(max_dot < 1.0 - 1e-6, "max dot {max_dot}");
    }

    #[test]
    fn spiral_is_prefix_nested() {
        let long = spiral_normals(50);
        assert_eq!(&long[..12], &spiral_normals(12)[..]);
    }

    #[test]
    fn extremes_of_a_diamond() {
        let pts = [p(1., 0., 0.), p(-1., 0., 0.), p(0., 1., 0.), p(0., -1., 0.)];
        let f = make_frame(p(0., 0., 1.)).unwrap();
        assert_eq!(extreme4(&pts, &f), [0, 1, 2, 3]);
    }

    #[test]
    fn single_point_fills_every_slot() {
        let f = make_frame(p(0.3, 0.3, 0.9)).unwrap();
        assert_eq!(extreme4(&[p(5., 5., 5.)], &f), [0; 4]);
    }

    #[test]
    fn cube_center_is_never_extreme() {
        let pts = cube_with_center();
        let f = make_frame(p(0., 0., 1.)).unwrap();
        assert!(!extreme4(&pts, &f).contains(&8));
    }

    #[test]
    fn ties_follow_the_turned_direction_then_index() {
        // Three points tie on u = 1: +u takes the larger v. Index 3 duplicates
        // index 1 and loses. On -u the tie goes to the smaller v.
        let pts = [p(1., 0., 0.), p(1., 2., 0.), p(-1., 0., 0.), p(1., 2., 0.), p(-1., 1., 0.)];
        let f = make_frame(p(0., 0., 1.)).unwrap();
        let [pu, mu, _, _] = extreme4(&pts, &f);
        assert_eq!(pu, 1);
        assert_eq!(mu, 2);
    }

    #[test]
    fn stacked_ties_pick_an_end_of_the_stack() {
        // Same projection, different depth along n: the middle one is not a
        // hull vertex and must never be picked.
        let pts = [p(1., 1., 0.5), p(1., 1., 0.), p(1., 1., 1.), p(0., 0., 0.)];
        let f = make_frame(p(0., 0., 1.)).unwrap();
        let picks = extreme4(&pts, &f);
        assert!(!picks.contains(&0), "{picks:?}");
        assert!(picks.contains(&2));
    }

    #[test]
    fn reduce_cube_keeps_only_corners() {
        let pts = cube_with_center();
        let r = reduce(&pts, &KSelection::symmetric()).unwrap();
        let mut idx = r.indices.clone();
        idx.sort();
        assert_eq!(idx, (0..8).collect::<Vec<_>>());
        assert_eq!(r.per_plane.len(), 6);
    }

    #[test]
    fn cube_corners_survive_any_listing_order() {
        let corners: Vec<Point3> = cube_with_center()[..8].to_vec();
        for shift in 0..8 {
            for reverse in [false, true] {
                let mut pts = corners.clone();
                pts.rotate_left(shift);
                if reverse {
                    pts.reverse();
                }
                pts.push(p(0.5, 0.5, 0.5));
                let r = reduce(&pts, &KSelection::symmetric()).unwrap();
                assert_eq!(r.len(), 8, "shift {shift} reverse {reverse}");
                assert!(!r.indices.contains(&8));
            }
        }
    }

    #[test]
    fn reduce_single_point() {
        let r = reduce(&[p(1., 2., 3.)], &KSelection::fixed(9).unwrap()).unwrap();
        assert_eq!(r.indices, vec![0]);
    }

    #[test]
    fn reduce_rejects_empty_and_zero_k() {
        assert!(matches!(
            reduce(&[], &KSelection::symmetric()),
            Err(Error::EmptyInput)
        ));
        let bad = KSelection {
            k: 0,
            ..KSelection::symmetric()
        };
        assert!(matches!(reduce(&[p(0., 0., 0.)], &bad), Err(Error::InvalidK)));
        assert!(matches!(KSelection::fixed(0), Err(Error::InvalidK)));
    }

    #[test]
    fn parallel_matches_sequential() {
        let pts: Vec<Point3> = (0..500)
            .map(|i| {
                let t = i as f64;
                p((t * 0.7).sin(), (t * 1.9).cos(), (t * 0.31).sin())
            })
            .collect();
        for k in [1, 6, 13, 40] {
            let sel = KSelection::fixed(k).unwrap();
            assert_eq!(reduce(&pts, &sel).unwrap(), reduce_parallel(&pts, &sel).unwrap());
        }
    }

    #[test]
    fn k_selection() {
        for n in [1, 10, 1000, 1_000_000] {
            assert_eq!(select_k(n, KMode::Symmetric6).k, 6);
        }
        assert_eq!(select_k(10_000, KMode::General).k, 20);
        assert_eq!(select_k(16, KMode::General).k, 6);
        // 2 * 1e6^(1/4) = 63.2 -> 64, under the sqrt cap of 1000.
        assert_eq!(select_k(1_000_000, KMode::General).k, 64);
        // A tight cap binds above the floor.
        assert_eq!(select_k_with(10_000, KMode::General, 2.0, 0.1).k, 10);
    }
}
