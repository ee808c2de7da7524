use minisphere::projection::{reduce_with_frames, spiral_orientations};
use minisphere::{
    brute_force_ses, contains, generate, is_hull_vertex, reduce, solve, welzl_solve, CloudKind,
    GenParams, KSelection, Point3, Tolerance,
};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = CloudKind> {
    prop::sample::select(CloudKind::ALL.to_vec())
}

fn cloud(max: usize) -> impl Strategy<Value = Vec<Point3>> {
    (kind(), 4..=max, any::<u64>())
        .prop_map(|(k, n, seed)| generate(k, n, seed, &GenParams::default()).unwrap())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_match_oracle(pts in cloud(30), seed: u64, k in 1usize..40) {
        let tol = Tolerance::for_points(&pts, 1e-9);
        let truth = brute_force_ses(&pts, &tol).unwrap();
        let (w, _) = welzl_solve(&pts, seed, &tol).unwrap();
        let r = solve(&pts, &KSelection::fixed(k).unwrap(), seed, &tol).unwrap();
        prop_assert!(close(w.radius, truth.radius), "{} vs {}", w.radius, truth.radius);
        prop_assert!(close(r.sphere.radius, truth.radius));
        for &p in &pts {
            prop_assert!(contains(&w, p, &tol));
            prop_assert!(contains(&r.sphere, p, &tol));
        }
    }

    #[test]
    fn radius_ignores_order_and_rigid_motion(
        pts in cloud(200),
        perm_seed: u64,
        angle in 0.0..std::f64::consts::TAU,
        shift in prop::array::uniform3(-100.0..100.0f64),
    ) {
        let tol = Tolerance::for_points(&pts, 1e-9);
        let (base, _) = welzl_solve(&pts, 1, &tol).unwrap();

        let mut shuffled = pts.clone();
        let mut s = perm_seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let (c, sn) = angle.sin_cos();
        let t = Point3::from(shift);
        let moved: Vec<Point3> = shuffled
            .iter()
            .map(|p| Point3::new(c * p.x - sn * p.y, sn * p.x + c * p.y, p.z) + t)
            .collect();
        let tol2 = Tolerance::for_points(&moved, 1e-9);
        let (other, _) = welzl_solve(&moved, 2, &tol2).unwrap();
        // Tolerances scale with the bounding box, so allow that much slack.
        let slack = 4.0 * tol.absolute().max(tol2.absolute()) + 1e-12 * t.norm();
        prop_assert!((other.radius - base.radius).abs() <= slack,
            "{} vs {}", other.radius, base.radius);
    }

    #[test]
    fn reduced_points_are_hull_vertices(pts in cloud(30), k in 1usize..64) {
        let tol = Tolerance::for_points(&pts, 1e-9);
        let red = reduce(&pts, &KSelection::fixed(k).unwrap()).unwrap();
        prop_assert!(red.len() <= 4 * k);
        for &i in &red.indices {
            prop_assert!(is_hull_vertex(i, &pts, &tol).unwrap(), "index {}", i);
        }
    }

    #[test]
    fn interior_point_is_never_reduced(pts in cloud(100), k in 1usize..64, at in any::<prop::sample::Index>()) {
        // The centroid of a cloud that is not flat is strictly inside its hull.
        prop_assume!(!is_flat(&pts));
        let c = pts.iter().fold(Point3::ORIGIN, |a, &p| a + p) / pts.len() as f64;
        let mut with = pts.clone();
        let at = at.index(with.len() + 1);
        with.insert(at, c);
        let red = reduce(&with, &KSelection::fixed(k).unwrap()).unwrap();
        prop_assert!(!red.indices.contains(&at));
    }

    #[test]
    fn nested_frames_never_shrink_the_reduced_set(pts in cloud(300), k1 in 1usize..40, extra in 0usize..40) {
        let small = reduce_with_frames(&pts, &spiral_orientations(k1).unwrap()).unwrap();
        let big = reduce_with_frames(&pts, &spiral_orientations(k1 + extra).unwrap()).unwrap();
        prop_assert!(small.len() <= big.len());
        prop_assert!(small.indices.iter().all(|i| big.indices.contains(i)));
    }
}

/// Collinear, coplanar and near-degenerate clouds.
fn is_flat(pts: &[Point3]) -> bool {
    let a = pts[0];
    let Some(b) = pts.iter().copied().max_by(|x, y| x.distance(a).total_cmp(&y.distance(a))) else {
        return true;
    };
    let ab = b - a;
    let Some(c) = pts
        .iter()
        .copied()
        .max_by(|x, y| (*x - a).cross(ab).norm().total_cmp(&(*y - a).cross(ab).norm()))
    else {
        return true;
    };
    let normal = ab.cross(c - a);
    let scale = ab.norm().powi(2) * (c - a).norm();
    pts.iter().all(|&q| (q - a).dot(normal).abs() <= 1e-6 * scale)
}
