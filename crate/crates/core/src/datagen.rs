//! Seeded point-cloud generators, including exactly degenerate families.
//!
//! The degenerate kinds are built so that their defining constraint holds
//! bit-exactly in `f64`:
//!
//! * `collinear`: points `t (1, 1/2, 1/4)`. Scaling by powers of two is
//!   exact, so every difference `p_i - p_0` is an exact multiple of the
//!   direction and all cross products vanish.
//! * `coplanar-disk`: points `(a/sqrt2, b, a/sqrt2)` on the plane `x = z`;
//!   the dot product with the plane normal cancels exactly.
//! * `co-spherical`: Gaussian directions normalized to the shell radius.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CloudKind {
    UniformBall,
    UniformCube,
    Collinear,
    CoplanarDisk,
    CoSpherical,
    Clustered,
    /// Coplanar disk with per-coordinate Gaussian jitter.
    NearDegenerate,
}

impl CloudKind {
    pub const ALL: [CloudKind; 7] = [
        CloudKind::UniformBall,
        CloudKind::UniformCube,
        CloudKind::Collinear,
        CloudKind::CoplanarDisk,
        CloudKind::CoSpherical,
        CloudKind::Clustered,
        CloudKind::NearDegenerate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CloudKind::UniformBall => "uniform-ball",
            CloudKind::UniformCube => "uniform-cube",
            CloudKind::Collinear => "collinear",
            CloudKind::CoplanarDisk => "coplanar-disk",
            CloudKind::CoSpherical => "co-spherical",
            CloudKind::Clustered => "clustered",
            CloudKind::NearDegenerate => "near-degenerate",
        }
    }
}

impl fmt::Display for CloudKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CloudKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CloudKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Direction of the collinear family (not unit length).
pub const COLLINEAR_DIRECTION: Point3 = Point3::new(1.0, 0.5, 0.25);

/// Unit normal of the plane used by the coplanar families.
pub const COPLANAR_NORMAL: Point3 = Point3::new(FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Ball/shell/disk radius, cube half-side, or segment half-length
    /// (in parameter units of the collinear direction).
    pub radius: f64,
    /// Jitter standard deviation for `near-degenerate`.
    pub sigma: f64,
    pub clusters: usize,
    /// Per-cluster standard deviation as a fraction of `radius`.
    pub cluster_spread: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            radius: 1.0,
            sigma: 1e-8,
            clusters: 5,
            cluster_spread: 0.02,
        }
    }
}

impl GenParams {
    fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidParams(format!("radius {} must be positive", self.radius)));
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::InvalidParams(format!("sigma {} must be non-negative", self.sigma)));
        }
        if self.clusters == 0 {
            return Err(Error::InvalidParams("clusters must be at least 1".into()));
        }
        if !(self.cluster_spread.is_finite() && self.cluster_spread >= 0.0) {
            return Err(Error::InvalidParams("cluster_spread must be non-negative".into()));
        }
        Ok(())
    }
}

fn in_unit_ball(rng: &mut impl Rng) -> Point3 {
    loop {
        let p = Point3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if p.norm_squared() <= 1.0 {
            return p;
        }
    }
}

fn in_unit_disk(rng: &mut impl Rng) -> (f64, f64) {
    loop {
        let a: f64 = rng.random_range(-1.0..1.0);
        let b: f64 = rng.random_range(-1.0..1.0);
        if a * a + b * b <= 1.0 {
            return (a, b);
        }
    }
}

fn on_unit_sphere(rng: &mut impl Rng) -> Point3 {
    loop {
        let p = Point3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(u) = p.normalized() {
            return u;
        }
    }
}

fn disk_point(rng: &mut impl Rng, radius: f64) -> Point3 {
    let (a, b) = in_unit_disk(rng);
    let s = a * radius * FRAC_1_SQRT_2;
    Point3::new(s, b * radius, s)
}

/// `n` points of the given kind. Same arguments give bit-identical output.
pub fn generate(kind: CloudKind, n: usize, seed: u64, params: &GenParams) -> Result<Vec<Point3>> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    params.validate()?;
    let r = params.radius;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;

    let points = match kind {
        CloudKind::UniformBall => (0..n).map(|_| in_unit_ball(rng) * r).collect(),
        CloudKind::UniformCube => (0..n)
            .map(|_| {
                Point3::new(
                    rng.random_range(-r..r),
                    rng.random_range(-r..r),
                    rng.random_range(-r..r),
                )
            })
            .collect(),
        CloudKind::Collinear => (0..n)
            .map(|_| {
                let t: f64 = rng.random_range(-r..r);
                Point3::new(t, 0.5 * t, 0.25 * t)
            })
            .collect(),
        CloudKind::CoplanarDisk => (0..n).map(|_| disk_point(rng, r)).collect(),
        CloudKind::CoSpherical => (0..n).map(|_| on_unit_sphere(rng) * r).collect(),
        CloudKind::Clustered => {
            let centers: Vec<Point3> = (0..params.clusters).map(|_| in_unit_ball(rng) * r).collect();
            let spread = Normal::new(0.0, params.cluster_spread * r)
                .map_err(|e| Error::InvalidParams(e.to_string()))?;
            (0..n)
                .map(|_| {
                    let c = centers[rng.random_range(0..centers.len())];
                    c + Point3::new(spread.sample(rng), spread.sample(rng), spread.sample(rng))
                })
                .collect()
        }
        CloudKind::NearDegenerate => {
            let jitter =
                Normal::new(0.0, params.sigma).map_err(|e| Error::InvalidParams(e.to_string()))?;
            (0..n)
                .map(|_| {
                    disk_point(rng, r)
                        + Point3::new(jitter.sample(rng), jitter.sample(rng), jitter.sample(rng))
                })
                .collect()
        }
    };
    Ok(points)
}
