//! Scaling and convergence experiments.
//!
//! `run_scaling` times a strategy over increasing cloud sizes and fits the
//! slope of `log(time)` against `log(N)`; linear-time behaviour shows up as
//! a slope near one. `run_convergence` measures how much of the true hull
//! the reduced set recovers as the plane count grows.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{generate, CloudKind, GenParams};
use crate::error::{Error, Result};
use crate::geom::{Point3, Tolerance};
use crate::oracle::{hull_vertices, MAX_HULL_ORACLE_POINTS};
use crate::projection::{reduce, select_k, KMode, KSelection};
use crate::solve::{solve, solve_with, SolveReport, Strategy};

pub const REPORT_VERSION: u32 = 1;

/// Smallest cloud size accepted by the scaling study.
pub const MIN_SCALING_SIZE: usize = 1_000;

/// Largest cloud accepted by the convergence study.
pub const MAX_CONVERGENCE_POINTS: usize = 400;

/// Plane count policy for a benchmark.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "k")]
pub enum KPolicy {
    Fixed(usize),
    Symmetric,
    /// `select_k` in general mode for each size.
    Auto,
}

impl KPolicy {
    pub fn selection(&self, n: usize) -> Result<KSelection> {
        match *self {
            KPolicy::Fixed(k) => KSelection::fixed(k),
            KPolicy::Symmetric => Ok(KSelection::symmetric()),
            KPolicy::Auto => Ok(select_k(n, KMode::General)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingConfig {
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub strategy: Strategy,
    pub k: KPolicy,
    pub kind: CloudKind,
    pub eps_rel: f64,
    /// Each timed sample runs at least [`MIN_BATCHES`] batches and keeps
    /// going until this much wall time has accumulated; it reports the
    /// median per-solve time over batches.
    pub min_sample_ms: f64,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            sizes: vec![10_000, 30_000, 100_000, 300_000, 1_000_000],
            seeds: vec![1, 2, 3],
            strategy: Strategy::Projection,
            k: KPolicy::Fixed(24),
            kind: CloudKind::UniformBall,
            eps_rel: Tolerance::DEFAULT_EPS_REL,
            min_sample_ms: 200.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeTiming {
    pub n: usize,
    pub k: Option<usize>,
    pub median_ms: f64,
    pub reduce_ms: f64,
    pub solve_ms: f64,
    pub verify_ms: f64,
    pub samples_ms: Vec<f64>,
    pub repetitions: Vec<usize>,
    pub radii: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub report_version: u32,
    pub kind: CloudKind,
    pub strategy: Strategy,
    pub k_policy: KPolicy,
    pub seeds: Vec<u64>,
    pub sizes: Vec<SizeTiming>,
    /// Least-squares slope of `ln(median_ms)` against `ln(n)`.
    pub slope: f64,
    pub intercept: f64,
}

pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Ordinary least squares `y = intercept + slope x`. Returns `(slope, intercept)`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Batches per timed sample; the sample is the median batch.
pub const MIN_BATCHES: usize = 5;

/// Small clouds repeat the solve inside a batch until this much time has
/// passed, keeping each batch well above timer resolution.
const BATCH_MS: f64 = 2.0;

fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn timed_sample(
    points: &[Point3],
    cfg: &ScalingConfig,
    sel: &KSelection,
    seed: u64,
    tol: &Tolerance,
) -> Result<(f64, usize, SolveReport)> {
    let start = Instant::now();
    let mut batches = Vec::new();
    let mut reps = 0;
    loop {
        let b = Instant::now();
        let mut count = 0;
        let last = loop {
            let r = solve_with(points, cfg.strategy, sel, seed, tol)?;
            count += 1;
            if elapsed_ms(b) >= BATCH_MS {
                break r;
            }
        };
        batches.push(elapsed_ms(b) / count as f64);
        reps += count;
        if batches.len() >= MIN_BATCHES && elapsed_ms(start) >= cfg.min_sample_ms {
            return Ok((median(&batches), reps, last));
        }
    }
}

/// Median solve time per size over seeds, with one discarded warm-up solve
/// per size, and the log-log slope across sizes.
pub fn run_scaling(cfg: &ScalingConfig) -> Result<ScalingReport> {
    if cfg.sizes.len() < 2 {
        return Err(Error::InsufficientSamples(format!(
            "scaling needs at least 2 sizes, got {}",
            cfg.sizes.len()
        )));
    }
    if cfg.seeds.len() < 3 {
        return Err(Error::InsufficientSamples(format!(
            "scaling needs at least 3 seeds, got {}",
            cfg.seeds.len()
        )));
    }
    if cfg.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("sizes must be strictly ascending".into()));
    }
    if let Some(&n) = cfg.sizes.iter().find(|&&n| n < MIN_SCALING_SIZE) {
        return Err(Error::InvalidParams(format!(
            "size {n} is below the minimum of {MIN_SCALING_SIZE}"
        )));
    }

    let params = GenParams::default();
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for &n in &cfg.sizes {
        let sel = cfg.k.selection(n)?;
        let clouds: Vec<Vec<Point3>> = cfg
            .seeds
            .iter()
            .map(|&s| generate(cfg.kind, n, s, &params))
            .collect::<Result<_>>()?;

        let warm_tol = Tolerance::for_points(&clouds[0], cfg.eps_rel);
        solve_with(&clouds[0], cfg.strategy, &sel, cfg.seeds[0], &warm_tol)?;

        let mut samples = Vec::new();
        let mut repetitions = Vec::new();
        let mut radii = Vec::new();
        let (mut red, mut sol, mut ver) = (Vec::new(), Vec::new(), Vec::new());
        for (cloud, &seed) in clouds.iter().zip(&cfg.seeds) {
            let tol = Tolerance::for_points(cloud, cfg.eps_rel);
            let (ms, reps, report) = timed_sample(cloud, cfg, &sel, seed, &tol)?;
            samples.push(ms);
            repetitions.push(reps);
            radii.push(report.sphere.radius);
            red.push(report.timings.reduce_ms);
            sol.push(report.timings.solve_ms);
            ver.push(report.timings.verify_ms);
        }
        rows.push(SizeTiming {
            n,
            k: match cfg.strategy {
                Strategy::Welzl => None,
                _ => Some(sel.k),
            },
            median_ms: median(&samples),
            reduce_ms: median(&red),
            solve_ms: median(&sol),
            verify_ms: median(&ver),
            samples_ms: samples,
            repetitions,
            radii,
        });
    }

    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.median_ms.max(1e-9).ln()).collect();
    let (slope, intercept) = fit_line(&xs, &ys);
    Ok(ScalingReport {
        report_version: REPORT_VERSION,
        kind: cfg.kind,
        strategy: cfg.strategy,
        k_policy: cfg.k,
        seeds: cfg.seeds.clone(),
        sizes: rows,
        slope,
        intercept,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub k: usize,
    /// Mean fraction of hull vertices present in the reduced set; only
    /// measured when the hull oracle can handle the cloud size.
    pub coverage_mean: Option<f64>,
    pub coverage_std: Option<f64>,
    pub repairs_mean: f64,
    pub repairs_std: f64,
    pub reduced_mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub report_version: u32,
    pub n: usize,
    pub kind: Option<CloudKind>,
    pub seeds: Vec<u64>,
    pub rows: Vec<ConvergenceRow>,
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    (m, var.sqrt())
}

struct Measurement {
    coverage: Option<f64>,
    repairs: f64,
    reduced: f64,
}

fn measure(cloud: &[Point3], hull: Option<&[usize]>, k: usize, seed: u64) -> Result<Measurement> {
    let sel = KSelection::fixed(k)?;
    let tol = Tolerance::for_points(cloud, Tolerance::DEFAULT_EPS_REL);
    let reduced = reduce(cloud, &sel)?;
    let coverage = hull.map(|h| {
        let hits = h.iter().filter(|i| reduced.indices.contains(i)).count();
        hits as f64 / h.len() as f64
    });
    let report = solve(cloud, &sel, seed, &tol)?;
    Ok(Measurement {
        coverage,
        repairs: report.repair_rounds as f64,
        reduced: reduced.len() as f64,
    })
}

/// Convergence study over explicit clouds; `seeds[i]` drives the solver for
/// `clouds[i]`.
pub fn run_convergence_on(
    clouds: &[Vec<Point3>],
    seeds: &[u64],
    ks: &[usize],
    parallel: bool,
) -> Result<ConvergenceReport> {
    if clouds.is_empty() || ks.is_empty() {
        return Err(Error::InsufficientSamples("need at least one cloud and one k".into()));
    }
    if ks.contains(&0) {
        return Err(Error::InvalidK);
    }
    assert_eq!(clouds.len(), seeds.len());
    let n = clouds[0].len();
    if clouds.iter().any(|c| c.len() > MAX_CONVERGENCE_POINTS) {
        return Err(Error::TooLarge {
            n: clouds.iter().map(Vec::len).max().unwrap_or(0),
            max: MAX_CONVERGENCE_POINTS,
        });
    }

    let hull_of = |c: &Vec<Point3>| -> Result<Option<Vec<usize>>> {
        if c.len() <= MAX_HULL_ORACLE_POINTS {
            let tol = Tolerance::for_points(c, Tolerance::DEFAULT_EPS_REL);
            Ok(Some(hull_vertices(c, &tol)?))
        } else {
            Ok(None)
        }
    };
    let hulls: Vec<Option<Vec<usize>>> = if parallel {
        clouds.par_iter().map(hull_of).collect::<Result<_>>()?
    } else {
        clouds.iter().map(hull_of).collect::<Result<_>>()?
    };

    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let run = |i: usize| measure(&clouds[i], hulls[i].as_deref(), k, seeds[i]);
        let ms: Vec<Measurement> = if parallel {
            (0..clouds.len()).into_par_iter().map(run).collect::<Result<_>>()?
        } else {
            (0..clouds.len()).map(run).collect::<Result<_>>()?
        };
        let cov: Option<Vec<f64>> = ms.iter().map(|m| m.coverage).collect();
        let (coverage_mean, coverage_std) = match cov {
            Some(c) => {
                let (m, s) = mean_std(&c);
                (Some(m), Some(s))
            }
            None => (None, None),
        };
        let reps: Vec<f64> = ms.iter().map(|m| m.repairs).collect();
        let (repairs_mean, repairs_std) = mean_std(&reps);
        let red: Vec<f64> = ms.iter().map(|m| m.reduced).collect();
        rows.push(ConvergenceRow {
            k,
            coverage_mean,
            coverage_std,
            repairs_mean,
            repairs_std,
            reduced_mean: mean_std(&red).0,
        });
    }
    Ok(ConvergenceReport {
        report_version: REPORT_VERSION,
        n,
        kind: None,
        seeds: seeds.to_vec(),
        rows,
    })
}

/// Convergence study on generated clouds of `n` points, one per seed.
pub fn run_convergence(
    kind: CloudKind,
    n: usize,
    ks: &[usize],
    seeds: &[u64],
    parallel: bool,
) -> Result<ConvergenceReport> {
    if n > MAX_CONVERGENCE_POINTS {
        return Err(Error::TooLarge {
            n,
            max: MAX_CONVERGENCE_POINTS,
        });
    }
    let clouds: Vec<Vec<Point3>> = seeds
        .iter()
        .map(|&s| generate(kind, n, s, &GenParams::default()))
        .collect::<Result<_>>()?;
    let mut report = run_convergence_on(&clouds, seeds, ks, parallel)?;
    report.kind = Some(kind);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn median_and_fit() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let (s, c) = fit_line(&xs, &ys);
        assert_relative_eq!(s, 2.0);
        assert_relative_eq!(c, 1.0);
    }

    #[test]
    fn scaling_rejects_single_size() {
        let cfg = ScalingConfig {
            sizes: vec![10_000],
            ..ScalingConfig::default()
        };
        assert!(matches!(run_scaling(&cfg), Err(Error::InsufficientSamples(_))));
        let cfg = ScalingConfig {
            seeds: vec![1, 2],
            ..ScalingConfig::default()
        };
        assert!(matches!(run_scaling(&cfg), Err(Error::InsufficientSamples(_))));
        let cfg = ScalingConfig {
            sizes: vec![100, 1000],
            ..ScalingConfig::default()
        };
        assert!(matches!(run_scaling(&cfg), Err(Error::InvalidParams(_))));
        let cfg = ScalingConfig {
            sizes: vec![2000, 1000],
            ..ScalingConfig::default()
        };
        assert!(matches!(run_scaling(&cfg), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn small_scaling_run_reports_every_size() {
        let cfg = ScalingConfig {
            sizes: vec![1_000, 4_000],
            min_sample_ms: 0.0,
            ..ScalingConfig::default()
        };
        let r = run_scaling(&cfg).unwrap();
        assert_eq!(r.report_version, 1);
        assert_eq!(r.sizes.len(), 2);
        assert!(r.slope.is_finite());
        assert_eq!(r.sizes[0].k, Some(24));
    }

    #[test]
    fn cube_corners_are_fully_covered() {
        let mut cube = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    cube.push(Point3::new(x, y, z));
                }
            }
        }
        let r = run_convergence_on(&[cube], &[1], &[6, 12, 24], false).unwrap();
        for row in &r.rows {
            assert_eq!(row.coverage_mean, Some(1.0));
            assert_eq!(row.repairs_mean, 0.0);
        }
    }

    #[test]
    fn convergence_rejects_zero_k() {
        assert!(matches!(
            run_convergence(CloudKind::UniformBall, 30, &[0, 6], &[1, 2], false),
            Err(Error::InvalidK)
        ));
    }

    #[test]
    fn large_clouds_report_repairs_only() {
        let r = run_convergence(CloudKind::UniformBall, 100, &[6, 24], &[1, 2], false).unwrap();
        assert!(r.rows.iter().all(|row| row.coverage_mean.is_none()));
        assert!(matches!(
            run_convergence(CloudKind::UniformBall, 401, &[6], &[1], false),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn parallel_convergence_matches_sequential() {
        let a = run_convergence(CloudKind::UniformBall, 20, &[6, 12], &[1, 2, 3], false).unwrap();
        let b = run_convergence(CloudKind::UniformBall, 20, &[6, 12], &[1, 2, 3], true).unwrap();
        assert_eq!(a, b);
    }
}
