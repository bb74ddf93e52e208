//! Sample points in the chart `(u, x1, …, xd, v)`.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::Rejection;
use crate::error::{Error, Result};
use crate::geometry::linalg::inertia;
use crate::metrics::config::{PointStrategy, RunConfig};
use crate::metrics::{Family, MetricSpec};
use crate::scalar::Number;

/// Accepted points plus the candidates that were rejected on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub points: Vec<Vec<BigRational>>,
    pub rejected: Vec<Rejection>,
}

/// Candidates tried per requested point before giving up.
const ATTEMPTS_PER_POINT: usize = 20;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

/// Grid candidate `idx`: `u` cycles through the configured values, the
/// transverse and `v` coordinates move with each full cycle.
fn grid_point(n: usize, u_values: &[BigRational], idx: usize) -> Vec<BigRational> {
    let len = u_values.len();
    let j = (idx / len) as i64;
    let mut p = Vec::with_capacity(n);
    p.push(u_values[idx % len].clone());
    for rho in 1..=(n as i64 - 2) {
        let sign = if (rho + j) % 2 == 0 { 1 } else { -1 };
        p.push(q(sign * (rho + j), 4));
    }
    p.push(q(j + 1, 3));
    p
}

fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let mut p = Vec::with_capacity(n);
    p.push(q(rng.gen_range(2..=10), 4));
    for _ in 1..n {
        p.push(q(rng.gen_range(-8..=8), 8));
    }
    p
}

/// Why a candidate point is unusable, if it is.
fn rejection_reason(spec: &MetricSpec, point: &[BigRational]) -> Option<String> {
    let g: Vec<Vec<BigRational>> = spec.components.iter().map(|row| row.iter().map(|c| c.eval(point)).collect()).collect();
    let sig = inertia(&g);
    if sig.is_degenerate() {
        return Some("degenerate metric".into());
    }
    if !sig.is_lorentzian() {
        return Some(format!("signature ({}, {}) is not Lorentzian", sig.negative, sig.positive));
    }
    if spec.family == Family::Galaev {
        if let Some(f) = &spec.provenance.params.f_poly {
            if num_traits::Zero::is_zero(&f.eval(point)) {
                return Some("Omega^2 vanishes (F = 0)".into());
            }
        }
    }
    None
}

/// Draws `config.points.count` usable points.
///
/// Rejected candidates are logged and replaced by the next grid index or the
/// next random draw. Fails if no candidate is usable.
pub fn sample_points(config: &RunConfig) -> Result<Sample> {
    let plan = &config.points;
    let spec = &config.metric;
    if plan.count == 0 {
        return Err(Error::config("points.count", "must be at least 1"));
    }
    if plan.strategy == PointStrategy::Grid && plan.u_values.is_empty() {
        return Err(Error::config("points.u_values", "grid sampling needs at least one u value"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut sample = Sample { points: Vec::new(), rejected: Vec::new() };
    for idx in 0..plan.count * ATTEMPTS_PER_POINT {
        if sample.points.len() == plan.count {
            break;
        }
        let p = match plan.strategy {
            PointStrategy::Grid => grid_point(spec.n, &plan.u_values, idx),
            PointStrategy::Random => random_point(spec.n, &mut rng),
        };
        match rejection_reason(spec, &p) {
            None => sample.points.push(p),
            Some(reason) => {
                let shown: Vec<String> = p.iter().map(Number::rational_string).collect();
                log::warn!("rejecting point ({}): {reason}; resampling", shown.join(", "));
                sample.rejected.push(Rejection {
                    point: p.into_iter().map(Number::Rational).collect(),
                    reason,
                });
            }
        }
    }
    if sample.points.is_empty() {
        return Err(Error::Run(format!("all {} sampled points were rejected", sample.rejected.len())));
    }
    if sample.points.len() < plan.count {
        log::warn!("only {} of {} requested points are usable", sample.points.len(), plan.count);
    }
    Ok(sample)
}
