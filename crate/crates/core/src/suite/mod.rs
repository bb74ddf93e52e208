//! Batch runs: point sampling, parallel evaluation, theorem bundles and reports.

mod families;
mod report;
mod sampling;

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::checks::{
    check_budget, check_collinearity, check_olszak_covector, default_checks, extract_recurrence, run_check,
    CheckContext, CheckResult, Status, Witness,
};
use crate::error::{Error, Result};
use crate::geometry::CurvatureBundle;
use crate::metrics::config::RunConfig;
use crate::scalar::{Mode, Number, Scalar};

pub use families::families_listing;
pub use report::{emit_report, render_text, Counts, Format, Header, Rejection, Report};
pub use sampling::{sample_points, Sample};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Named theorem bundles accepted by [`theorem_suite`].
pub const THEOREMS: [&str; 3] = ["thm_3_8", "thm_3_13", "prop_2_10"];

/// The checks a run evaluates: the configured list, or the family defaults.
pub fn requested_checks(config: &RunConfig) -> Vec<String> {
    if config.checks.is_empty() {
        default_checks(config.metric.family)
    } else {
        config.checks.clone()
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Run(format!("cannot start worker pool: {e}")))
}

/// Evaluates `rows_at` at every point on a worker pool, keeping point order.
fn evaluate<F>(config: &RunConfig, points: &[Vec<BigRational>], threads: Option<usize>, rows_at: F) -> Result<Vec<CheckResult>>
where
    F: Fn(&RunConfig, &[BigRational]) -> Vec<CheckResult> + Sync,
{
    let per_point: Vec<Vec<CheckResult>> =
        pool(threads)?.install(|| points.par_iter().map(|p| rows_at(config, p)).collect());
    Ok(per_point.into_iter().flatten().collect())
}

fn bundle_or_errors<S: Scalar>(
    config: &RunConfig,
    point: &[BigRational],
    names: &[String],
) -> std::result::Result<CurvatureBundle<S>, Vec<CheckResult>> {
    CurvatureBundle::<S>::at(&config.metric, point, config.jet_order)
        .map_err(|e| names.iter().map(|n| CheckResult::error(n, point, &e)).collect())
}

fn check_rows<S: Scalar>(config: &RunConfig, point: &[BigRational], names: &[String]) -> Vec<CheckResult> {
    let b = match bundle_or_errors::<S>(config, point, names) {
        Ok(b) => b,
        Err(rows) => return rows,
    };
    let ctx = CheckContext::new(config, point);
    let mut rows: Vec<CheckResult> = names.iter().map(|n| run_check(n, &b, &ctx)).collect();
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    rows
}

fn prepare(config: &RunConfig, names: &[String], suite: Option<&str>) -> Result<(Header, Vec<Vec<BigRational>>)> {
    check_budget(names, config.jet_order)?;
    let sample = sample_points(config)?;
    let header = Header::new(config, names.to_vec(), suite, sample.rejected);
    Ok((header, sample.points))
}

/// Runs every requested check at every sampled point.
///
/// `threads = None` uses the available parallelism. The report does not
/// depend on the thread count.
pub fn run(config: &RunConfig, threads: Option<usize>) -> Result<Report> {
    let names = requested_checks(config);
    let (header, points) = prepare(config, &names, None)?;
    log::info!("running {} checks at {} points", names.len(), points.len());
    let rows = match config.mode {
        Mode::Exact => evaluate(config, &points, threads, |c, p| check_rows::<BigRational>(c, p, &names))?,
        Mode::Float => evaluate(config, &points, threads, |c, p| check_rows::<f64>(c, p, &names))?,
    };
    Ok(Report::new(header, rows))
}

struct TheoremPlan {
    hypotheses: &'static [&'static str],
    conclusions: &'static [&'static str],
    /// Checks at a point that need the extracted Weyl recurrence covector.
    alpha_checks: bool,
}

fn theorem_plan(name: &str) -> Result<TheoremPlan> {
    Ok(match name {
        "thm_3_8" => TheoremPlan {
            hypotheses: &["brinkmann", "schimming", "conformal_recurrence"],
            conclusions: &["roter_bundle"],
            alpha_checks: true,
        },
        "thm_3_13" => TheoremPlan {
            hypotheses: &["roter_bundle"],
            conclusions: &["schimming", "pure_radiation", "alpha_recurrent"],
            alpha_checks: false,
        },
        "prop_2_10" => TheoremPlan {
            hypotheses: &["brinkmann"],
            conclusions: &["schimming"],
            alpha_checks: false,
        },
        other => {
            return Err(Error::Run(format!("unknown theorem {other:?} (expected one of {})", THEOREMS.join(", "))));
        }
    })
}

const OLSZAK_ALPHA: &str = "olszak(alpha)";
const COLLINEAR_ALPHA: &str = "collinearity(alpha, X)";

/// The four pp-wave curvature conditions, as `schimming` sub-residual keys.
const SCHIMMING_CONDITIONS: [(&str, &[&str]); 4] = [
    ("cyclic", &["cyclic"]),
    ("decomposition", &["decomposition", "d_symmetric"]),
    ("chi_quartic", &["chi_quartic"]),
    ("riemann_square", &["riemann_square"]),
];

fn number_within(n: &Number, tol: f64) -> bool {
    match n {
        Number::Rational(q) => num_traits::Zero::is_zero(q),
        Number::Float(x) => x.abs() <= tol,
    }
}

fn max_number<'a>(it: impl Iterator<Item = &'a Number>) -> Number {
    it.fold(Number::ratio(0, 1), |m, r| if r.to_f64().abs() > m.to_f64().abs() { r.clone() } else { m })
}

fn alpha_rows<S: Scalar>(b: &CurvatureBundle<S>, ctx: &CheckContext<'_>) -> Vec<CheckResult> {
    let alpha = match (b.weyl(), b.nabla_weyl()) {
        (Ok(c), Ok(dc)) => extract_recurrence(c, dc),
        (Err(e), _) | (_, Err(e)) => {
            return vec![CheckResult::error(OLSZAK_ALPHA, ctx.point, &e), CheckResult::error(COLLINEAR_ALPHA, ctx.point, &e)];
        }
    };
    let Some(alpha) = alpha else {
        let e = Error::Run("Weyl tensor vanishes: no recurrence covector".into());
        return vec![CheckResult::error(OLSZAK_ALPHA, ctx.point, &e), CheckResult::error(COLLINEAR_ALPHA, ctx.point, &e)];
    };
    let mut x = vec![S::zero(); b.dim()];
    x[0] = S::one();
    vec![check_olszak_covector(OLSZAK_ALPHA, b, ctx, &alpha), check_collinearity(COLLINEAR_ALPHA, ctx, &alpha, &x)]
}

fn verdict(theorem: &str, plan: &TheoremPlan, rows: &[CheckResult], point: &[BigRational], tol: f64) -> CheckResult {
    let n_hyp = plan.hypotheses.len();
    let (hyp, concl) = rows.split_at(n_hyp);
    let mut witnesses = BTreeMap::new();
    for r in rows {
        witnesses.insert(r.name.clone(), Witness::Text(r.status.as_str().to_string()));
    }
    let mut joint_ok = true;
    if theorem == "prop_2_10" {
        let schimming = &concl[0];
        let mut conditions = BTreeMap::new();
        for (label, keys) in SCHIMMING_CONDITIONS {
            let r = max_number(keys.iter().filter_map(|k| schimming.sub_residual(k)));
            joint_ok &= schimming.status != Status::Error && number_within(&r, tol);
            conditions.insert(label.to_string(), r);
        }
        witnesses.insert("conditions".into(), Witness::Map(conditions));
    }
    let status = if hyp.iter().any(|r| r.status != Status::Pass) {
        Status::HypothesesNotMet
    } else if concl.iter().any(|r| r.status == Status::Error) {
        Status::Error
    } else if joint_ok && concl.iter().all(|r| matches!(r.status, Status::Pass | Status::Vacuous)) {
        Status::Pass
    } else {
        Status::Fail
    };
    CheckResult {
        name: theorem.to_string(),
        status,
        residual: max_number(concl.iter().map(|r| &r.residual)),
        witnesses,
        point: point.iter().cloned().map(Number::Rational).collect(),
        notes: Vec::new(),
    }
}

fn theorem_rows<S: Scalar>(theorem: &str, plan: &TheoremPlan, config: &RunConfig, point: &[BigRational]) -> Vec<CheckResult> {
    let mut names: Vec<String> = plan.hypotheses.iter().chain(plan.conclusions).map(|s| s.to_string()).collect();
    if plan.alpha_checks {
        names.push(OLSZAK_ALPHA.into());
        names.push(COLLINEAR_ALPHA.into());
    }
    let mut rows = match bundle_or_errors::<S>(config, point, &names) {
        Ok(b) => {
            let ctx = CheckContext::new(config, point);
            let mut rows: Vec<CheckResult> =
                plan.hypotheses.iter().chain(plan.conclusions).map(|n| run_check(n, &b, &ctx)).collect();
            if plan.alpha_checks {
                rows.extend(alpha_rows(&b, &ctx));
            }
            rows
        }
        Err(rows) => rows,
    };
    rows.push(verdict(theorem, plan, &rows, point, config.tolerance));
    rows
}

/// Runs a theorem bundle: hypotheses first, then the conclusions, then one
/// verdict row named after the theorem. A failed hypothesis turns the verdict
/// into `hypotheses_not_met`.
pub fn theorem_suite(name: &str, config: &RunConfig, threads: Option<usize>) -> Result<Report> {
    let plan = theorem_plan(name)?;
    let mut listed: Vec<String> = plan.hypotheses.iter().chain(plan.conclusions).map(|s| s.to_string()).collect();
    if plan.alpha_checks {
        listed.push(OLSZAK_ALPHA.into());
        listed.push(COLLINEAR_ALPHA.into());
    }
    listed.push(name.to_string());
    let (header, points) = prepare(config, &listed, Some(name))?;
    let rows = match config.mode {
        Mode::Exact => evaluate(config, &points, threads, |c, p| theorem_rows::<BigRational>(name, &plan, c, p))?,
        Mode::Float => evaluate(config, &points, threads, |c, p| theorem_rows::<f64>(name, &plan, c, p))?,
    };
    Ok(Report::new(header, rows))
}
