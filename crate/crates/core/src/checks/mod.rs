//! Condition checkers with witness extraction and residual reporting.
//!
//! Every check is a pure function of a [`CurvatureBundle`] and a
//! [`CheckContext`]; it returns a [`CheckResult`] whose residual is the
//! maximum of its sub-residuals (relative, sup-norm based).

mod extract;
mod identities;
mod ppwave;
mod recurrence;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

pub use extract::{
    closedness_residual, extract_recurrence, extract_recurrence_jet, ratio_recurrence, recurrence_residual,
};
pub use ppwave::check_olszak_covector;
pub use recurrence::check_collinearity;

use crate::error::{Error, Result};
use crate::geometry::CurvatureBundle;
use crate::metrics::{Family, MetricSpec, RunConfig};
use crate::scalar::{Number, Scalar};
use crate::tensor::Tensor;

pub const CHECK_NAMES: [&str; 19] = [
    "bianchi",
    "weyl_trace",
    "weyl_cyclic_identity",
    "weyl_divergence_formula",
    "brinkmann",
    "schimming",
    "olszak",
    "conformal_recurrence",
    "galaev_alpha",
    "collinearity",
    "roter_bundle",
    "ricci_recurrence",
    "eqs_2_3_2_4",
    "pure_radiation",
    "laplacians",
    "semisymmetry",
    "alpha_recurrent",
    "field_equations",
    "conformal_invariance",
];

/// Vacuity floor for float mode (absolute).
pub const FLOAT_VACUITY_FLOOR: f64 = 1e-12;

/// Minimum jet order a check needs.
pub fn required_order(name: &str) -> Option<usize> {
    Some(match name {
        "brinkmann" => 1,
        "weyl_trace" | "schimming" | "olszak" | "eqs_2_3_2_4" | "conformal_invariance" => 2,
        "bianchi" | "weyl_cyclic_identity" | "weyl_divergence_formula" | "conformal_recurrence" | "galaev_alpha"
        | "collinearity" | "ricci_recurrence" | "pure_radiation" => 3,
        "roter_bundle" | "laplacians" | "semisymmetry" | "alpha_recurrent" | "field_equations" => 4,
        _ => return None,
    })
}

/// Whether a check makes sense for a metric family at all.
pub fn applies_to(name: &str, family: Family) -> bool {
    match name {
        "pure_radiation" | "field_equations" => family.is_pp_wave_form(),
        "galaev_alpha" => family == Family::Galaev,
        _ => true,
    }
}

/// Every check applicable to the family, in canonical order.
pub fn default_checks(family: Family) -> Vec<String> {
    CHECK_NAMES.iter().filter(|c| applies_to(c, family)).map(|c| c.to_string()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
    Error,
    HypothesesNotMet,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Error => "error",
            Status::HypothesesNotMet => "hypotheses_not_met",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Scalar(Number),
    Vector(Vec<Number>),
    Matrix(Vec<Vec<Number>>),
    Flag(bool),
    Text(String),
    Map(BTreeMap<String, Number>),
}

impl Witness {
    pub fn scalar<S: Scalar>(s: &S) -> Witness {
        Witness::Scalar(s.to_number())
    }

    pub fn vector<S: Scalar>(v: &[S]) -> Witness {
        Witness::Vector(v.iter().map(Scalar::to_number).collect())
    }

    pub fn matrix<S: Scalar>(t: &Tensor<S>) -> Witness {
        let n = t.dim();
        Witness::Matrix((0..n).map(|i| (0..n).map(|j| t.value(&[i, j]).to_number()).collect()).collect())
    }

    pub fn as_scalar(&self) -> Option<&Number> {
        match self {
            Witness::Scalar(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[Number]> {
        match self {
            Witness::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_flag(&self) -> Option<bool> {
        match self {
            Witness::Flag(b) => Some(*b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    #[serde(rename = "check")]
    pub name: String,
    pub status: Status,
    pub residual: Number,
    pub witnesses: BTreeMap<String, Witness>,
    pub point: Vec<Number>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn error(name: &str, point: &[BigRational], err: &Error) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            status: Status::Error,
            residual: Number::Rational(BigRational::from_integer(0.into())),
            witnesses: BTreeMap::new(),
            point: point.iter().cloned().map(Number::Rational).collect(),
            notes: vec![err.to_string()],
        }
    }

    pub fn witness(&self, key: &str) -> Option<&Witness> {
        self.witnesses.get(key)
    }

    pub fn sub_residual(&self, key: &str) -> Option<&Number> {
        match self.witnesses.get("sub_residuals") {
            Some(Witness::Map(m)) => m.get(key),
            _ => None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Per-point inputs shared by all checks.
#[derive(Debug, Clone, Copy)]
pub struct CheckContext<'a> {
    pub spec: &'a MetricSpec,
    pub config: &'a RunConfig,
    pub point: &'a [BigRational],
}

impl<'a> CheckContext<'a> {
    pub fn new(config: &'a RunConfig, point: &'a [BigRational]) -> Self {
        CheckContext {
            spec: &config.metric,
            config,
            point,
        }
    }
}

/// Pass / vacuity decisions for a scalar type.
pub(crate) fn within_tolerance<S: Scalar>(r: &S, tol: f64) -> bool {
    if S::is_exact() {
        r.is_zero()
    } else {
        r.to_f64().abs() <= tol
    }
}

pub(crate) fn vanishes<S: Scalar>(s: &S) -> bool {
    if S::is_exact() {
        s.is_zero()
    } else {
        s.to_f64().abs() <= FLOAT_VACUITY_FLOOR
    }
}

/// Accumulates sub-residuals, requirements and witnesses of one check.
pub(crate) struct Eval<S: Scalar> {
    subs: BTreeMap<String, S>,
    requirements: Vec<(String, bool)>,
    witnesses: BTreeMap<String, Witness>,
    notes: Vec<String>,
    vacuous: bool,
}

impl<S: Scalar> Eval<S> {
    pub fn new() -> Self {
        Eval {
            subs: BTreeMap::new(),
            requirements: Vec::new(),
            witnesses: BTreeMap::new(),
            notes: Vec::new(),
            vacuous: false,
        }
    }

    pub fn sub(&mut self, key: &str, value: S) -> &mut Self {
        self.subs.insert(key.to_string(), value.abs());
        self
    }

    /// A boolean condition that must hold for the check to pass; recorded as
    /// a flag witness.
    pub fn require(&mut self, key: &str, ok: bool) -> &mut Self {
        self.requirements.push((key.to_string(), ok));
        self.witnesses.insert(key.to_string(), Witness::Flag(ok));
        self
    }

    pub fn witness(&mut self, key: &str, w: Witness) -> &mut Self {
        self.witnesses.insert(key.to_string(), w);
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn vacuous(&mut self, reason: impl Into<String>) -> &mut Self {
        self.vacuous = true;
        self.notes.push(reason.into());
        self
    }

    pub fn finish(self, name: &str, ctx: &CheckContext<'_>) -> CheckResult {
        let residual = self.subs.values().fold(S::zero(), |m, v| m.max_abs(v));
        let ok = self.subs.values().all(|v| within_tolerance(v, ctx.config.tolerance))
            && self.requirements.iter().all(|(_, ok)| *ok);
        let status = if self.vacuous {
            Status::Vacuous
        } else if ok {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut witnesses = self.witnesses;
        if !self.subs.is_empty() {
            witnesses.insert(
                "sub_residuals".into(),
                Witness::Map(self.subs.iter().map(|(k, v)| (k.clone(), v.to_number())).collect()),
            );
        }
        CheckResult {
            name: name.to_string(),
            status,
            residual: residual.to_number(),
            witnesses,
            point: ctx.point.iter().cloned().map(Number::Rational).collect(),
            notes: self.notes,
        }
    }
}

/// The parallel null covector `X = du` of the chart, as constant jets.
pub fn null_covector<S: Scalar>(n: usize, order: usize) -> Tensor<S> {
    let mut c = vec![S::zero(); n];
    c[0] = S::one();
    Tensor::covector(n, order, &c)
}

/// Checks every requested name against the jet-order budget.
pub fn check_budget(names: &[String], order: usize) -> Result<()> {
    let offending: Vec<String> = names
        .iter()
        .filter_map(|n| {
            let req = required_order(n)?;
            (req > order).then(|| format!("jet order {req} required by {n} (have {order})"))
        })
        .collect();
    if offending.is_empty() {
        Ok(())
    } else {
        Err(Error::Run(offending.join("; ")))
    }
}

/// Runs one named check at one point.
pub fn run_check<S: Scalar>(name: &str, b: &CurvatureBundle<S>, ctx: &CheckContext<'_>) -> CheckResult {
    let outcome = dispatch(name, b, ctx);
    match outcome {
        Ok(r) => r,
        Err(e) => CheckResult::error(name, ctx.point, &e),
    }
}

fn dispatch<S: Scalar>(name: &str, b: &CurvatureBundle<S>, ctx: &CheckContext<'_>) -> Result<CheckResult> {
    let Some(req) = required_order(name) else {
        return Err(Error::Run(format!("unknown check {name:?}")));
    };
    if b.order() < req {
        return Err(Error::OrderBudget {
            check: name.into(),
            required: req,
            available: b.order(),
        });
    }
    if !applies_to(name, ctx.spec.family) {
        return Err(Error::Run(format!("{name} does not apply to the {} family", ctx.spec.family.name())));
    }
    let mut e = Eval::<S>::new();
    match name {
        "bianchi" => identities::bianchi(b, &mut e)?,
        "weyl_trace" => identities::weyl_trace(b, &mut e)?,
        "weyl_cyclic_identity" => identities::weyl_cyclic_identity(b, &mut e)?,
        "weyl_divergence_formula" => identities::weyl_divergence_formula(b, &mut e)?,
        "conformal_invariance" => identities::conformal_invariance(b, ctx, &mut e)?,
        "brinkmann" => ppwave::brinkmann(b, &mut e)?,
        "schimming" => ppwave::schimming(b, &mut e)?,
        "olszak" => {
            let x = null_covector::<S>(b.dim(), 0);
            ppwave::olszak(b, &x.values(), &mut e)?
        }
        "pure_radiation" => ppwave::pure_radiation(b, ctx, &mut e)?,
        "eqs_2_3_2_4" => ppwave::eqs_2_3_2_4(b, &mut e)?,
        "laplacians" => ppwave::laplacians(b, ctx, &mut e)?,
        "semisymmetry" => ppwave::semisymmetry(b, &mut e)?,
        "field_equations" => ppwave::field_equations(b, ctx, &mut e)?,
        "conformal_recurrence" => recurrence::conformal_recurrence(b, &mut e)?,
        "galaev_alpha" => recurrence::galaev_alpha(b, ctx, &mut e)?,
        "collinearity" => recurrence::collinearity_of_alpha(b, &mut e)?,
        "roter_bundle" => recurrence::roter_bundle(b, &mut e)?,
        "ricci_recurrence" => recurrence::ricci_recurrence(b, &mut e)?,
        "alpha_recurrent" => recurrence::alpha_recurrent(b, &mut e)?,
        _ => unreachable!("name validated by required_order"),
    }
    Ok(e.finish(name, ctx))
}

#[cfg(test)]
mod tests;
