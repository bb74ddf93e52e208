//! JSON run configuration.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use super::{
    build_brinkmann, build_custom, build_galaev, build_ppwave, build_two_symmetric, build_walker,
    chart_coords, generic_perturbed, rescale_by_exp, rescale_by_square, Family, MetricSpec, WalkerData, MAX_DIM,
    MIN_DIM,
};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStrategy {
    Grid,
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointPlan {
    pub strategy: PointStrategy,
    pub seed: u64,
    pub count: usize,
    pub u_values: Vec<BigRational>,
}

impl Default for PointPlan {
    fn default() -> Self {
        PointPlan {
            strategy: PointStrategy::Grid,
            seed: 0,
            count: 5,
            u_values: default_u_values(),
        }
    }
}

pub fn default_u_values() -> Vec<BigRational> {
    (1..=5).map(|k| BigRational::new(k.into(), 2.into())).collect()
}

/// Conformal factor used by the `conformal_invariance` check.
#[derive(Debug, Clone, PartialEq)]
pub enum ConformalFactor {
    /// `(1 + s)²`
    Square(Polynomial),
    /// `e^{2σ}`
    Exp(Polynomial),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub metric: MetricSpec,
    pub mode: Mode,
    pub jet_order: usize,
    pub points: PointPlan,
    pub tolerance: f64,
    /// Requested check names; empty means every check applicable to the family.
    pub checks: Vec<String>,
    /// `a_0, a_1, …` of the field-equation operator.
    pub field_coeffs: Vec<BigRational>,
    /// `None` selects the default factor for the run mode.
    pub conformal_factor: Option<ConformalFactor>,
}

pub const DEFAULT_JET_ORDER: usize = 4;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_CONFORMAL_POLY: &str = "(u^2 + x1^2)/8";

impl RunConfig {
    pub fn new(metric: MetricSpec) -> RunConfig {
        let mode = if metric.n <= 5 && metric.conformal_exp.is_none() { Mode::Exact } else { Mode::Float };
        RunConfig {
            metric,
            mode,
            jet_order: DEFAULT_JET_ORDER,
            points: PointPlan::default(),
            tolerance: DEFAULT_TOLERANCE,
            checks: Vec::new(),
            field_coeffs: vec![BigRational::from_integer(1.into()), BigRational::from_integer(3.into())],
            conformal_factor: None,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_jet_order(mut self, k: usize) -> Self {
        self.jet_order = k;
        self
    }

    pub fn with_checks<I: IntoIterator<Item = S>, S: Into<String>>(mut self, checks: I) -> Self {
        self.checks = checks.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_points(mut self, points: PointPlan) -> Self {
        self.points = points;
        self
    }

    pub fn conformal_factor_or_default(&self) -> ConformalFactor {
        if let Some(f) = &self.conformal_factor {
            return f.clone();
        }
        let p = Polynomial::parse(DEFAULT_CONFORMAL_POLY, &self.metric.coords).expect("default factor parses");
        match self.mode {
            Mode::Exact => ConformalFactor::Square(p),
            Mode::Float => ConformalFactor::Exp(p),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    family: String,
    d: Option<usize>,
    n: Option<usize>,
    #[serde(default)]
    params: RawParams,
    mode: Option<String>,
    jet_order: Option<usize>,
    points: Option<RawPoints>,
    tolerance: Option<f64>,
    checks: Option<Vec<String>>,
    #[serde(default)]
    check_params: RawCheckParams,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawParams {
    a: Option<String>,
    #[serde(rename = "F")]
    f: Option<String>,
    lambda: Option<Vec<Value>>,
    a_vec: Option<Vec<Value>>,
    b_mat: Option<Vec<Vec<Value>>>,
    #[serde(rename = "H")]
    h: Option<String>,
    components: Option<Vec<Vec<String>>>,
    walker_a: Option<Vec<String>>,
    g_star: Option<Vec<Vec<String>>>,
    generic_seed: Option<u64>,
    conformal: Option<RawFactor>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawCheckParams {
    field_coeffs: Option<Vec<Value>>,
    conformal_factor: Option<RawFactor>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum RawFactor {
    Square(String),
    Exp(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoints {
    strategy: Option<String>,
    seed: Option<u64>,
    count: Option<usize>,
    u_values: Option<Vec<Value>>,
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.')?;
    let neg = int.starts_with('-');
    let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(num, den);
    Some(if neg { -q } else { q })
}

/// Parses `"p/q"`, `"p"`, a JSON integer, or (float mode only) a decimal.
fn parse_rational(v: &Value, field: &str, allow_decimals: bool) -> Result<BigRational> {
    let bad = |msg: &str| Error::config(field, msg);
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if allow_decimals {
                parse_decimal(&n.to_string()).ok_or_else(|| bad("unparseable number"))
            } else {
                Err(bad("decimal literal in exact mode; write rationals as \"p/q\""))
            }
        }
        Value::String(s) => {
            let s = s.trim();
            if s.contains('.') {
                if !allow_decimals {
                    return Err(bad("decimal literal in exact mode; write rationals as \"p/q\""));
                }
                return parse_decimal(s).ok_or_else(|| bad(&format!("cannot parse {s:?} as a number")));
            }
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            let p: BigInt = p.trim().parse().map_err(|_| bad(&format!("cannot parse {s:?} as p/q")))?;
            let q: BigInt = q.trim().parse().map_err(|_| bad(&format!("cannot parse {s:?} as p/q")))?;
            if q == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
        _ => Err(bad("expected a number or a \"p/q\" string")),
    }
}

fn parse_rationals(vals: &[Value], field: &str, allow_decimals: bool) -> Result<Vec<BigRational>> {
    vals.iter()
        .enumerate()
        .map(|(i, v)| parse_rational(v, &format!("{field}[{i}]"), allow_decimals))
        .collect()
}

fn parse_poly(text: &str, coords: &[String], field: &str, allow_decimals: bool) -> Result<Polynomial> {
    Polynomial::parse_with(text, coords, allow_decimals).map_err(|e| Error::config(field, e.to_string()))
}

fn require<T>(v: Option<T>, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::config(field, "required for this family"))
}

/// Parses and validates a JSON configuration document.
pub fn parse_metric_config(text: &str) -> Result<(MetricSpec, RunConfig)> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::config("document", e.to_string()))?;
    let family = Family::from_name(&raw.family).ok_or_else(|| {
        let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
        Error::config("family", format!("unknown family {:?} (expected one of {})", raw.family, names.join(", ")))
    })?;

    let components_n = raw.params.components.as_ref().map(|c| c.len());
    let d = match (raw.d, raw.n) {
        (Some(d), Some(n)) if d + 2 != n => return Err(Error::config("n", format!("n = {n} disagrees with d = {d}"))),
        (Some(d), _) => d,
        (None, Some(n)) => n.checked_sub(2).ok_or_else(|| Error::config("n", "n must be at least 4"))?,
        (None, None) => match components_n {
            Some(n) if n >= 2 => n - 2,
            _ => return Err(Error::config("d", "one of d or n is required")),
        },
    };
    let n = d + 2;
    if !(MIN_DIM..=MAX_DIM).contains(&n) {
        return Err(Error::config("n", format!("dimension {n} outside {MIN_DIM}..={MAX_DIM}")));
    }
    let mode = match raw.mode.as_deref() {
        None => None,
        Some("exact") => Some(Mode::Exact),
        Some("float") => Some(Mode::Float),
        Some(other) => return Err(Error::config("mode", format!("expected \"exact\" or \"float\", got {other:?}"))),
    };
    let float = mode == Some(Mode::Float) || (mode.is_none() && n > 5);
    let coords = chart_coords(d);
    let p = &raw.params;

    let mut spec = match family {
        Family::PpWave => build_ppwave(&parse_poly(require(p.h.as_deref(), "params.H")?, &coords, "params.H", float)?, d)?,
        Family::Galaev => {
            let a = parse_poly(p.a.as_deref().unwrap_or("0"), &coords, "params.a", float)?;
            let f = parse_poly(require(p.f.as_deref(), "params.F")?, &coords, "params.F", float)?;
            let lambda = parse_rationals(require(p.lambda.as_deref(), "params.lambda")?, "params.lambda", float)?;
            build_galaev(d, &a, &f, &lambda)?
        }
        Family::TwoSymmetric => {
            let a = parse_rationals(require(p.a_vec.as_deref(), "params.a_vec")?, "params.a_vec", float)?;
            let b = match &p.b_mat {
                Some(rows) => rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| parse_rationals(r, &format!("params.b_mat[{i}]"), float))
                    .collect::<Result<Vec<_>>>()?,
                None => vec![vec![BigRational::from_integer(0.into()); d]; d],
            };
            build_two_symmetric(d, &a, &b)?
        }
        Family::Walker | Family::Brinkmann => {
            let h = parse_poly(require(p.h.as_deref(), "params.H")?, &coords, "params.H", float)?;
            let a = match &p.walker_a {
                Some(v) => v
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_poly(s, &coords, &format!("params.walker_a[{i}]"), float))
                    .collect::<Result<Vec<_>>>()?,
                None => vec![Polynomial::zero(&coords); d],
            };
            let g_star = match &p.g_star {
                Some(rows) => rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, s)| parse_poly(s, &coords, &format!("params.g_star[{i}][{j}]"), float))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| Polynomial::constant(&coords, BigRational::from_integer(i64::from(i == j).into())))
                            .collect()
                    })
                    .collect(),
            };
            let data = WalkerData { h, a, g_star };
            if family == Family::Walker {
                build_walker(&data)?
            } else {
                build_brinkmann(&data)?
            }
        }
        Family::Custom => match (&p.components, p.generic_seed) {
            (Some(_), Some(_)) => {
                return Err(Error::config("params", "give either components or generic_seed, not both"));
            }
            (Some(rows), None) => {
                if rows.len() != n {
                    return Err(Error::config("params.components", format!("expected {n} rows")));
                }
                let comps = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, s)| parse_poly(s, &coords, &format!("params.components[{i}][{j}]"), float))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                build_custom(comps)?
            }
            (None, Some(seed)) => generic_perturbed(n, seed)?,
            (None, None) => return Err(Error::config("params.components", "required for the custom family")),
        },
    };

    if let Some(factor) = &p.conformal {
        spec = match factor {
            RawFactor::Square(s) => rescale_by_square(&spec, &parse_poly(s, &coords, "params.conformal.square", float)?)?,
            RawFactor::Exp(s) => {
                if mode == Some(Mode::Exact) {
                    return Err(Error::Mode(
                        "an exp(2σ) conformal factor is not representable in exact mode; use float mode or a \
                         (1+s)^2 factor"
                            .into(),
                    ));
                }
                rescale_by_exp(&spec, &parse_poly(s, &coords, "params.conformal.exp", true)?)?
            }
        };
    }

    let mut cfg = RunConfig::new(spec.clone());
    if let Some(m) = mode {
        cfg.mode = m;
    }
    if let Some(k) = raw.jet_order {
        cfg.jet_order = k;
    }
    if let Some(t) = raw.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::config("tolerance", "must be a non-negative finite number"));
        }
        cfg.tolerance = t;
    }
    if let Some(pts) = raw.points {
        let strategy = match pts.strategy.as_deref() {
            None | Some("grid") => PointStrategy::Grid,
            Some("random") => PointStrategy::Random,
            Some(other) => {
                return Err(Error::config("points.strategy", format!("expected \"grid\" or \"random\", got {other:?}")))
            }
        };
        let u_values = match &pts.u_values {
            Some(v) => parse_rationals(v, "points.u_values", float)?,
            None => default_u_values(),
        };
        if u_values.is_empty() {
            return Err(Error::config("points.u_values", "must not be empty"));
        }
        let count = pts.count.unwrap_or(match strategy {
            PointStrategy::Grid => u_values.len(),
            PointStrategy::Random => 5,
        });
        if count == 0 {
            return Err(Error::config("points.count", "must be positive"));
        }
        cfg.points = PointPlan {
            strategy,
            seed: pts.seed.unwrap_or(0),
            count,
            u_values,
        };
    }
    if let Some(checks) = raw.checks {
        for c in &checks {
            if !crate::checks::CHECK_NAMES.contains(&c.as_str()) {
                return Err(Error::config("checks", format!("unknown check {c:?}")));
            }
        }
        cfg.checks = checks;
    }
    let cp = raw.check_params;
    if let Some(coeffs) = cp.field_coeffs {
        if coeffs.is_empty() {
            return Err(Error::config("check_params.field_coeffs", "must not be empty"));
        }
        cfg.field_coeffs = parse_rationals(&coeffs, "check_params.field_coeffs", float)?;
    }
    if let Some(f) = cp.conformal_factor {
        cfg.conformal_factor = Some(match f {
            RawFactor::Square(s) => {
                ConformalFactor::Square(parse_poly(&s, &coords, "check_params.conformal_factor.square", float)?)
            }
            RawFactor::Exp(s) => {
                if cfg.mode == Mode::Exact {
                    return Err(Error::Mode(
                        "an exp(2σ) conformal factor is not representable in exact mode; use float mode".into(),
                    ));
                }
                ConformalFactor::Exp(parse_poly(&s, &coords, "check_params.conformal_factor.exp", true)?)
            }
        });
    }
    if spec.conformal_exp.is_some() && cfg.mode == Mode::Exact {
        return Err(Error::Mode("an exp(2σ) conformal factor requires float mode".into()));
    }
    Ok((spec, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    const GALAEV: &str = r#"{"family": "galaev", "d": 3,
        "params": {"a": "0", "F": "u", "lambda": [1, 1, -2]}}"#;

    #[test]
    fn galaev_round_trip() {
        let (spec, cfg) = parse_metric_config(GALAEV).unwrap();
        let direct = build_galaev(
            3,
            &Polynomial::zero(&chart_coords(3)),
            &Polynomial::parse("u", &chart_coords(3)).unwrap(),
            &[1, 1, -2].map(|k| BigRational::from_integer(k.into())),
        )
        .unwrap();
        assert_eq!(spec, direct);
        assert_eq!(cfg.mode, Mode::Exact);
        assert_eq!(cfg.jet_order, 4);
        assert_eq!(cfg.points.count, 5);
    }

    #[test]
    fn lambda_sum_rejected() {
        let text = GALAEV.replace("-2", "-1");
        let err = parse_metric_config(&text).unwrap_err();
        assert!(err.to_string().contains("lambda sum must be zero"), "{err}");
    }

    #[test]
    fn custom_components_accepted() {
        let text = r#"{"family": "custom", "n": 4, "params": {"components": [
            ["x1^2", "0", "0", "1"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["1", "0", "0", "0"]]}}"#;
        let (spec, _) = parse_metric_config(text).unwrap();
        assert_eq!(spec.family, Family::Custom);
        assert_eq!(spec.n, 4);
        let asym = text.replacen("\"x1^2\", \"0\"", "\"x1^2\", \"u\"", 1);
        assert!(parse_metric_config(&asym).is_err());
    }

    #[test]
    fn decimals_need_float_mode() {
        let text = r#"{"family": "ppwave", "d": 2, "params": {"H": "0.5*x1^2"}}"#;
        let err = parse_metric_config(text).unwrap_err();
        assert!(err.to_string().contains("decimal"), "{err}");
        let float = r#"{"family": "ppwave", "d": 2, "mode": "float", "params": {"H": "0.5*x1^2"}}"#;
        assert!(parse_metric_config(float).is_ok());
    }

    #[test]
    fn unknown_keys_and_checks_rejected() {
        assert!(parse_metric_config(r#"{"family": "ppwave", "d": 2, "params": {"H": "x1^2"}, "bogus": 1}"#).is_err());
        let err =
            parse_metric_config(r#"{"family": "ppwave", "d": 2, "params": {"H": "x1^2"}, "checks": ["nope"]}"#).unwrap_err();
        assert!(err.to_string().contains("unknown check"));
    }

    #[test]
    fn rational_strings() {
        let v = parse_rational(&Value::String("-3/6".into()), "f", false).unwrap();
        assert_eq!(v, BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational(&Value::String("1.5".into()), "f", false).is_err());
        assert_eq!(
            parse_rational(&Value::String("1.25".into()), "f", true).unwrap(),
            BigRational::new(5.into(), 4.into())
        );
    }
}
