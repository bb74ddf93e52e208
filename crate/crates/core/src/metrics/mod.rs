//! The metric families and user-defined polynomial metrics.
//!
//! Every chart uses the coordinates `(u, x1, …, xd, v)` with `n = d + 2`, so
//! the covector `du` is always the first coordinate differential.

pub mod config;

pub use config::{parse_metric_config, ConformalFactor, PointPlan, PointStrategy, RunConfig};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub const MIN_DIM: usize = 4;
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PpWave,
    Brinkmann,
    Walker,
    Galaev,
    TwoSymmetric,
    Custom,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::PpWave,
        Family::Brinkmann,
        Family::Walker,
        Family::Galaev,
        Family::TwoSymmetric,
        Family::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::PpWave => "ppwave",
            Family::Brinkmann => "brinkmann",
            Family::Walker => "walker",
            Family::Galaev => "galaev",
            Family::TwoSymmetric => "two_symmetric",
            Family::Custom => "custom",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Families in the canonical `2 du dv + H du² + Σ dx²` form.
    pub fn is_pp_wave_form(self) -> bool {
        matches!(self, Family::PpWave | Family::Galaev | Family::TwoSymmetric)
    }
}

/// Walker data: `2dudv + H du² + Σ a_ρ du dx^ρ + Σ g*_{μν} dx^μ dx^ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerData {
    pub h: Polynomial,
    pub a: Vec<Polynomial>,
    pub g_star: Vec<Vec<Polynomial>>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FamilyParams {
    pub d: usize,
    pub a_poly: Option<Polynomial>,
    pub f_poly: Option<Polynomial>,
    pub lambda: Option<Vec<BigRational>>,
    pub a_vec: Option<Vec<BigRational>>,
    pub b_mat: Option<Vec<Vec<BigRational>>>,
    pub h_poly: Option<Polynomial>,
    pub walker: Option<WalkerData>,
    pub generic_seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Provenance {
    pub params: FamilyParams,
    /// `H(x, u)` for families in pp-wave form.
    pub potential: Option<Polynomial>,
    /// Closed-form `ψ` with `R_{kl} = ψ X_k X_l`, where the family records one.
    pub expected_psi: Option<Polynomial>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpec {
    pub family: Family,
    pub n: usize,
    pub coords: Vec<String>,
    /// Symmetric matrix of component polynomials `g_{ij}`.
    pub components: Vec<Vec<Polynomial>>,
    /// Optional conformal factor `e^{2σ}` applied at jet level (float mode).
    pub conformal_exp: Option<Polynomial>,
    pub provenance: Provenance,
}

/// `(u, x1, …, xd, v)`
pub fn chart_coords(d: usize) -> Vec<String> {
    let mut c = vec!["u".to_string()];
    c.extend((1..=d).map(|i| format!("x{i}")));
    c.push("v".to_string());
    c
}

fn rat(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

fn check_dim(n: usize) -> Result<()> {
    if !(MIN_DIM..=MAX_DIM).contains(&n) {
        return Err(Error::Parameter(format!(
            "dimension n = {n} outside the supported range {MIN_DIM}..={MAX_DIM}"
        )));
    }
    Ok(())
}

fn only_u(p: &Polynomial, what: &str) -> Result<()> {
    for (i, v) in p.vars().iter().enumerate() {
        if v != "u" && p.mentions(i) {
            return Err(Error::Family(format!("{what} must depend on u only, but mentions {v}")));
        }
    }
    Ok(())
}

/// `2 du dv + H du² + Σ dx²`
fn pp_wave_components(coords: &[String], h: &Polynomial) -> Vec<Vec<Polynomial>> {
    let n = coords.len();
    let mut g = vec![vec![Polynomial::zero(coords); n]; n];
    g[0][0] = h.clone();
    g[0][n - 1] = Polynomial::constant(coords, rat(1));
    g[n - 1][0] = Polynomial::constant(coords, rat(1));
    for (rho, row) in g.iter_mut().enumerate().take(n - 1).skip(1) {
        row[rho] = Polynomial::constant(coords, rat(1));
    }
    g
}

/// `ψ = −½ Σ_ρ ∂²H/∂x_ρ²`
pub fn laplacian_psi(h: &Polynomial, d: usize) -> Polynomial {
    let mut acc = Polynomial::zero(h.vars());
    for rho in 1..=d {
        acc = acc.add(&h.partial(rho).partial(rho));
    }
    acc.scale(&BigRational::new((-1).into(), 2.into()))
}

impl MetricSpec {
    pub fn d(&self) -> usize {
        self.n - 2
    }

    pub fn potential(&self) -> Option<&Polynomial> {
        self.provenance.potential.as_ref()
    }

    /// Configuration echo for report headers.
    pub fn echo(&self) -> Value {
        let comps: Vec<Vec<String>> = self
            .components
            .iter()
            .map(|row| row.iter().map(|p| p.to_string()).collect())
            .collect();
        let p = &self.provenance.params;
        let rats = |v: &[BigRational]| -> Vec<String> { v.iter().map(crate::scalar::Number::rational_string).collect() };
        let mut params = serde_json::Map::new();
        if let Some(a) = &p.a_poly {
            params.insert("a".into(), json!(a.to_string()));
        }
        if let Some(f) = &p.f_poly {
            params.insert("F".into(), json!(f.to_string()));
        }
        if let Some(l) = &p.lambda {
            params.insert("lambda".into(), json!(rats(l)));
        }
        if let Some(a) = &p.a_vec {
            params.insert("a_vec".into(), json!(rats(a)));
        }
        if let Some(b) = &p.b_mat {
            params.insert("b_mat".into(), json!(b.iter().map(|r| rats(r)).collect::<Vec<_>>()));
        }
        if let Some(h) = &p.h_poly {
            params.insert("H".into(), json!(h.to_string()));
        }
        if let Some(s) = p.generic_seed {
            params.insert("generic_seed".into(), json!(s));
        }
        let mut v = json!({
            "family": self.family.name(),
            "n": self.n,
            "coords": self.coords,
            "components": comps,
            "params": Value::Object(params),
        });
        if let Some(psi) = &self.provenance.expected_psi {
            v["expected_psi"] = json!(psi.to_string());
        }
        if let Some(s) = &self.conformal_exp {
            v["conformal_exp_sigma"] = json!(s.to_string());
        }
        if !self.provenance.notes.is_empty() {
            v["notes"] = json!(self.provenance.notes);
        }
        v
    }
}

/// pp-wave `ds² = 2 du dv + H(x, u) du² + Σ dx²`.
pub fn build_ppwave(h: &Polynomial, d: usize) -> Result<MetricSpec> {
    if d < 2 {
        return Err(Error::Parameter(format!("transverse dimension d = {d} must be at least 2")));
    }
    check_dim(d + 2)?;
    let coords = chart_coords(d);
    let h = h.embed(&coords)?;
    if h.mentions_var("v") {
        return Err(Error::Family("pp-wave potential H must not depend on v".into()));
    }
    Ok(MetricSpec {
        family: Family::PpWave,
        n: d + 2,
        components: pp_wave_components(&coords, &h),
        conformal_exp: None,
        provenance: Provenance {
            params: FamilyParams {
                d,
                h_poly: Some(h.clone()),
                ..Default::default()
            },
            expected_psi: Some(laplacian_psi(&h, d)),
            potential: Some(h),
            warnings: Vec::new(),
            notes: Vec::new(),
        },
        coords,
    })
}

/// Conformally recurrent pp-wave with `H = Σ x_ρ² [a(u) + F(u) λ_ρ²]`,
/// `Σ λ_ρ = 0`.
pub fn build_galaev(d: usize, a: &Polynomial, f: &Polynomial, lambda: &[BigRational]) -> Result<MetricSpec> {
    if lambda.len() != d {
        return Err(Error::Parameter(format!("lambda has {} entries, expected d = {d}", lambda.len())));
    }
    let sum: BigRational = lambda.iter().cloned().sum();
    if !sum.is_zero() {
        return Err(Error::Parameter(format!(
            "lambda sum must be zero (got {})",
            crate::scalar::Number::rational_string(&sum)
        )));
    }
    let coords = chart_coords(d);
    let a = a.embed(&coords)?;
    let f = f.embed(&coords)?;
    only_u(&a, "a(u)")?;
    only_u(&f, "F(u)")?;
    let mut h = Polynomial::zero(&coords);
    for (rho, l) in lambda.iter().enumerate() {
        let x = Polynomial::var(&coords, &coords[rho + 1])?;
        let coeff = a.add(&f.scale(&(l * l)));
        h = h.add(&x.pow(2).mul(&coeff));
    }
    let mut spec = build_ppwave(&h, d)?;
    spec.family = Family::Galaev;
    let sum_sq: BigRational = lambda.iter().map(|l| l * l).sum();
    // ψ = −½ Σ ∂²H = −(d·a(u) + F(u) Σ λ²)
    let psi = a.scale(&rat(d as i64)).add(&f.scale(&sum_sq)).scale(&rat(-1));
    debug_assert_eq!(psi, laplacian_psi(&h, d));
    spec.provenance.expected_psi = Some(psi);
    spec.provenance.params = FamilyParams {
        d,
        a_poly: Some(a),
        f_poly: Some(f),
        lambda: Some(lambda.to_vec()),
        h_poly: Some(h),
        ..Default::default()
    };
    if d == 2 {
        spec.provenance.warnings.push(
            "d = 2 forces λ₁² = λ₂², so the trace-free Hessian of H vanishes and the metric is \
             Weyl-flat: conformal-recurrence checks are vacuous"
                .into(),
        );
    }
    Ok(spec)
}

/// Two-symmetric pp-wave `H = Σ (u a_μ δ_{μν} + b_{μν}) x^μ x^ν`.
pub fn build_two_symmetric(d: usize, a_vec: &[BigRational], b_mat: &[Vec<BigRational>]) -> Result<MetricSpec> {
    if a_vec.len() != d {
        return Err(Error::Parameter(format!("a_vec has {} entries, expected d = {d}", a_vec.len())));
    }
    if b_mat.len() != d || b_mat.iter().any(|r| r.len() != d) {
        return Err(Error::Parameter(format!("b_mat must be {d}×{d}")));
    }
    if a_vec[0].is_negative() || a_vec.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Parameter("a_vec must satisfy 0 <= a_1 <= ... <= a_d".into()));
    }
    for i in 0..d {
        for j in 0..i {
            if b_mat[i][j] != b_mat[j][i] {
                return Err(Error::Parameter(format!("b_mat must be symmetric (b[{i}][{j}] != b[{j}][{i}])")));
            }
        }
    }
    let coords = chart_coords(d);
    let u = Polynomial::var(&coords, "u")?;
    let mut h = Polynomial::zero(&coords);
    let mut psi = Polynomial::zero(&coords);
    for mu in 0..d {
        let xm = Polynomial::var(&coords, &coords[mu + 1])?;
        for nu in 0..d {
            let xn = Polynomial::var(&coords, &coords[nu + 1])?;
            let mut c = Polynomial::constant(&coords, b_mat[mu][nu].clone());
            if mu == nu {
                c = c.add(&u.scale(&a_vec[mu]));
                psi = psi.sub(&c);
            }
            h = h.add(&c.mul(&xm).mul(&xn));
        }
    }
    let mut spec = build_ppwave(&h, d)?;
    spec.family = Family::TwoSymmetric;
    debug_assert_eq!(psi, laplacian_psi(&h, d));
    spec.provenance.expected_psi = Some(psi);
    spec.provenance.params = FamilyParams {
        d,
        a_vec: Some(a_vec.to_vec()),
        b_mat: Some(b_mat.to_vec()),
        h_poly: Some(h),
        ..Default::default()
    };
    Ok(spec)
}

/// Determinant by cofactor expansion; `d ≤ 6` keeps this cheap.
fn poly_det(m: &[Vec<Polynomial>], vars: &[String]) -> Polynomial {
    let d = m.len();
    if d == 0 {
        return Polynomial::constant(vars, BigRational::one());
    }
    if d == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(vars);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = entry.mul(&poly_det(&minor, vars));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Walker metric with recurrent null vector `∂_v`.
pub fn build_walker(data: &WalkerData) -> Result<MetricSpec> {
    let d = data.a.len();
    if d < 2 {
        return Err(Error::Parameter("Walker metric needs d >= 2 transverse coordinates".into()));
    }
    check_dim(d + 2)?;
    if data.g_star.len() != d || data.g_star.iter().any(|r| r.len() != d) {
        return Err(Error::Parameter(format!("g_star must be {d}×{d}")));
    }
    let coords = chart_coords(d);
    let h = data.h.embed(&coords)?;
    let a: Vec<Polynomial> = data.a.iter().map(|p| p.embed(&coords)).collect::<Result<_>>()?;
    let gs: Vec<Vec<Polynomial>> = data
        .g_star
        .iter()
        .map(|r| r.iter().map(|p| p.embed(&coords)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for (rho, p) in a.iter().enumerate() {
        if p.mentions_var("v") {
            return Err(Error::Family(format!("a_{} must not depend on v", rho + 1)));
        }
    }
    for (mu, row) in gs.iter().enumerate() {
        if row.iter().all(|p| p.is_zero()) {
            return Err(Error::Family(format!("g_star row {} vanishes: degenerate transverse metric", mu + 1)));
        }
        for (nu, p) in row.iter().enumerate() {
            if p.mentions_var("v") {
                return Err(Error::Family(format!("g_star[{}][{}] must not depend on v", mu + 1, nu + 1)));
            }
            if *p != gs[nu][mu] {
                return Err(Error::Family("g_star must be symmetric".into()));
            }
        }
    }
    if poly_det(&gs, &coords).is_zero() {
        return Err(Error::Family("g_star is degenerate (determinant vanishes identically)".into()));
    }
    let n = d + 2;
    let half = BigRational::new(1.into(), 2.into());
    let mut g = vec![vec![Polynomial::zero(&coords); n]; n];
    g[0][0] = h.clone();
    g[0][n - 1] = Polynomial::constant(&coords, rat(1));
    g[n - 1][0] = Polynomial::constant(&coords, rat(1));
    for rho in 0..d {
        g[0][rho + 1] = a[rho].scale(&half);
        g[rho + 1][0] = a[rho].scale(&half);
        for nu in 0..d {
            g[rho + 1][nu + 1] = gs[rho][nu].clone();
        }
    }
    let brinkmann_form = !h.mentions_var("v");
    Ok(MetricSpec {
        family: Family::Walker,
        n,
        components: g,
        conformal_exp: None,
        provenance: Provenance {
            params: FamilyParams {
                d,
                h_poly: Some(h),
                walker: Some(WalkerData { h: data.h.clone(), a, g_star: gs }),
                ..Default::default()
            },
            notes: if brinkmann_form { vec!["H independent of v: Brinkmann coordinates".into()] } else { Vec::new() },
            ..Default::default()
        },
        coords,
    })
}

/// Walker metric whose potential is independent of `v`.
pub fn build_brinkmann(data: &WalkerData) -> Result<MetricSpec> {
    if data.h.mentions_var("v") {
        return Err(Error::Family("Brinkmann potential H must not depend on v".into()));
    }
    let mut spec = build_walker(data)?;
    spec.family = Family::Brinkmann;
    Ok(spec)
}

/// User-supplied symmetric matrix of polynomial components.
pub fn build_custom(components: Vec<Vec<Polynomial>>) -> Result<MetricSpec> {
    let n = components.len();
    check_dim(n)?;
    if components.iter().any(|r| r.len() != n) {
        return Err(Error::Parameter(format!("components must be {n}×{n}")));
    }
    let coords = chart_coords(n - 2);
    let comps: Vec<Vec<Polynomial>> = components
        .iter()
        .map(|r| r.iter().map(|p| p.embed(&coords)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..i {
            if comps[i][j] != comps[j][i] {
                return Err(Error::Family(format!("components must be symmetric (g[{i}][{j}] != g[{j}][{i}])")));
            }
        }
    }
    Ok(MetricSpec {
        family: Family::Custom,
        n,
        components: comps,
        conformal_exp: None,
        provenance: Provenance {
            params: FamilyParams {
                d: n - 2,
                ..Default::default()
            },
            ..Default::default()
        },
        coords,
    })
}

/// Minkowski space in null coordinates plus a seeded random symmetric
/// perturbation of degree ≤ 2 with coefficients in `{−1/4, −1/8, 0, 1/8, 1/4}`.
pub fn generic_perturbed(n: usize, seed: u64) -> Result<MetricSpec> {
    check_dim(n)?;
    let coords = chart_coords(n - 2);
    let flat = pp_wave_components(&coords, &Polynomial::zero(&coords));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut monomials: Vec<Polynomial> = vec![Polynomial::constant(&coords, rat(1))];
    for i in 0..n {
        let xi = Polynomial::var(&coords, &coords[i])?;
        monomials.push(xi.clone());
        for j in i..n {
            monomials.push(xi.mul(&Polynomial::var(&coords, &coords[j])?));
        }
    }
    let mut g = flat;
    for i in 0..n {
        for j in i..n {
            let mut p = Polynomial::zero(&coords);
            for m in &monomials {
                let k: i64 = rng.gen_range(-2..=2);
                p = p.add(&m.scale(&BigRational::new(k.into(), 8.into())));
            }
            g[i][j] = g[i][j].add(&p);
            if i != j {
                g[j][i] = g[i][j].clone();
            }
        }
    }
    let mut spec = build_custom(g)?;
    spec.provenance.params.generic_seed = Some(seed);
    spec.provenance.notes.push(format!("generic perturbed Minkowski metric, seed {seed}"));
    Ok(spec)
}

/// Multiplies every component by `(1 + s)²`.
pub fn rescale_by_square(spec: &MetricSpec, s: &Polynomial) -> Result<MetricSpec> {
    let s = s.embed(&spec.coords)?;
    let factor = Polynomial::constant(&spec.coords, rat(1)).add(&s).pow(2);
    let mut out = spec.clone();
    out.family = Family::Custom;
    for row in out.components.iter_mut() {
        for p in row.iter_mut() {
            *p = p.mul(&factor);
        }
    }
    out.provenance.potential = None;
    out.provenance.expected_psi = None;
    out.provenance
        .notes
        .push(format!("conformal rescale of a {} metric by (1 + {s})^2", spec.family.name()));
    Ok(out)
}

/// Attaches the factor `e^{2σ}`; the components stay polynomial and the
/// exponential is applied to the jets at evaluation time.
pub fn rescale_by_exp(spec: &MetricSpec, sigma: &Polynomial) -> Result<MetricSpec> {
    let sigma = sigma.embed(&spec.coords)?;
    let mut out = spec.clone();
    out.family = Family::Custom;
    out.conformal_exp = Some(match &spec.conformal_exp {
        Some(prev) => prev.add(&sigma),
        None => sigma.clone(),
    });
    out.provenance.potential = None;
    out.provenance.expected_psi = None;
    out.provenance
        .notes
        .push(format!("conformal rescale of a {} metric by exp(2*({sigma}))", spec.family.name()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn poly(s: &str, d: usize) -> Polynomial {
        Polynomial::parse(s, &chart_coords(d)).unwrap()
    }

    #[test]
    fn ppwave_matches_canonical_form() {
        let spec = build_ppwave(&poly("x1^2 - x2^2", 2), 2).unwrap();
        let g = &spec.components;
        assert_eq!(g[0][0], poly("x1^2 - x2^2", 2));
        assert_eq!(g[0][3], poly("1", 2));
        assert_eq!(g[1][1], poly("1", 2));
        assert_eq!(g[2][2], poly("1", 2));
        assert!(g[3][3].is_zero() && g[0][1].is_zero());
        assert!(spec.provenance.expected_psi.as_ref().unwrap().is_zero());
    }

    #[test]
    fn ppwave_rejects_v_dependence() {
        assert!(matches!(build_ppwave(&poly("v*x1^2", 2), 2), Err(Error::Family(_))));
    }

    #[test]
    fn galaev_potential_and_psi() {
        let spec = build_galaev(3, &poly("0", 3), &poly("u", 3), &[q(1, 1), q(1, 1), q(-2, 1)]).unwrap();
        assert_eq!(spec.potential().unwrap(), &poly("u*(x1^2 + x2^2 + 4*x3^2)", 3));
        assert_eq!(spec.provenance.expected_psi.as_ref().unwrap(), &poly("-6*u", 3));
        let err = build_galaev(3, &poly("0", 3), &poly("u", 3), &[q(1, 1), q(1, 1), q(-1, 1)]).unwrap_err();
        assert!(err.to_string().contains("lambda sum must be zero"));
        assert!(build_galaev(3, &poly("x1", 3), &poly("u", 3), &[q(1, 1), q(1, 1), q(-2, 1)]).is_err());
    }

    #[test]
    fn galaev_in_four_dimensions_warns() {
        let spec = build_galaev(2, &poly("1", 2), &poly("u", 2), &[q(1, 1), q(-1, 1)]).unwrap();
        assert_eq!(spec.provenance.warnings.len(), 1);
    }

    #[test]
    fn two_symmetric_psi() {
        let zero = vec![vec![q(0, 1); 2]; 2];
        let spec = build_two_symmetric(2, &[q(1, 1), q(2, 1)], &zero).unwrap();
        assert_eq!(spec.potential().unwrap(), &poly("u*(x1^2 + 2*x2^2)", 2));
        assert_eq!(spec.provenance.expected_psi.as_ref().unwrap(), &poly("-3*u", 2));
        assert!(build_two_symmetric(2, &[q(2, 1), q(1, 1)], &zero).is_err());
        assert!(build_two_symmetric(2, &[q(-1, 1), q(1, 1)], &zero).is_err());
        let asym = vec![vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(0, 1)]];
        assert!(build_two_symmetric(2, &[q(1, 1), q(2, 1)], &asym).is_err());
    }

    #[test]
    fn walker_validation() {
        let d = 2;
        let one = poly("1", d);
        let zero = poly("0", d);
        let good = WalkerData {
            h: poly("v*x1^2", d),
            a: vec![zero.clone(), zero.clone()],
            g_star: vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]],
        };
        assert!(build_walker(&good).is_ok());
        assert!(build_brinkmann(&good).is_err());
        let degenerate = WalkerData {
            g_star: vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]],
            ..good.clone()
        };
        assert!(matches!(build_walker(&degenerate), Err(Error::Family(_))));
        let v_dep = WalkerData {
            a: vec![poly("v", d), zero.clone()],
            ..good
        };
        assert!(build_walker(&v_dep).is_err());
    }

    #[test]
    fn generic_metric_is_seeded() {
        let a = generic_perturbed(4, 7).unwrap();
        let b = generic_perturbed(4, 7).unwrap();
        let c = generic_perturbed(4, 8).unwrap();
        assert_eq!(a.components, b.components);
        assert_ne!(a.components, c.components);
        assert_eq!(a.family, Family::Custom);
    }
}
