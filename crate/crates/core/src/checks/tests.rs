use super::*;
use crate::metrics::{
    build_galaev, build_ppwave, build_two_symmetric, build_walker, chart_coords, generic_perturbed, WalkerData,
};
use crate::poly::Polynomial;
use crate::scalar::Mode;
use proptest::prelude::*;

type Q = BigRational;

fn q(p: i64, d: i64) -> Q {
    Q::new(p.into(), d.into())
}

fn poly(s: &str, d: usize) -> Polynomial {
    Polynomial::parse(s, &chart_coords(d)).unwrap()
}

fn galaev(a: &str, f: &str) -> MetricSpec {
    build_galaev(3, &poly(a, 3), &poly(f, 3), &[q(1, 1), q(1, 1), q(-2, 1)]).unwrap()
}

fn two_symmetric() -> MetricSpec {
    build_two_symmetric(2, &[q(1, 1), q(2, 1)], &[vec![q(0, 1); 2], vec![q(0, 1); 2]]).unwrap()
}

fn pp(h: &str) -> MetricSpec {
    build_ppwave(&poly(h, 2), 2).unwrap()
}

fn pt5(u: Q) -> Vec<Q> {
    vec![u, q(1, 4), q(-1, 2), q(3, 4), q(1, 3)]
}

fn pt4(u: Q) -> Vec<Q> {
    vec![u, q(1, 3), q(-1, 2), q(1, 5)]
}

fn run(spec: &MetricSpec, name: &str, point: &[Q], k: usize) -> CheckResult {
    run_cfg(&RunConfig::new(spec.clone()).with_mode(Mode::Exact), name, point, k)
}

fn run_cfg(cfg: &RunConfig, name: &str, point: &[Q], k: usize) -> CheckResult {
    let b = CurvatureBundle::<Q>::at(&cfg.metric, point, k).unwrap();
    run_check(name, &b, &CheckContext::new(cfg, point))
}

fn vector(r: &CheckResult, key: &str) -> Vec<Q> {
    r.witness(key)
        .and_then(Witness::as_vector)
        .unwrap_or_else(|| panic!("{key} missing in {r:?}"))
        .iter()
        .map(|n| n.as_rational().unwrap().clone())
        .collect()
}

fn scalar(r: &CheckResult, key: &str) -> Q {
    r.witness(key).and_then(Witness::as_scalar).unwrap().as_rational().unwrap().clone()
}

fn du_times(c: Q, n: usize) -> Vec<Q> {
    let mut v = vec![q(0, 1); n];
    v[0] = c;
    v
}

fn assert_status(r: &CheckResult, s: Status) {
    assert_eq!(r.status, s, "{r:#?}");
}

#[test]
fn galaev_weyl_recurrence_covector_is_du_over_u() {
    let spec = galaev("0", "u");
    for u in [q(1, 2), q(1, 1), q(2, 1)] {
        let r = run(&spec, "conformal_recurrence", &pt5(u.clone()), 3);
        assert_status(&r, Status::Pass);
        // α_u = ½ ∂_u log(c u²) = 1/u
        assert_eq!(vector(&r, "alpha"), du_times(q(1, 1) / u.clone(), 5));
        assert_eq!(vector(&r, "alpha_ratio"), du_times(q(1, 1) / u, 5));
    }
}

#[test]
fn generic_metric_is_not_conformally_recurrent() {
    let spec = generic_perturbed(4, 1).unwrap();
    let r = run(&spec, "conformal_recurrence", &pt4(q(1, 1)), 3);
    assert_status(&r, Status::Fail);
    assert!(r.residual.to_f64() >= 0.1, "{:?}", r.residual);
}

#[test]
fn flat_metric_is_vacuous_for_recurrence() {
    for name in ["conformal_recurrence", "alpha_recurrent", "olszak"] {
        assert_status(&run(&pp("0"), name, &pt4(q(1, 1)), 4), Status::Vacuous);
    }
}

#[test]
fn olszak_distribution() {
    let r = run(&pp("x1^2 - 3*x2^2 + u*x1*x2"), "olszak", &pt4(q(1, 1)), 2);
    assert_status(&r, Status::Pass);
    let spec = galaev("0", "u");
    let p = pt5(q(3, 2));
    let cfg = RunConfig::new(spec.clone());
    let b = CurvatureBundle::<Q>::at(&spec, &p, 3).unwrap();
    let ctx = CheckContext::new(&cfg, &p);
    let mut dv = vec![q(0, 1); 5];
    dv[4] = q(1, 1);
    assert_status(&check_olszak_covector("olszak(dv)", &b, &ctx, &dv), Status::Fail);
    let alpha = extract_recurrence(b.weyl().unwrap(), b.nabla_weyl().unwrap()).unwrap();
    let ra = check_olszak_covector("olszak(alpha)", &b, &ctx, &alpha);
    assert_status(&ra, Status::Pass);
    // two covectors satisfying the cyclic Weyl condition with C ≠ 0 are collinear
    let x = du_times(q(1, 1), 5);
    assert_status(&check_collinearity("collinearity", &ctx, &alpha, &x), Status::Pass);
}

#[test]
fn collinearity_examples() {
    let spec = pp("x1^2");
    let cfg = RunConfig::new(spec);
    let p = pt4(q(1, 1));
    let ctx = CheckContext::new(&cfg, &p);
    let du = du_times(q(1, 1), 4);
    let r = check_collinearity("c", &ctx, &du, &du);
    assert_status(&r, Status::Pass);
    assert_eq!(scalar(&r, "mu"), q(1, 1));
    let mut dx1 = vec![q(0, 1); 4];
    dx1[1] = q(1, 1);
    let r = check_collinearity("c", &ctx, &dx1, &du);
    assert_status(&r, Status::Fail);
    assert_eq!(r.residual.as_rational().unwrap(), &q(1, 1));
    let zero = vec![q(0, 1); 4];
    assert_status(&check_collinearity("c", &ctx, &du, &zero), Status::Error);

    let r = run(&galaev("0", "u"), "collinearity", &pt5(q(2, 1)), 3);
    assert_status(&r, Status::Pass);
    assert_eq!(scalar(&r, "mu"), q(1, 2));
}

#[test]
fn schimming_conditions() {
    for spec in [pp("x1^2 + u*x2^3"), galaev("1", "u"), two_symmetric()] {
        let p = if spec.n == 5 { pt5(q(1, 1)) } else { pt4(q(1, 1)) };
        assert_status(&run(&spec, "schimming", &p, 2), Status::Pass);
    }
    let flat = run(&pp("0"), "schimming", &pt4(q(1, 1)), 2);
    assert_status(&flat, Status::Pass);
    assert_eq!(scalar(&flat, "chi"), q(0, 1));

    let one = poly("1", 2);
    let zero = poly("0", 2);
    let walker = build_walker(&WalkerData {
        h: poly("v*x1^2", 2),
        a: vec![zero.clone(), zero.clone()],
        g_star: vec![vec![one.clone(), zero.clone()], vec![zero, one]],
    })
    .unwrap();
    let r = run(&walker, "schimming", &pt4(q(1, 1)), 2);
    assert_status(&r, Status::Fail);
    assert_eq!(r.witness("precondition").unwrap().as_flag(), Some(false));
    assert_status(&run(&walker, "brinkmann", &pt4(q(1, 1)), 1), Status::Fail);
    assert_status(&run(&pp("x1^3"), "brinkmann", &pt4(q(1, 1)), 1), Status::Pass);
}

#[test]
fn pure_radiation_examples() {
    let r = run(&pp("x1^2 + x2^2"), "pure_radiation", &pt4(q(1, 1)), 3);
    assert_status(&r, Status::Pass);
    assert_eq!(scalar(&r, "psi"), q(-2, 1));
    assert_eq!(scalar(&r, "lambda"), q(0, 1));
    assert_eq!(r.witness("weyl_divergence_vanishes").unwrap().as_flag(), Some(true));

    // ψ = −6 x1²: ∇ψ is not along X and the Weyl divergence is nonzero
    let p = pt4(q(1, 1));
    let r = run(&pp("x1^4"), "pure_radiation", &p, 3);
    assert_status(&r, Status::Pass);
    assert_eq!(scalar(&r, "psi"), q(-6, 1) * &p[1] * &p[1]);
    assert_eq!(r.witness("grad_psi_parallel_to_x").unwrap().as_flag(), Some(false));
    assert_eq!(r.witness("weyl_divergence_vanishes").unwrap().as_flag(), Some(false));

    let u = q(3, 2);
    let r = run(&two_symmetric(), "pure_radiation", &pt4(u.clone()), 3);
    assert_status(&r, Status::Pass);
    assert_eq!(scalar(&r, "psi"), q(-3, 1) * u);
    assert_eq!(scalar(&r, "lambda"), q(-3, 1));
}

#[test]
fn pure_radiation_rejects_non_ppwave() {
    let r = run(&generic_perturbed(4, 1).unwrap(), "pure_radiation", &pt4(q(1, 1)), 3);
    assert_status(&r, Status::Error);
}

#[test]
fn roter_bundle_examples() {
    assert_status(&run(&galaev("0", "u"), "roter_bundle", &pt5(q(1, 1)), 4), Status::Pass);
    let r = run(&two_symmetric(), "roter_bundle", &pt4(q(1, 1)), 4);
    assert!(r.sub_residual("codazzi").unwrap().is_zero());
    assert!(r.sub_residual("scalar_zero").unwrap().is_zero());
    let r = run(&generic_perturbed(4, 1).unwrap(), "roter_bundle", &pt4(q(1, 1)), 4);
    assert_status(&r, Status::Fail);
    assert!(r.sub_residual("codazzi").unwrap().to_f64() >= 0.1);
}

#[test]
fn ricci_recurrence_examples() {
    for u in [q(1, 1), q(3, 2), q(2, 1)] {
        let r = run(&two_symmetric(), "ricci_recurrence", &pt4(u.clone()), 3);
        assert_status(&r, Status::Pass);
        // ω = (ψ'/ψ) X with ψ = −3u
        assert_eq!(vector(&r, "omega"), du_times(q(1, 1) / u, 4));
    }
    assert_status(&run(&pp("x1^2 - x2^2"), "ricci_recurrence", &pt4(q(1, 1)), 3), Status::Vacuous);
    // constant ψ: a = 1, F = 0 gives ψ = −3 and ∇Ricci = 0
    let r = run(&galaev("1", "0"), "ricci_recurrence", &pt5(q(1, 1)), 3);
    assert_status(&r, Status::Pass);
    assert_eq!(vector(&r, "omega"), vec![q(0, 1); 5]);
    // a = 1, F = u gives ψ = −(3 + 6u) and ω = 6/(3 + 6u) du
    let u = q(1, 2);
    let r = run(&galaev("1", "u"), "ricci_recurrence", &pt5(u.clone()), 4);
    assert_status(&r, Status::Pass);
    assert_eq!(vector(&r, "omega"), du_times(q(6, 1) / (q(3, 1) + q(6, 1) * u), 5));
}

#[test]
fn eqs_2_3_and_2_4() {
    assert_status(&run(&two_symmetric(), "eqs_2_3_2_4", &pt4(q(1, 1)), 2), Status::Pass);
    assert_status(&run(&pp("x1^2 - x2^2"), "eqs_2_3_2_4", &pt4(q(1, 1)), 2), Status::Vacuous);
    let r = run(&galaev("1", "u"), "eqs_2_3_2_4", &pt5(q(1, 1)), 2);
    assert_status(&r, Status::Pass);
    assert_eq!(scalar(&r, "sign"), q(-1, 1));
}

#[test]
fn laplacian_examples() {
    let r = run(&galaev("0", "u"), "laplacians", &pt5(q(1, 1)), 4);
    assert_status(&r, Status::Pass);
    let r = run(&two_symmetric(), "laplacians", &pt4(q(1, 1)), 4);
    assert_status(&r, Status::Pass);
    assert_eq!(r.witness("two_symmetric").unwrap().as_flag(), Some(true));
    let r = run(&pp("x1^4"), "laplacians", &pt4(q(1, 1)), 4);
    assert_status(&r, Status::Fail);
    assert!(!r.sub_residual("ricci").unwrap().is_zero());
    assert!(r.sub_residual("divergence_laplacian").unwrap().is_zero());
    assert!(r.sub_residual("commutator_ricci").unwrap().is_zero());
}

#[test]
fn alpha_recurrent_examples() {
    for (a, u) in [("0", q(1, 1)), ("0", q(2, 1)), ("1", q(3, 2))] {
        let r = run(&galaev(a, "u"), "alpha_recurrent", &pt5(u.clone()), 4);
        assert_status(&r, Status::Pass);
        assert_eq!(vector(&r, "alpha"), du_times(q(1, 1) / u.clone(), 5));
        // ∂_u (1/u) = −1/u² = q_u α_u
        assert_eq!(vector(&r, "q"), du_times(q(-1, 1) / u, 5));
        assert!(r.notes.iter().any(|n| n.contains("jet order 5")));
    }
    let r = run(&galaev("0", "u^2"), "alpha_recurrent", &pt5(q(1, 1)), 5);
    assert_status(&r, Status::Pass);
    assert!(r.sub_residual("q_closed").unwrap().is_zero());
}

#[test]
fn field_equation_examples() {
    let spec = galaev("0", "u");
    let mut cfg = RunConfig::new(spec);
    cfg.field_coeffs = vec![q(1, 1), q(3, 1), q(7, 1)];
    let p = pt5(q(1, 1));
    let r = run_cfg(&cfg, "field_equations", &p, 4);
    assert_status(&r, Status::Pass);
    assert_eq!(scalar(&r, "psi"), q(-6, 1));

    let r = run(&pp("x1^2 - x2^2"), "field_equations", &pt4(q(1, 1)), 4);
    assert_status(&r, Status::Pass);
    assert_eq!(r.witness("vacuum").unwrap().as_flag(), Some(true));

    let mut cfg = RunConfig::new(pp("x1^4"));
    cfg.field_coeffs = vec![q(1, 1), q(1, 1)];
    let r = run_cfg(&cfg, "field_equations", &pt4(q(1, 1)), 4);
    assert_status(&r, Status::Fail);
    cfg.field_coeffs = vec![q(1, 1), q(1, 1), q(1, 1)];
    assert_status(&run_cfg(&cfg, "field_equations", &pt4(q(1, 1)), 4), Status::Error);
}

#[test]
fn galaev_alpha_trace_variants() {
    let r = run(&galaev("0", "u"), "galaev_alpha", &pt5(q(1, 1)), 3);
    assert_status(&r, Status::Pass);
    assert_eq!(vector(&r, "alpha_trace_n"), du_times(q(1, 1), 5));
    assert_eq!(vector(&r, "alpha_trace_d"), du_times(q(1, 1), 5));
    // with a ≠ 0 only the trace-free (1/d) variant reproduces α
    let r = run(&galaev("1", "u"), "galaev_alpha", &pt5(q(1, 1)), 3);
    assert_status(&r, Status::Fail);
    assert!(r.sub_residual("trace_d").unwrap().is_zero());
    assert!(!r.sub_residual("trace_n").unwrap().is_zero());
}

#[test]
fn universal_identities_on_generic_metric() {
    let spec = generic_perturbed(4, 9).unwrap();
    for u in [q(1, 2), q(3, 2)] {
        for name in ["bianchi", "weyl_trace", "weyl_cyclic_identity", "weyl_divergence_formula", "conformal_invariance"] {
            let r = run(&spec, name, &pt4(u.clone()), 3);
            assert_status(&r, Status::Pass);
        }
        assert_status(&run(&spec, "schimming", &pt4(u.clone()), 3), Status::Fail);
    }
}

#[test]
fn conformal_invariance_in_float_mode() {
    let cfg = RunConfig::new(galaev("0", "u")).with_mode(Mode::Float);
    let p = pt5(q(1, 1));
    let b = CurvatureBundle::<f64>::at(&cfg.metric, &p, 2).unwrap();
    let r = run_check("conformal_invariance", &b, &CheckContext::new(&cfg, &p));
    assert_status(&r, Status::Pass);
    assert!(r.residual.to_f64() <= 1e-9);
}

#[test]
fn budget_errors_name_the_check() {
    let err = check_budget(&["laplacians".to_string(), "bianchi".to_string()], 3).unwrap_err();
    assert!(err.to_string().contains("jet order 4 required by laplacians"), "{err}");
    assert!(check_budget(&["bianchi".to_string()], 3).is_ok());
    let r = run(&pp("x1^2"), "laplacians", &pt4(q(1, 1)), 3);
    assert_status(&r, Status::Error);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn extraction_is_scale_equivariant(num in -5i64..=5, den in 1i64..=4) {
        prop_assume!(num != 0);
        let spec = galaev("0", "u");
        let b = CurvatureBundle::<Q>::at(&spec, &pt5(q(3, 2)), 3).unwrap();
        let c = b.weyl().unwrap();
        let dc = b.nabla_weyl().unwrap();
        let s = q(num, den);
        let a = extract_recurrence(c, dc).unwrap();
        let a2 = extract_recurrence(&c.scale(&s), &dc.scale(&s)).unwrap();
        prop_assert_eq!(a, a2);
    }

    #[test]
    fn ricci_recurrence_follows_log_psi(u_num in 1i64..=10) {
        // ω_u = ψ'/ψ for ψ = −3u
        let u = q(u_num, 4);
        let b = CurvatureBundle::<Q>::at(&two_symmetric(), &pt4(u.clone()), 3).unwrap();
        let w = extract_recurrence(b.ricci().unwrap(), b.nabla_ricci().unwrap()).unwrap();
        prop_assert_eq!(w, du_times(q(1, 1) / u, 4));
    }
}
