use super::*;
use crate::tensor::for_each_index;
use crate::metrics::{build_galaev, build_ppwave, build_walker, chart_coords, generic_perturbed, WalkerData};
use crate::poly::Polynomial;


type Q = BigRational;

fn q(p: i64, d: i64) -> Q {
    Q::new(p.into(), d.into())
}

fn poly(s: &str, d: usize) -> Polynomial {
    Polynomial::parse(s, &chart_coords(d)).unwrap()
}

fn pp(h: &str) -> MetricSpec {
    build_ppwave(&poly(h, 2), 2).unwrap()
}

fn flagship() -> MetricSpec {
    build_galaev(3, &poly("0", 3), &poly("u", 3), &[q(1, 1), q(1, 1), q(-2, 1)]).unwrap()
}

fn points4() -> Vec<Vec<Q>> {
    vec![
        vec![q(1, 2), q(1, 3), q(-1, 2), q(1, 5)],
        vec![q(1, 1), q(-2, 3), q(3, 4), q(2, 1)],
        vec![q(3, 2), q(1, 1), q(1, 7), q(-1, 3)],
    ]
}

fn bundle(spec: &MetricSpec, p: &[Q], k: usize) -> CurvatureBundle<Q> {
    CurvatureBundle::at(spec, p, k).unwrap()
}

fn du(n: usize, order: usize) -> Tensor<Q> {
    let mut c = vec![<Q as num_traits::Zero>::zero(); n];
    c[0] = q(1, 1);
    Tensor::covector(n, order, &c)
}

#[test]
fn flat_connection_vanishes() {
    let b = bundle(&pp("0"), &points4()[0], 3);
    assert!(b.gamma().unwrap().data().iter().all(|j| j.is_zero()));
    assert!(b.riemann().unwrap().data().iter().all(|j| j.is_zero()));
}

#[test]
fn inverse_metric_to_all_orders() {
    let spec = generic_perturbed(4, 3).unwrap();
    let m: MetricAtPoint<Q> = MetricAtPoint::new(&spec, &points4()[1], 3).unwrap();
    let prod = m.g.contract_with(&m.g_inv, &[(1, 0)]);
    assert_eq!(prod, Tensor::kronecker(4, 3).with_variance(vec![Co, Contra]));
}

#[test]
fn ppwave_christoffel_components() {
    // H = x1², chart (u, x1, x2, v)
    for p in points4() {
        let b = bundle(&pp("x1^2"), &p, 2);
        let g = b.gamma().unwrap();
        let x1 = p[1].clone();
        for_each_index(4, 3, |idx| {
            let v = g.value(idx).clone();
            let expected = match idx {
                [1, 0, 0] => -x1.clone(),
                [3, 0, 1] | [3, 1, 0] => x1.clone(),
                _ => <Q as num_traits::Zero>::zero(),
            };
            assert_eq!(v, expected, "Γ{idx:?}");
        });
    }
}

#[test]
fn walker_gamma_v_uu_picks_up_v_derivative() {
    let d = 2;
    let one = poly("1", d);
    let zero = poly("0", d);
    let data = |h: &str| WalkerData {
        h: poly(h, d),
        a: vec![zero.clone(), zero.clone()],
        g_star: vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]],
    };
    // Γ^v_{uu} = ½ ∂_u H + ½ H ∂_v H; at (1, 1, 0, 1) with H = v x1² that is ½
    let p = vec![q(1, 1), q(1, 1), q(0, 1), q(1, 1)];
    let walker = bundle(&build_walker(&data("v*x1^2")).unwrap(), &p, 2);
    assert_eq!(walker.gamma().unwrap().value(&[3, 0, 0]), &q(1, 2));
    let brinkmann = bundle(&build_walker(&data("x1^2")).unwrap(), &p, 2);
    assert_eq!(brinkmann.gamma().unwrap().value(&[3, 0, 0]), &q(0, 1));
}

#[test]
fn convention_oracle_ricci_is_minus_half_laplacian() {
    for p in points4() {
        let b = bundle(&pp("x1^2 + x2^2"), &p, 2);
        let ric = b.ricci().unwrap();
        for_each_index(4, 2, |idx| {
            let expected = if idx == [0, 0] { q(-2, 1) } else { <Q as num_traits::Zero>::zero() };
            assert_eq!(ric.value(idx), &expected, "R{idx:?}");
        });
        assert!(b.scalar().unwrap().is_zero());
    }
}

#[test]
fn plane_wave_vacuum_has_curvature() {
    let b = bundle(&pp("x1^2 - x2^2"), &points4()[0], 2);
    assert!(b.ricci().unwrap().is_zero());
    assert!(!b.riemann().unwrap().is_zero());
    assert!(!b.weyl().unwrap().is_zero());
}

#[test]
fn metricity_and_parallel_null_vector() {
    let specs = [pp("u*x1^2 + x1*x2^3"), generic_perturbed(4, 11).unwrap()];
    for spec in &specs {
        for p in points4() {
            let b = bundle(spec, &p, 2);
            let dg = covariant_derivative(b.g(), b.gamma().unwrap()).unwrap();
            assert!(dg.data().iter().all(|j| j.is_zero()));
        }
    }
    let b = bundle(&specs[0], &points4()[2], 2);
    let dx = covariant_derivative(&du(4, 1), b.gamma().unwrap()).unwrap();
    assert!(dx.is_zero());
}

#[test]
fn bianchi_identities_on_generic_metric() {
    let spec = generic_perturbed(4, 5).unwrap();
    for p in points4().iter().take(2) {
        let b = bundle(&spec, p, 3);
        assert!(b.riemann().unwrap().cyclic_sum((0, 1, 2)).unwrap().is_zero());
        assert!(b.nabla_riemann().unwrap().cyclic_sum((0, 1, 2)).unwrap().is_zero());
        assert!(!b.riemann().unwrap().is_zero());
    }
}

#[test]
fn weyl_is_trace_free() {
    let spec = flagship();
    let p = vec![q(1, 1), q(1, 4), q(-1, 2), q(3, 4), q(1, 3)];
    let b = bundle(&spec, &p, 2);
    let w = b.weyl().unwrap();
    assert!(!w.is_zero());
    for (a, c) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        assert!(w.contract(a, c, Some(b.g_inv())).unwrap().is_zero(), "trace ({a},{c})");
    }
    let g = generic_perturbed(4, 2).unwrap();
    let b = bundle(&g, &points4()[0], 2);
    assert!(b.weyl_mixed().unwrap().trace(0, 3).unwrap().is_zero());
}

#[test]
fn conformally_flat_metric_has_no_weyl() {
    let flat = pp("0");
    let s = poly("u*x1 + x2^2/3 - v/2", 2);
    let spec = rescale_by_square(&flat, &s).unwrap();
    let b = bundle(&spec, &points4()[0], 2);
    assert!(!b.riemann().unwrap().is_zero());
    assert!(b.weyl().unwrap().is_zero());

    let spec = rescale_by_exp(&flat, &poly("u*x1 - x2^2", 2)).unwrap();
    let p = vec![q(1, 2), q(1, 3), q(-1, 2), q(1, 5)];
    let b: CurvatureBundle<f64> = CurvatureBundle::at(&spec, &p, 2).unwrap();
    let riem = b.riemann().unwrap().sup_norm();
    assert!(riem > 0.1);
    assert!(b.weyl().unwrap().sup_norm() < 1e-12 * riem);
}

#[test]
fn exact_mode_rejects_exp_factor() {
    let spec = rescale_by_exp(&pp("x1^2"), &poly("u", 2)).unwrap();
    let err = MetricAtPoint::<Q>::new(&spec, &points4()[0], 2).unwrap_err();
    assert!(matches!(err, Error::Mode(_)));
}

#[test]
fn constant_factor_scales_lowered_weyl_only() {
    let spec = pp("x1^2 - 2*x2^2 + u*x1*x2");
    let scaled = rescale_by_square(&spec, &poly("1", 2)).unwrap();
    let p = &points4()[1];
    let a = bundle(&spec, p, 2);
    let b = bundle(&scaled, p, 2);
    assert_eq!(a.weyl_mixed().unwrap(), b.weyl_mixed().unwrap());
    assert_eq!(&a.weyl().unwrap().scale(&q(4, 1)), b.weyl().unwrap());
}

#[test]
fn ricci_derivative_on_ppwave_follows_psi_gradient() {
    // H = x1⁴ gives ψ = −6 x1², so ∇_j R_{kl} = ∂_j ψ X_k X_l
    let spec = pp("x1^4");
    for p in points4() {
        let b = bundle(&spec, &p, 3);
        let dr = b.nabla_ricci().unwrap();
        let dpsi = q(-12, 1) * &p[1];
        for_each_index(4, 3, |idx| {
            let expected = if idx == [1, 0, 0] { dpsi.clone() } else { <Q as num_traits::Zero>::zero() };
            assert_eq!(dr.value(idx), &expected, "∇R{idx:?}");
        });
    }
}

#[test]
fn laplacians_of_metric_and_ricci() {
    let spec = flagship();
    let p = vec![q(3, 2), q(1, 4), q(-1, 2), q(3, 4), q(1, 3)];
    let b = bundle(&spec, &p, 4);
    let lg = laplacian(b.g(), &b.metric, b.gamma().unwrap()).unwrap();
    assert!(lg.is_zero());
    assert!(b.laplacian_ricci().unwrap().is_zero());
    let quartic = bundle(&pp("x1^4"), &points4()[0], 4);
    assert!(!quartic.laplacian_ricci().unwrap().is_zero());
}

#[test]
fn order_budget_is_enforced() {
    let b = bundle(&pp("x1^2"), &points4()[0], 2);
    assert!(matches!(b.nabla_weyl(), Err(Error::OrderBudget { required: 3, .. })));
    let b = bundle(&pp("x1^2"), &points4()[0], 1);
    assert!(b.gamma().is_ok());
    assert!(matches!(b.riemann(), Err(Error::OrderBudget { required: 2, .. })));
}

#[test]
fn degenerate_point_is_singular() {
    let spec = crate::metrics::build_custom(vec![
        vec![poly("0", 2), poly("0", 2), poly("0", 2), poly("u", 2)],
        vec![poly("0", 2), poly("1", 2), poly("0", 2), poly("0", 2)],
        vec![poly("0", 2), poly("0", 2), poly("1", 2), poly("0", 2)],
        vec![poly("u", 2), poly("0", 2), poly("0", 2), poly("0", 2)],
    ])
    .unwrap();
    let p = vec![q(0, 1), q(1, 1), q(1, 1), q(1, 1)];
    assert!(matches!(MetricAtPoint::<Q>::new(&spec, &p, 2), Err(Error::Singular { .. })));
}
