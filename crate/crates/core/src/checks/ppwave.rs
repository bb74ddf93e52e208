//! Brinkmann, pp-wave and pure-radiation properties.

use super::{null_covector, vanishes, within_tolerance, CheckContext, CheckResult, Eval, Witness};
use crate::error::{Error, Result};
use crate::geometry::{covariant_derivative, laplacian, CurvatureBundle};
use crate::jet::Jet;
use crate::metrics::laplacian_psi;
use crate::scalar::Scalar;
use crate::tensor::{for_each_collect, relative, residual, Tensor, Variance};

fn product_sup<S: Scalar>(a: &S, b: &S) -> S {
    a.clone() * b
}

/// `c ⊗ T` for a constant covector `c`, at the order of `T`.
fn covector_outer<S: Scalar>(c: &[S], t: &Tensor<S>) -> Tensor<S> {
    Tensor::covector(t.dim(), t.order(), c).outer(t)
}

/// Constant covector raised with `g^{ij}` at the point.
fn raise_values<S: Scalar>(b: &CurvatureBundle<S>, c: &[S]) -> Vec<S> {
    let n = b.dim();
    (0..n)
        .map(|i| {
            let mut acc = S::zero();
            for (j, cj) in c.iter().enumerate() {
                S::mul_add_to(&mut acc, b.g_inv().value(&[i, j]), cj);
            }
            acc
        })
        .collect()
}

fn norm_sq<S: Scalar>(b: &CurvatureBundle<S>, c: &[S]) -> S {
    let up = raise_values(b, c);
    let mut acc = S::zero();
    for (u, x) in up.iter().zip(c) {
        S::mul_add_to(&mut acc, u, x);
    }
    acc
}

fn sup_values<S: Scalar>(c: &[S]) -> S {
    c.iter().fold(S::zero(), |m, x| m.max_abs(x))
}

/// `X = du` is null and parallel; reports the recurrence form `∇X = p ⊗ X`.
pub(super) fn brinkmann<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let n = b.dim();
    let x = null_covector::<S>(n, b.order());
    let dx = covariant_derivative(&x, b.gamma()?)?;
    e.sub("null", b.g_inv().value(&[0, 0]).clone());
    e.sub("parallel", dx.sup_norm());
    // p_k = ∇_k X_u, and ∇_k X_j must vanish for j ≠ u
    let p: Vec<S> = (0..n).map(|k| dx.value(&[k, 0]).clone()).collect();
    let mut off = S::zero();
    for k in 0..n {
        for j in 1..n {
            off = off.max_abs(dx.value(&[k, j]));
        }
    }
    e.witness("recurrent", Witness::Flag(vanishes(&off)));
    e.witness("recurrence_p", Witness::vector(&p));
    Ok(())
}

/// Brinkmann precondition residual and the four pp-wave curvature conditions.
pub(super) fn schimming<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let n = b.dim();
    let x = null_covector::<S>(n, b.order());
    let dx = covariant_derivative(&x, b.gamma()?)?;
    let pre = dx.sup_norm().max_abs(b.g_inv().value(&[0, 0]));
    let pre_ok = vanishes(&pre);
    e.sub("precondition", pre);
    e.require("precondition", pre_ok);
    if !pre_ok {
        e.note("∇X ≠ 0: Walker but not Brinkmann coordinates");
    }
    let r = b.riemann()?.truncate(0);
    let sup_r = r.sup_norm();
    let xv: Vec<S> = x.values();

    // (a) X_i R_{jklm} + X_j R_{kilm} + X_k R_{ijlm}
    let cyc = covector_outer(&xv, &r).cyclic_sum((0, 1, 2))?;
    e.sub("cyclic", residual(&cyc, &sup_r));

    // (b) gauge-fixed D_{kl} = R_{a k l a} / X_a² with a the largest X slot
    let a = (0..n).max_by(|&i, &j| xv[i].abs().partial_cmp(&xv[j].abs()).unwrap()).unwrap_or(0);
    let xa2 = xv[a].clone() * &xv[a];
    let d = Tensor::from_fn(n, vec![Variance::Co; 2], |idx| {
        Jet::constant(n, 0, r.value(&[a, idx[0], idx[1], a]).clone() / xa2.clone())
    });
    e.sub("d_symmetric", residual(&d.antisymmetrize(0, 1), &sup_r));
    let recon = for_each_collect(n, 4, |idx| {
        let (j, k, l, m) = (idx[0], idx[1], idx[2], idx[3]);
        let dv = |p: usize, q: usize| d.value(&[p, q]).clone();
        let v = xv[j].clone() * &xv[m] * &dv(k, l) - xv[j].clone() * &xv[l] * &dv(m, k)
            - xv[k].clone() * &xv[m] * &dv(j, l)
            + xv[k].clone() * &xv[l] * &dv(j, m);
        Jet::constant(n, 0, r.value(idx).clone() - v)
    });
    e.sub("decomposition", residual(&Tensor::new(n, vec![Variance::Co; 4], recon)?, &sup_r));

    // (c) R^p_{jk}^q R_{plmq} = χ X_j X_k X_l X_m
    let g_inv = b.g_inv().truncate(0);
    let r_up03 = r.raise_lower(0, &g_inv)?.raise_lower(3, &g_inv)?;
    let q = r_up03.contract_with(&r, &[(0, 0), (3, 3)]);
    let xa4 = xa2.clone() * &xa2;
    let chi = q.value(&[a, a, a, a]).clone() / xa4;
    let quartic = for_each_collect(n, 4, |idx| {
        let v = chi.clone() * &xv[idx[0]] * &xv[idx[1]] * &xv[idx[2]] * &xv[idx[3]];
        Jet::constant(n, 0, q.value(idx).clone() - v)
    });
    let sup_r2 = product_sup(&sup_r, &sup_r);
    e.sub("chi_quartic", residual(&Tensor::new(n, vec![Variance::Co; 4], quartic)?, &sup_r2));

    // (d) R_{jk}^{pq} R_{pqlm} = 0
    let r_up23 = r.raise_lower(2, &g_inv)?.raise_lower(3, &g_inv)?;
    let p = r_up23.contract_with(&r, &[(2, 0), (3, 1)]);
    e.sub("riemann_square", residual(&p, &sup_r2));

    e.witness("D", Witness::matrix(&d));
    e.witness("chi", Witness::scalar(&chi));
    Ok(())
}

/// Cyclic Weyl condition and its consequences for a constant covector.
pub(super) fn olszak<S: Scalar>(b: &CurvatureBundle<S>, x: &[S], e: &mut Eval<S>) -> Result<()> {
    let c = b.weyl()?.truncate(0);
    let sup_c = c.sup_norm();
    if vanishes(&sup_c) {
        e.vacuous("Weyl tensor vanishes at the point");
    }
    let sx = sup_values(x);
    let scale = product_sup(&sx, &sup_c);
    let cyc = covector_outer(x, &c).cyclic_sum((0, 1, 2))?;
    e.sub("cyclic", residual(&cyc, &scale));
    let up = raise_values(b, x);
    let contracted = c.contract_with(&Tensor::covector(b.dim(), 0, &up), &[(3, 0)]);
    e.sub("contraction", residual(&contracted, &scale));
    e.sub("null", relative(&norm_sq(b, x), &product_sup(&sx, &sx)));
    e.witness("covector", Witness::vector(x));
    Ok(())
}

/// Cyclic Weyl condition for an arbitrary covector, under a caller-chosen name.
pub fn check_olszak_covector<S: Scalar>(
    name: &str,
    b: &CurvatureBundle<S>,
    ctx: &CheckContext<'_>,
    x: &[S],
) -> CheckResult {
    let mut e = Eval::new();
    match olszak(b, x, &mut e) {
        Ok(()) => e.finish(name, ctx),
        Err(err) => CheckResult::error(name, ctx.point, &err),
    }
}

pub(super) fn pure_radiation<S: Scalar>(b: &CurvatureBundle<S>, ctx: &CheckContext<'_>, e: &mut Eval<S>) -> Result<()> {
    let n = b.dim();
    let tol = ctx.config.tolerance;
    let h = ctx
        .spec
        .potential()
        .ok_or_else(|| Error::Run("pure_radiation needs a metric in pp-wave form".into()))?;
    let ric = b.ricci()?.truncate(0);
    let psi = ric.value(&[0, 0]).clone();
    let x = null_covector::<S>(n, 0);
    let form = ric.sub(&x.outer(&x).scale(&psi))?;
    e.sub("pure_form", residual(&form, &ric.sup_norm()));
    let psi_h = S::from_rational(&laplacian_psi(h, n - 2).eval(ctx.point));
    e.sub("psi_vs_potential", relative(&(psi.clone() - psi_h.clone()), &psi_h));
    if let Some(expected) = &ctx.spec.provenance.expected_psi {
        let pe = S::from_rational(&expected.eval(ctx.point));
        e.sub("psi_vs_family", relative(&(psi.clone() - pe.clone()), &pe));
    }
    // ∇_j R_{kl} = (∂_j ψ) X_k X_l, so ∂_j ψ = ∇_j R_{uu}
    let dric = b.nabla_ricci()?;
    let grad: Vec<S> = (0..n).map(|j| dric.value(&[j, 0, 0]).clone()).collect();
    let sup_grad = sup_values(&grad);
    let transverse = grad[1..].iter().fold(S::zero(), |m, g| m.max_abs(g));
    let parallel = within_tolerance(&relative(&transverse, &sup_grad), tol);
    let div = b.weyl_divergence()?.truncate(0);
    let div_zero = within_tolerance(&relative(&div.sup_norm(), &dric.sup_norm()), tol);
    e.require("divergence_criterion_consistent", parallel == div_zero);
    let nn = n as i64;
    let c = S::from_ratio(nn - 3, nn - 2);
    let xv = x.values();
    let rhs = Tensor::from_fn(n, vec![Variance::Co; 3], |idx| {
        let (j, k, l) = (idx[0], idx[1], idx[2]);
        let v = (grad[k].clone() * &xv[j] - grad[j].clone() * &xv[k]) * &xv[l] * &c;
        Jet::constant(n, 0, v)
    });
    e.sub("divergence_formula", residual(&div.sub(&rhs)?, &dric.sup_norm()));
    e.witness("psi", Witness::scalar(&psi));
    e.witness("psi_from_potential", Witness::scalar(&psi_h));
    e.witness("grad_psi", Witness::vector(&grad));
    e.witness("grad_psi_parallel_to_x", Witness::Flag(parallel));
    e.witness("weyl_divergence_vanishes", Witness::Flag(div_zero));
    if parallel {
        e.witness("lambda", Witness::scalar(&grad[0]));
    }
    Ok(())
}

pub(super) fn eqs_2_3_2_4<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let n = b.dim();
    let ric = b.ricci()?.truncate(0);
    let sup = ric.sup_norm();
    if vanishes(&sup) {
        e.vacuous("Ricci tensor vanishes at the point");
        return Ok(());
    }
    let a = (0..n)
        .max_by(|&i, &j| ric.value(&[i, i]).abs().partial_cmp(&ric.value(&[j, j]).abs()).unwrap())
        .unwrap();
    let raa = ric.value(&[a, a]).clone();
    if vanishes(&raa) {
        e.vacuous("Ricci tensor is not of the form ±d⊗d");
        return Ok(());
    }
    // w_j = R_{aj} ∝ d_j, and R_{ij} = w_i w_j / R_{aa}
    let w: Vec<S> = (0..n).map(|j| ric.value(&[a, j]).clone()).collect();
    let wt = Tensor::covector(n, 0, &w);
    let rank_one = ric.sub(&wt.outer(&wt).scale(&(S::one() / raa.clone())))?;
    let rank_res = residual(&rank_one, &sup);
    e.witness("rank_one_residual", Witness::scalar(&rank_res));
    if !vanishes(&rank_res) {
        e.vacuous("Ricci tensor is not rank one");
        return Ok(());
    }
    let sign = if raa > S::zero() { 1 } else { -1 };
    e.witness("sign", Witness::scalar(&S::from_i64(sign)));
    e.witness("d_direction", Witness::vector(&w));
    let sw = sup_values(&w);
    let c = b.weyl()?.truncate(0);
    let r = b.riemann()?.truncate(0);
    e.sub("eq_2_3", residual(&covector_outer(&w, &c).cyclic_sum((0, 1, 2))?, &product_sup(&sw, &c.sup_norm())));
    e.sub("eq_2_4", residual(&covector_outer(&w, &r).cyclic_sum((0, 1, 2))?, &product_sup(&sw, &r.sup_norm())));
    Ok(())
}

fn commutator<S: Scalar>(dd: &Tensor<S>) -> (S, S) {
    (dd.antisymmetrize(0, 1).sup_norm(), dd.sup_norm())
}

pub(super) fn semisymmetry<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    for (key, dd) in [
        ("ricci", b.nabla_nabla_ricci()?),
        ("weyl", b.nabla_nabla_weyl()?),
        ("riemann", b.nabla_nabla_riemann()?),
    ] {
        let (c, s) = commutator(dd);
        e.sub(key, relative(&c, &s));
    }
    Ok(())
}

/// `∇^j ∇^m C_{jklm}` with slots `(k, l)`.
fn double_divergence_weyl<S: Scalar>(b: &CurvatureBundle<S>) -> Result<Tensor<S>> {
    let ddc = b.nabla_nabla_weyl()?;
    let g_inv = b.g_inv().truncate(ddc.order());
    let a = g_inv.contract_with(ddc, &[(0, 0), (1, 2)]);
    Ok(g_inv.contract_with(&a, &[(0, 0), (1, 3)]))
}

pub(super) fn laplacians<S: Scalar>(b: &CurvatureBundle<S>, ctx: &CheckContext<'_>, e: &mut Eval<S>) -> Result<()> {
    let n = b.dim() as i64;
    let lap_ric = b.laplacian_ricci()?;
    let ddr = b.nabla_nabla_ricci()?;
    let ddc = b.nabla_nabla_weyl()?;
    let ddm = b.nabla_nabla_riemann()?;
    e.sub("ricci", residual(&lap_ric, &ddr.sup_norm()));
    e.sub("weyl", residual(&b.laplacian_weyl()?, &ddc.sup_norm()));
    e.sub("riemann", residual(&b.laplacian_riemann()?, &ddm.sup_norm()));
    let lhs = double_divergence_weyl(b)?;
    let rhs = lap_ric.scale(&S::from_ratio(-(n - 3), n - 2));
    let div_lap = residual(&lhs.sub(&rhs)?, &ddr.sup_norm().max_abs(&ddc.sup_norm()));
    if ctx.spec.family.is_pp_wave_form() {
        e.sub("divergence_laplacian", div_lap);
    } else {
        e.witness("divergence_laplacian_residual", Witness::scalar(&div_lap));
        e.note("double Weyl divergence vs Ricci Laplacian reported only: the metric is not in pp-wave form");
    }
    for (key, dd) in [("commutator_ricci", ddr), ("commutator_weyl", ddc), ("commutator_riemann", ddm)] {
        let (c, s) = commutator(dd);
        e.sub(key, relative(&c, &s));
    }
    let two = ddm.sup_norm();
    e.witness("two_symmetry_residual", Witness::scalar(&two));
    e.witness("two_symmetric", Witness::Flag(vanishes(&two)));
    Ok(())
}

pub(super) fn field_equations<S: Scalar>(b: &CurvatureBundle<S>, ctx: &CheckContext<'_>, e: &mut Eval<S>) -> Result<()> {
    let n = b.dim();
    let coeffs: Vec<S> = ctx.config.field_coeffs.iter().map(S::from_rational).collect();
    let a0 = coeffs[0].clone();
    let ric = b.ricci()?;
    let gamma = b.gamma()?;
    let lap1 = b.laplacian_ricci()?;
    let lap1_zero_jet = lap1.data().iter().all(|j| j.is_zero());
    let mut op = ric.truncate(0).scale(&a0);
    let mut power = lap1.clone();
    for (p, ap) in coeffs.iter().enumerate().skip(1) {
        if p > 1 {
            let needed = 2 * p + 2;
            if b.order() >= needed {
                power = laplacian(&power, &b.metric, gamma)?;
            } else if lap1_zero_jet {
                e.note(format!(
                    "(∇²)^{p} Ricci taken as zero: ∇²Ricci vanishes to jet order {}",
                    lap1.order()
                ));
                continue;
            } else {
                return Err(Error::OrderBudget {
                    check: format!("field_equations power {p}"),
                    required: needed,
                    available: b.order(),
                });
            }
        }
        op = op.add(&power.truncate(0).scale(ap))?;
    }
    let a0_ric = ric.truncate(0).scale(&a0);
    let sup_ric = ric.sup_norm();
    e.sub("operator", residual(&op.sub(&a0_ric)?, &a0_ric.sup_norm()));
    let psi = ric.value(&[0, 0]).clone();
    let x = null_covector::<S>(n, 0);
    let xx = x.outer(&x);
    let t = xx.scale(&(a0.clone() * &psi));
    e.sub("source", residual(&a0_ric.sub(&t)?, &a0_ric.sup_norm()));
    if let Some(expected) = &ctx.spec.provenance.expected_psi {
        let pe = S::from_rational(&expected.eval(ctx.point));
        let te = a0.clone() * &pe;
        e.sub("source_vs_family", relative(&(t.value(&[0, 0]).clone() - te.clone()), &te));
        e.witness("psi_family", Witness::scalar(&pe));
    }
    // Einstein limit: R_{ij} − ½ R g_{ij} = ψ X_i X_j
    let r = b.scalar()?.value(&[]).clone();
    let einstein = ric.truncate(0).sub(&b.g().truncate(0).scale(&(r * S::from_ratio(1, 2))))?;
    e.sub("einstein", residual(&einstein.sub(&xx.scale(&psi))?, &sup_ric));
    e.witness("T", Witness::matrix(&t));
    e.witness("psi", Witness::scalar(&psi));
    e.witness("coefficients", Witness::vector(&coeffs));
    let sign = if psi.is_zero() {
        "zero"
    } else if psi > S::zero() {
        "positive"
    } else {
        "negative"
    };
    e.witness("psi_sign", Witness::Text(sign.into()));
    e.witness("eight_pi_phi_squared", Witness::scalar(&psi.abs()));
    if !S::is_exact() {
        let phi2 = psi.to_f64().abs() / (8.0 * std::f64::consts::PI);
        e.witness("phi_squared", Witness::scalar(&S::from_f64(phi2)));
    }
    e.witness("vacuum", Witness::Flag(vanishes(&sup_ric)));
    Ok(())
}
