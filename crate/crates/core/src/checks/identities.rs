//! Identities that hold for every metric.

use super::{vanishes, CheckContext, Eval, Witness};
use crate::error::{Error, Result};
use crate::geometry::{conformal_rescale, CurvatureBundle};
use crate::metrics::ConformalFactor;
use crate::scalar::Scalar;
use crate::tensor::{for_each_collect, relative, residual, Tensor, Variance};

fn swap_perm(rank: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..rank).collect();
    p.swap(a, b);
    p
}

pub(super) fn bianchi<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let r = b.riemann()?;
    let dr = b.nabla_riemann()?;
    let sup_r = r.sup_norm();
    if vanishes(&sup_r) {
        e.vacuous("Riemann tensor vanishes at the point");
    }
    let anti = r.add(&r.permute(&swap_perm(4, 0, 1)))?;
    let anti2 = r.add(&r.permute(&swap_perm(4, 2, 3)))?;
    e.sub("antisymmetry_jk", residual(&anti, &sup_r));
    e.sub("antisymmetry_lm", residual(&anti2, &sup_r));
    e.sub("first", residual(&r.cyclic_sum((0, 1, 2))?, &sup_r));
    e.sub("second", residual(&dr.cyclic_sum((0, 1, 2))?, &dr.sup_norm()));
    Ok(())
}

pub(super) fn weyl_trace<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let c = b.weyl()?;
    let sup_c = c.sup_norm();
    if vanishes(&sup_c) {
        e.vacuous("Weyl tensor vanishes at the point");
    }
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let t = c.contract(i, j, Some(b.g_inv()))?;
        e.sub(&format!("trace_{i}{j}"), residual(&t, &sup_c));
    }
    Ok(())
}

/// `∇_i C_{jkl}^m` with slots `(i, j, k, l, m)`.
fn nabla_weyl_mixed<S: Scalar>(b: &CurvatureBundle<S>) -> Result<Tensor<S>> {
    let dc = b.nabla_weyl()?;
    dc.raise_lower(4, &b.g_inv().truncate(dc.order()))
}

pub(super) fn weyl_cyclic_identity<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let n = b.dim();
    let dcm = nabla_weyl_mixed(b)?;
    let order = dcm.order();
    let lhs = dcm.cyclic_sum((0, 1, 2))?;
    // div_{jkl} = ∇_p C_{jkl}^p and its raised form E_{ji}^m = ∇_p C_{ji}^{mp}
    let div = b.weyl_divergence()?;
    let g = b.g().truncate(order);
    let div_up = div.raise_lower(2, &b.g_inv().truncate(order))?;
    let c = S::one() / S::from_i64(n as i64 - 3);
    let data = for_each_collect(n, 5, |idx| {
        let (i, j, k, l, m) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        let mut acc = crate::jet::Jet::zero(n, order);
        if m == j {
            acc.add_assign(div.get(&[k, i, l]));
        }
        if m == k {
            acc.add_assign(div.get(&[i, j, l]));
        }
        if m == i {
            acc.add_assign(div.get(&[j, k, l]));
        }
        acc.mul_acc(g.get(&[k, l]), div_up.get(&[j, i, m]));
        acc.mul_acc(g.get(&[i, l]), div_up.get(&[k, j, m]));
        acc.mul_acc(g.get(&[j, l]), div_up.get(&[i, k, m]));
        acc.scale(&c)
    });
    let rhs = Tensor::new(n, lhs.variance().to_vec(), data)?;
    let reference = lhs.sup_norm().max_abs(&dcm.sup_norm());
    if vanishes(&reference) {
        e.vacuous("∇C vanishes at the point");
    }
    e.sub("eq3_eq4", residual(&lhs.sub(&rhs)?, &reference));
    e.witness("lhs_sup", Witness::scalar(&lhs.sup_norm()));
    Ok(())
}

/// Right-hand side of the Weyl divergence formula, slots `(j, k, l)`.
pub(super) fn divergence_formula_rhs<S: Scalar>(b: &CurvatureBundle<S>) -> Result<Tensor<S>> {
    let n = b.dim();
    let dric = b.nabla_ricci()?;
    let dr = b.nabla_scalar()?;
    let order = dric.order();
    let g = b.g().truncate(order);
    let nn = n as i64;
    let c1 = S::from_ratio(nn - 3, nn - 2);
    let c2 = S::from_ratio(nn - 3, 2 * (nn - 1) * (nn - 2));
    let data = for_each_collect(n, 3, |idx| {
        let (j, k, l) = (idx[0], idx[1], idx[2]);
        let codazzi = dric.get(&[k, j, l]).sub(dric.get(&[j, k, l])).scale(&c1);
        let mut s = crate::jet::Jet::zero(n, order);
        s.mul_acc(g.get(&[k, l]), dr.get(&[j]));
        s.mul_sub(g.get(&[j, l]), dr.get(&[k]));
        codazzi.add(&s.scale(&c2))
    });
    Tensor::new(n, vec![Variance::Co; 3], data)
}

pub(super) fn weyl_divergence_formula<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let div = b.weyl_divergence()?;
    let rhs = divergence_formula_rhs(b)?;
    let reference = div.sup_norm().max_abs(&b.nabla_ricci()?.sup_norm());
    if vanishes(&reference) {
        e.vacuous("∇C and ∇Ricci vanish at the point");
    }
    e.sub("divergence", residual(&div.sub(&rhs)?, &reference));
    e.witness("divergence_sup", Witness::scalar(&div.sup_norm()));
    Ok(())
}

fn factor_value<S: Scalar>(factor: &ConformalFactor, point: &[num_rational::BigRational]) -> Result<S> {
    match factor {
        ConformalFactor::Square(s) => {
            let v = S::from_rational(&s.eval(point)) + S::one();
            Ok(v.clone() * v)
        }
        ConformalFactor::Exp(sigma) => {
            let two_sigma = S::from_rational(&sigma.eval(point)) * S::from_i64(2);
            two_sigma.exp().ok_or_else(|| {
                Error::Mode("exp(2σ) is not representable in exact mode; use float mode or a (1+s)^2 factor".into())
            })
        }
    }
}

pub(super) fn conformal_invariance<S: Scalar>(
    b: &CurvatureBundle<S>,
    ctx: &CheckContext<'_>,
    e: &mut Eval<S>,
) -> Result<()> {
    let factor = ctx.config.conformal_factor_or_default();
    let (label, poly) = match &factor {
        ConformalFactor::Square(s) => ("(1 + s)^2", s),
        ConformalFactor::Exp(s) => ("exp(2*sigma)", s),
    };
    if S::is_exact() && matches!(factor, ConformalFactor::Exp(_)) {
        return Err(Error::Mode("exp(2σ) conformal factor requires float mode".into()));
    }
    let f = factor_value::<S>(&factor, ctx.point)?;
    if vanishes(&f) {
        return Err(Error::Run("conformal factor vanishes at the sample point".into()));
    }
    let rescaled = conformal_rescale(ctx.spec, &factor)?;
    let b2 = CurvatureBundle::<S>::at(&rescaled, ctx.point, 2)?;
    let c1 = b.weyl_mixed()?;
    let c2 = b2.weyl_mixed()?;
    let sup = c1.sup_norm();
    if vanishes(&sup) {
        e.vacuous("Weyl tensor vanishes at the point");
    }
    e.sub("weyl_1_3", residual(&c1.sub(&c2.truncate(c1.order()))?, &sup));
    let l1 = b.weyl()?;
    let l2 = b2.weyl()?;
    let scaled = l1.truncate(0).scale(&f);
    e.sub("weyl_0_4_scaling", relative(&scaled.sub(&l2.truncate(0))?.sup_norm(), &scaled.sup_norm()));
    e.witness("factor", Witness::Text(format!("{label} with {} = {poly}", if label.starts_with('(') { "s" } else { "sigma" })));
    e.witness("factor_value", Witness::scalar(&f));
    Ok(())
}
