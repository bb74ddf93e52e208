//! Recurrence of the Weyl and Ricci tensors and of the recurrence covector.

use num_rational::BigRational;

use super::extract::{
    closedness_residual, extract_recurrence, extract_recurrence_jet, ratio_recurrence, recurrence_residual,
};
use super::{null_covector, vanishes, CheckContext, CheckResult, Eval, Witness};
use crate::error::{Error, Result};
use crate::geometry::{covariant_derivative, CurvatureBundle};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::tensor::{relative, residual, Tensor};

fn sup_values<S: Scalar>(c: &[S]) -> S {
    c.iter().fold(S::zero(), |m, x| m.max_abs(x))
}

fn sub_values<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |m, (x, y)| m.max_abs(&(x.clone() - y.clone())))
}

fn raise<S: Scalar>(b: &CurvatureBundle<S>, c: &[S]) -> Vec<S> {
    (0..b.dim())
        .map(|i| {
            let mut acc = S::zero();
            for (j, cj) in c.iter().enumerate() {
                S::mul_add_to(&mut acc, b.g_inv().value(&[i, j]), cj);
            }
            acc
        })
        .collect()
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        S::mul_add_to(&mut acc, x, y);
    }
    acc
}

/// Weyl recurrence covector at the point, if the Weyl tensor is nonzero.
pub(super) fn weyl_alpha<S: Scalar>(b: &CurvatureBundle<S>) -> Result<Option<Vec<S>>> {
    Ok(extract_recurrence(b.weyl()?, b.nabla_weyl()?))
}

pub(super) fn conformal_recurrence<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let c = b.weyl()?;
    let dc = b.nabla_weyl()?;
    let Some(alpha) = extract_recurrence(c, dc) else {
        e.vacuous("Weyl tensor vanishes at the point");
        return Ok(());
    };
    e.sub("recurrence", recurrence_residual(c, dc, &alpha));
    if let Some(ratio) = ratio_recurrence(c, dc) {
        e.sub("ratio_agreement", relative(&sub_values(&alpha, &ratio), &sup_values(&alpha)));
        e.witness("alpha_ratio", Witness::vector(&ratio));
    }
    e.witness("alpha_nonzero", Witness::Flag(!vanishes(&sup_values(&alpha))));
    e.witness("alpha", Witness::vector(&alpha));
    Ok(())
}

/// `Ω_{μν} = ∂_μ∂_ν H − (1/t) δ_{μν} Σ ∂²_ρ H` and `Ω² = Σ Ω_{μν}²`.
fn omega(h: &Polynomial, d: usize, t: i64) -> (Vec<Vec<Polynomial>>, Polynomial) {
    let mut lap = Polynomial::zero(h.vars());
    for rho in 1..=d {
        lap = lap.add(&h.partial(rho).partial(rho));
    }
    let trace = lap.scale(&BigRational::new(1.into(), t.into()));
    let mut sq = Polynomial::zero(h.vars());
    let mut rows = Vec::with_capacity(d);
    for mu in 1..=d {
        let mut row = Vec::with_capacity(d);
        for nu in 1..=d {
            let mut o = h.partial(mu).partial(nu);
            if mu == nu {
                o = o.sub(&trace);
            }
            sq = sq.add(&o.mul(&o));
            row.push(o);
        }
        rows.push(row);
    }
    (rows, sq)
}

/// `α_i = ½ ∂_i Ω² / Ω²` at the point.
fn alpha_from_omega_sq<S: Scalar>(sq: &Polynomial, point: &[BigRational]) -> Option<(Vec<S>, S)> {
    let w = sq.eval(point);
    if w == BigRational::from_integer(0.into()) {
        return None;
    }
    let two_w = S::from_rational(&(w.clone() * BigRational::from_integer(2.into())));
    let alpha = (0..point.len())
        .map(|i| S::from_rational(&sq.partial(i).eval(point)) / two_w.clone())
        .collect();
    Some((alpha, S::from_rational(&w)))
}

pub(super) fn galaev_alpha<S: Scalar>(b: &CurvatureBundle<S>, ctx: &CheckContext<'_>, e: &mut Eval<S>) -> Result<()> {
    let h = ctx
        .spec
        .potential()
        .ok_or_else(|| Error::Run("galaev_alpha needs the pp-wave potential".into()))?;
    let n = ctx.spec.n;
    let d = n - 2;
    let Some(alpha) = weyl_alpha(b)? else {
        e.vacuous("Weyl tensor vanishes at the point");
        return Ok(());
    };
    let scale = sup_values(&alpha);
    e.witness("alpha_extracted", Witness::vector(&alpha));
    for (key, t) in [("trace_n", n as i64), ("trace_d", d as i64)] {
        let (rows, sq) = omega(h, d, t);
        match alpha_from_omega_sq::<S>(&sq, ctx.point) {
            Some((a, w)) => {
                e.sub(key, relative(&sub_values(&alpha, &a), &scale));
                e.witness(&format!("alpha_{key}"), Witness::vector(&a));
                e.witness(&format!("omega_sq_{key}"), Witness::scalar(&w));
                if t == d as i64 {
                    let vals: Vec<Vec<_>> = rows
                        .iter()
                        .map(|r| r.iter().map(|p| S::from_rational(&p.eval(ctx.point)).to_number()).collect())
                        .collect();
                    e.witness("omega", Witness::Matrix(vals));
                }
            }
            None => {
                e.vacuous(format!("Ω² vanishes at the point ({key} variant)"));
            }
        }
    }
    Ok(())
}

fn collinearity<S: Scalar>(alpha: &[S], x: &[S], e: &mut Eval<S>) -> Result<()> {
    let sx = sup_values(x);
    if vanishes(&sx) {
        return Err(Error::Run("collinearity reference covector is zero".into()));
    }
    let a = (0..x.len()).max_by(|&i, &j| x[i].abs().partial_cmp(&x[j].abs()).unwrap()).unwrap();
    let mu = alpha[a].clone() / x[a].clone();
    let scaled: Vec<S> = x.iter().map(|v| v.clone() * &mu).collect();
    let sa = sup_values(alpha);
    if vanishes(&sa) {
        e.vacuous("covector vanishes at the point");
    }
    e.sub("collinear", relative(&sub_values(alpha, &scaled), &sa));
    e.witness("mu", Witness::scalar(&mu));
    Ok(())
}

/// `α = μ X` with `μ` read off the largest component of `X`.
pub fn check_collinearity<S: Scalar>(name: &str, ctx: &CheckContext<'_>, alpha: &[S], x: &[S]) -> CheckResult {
    let mut e = Eval::new();
    match collinearity(alpha, x, &mut e) {
        Ok(()) => e.finish(name, ctx),
        Err(err) => CheckResult::error(name, ctx.point, &err),
    }
}

pub(super) fn collinearity_of_alpha<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let Some(alpha) = weyl_alpha(b)? else {
        e.vacuous("Weyl tensor vanishes at the point");
        return Ok(());
    };
    let x = null_covector::<S>(b.dim(), 0).values();
    collinearity(&alpha, &x, e)?;
    let sa = sup_values(&alpha);
    e.sub("alpha_null", relative(&dot(&raise(b, &alpha), &alpha), &(sa.clone() * &sa)));
    e.witness("alpha", Witness::vector(&alpha));
    Ok(())
}

pub(super) fn roter_bundle<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let c = b.weyl()?;
    let dc = b.nabla_weyl()?;
    let nonzero = !vanishes(&c.sup_norm());
    e.require("weyl_nonzero", nonzero);
    if let Some(alpha_jet) = extract_recurrence_jet(c, dc)? {
        let alpha = alpha_jet.values();
        e.sub("recurrence", recurrence_residual(c, dc, &alpha));
        e.sub("alpha_closed", closedness_residual(&alpha_jet)?);
        e.witness("alpha", Witness::vector(&alpha));
    }
    let dric = b.nabla_ricci()?;
    let sup_dric = dric.sup_norm();
    e.sub("codazzi", residual(&dric.antisymmetrize(0, 1), &sup_dric));
    e.sub("scalar_zero", relative(b.scalar()?.value(&[]), &b.ricci()?.sup_norm()));
    e.sub("scalar_gradient", residual(b.nabla_scalar()?, &sup_dric));
    Ok(())
}

pub(super) fn ricci_recurrence<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let ric = b.ricci()?;
    let dric = b.nabla_ricci()?;
    let Some(omega) = extract_recurrence(ric, dric) else {
        e.vacuous("Ricci tensor vanishes at the point");
        return Ok(());
    };
    e.sub("recurrence", recurrence_residual(ric, dric, &omega));
    let so = sup_values(&omega);
    e.sub("omega_null", relative(&dot(&raise(b, &omega), &omega), &(so.clone() * &so)));
    let up = raise(b, &omega);
    let annihilated = ric.truncate(0).contract_with(&Tensor::covector(b.dim(), 0, &up), &[(1, 0)]);
    e.sub("omega_annihilates_ricci", residual(&annihilated, &(so.clone() * &ric.sup_norm())));
    if b.order() >= 4 {
        if let Some(jet) = extract_recurrence_jet(ric, dric)? {
            e.sub("omega_closed", closedness_residual(&jet)?);
        }
    } else {
        e.note("closedness of ω needs jet order 4");
    }
    if vanishes(&so) {
        e.note("ω = 0: the Ricci tensor is parallel");
    }
    e.witness("omega", Witness::vector(&omega));
    Ok(())
}

pub(super) fn alpha_recurrent<S: Scalar>(b: &CurvatureBundle<S>, e: &mut Eval<S>) -> Result<()> {
    let c = b.weyl()?;
    let dc = b.nabla_weyl()?;
    let Some(alpha_jet) = extract_recurrence_jet(c, dc)? else {
        e.vacuous("Weyl tensor vanishes at the point");
        return Ok(());
    };
    let alpha = alpha_jet.values();
    let sa = sup_values(&alpha);
    if vanishes(&sa) {
        e.vacuous("recurrence covector vanishes at the point");
        return Ok(());
    }
    // ∇_j α_i with slots (j, i)
    let dalpha = covariant_derivative(&alpha_jet, b.gamma()?)?;
    let q = extract_recurrence(&alpha_jet, &dalpha).expect("α is nonzero");
    e.sub("recurrence", recurrence_residual(&alpha_jet, &dalpha, &q));
    if dalpha.order() >= 1 {
        if let Some(qj) = extract_recurrence_jet(&alpha_jet, &dalpha)? {
            e.sub("q_closed", closedness_residual(&qj)?);
        }
    } else {
        e.note("closedness of q needs jet order 5");
    }
    let div = b.g_inv().truncate(0).contract_with(&dalpha.truncate(0), &[(0, 0), (1, 1)]);
    e.sub("divergence", residual(&div, &dalpha.sup_norm()));
    let up = raise(b, &alpha);
    let along = Tensor::covector(b.dim(), 0, &up).contract_with(&dc.truncate(0), &[(0, 0)]);
    e.sub("alpha_dot_nabla_weyl", residual(&along, &(sa.clone() * &dc.sup_norm())));
    e.witness("alpha", Witness::vector(&alpha));
    e.witness("q", Witness::vector(&q));
    Ok(())
}
