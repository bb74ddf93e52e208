//! Recurrence-covector extraction.

use super::vanishes;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scalar::Scalar;
use crate::tensor::{relative, Tensor, Variance};

fn dot_values<S: Scalar>(a: &[Jet<S>], b: &[Jet<S>]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.value().is_zero() && !y.value().is_zero() {
            S::mul_add_to(&mut acc, x.value(), y.value());
        }
    }
    acc
}

/// Least-squares recurrence covector `α_i = ⟨∇_i T, T⟩ / ⟨T, T⟩` over the
/// Euclidean component inner product; `None` when `T` vanishes at the point.
pub fn extract_recurrence<S: Scalar>(t: &Tensor<S>, dt: &Tensor<S>) -> Option<Vec<S>> {
    if vanishes(&t.sup_norm()) {
        return None;
    }
    let tt = dot_values(t.data(), t.data());
    Some(
        (0..t.dim())
            .map(|i| dot_values(dt.slice_first(i).data(), t.data()) / tt.clone())
            .collect(),
    )
}

/// `sup(∇T − α ⊗ T) / sup(∇T)`, with `0/0 = 0`.
pub fn recurrence_residual<S: Scalar>(t: &Tensor<S>, dt: &Tensor<S>, alpha: &[S]) -> S {
    let stride = t.data().len();
    let mut sup = S::zero();
    for (i, a) in alpha.iter().enumerate() {
        for (k, e) in t.data().iter().enumerate() {
            let d = dt.data()[i * stride + k].value().clone() - a.clone() * e.value();
            sup = sup.max_abs(&d);
        }
    }
    relative(&sup, &dt.sup_norm())
}

/// Component-ratio cross-oracle: `α_i = ∇_i T_J / T_J` at the entry `J` of
/// largest `|T|`.
pub fn ratio_recurrence<S: Scalar>(t: &Tensor<S>, dt: &Tensor<S>) -> Option<Vec<S>> {
    let j = t.argmax_abs()?;
    let tj = t.value(&j).clone();
    if vanishes(&tj) {
        return None;
    }
    let off = t.offset(&j);
    let stride = t.data().len();
    Some((0..t.dim()).map(|i| dt.data()[i * stride + off].value().clone() / tj.clone()).collect())
}

/// Jet-valued version of [`extract_recurrence`]: the covector field `α` to
/// the jet order of `∇T`, so that its derivatives are available.
pub fn extract_recurrence_jet<S: Scalar>(t: &Tensor<S>, dt: &Tensor<S>) -> Result<Option<Tensor<S>>> {
    if vanishes(&t.sup_norm()) {
        return Ok(None);
    }
    let t = t.truncate(dt.order());
    let inv = t.dot_jets(&t).recip("recurrence normalisation")?;
    let data = (0..t.dim()).map(|i| dt.slice_first(i).dot_jets(&t).mul_truncated(&inv)).collect();
    Ok(Some(Tensor::new(t.dim(), vec![Variance::Co], data)?))
}

/// Relative residual of `∂_i α_j − ∂_j α_i` against `sup ∂_i α_j`; needs a
/// jet of order at least one.
pub fn closedness_residual<S: Scalar>(alpha: &Tensor<S>) -> Result<S> {
    if alpha.order() == 0 {
        return Err(Error::OrderBudget {
            check: "closedness of a 1-form".into(),
            required: 1,
            available: 0,
        });
    }
    let n = alpha.dim();
    let mut d = vec![vec![S::zero(); n]; n];
    for (j, a) in alpha.data().iter().enumerate() {
        for (i, row) in d.iter_mut().enumerate() {
            row[j] = a.partial(i)?.value().clone();
        }
    }
    let mut anti = S::zero();
    let mut sup = S::zero();
    for i in 0..n {
        for j in 0..n {
            anti = anti.max_abs(&(d[i][j].clone() - d[j][i].clone()));
            sup = sup.max_abs(&d[i][j]);
        }
    }
    Ok(relative(&anti, &sup))
}
