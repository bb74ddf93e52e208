//! Curvature pipeline: metric jets at a point, Levi-Civita connection,
//! Riemann, Ricci, scalar and Weyl curvature, covariant derivatives and
//! Laplacians.
//!
//! Conventions: `Γ^m_{jk}` is stored with slots `(m, j, k)`. The Riemann tensor
//! `R_{jkl}^m = ∂_k Γ^m_{jl} − ∂_j Γ^m_{kl} + Γ^m_{kp} Γ^p_{jl} − Γ^m_{jp} Γ^p_{kl}`
//! has slots `(j, k, l, m)`, the Ricci tensor is `R_{ij} = −R_{kij}^k`, and
//! with these signs `R_{uu} = −½ Σ ∂²H` on a pp-wave.

pub mod linalg;

use num_rational::BigRational;
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::jet::{jet_from_polynomial, Jet};
use crate::metrics::{rescale_by_exp, rescale_by_square, ConformalFactor, MetricSpec};
use crate::scalar::Scalar;
use crate::tensor::{Tensor, Variance};

pub use linalg::Inertia;

use Variance::{Co, Contra};

/// Metric and inverse metric as jets about a point.
#[derive(Debug, Clone)]
pub struct MetricAtPoint<S: Scalar> {
    pub g: Tensor<S>,
    pub g_inv: Tensor<S>,
    pub point: Vec<BigRational>,
    pub signature: Inertia,
    pub order: usize,
}

fn jet_matmul<S: Scalar>(a: &[Jet<S>], b: &[Jet<S>], n: usize, order: usize) -> Vec<Jet<S>> {
    let mut out = vec![Jet::zero(n, order); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if !bkj.is_zero() {
                    out[i * n + j].mul_acc(aik, bkj);
                }
            }
        }
    }
    out
}

impl<S: Scalar> MetricAtPoint<S> {
    /// Expands the metric components to order `order` about `point`.
    pub fn new(spec: &MetricSpec, point: &[BigRational], order: usize) -> Result<Self> {
        let n = spec.n;
        if point.len() != n {
            return Err(Error::Structural(format!("point has {} coordinates, metric has {n}", point.len())));
        }
        let factor = match &spec.conformal_exp {
            Some(sigma) => {
                let s: Jet<S> = jet_from_polynomial(sigma, point, order)?;
                Some(s.scale(&S::from_i64(2)).exp()?)
            }
            None => None,
        };
        let mut data: Vec<Jet<S>> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e: Jet<S> = if j < i {
                    data[j * n + i].clone()
                } else {
                    jet_from_polynomial(&spec.components[i][j], point, order)?
                };
                if j >= i {
                    if let Some(f) = &factor {
                        e = e.mul_truncated(f);
                    }
                }
                data.push(e);
            }
        }
        let g0: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| data[i * n + j].value().clone()).collect()).collect();
        let signature = linalg::inertia(&g0);
        let a0 = if signature.is_degenerate() { None } else { linalg::inverse(&g0) };
        let a0 = a0.ok_or_else(|| Error::Singular {
            field: "metric".into(),
        })?;
        // g⁻¹ = Σ_k (−A₀N)^k A₀ with N = g − g(point)
        let a0_jets: Vec<Jet<S>> = a0.iter().flatten().map(|v| Jet::constant(n, order, v.clone())).collect();
        let mut nilpotent: Vec<Jet<S>> = data.clone();
        for jet in nilpotent.iter_mut() {
            let v = jet.value().clone();
            jet.sub_assign(&Jet::constant(n, order, v));
        }
        let step: Vec<Jet<S>> = jet_matmul(&a0_jets, &nilpotent, n, order).iter().map(|j| j.neg()).collect();
        let mut term = a0_jets.clone();
        let mut inv = a0_jets;
        for _ in 0..order {
            term = jet_matmul(&step, &term, n, order);
            for (acc, t) in inv.iter_mut().zip(&term) {
                acc.add_assign(t);
            }
        }
        Ok(MetricAtPoint {
            g: Tensor::new(n, vec![Co, Co], data)?,
            g_inv: Tensor::new(n, vec![Contra, Contra], inv)?,
            point: point.to_vec(),
            signature,
            order,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }
}

fn budget(what: &str, required: usize, available: usize) -> Error {
    Error::OrderBudget {
        check: what.into(),
        required,
        available,
    }
}

/// `Γ^i_{jk} = ½ g^{il}(∂_j g_{lk} + ∂_k g_{lj} − ∂_l g_{jk})`, order `K − 1`.
pub fn christoffel<S: Scalar>(m: &MetricAtPoint<S>) -> Result<Tensor<S>> {
    if m.order < 1 {
        return Err(budget("christoffel symbols", 1, m.order));
    }
    let n = m.dim();
    let order = m.order - 1;
    // dg[l][j][k] = ∂_j g_{lk}
    let mut dg = Vec::with_capacity(n * n * n);
    for l in 0..n {
        for j in 0..n {
            for k in 0..n {
                dg.push(m.g.get(&[l, k]).partial(j)?);
            }
        }
    }
    let at = |l: usize, j: usize, k: usize| &dg[(l * n + j) * n + k];
    let mut first = Vec::with_capacity(n * n * n);
    for l in 0..n {
        for j in 0..n {
            for k in 0..n {
                first.push(at(l, j, k).add(at(l, k, j)).sub(at(j, l, k)));
            }
        }
    }
    let first = Tensor::new(n, vec![Co, Co, Co], first)?;
    let half = S::from_ratio(1, 2);
    let g_inv = m.g_inv.truncate(order);
    Ok(g_inv.contract_with(&first, &[(1, 0)]).scale(&half).with_variance(vec![Contra, Co, Co]))
}

/// Mixed Riemann tensor `R_{jkl}^m` (order `K − 2`) and its lowering `R_{jklm}`.
pub fn riemann<S: Scalar>(m: &MetricAtPoint<S>, gamma: &Tensor<S>) -> Result<(Tensor<S>, Tensor<S>)> {
    if gamma.order() < 1 {
        return Err(budget("riemann tensor", 2, m.order));
    }
    let n = m.dim();
    let order = gamma.order() - 1;
    // dgamma[q][m][j][l] = ∂_q Γ^m_{jl}
    let mut dgamma = Vec::with_capacity(n.pow(4));
    for q in 0..n {
        for e in gamma.data() {
            dgamma.push(e.partial(q)?);
        }
    }
    let dg = |q: usize, mm: usize, j: usize, l: usize| &dgamma[((q * n + mm) * n + j) * n + l];
    let g = gamma.truncate(order);
    let mut data = Vec::with_capacity(n.pow(4));
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                for mm in 0..n {
                    let mut e = dg(k, mm, j, l).sub(dg(j, mm, k, l));
                    for p in 0..n {
                        let a = g.get(&[mm, k, p]);
                        let b = g.get(&[p, j, l]);
                        if !a.is_zero() && !b.is_zero() {
                            e.mul_acc(a, b);
                        }
                        let c = g.get(&[mm, j, p]);
                        let d = g.get(&[p, k, l]);
                        if !c.is_zero() && !d.is_zero() {
                            e.mul_sub(c, d);
                        }
                    }
                    data.push(e);
                }
            }
        }
    }
    let mixed = Tensor::new(n, vec![Co, Co, Co, Contra], data)?;
    let lowered = mixed.raise_lower(3, &m.g.truncate(order))?;
    Ok((mixed, lowered))
}

/// `R_{ij} = −R_{kij}^k`
pub fn ricci<S: Scalar>(riemann_mixed: &Tensor<S>) -> Result<Tensor<S>> {
    Ok(riemann_mixed.trace(0, 3)?.scale(&S::from_i64(-1)))
}

/// `R = g^{ij} R_{ij}` as a rank-0 tensor.
pub fn scalar_curvature<S: Scalar>(m: &MetricAtPoint<S>, ricci: &Tensor<S>) -> Tensor<S> {
    m.g_inv.truncate(ricci.order()).contract_with(ricci, &[(0, 0), (1, 1)])
}

/// Mixed Weyl tensor `C_{jkl}^m` from the Riemann, Ricci and scalar curvature.
pub fn weyl_mixed<S: Scalar>(
    m: &MetricAtPoint<S>,
    riemann_mixed: &Tensor<S>,
    ricci: &Tensor<S>,
    scalar: &Tensor<S>,
) -> Result<Tensor<S>> {
    let n = m.dim();
    if n < 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    let order = riemann_mixed.order();
    let g = m.g.truncate(order);
    let g_inv = m.g_inv.truncate(order);
    // R_j^m = R_{jp} g^{pm}
    let ric_mixed = ricci.contract_with(&g_inv, &[(1, 0)]);
    let c1 = S::one() / S::from_i64(n as i64 - 2);
    let c2 = S::one() / S::from_i64((n as i64 - 1) * (n as i64 - 2));
    let r = scalar.data()[0].clone();
    let zero = Jet::zero(n, order);
    let delta = |a: usize, b: usize| a == b;
    let data = crate::tensor::for_each_collect(n, 4, |idx| {
        let (j, k, l, mm) = (idx[0], idx[1], idx[2], idx[3]);
        let mut t = zero.clone();
        if delta(j, mm) {
            t.add_assign(ricci.get(&[k, l]));
        }
        if delta(k, mm) {
            t.sub_assign(ricci.get(&[j, l]));
        }
        t.mul_acc(g.get(&[k, l]), ric_mixed.get(&[j, mm]));
        t.mul_sub(g.get(&[j, l]), ric_mixed.get(&[k, mm]));
        let mut s = zero.clone();
        if delta(j, mm) {
            s.add_assign(g.get(&[k, l]));
        }
        if delta(k, mm) {
            s.sub_assign(g.get(&[j, l]));
        }
        let mut e = riemann_mixed.get(idx).add(&t.scale(&c1));
        e.sub_assign(&s.mul_truncated(&r).scale(&c2));
        e
    });
    Tensor::new(n, vec![Co, Co, Co, Contra], data)
}

/// `∇_i T`, with the new covariant slot first; jet order drops by one.
pub fn covariant_derivative<S: Scalar>(t: &Tensor<S>, gamma: &Tensor<S>) -> Result<Tensor<S>> {
    if t.order() == 0 {
        return Err(budget("covariant derivative", 1, 0));
    }
    let n = t.dim();
    let rank = t.rank();
    let order = t.order() - 1;
    let g = gamma.truncate(order);
    let t_low = t.truncate(order);
    let mut data = Vec::with_capacity(n * t.data().len());
    for i in 0..n {
        for e in t.data() {
            data.push(e.partial(i)?);
        }
    }
    let mut variance = vec![Co];
    variance.extend_from_slice(t.variance());
    let mut out = Tensor::new(n, variance, data)?;
    for s in 0..rank {
        match t.variance()[s] {
            Co => {
                // Γ^p_{i a_s} T_{..p..}: slots (i, a_s, rest)
                let c = g.contract_with(&t_low, &[(0, s)]);
                out = out.sub(&c.permute(&slot_order(rank, s, 0, 1)))?;
            }
            Contra => {
                // Γ^{a_s}_{ip} T_{..p..}: slots (a_s, i, rest)
                let c = g.contract_with(&t_low, &[(2, s)]);
                out = out.add(&c.permute(&slot_order(rank, s, 1, 0)))?;
            }
        }
    }
    Ok(out)
}

/// Permutation taking a contraction result with slots `(x, y, rest…)` to
/// `(i, a_0, …, a_{rank−1})`, where `i` sits at `i_pos` and `a_s` at `s_pos`
/// of the first two.
fn slot_order(rank: usize, s: usize, i_pos: usize, s_pos: usize) -> Vec<usize> {
    let mut perm = vec![i_pos];
    let mut rest = 2;
    for k in 0..rank {
        if k == s {
            perm.push(s_pos);
        } else {
            perm.push(rest);
            rest += 1;
        }
    }
    perm
}

/// `g^{ab} ∇_a ∇_b T`
pub fn laplacian<S: Scalar>(t: &Tensor<S>, m: &MetricAtPoint<S>, gamma: &Tensor<S>) -> Result<Tensor<S>> {
    let dd = covariant_derivative(&covariant_derivative(t, gamma)?, gamma)?;
    Ok(trace_first_two(&dd, m))
}

/// `g^{ab} T_{ab…}`
pub fn trace_first_two<S: Scalar>(t: &Tensor<S>, m: &MetricAtPoint<S>) -> Tensor<S> {
    m.g_inv.truncate(t.order()).contract_with(t, &[(0, 0), (1, 1)])
}

/// Rescaled metric with the same `(1,3)` Weyl tensor.
pub fn conformal_rescale(spec: &MetricSpec, factor: &ConformalFactor) -> Result<MetricSpec> {
    match factor {
        ConformalFactor::Square(s) => rescale_by_square(spec, s),
        ConformalFactor::Exp(sigma) => rescale_by_exp(spec, sigma),
    }
}

/// Lazily evaluated curvature quantities at one point.
#[derive(Debug)]
pub struct CurvatureBundle<S: Scalar> {
    pub metric: MetricAtPoint<S>,
    gamma: OnceCell<Tensor<S>>,
    riemann: OnceCell<(Tensor<S>, Tensor<S>)>,
    ricci: OnceCell<Tensor<S>>,
    scalar: OnceCell<Tensor<S>>,
    weyl_mixed: OnceCell<Tensor<S>>,
    weyl: OnceCell<Tensor<S>>,
    d_ricci: OnceCell<Tensor<S>>,
    dd_ricci: OnceCell<Tensor<S>>,
    d_weyl: OnceCell<Tensor<S>>,
    dd_weyl: OnceCell<Tensor<S>>,
    d_riemann: OnceCell<Tensor<S>>,
    dd_riemann: OnceCell<Tensor<S>>,
    d_scalar: OnceCell<Tensor<S>>,
}

impl<S: Scalar> CurvatureBundle<S> {
    pub fn new(metric: MetricAtPoint<S>) -> Self {
        CurvatureBundle {
            metric,
            gamma: OnceCell::new(),
            riemann: OnceCell::new(),
            ricci: OnceCell::new(),
            scalar: OnceCell::new(),
            weyl_mixed: OnceCell::new(),
            weyl: OnceCell::new(),
            d_ricci: OnceCell::new(),
            dd_ricci: OnceCell::new(),
            d_weyl: OnceCell::new(),
            dd_weyl: OnceCell::new(),
            d_riemann: OnceCell::new(),
            dd_riemann: OnceCell::new(),
            d_scalar: OnceCell::new(),
        }
    }

    pub fn at(spec: &MetricSpec, point: &[BigRational], order: usize) -> Result<Self> {
        Ok(Self::new(MetricAtPoint::new(spec, point, order)?))
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn order(&self) -> usize {
        self.metric.order
    }

    fn need(&self, what: &str, required: usize) -> Result<()> {
        if self.metric.order < required {
            return Err(budget(what, required, self.metric.order));
        }
        Ok(())
    }

    pub fn g(&self) -> &Tensor<S> {
        &self.metric.g
    }

    pub fn g_inv(&self) -> &Tensor<S> {
        &self.metric.g_inv
    }

    pub fn gamma(&self) -> Result<&Tensor<S>> {
        self.need("christoffel symbols", 1)?;
        self.gamma.get_or_try_init(|| christoffel(&self.metric))
    }

    fn riemann_pair(&self) -> Result<&(Tensor<S>, Tensor<S>)> {
        self.need("riemann tensor", 2)?;
        self.riemann.get_or_try_init(|| riemann(&self.metric, self.gamma()?))
    }

    /// `R_{jkl}^m`
    pub fn riemann_mixed(&self) -> Result<&Tensor<S>> {
        Ok(&self.riemann_pair()?.0)
    }

    /// `R_{jklm}`
    pub fn riemann(&self) -> Result<&Tensor<S>> {
        Ok(&self.riemann_pair()?.1)
    }

    pub fn ricci(&self) -> Result<&Tensor<S>> {
        self.ricci.get_or_try_init(|| ricci(self.riemann_mixed()?))
    }

    pub fn scalar(&self) -> Result<&Tensor<S>> {
        self.scalar.get_or_try_init(|| Ok(scalar_curvature(&self.metric, self.ricci()?)))
    }

    /// `C_{jkl}^m`
    pub fn weyl_mixed(&self) -> Result<&Tensor<S>> {
        self.weyl_mixed
            .get_or_try_init(|| weyl_mixed(&self.metric, self.riemann_mixed()?, self.ricci()?, self.scalar()?))
    }

    /// `C_{jklm}`
    pub fn weyl(&self) -> Result<&Tensor<S>> {
        self.weyl.get_or_try_init(|| {
            let w = self.weyl_mixed()?;
            w.raise_lower(3, &self.metric.g.truncate(w.order()))
        })
    }

    pub fn nabla_ricci(&self) -> Result<&Tensor<S>> {
        self.need("∇Ricci", 3)?;
        self.d_ricci.get_or_try_init(|| covariant_derivative(self.ricci()?, self.gamma()?))
    }

    pub fn nabla_nabla_ricci(&self) -> Result<&Tensor<S>> {
        self.need("∇∇Ricci", 4)?;
        self.dd_ricci.get_or_try_init(|| covariant_derivative(self.nabla_ricci()?, self.gamma()?))
    }

    pub fn nabla_scalar(&self) -> Result<&Tensor<S>> {
        self.need("∇R", 3)?;
        self.d_scalar.get_or_try_init(|| covariant_derivative(self.scalar()?, self.gamma()?))
    }

    /// `∇_i C_{jklm}`
    pub fn nabla_weyl(&self) -> Result<&Tensor<S>> {
        self.need("∇Weyl", 3)?;
        self.d_weyl.get_or_try_init(|| covariant_derivative(self.weyl()?, self.gamma()?))
    }

    pub fn nabla_nabla_weyl(&self) -> Result<&Tensor<S>> {
        self.need("∇∇Weyl", 4)?;
        self.dd_weyl.get_or_try_init(|| covariant_derivative(self.nabla_weyl()?, self.gamma()?))
    }

    /// `∇_i R_{jklm}`
    pub fn nabla_riemann(&self) -> Result<&Tensor<S>> {
        self.need("∇Riemann", 3)?;
        self.d_riemann.get_or_try_init(|| covariant_derivative(self.riemann()?, self.gamma()?))
    }

    pub fn nabla_nabla_riemann(&self) -> Result<&Tensor<S>> {
        self.need("∇∇Riemann", 4)?;
        self.dd_riemann.get_or_try_init(|| covariant_derivative(self.nabla_riemann()?, self.gamma()?))
    }

    /// `∇_m C_{jkl}^m` with slots `(j, k, l)`.
    pub fn weyl_divergence(&self) -> Result<Tensor<S>> {
        let dw = self.nabla_weyl()?;
        // g^{im} ∇_i C_{jklm}
        Ok(self.metric.g_inv.truncate(dw.order()).contract_with(dw, &[(0, 0), (1, 4)]))
    }

    pub fn laplacian_ricci(&self) -> Result<Tensor<S>> {
        Ok(trace_first_two(self.nabla_nabla_ricci()?, &self.metric))
    }

    pub fn laplacian_weyl(&self) -> Result<Tensor<S>> {
        Ok(trace_first_two(self.nabla_nabla_weyl()?, &self.metric))
    }

    pub fn laplacian_riemann(&self) -> Result<Tensor<S>> {
        Ok(trace_first_two(self.nabla_nabla_riemann()?, &self.metric))
    }
}

#[cfg(test)]
mod tests;
