//! Truncated multivariate Taylor jets.
//!
//! A [`Jet`] of order `K` in `n` variables stores the Taylor coefficients
//! `∂^β f / β!` of a scalar field about a point for every multi-index with
//! `|β| ≤ K`. Coefficients are laid out densely in graded-lexicographic order,
//! so the layout of a lower-order jet is a prefix of any higher-order layout
//! and truncation is a slice.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn from_slots(n: usize, slots: &[usize]) -> Self {
        let mut e = vec![0; n];
        for &s in slots {
            e[s] += 1;
        }
        MultiIndex(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// `β! = Π β_i!`
    pub fn factorial(&self) -> u64 {
        self.0
            .iter()
            .map(|&e| (1..=e as u64).product::<u64>())
            .product()
    }
}

/// Monomial enumeration and product tables for one chart dimension.
pub struct Layout {
    n: usize,
    order: usize,
    monomials: Vec<Vec<u8>>,
    degrees: Vec<usize>,
    /// `count_upto[d]` = number of monomials of degree ≤ d.
    count_upto: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    /// `products[i][j]` = index of `monomials[i] + monomials[j]`, for all `j`
    /// with `deg i + deg j ≤ order`.
    products: Vec<Vec<u32>>,
    /// `shifts[var][i]` = index of `monomials[i] + e_var`, for `deg i < order`.
    shifts: Vec<Vec<u32>>,
}

impl Layout {
    fn build(n: usize, order: usize) -> Layout {
        let mut monomials = Vec::new();
        let mut degrees = Vec::new();
        let mut count_upto = Vec::with_capacity(order + 1);
        for d in 0..=order {
            let mut buf = vec![0u8; n];
            push_monomials(&mut monomials, &mut buf, 0, d);
            degrees.resize(monomials.len(), d);
            count_upto.push(monomials.len());
        }
        let index: HashMap<Vec<u8>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut sum = vec![0u8; n];
        let products = monomials
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let limit = count_upto[order - degrees[i]];
                monomials[..limit]
                    .iter()
                    .map(|b| {
                        for k in 0..n {
                            sum[k] = a[k] + b[k];
                        }
                        index[&sum] as u32
                    })
                    .collect()
            })
            .collect();
        let below_top = if order == 0 { 0 } else { count_upto[order - 1] };
        let shifts = (0..n)
            .map(|var| {
                monomials[..below_top]
                    .iter()
                    .map(|m| {
                        let mut s = m.clone();
                        s[var] += 1;
                        index[&s] as u32
                    })
                    .collect()
            })
            .collect();
        Layout {
            n,
            order,
            monomials,
            degrees,
            count_upto,
            index,
            products,
            shifts,
        }
    }

    /// Shared layout for `n` variables covering at least `order`.
    pub fn get(n: usize, order: usize) -> Arc<Layout> {
        static CACHE: Lazy<Mutex<HashMap<usize, Arc<Layout>>>> =
            Lazy::new(|| Mutex::new(HashMap::new()));
        let mut cache = CACHE.lock().expect("layout cache poisoned");
        match cache.get(&n) {
            Some(l) if l.order >= order => l.clone(),
            _ => {
                let l = Arc::new(Layout::build(n, order));
                cache.insert(n, l.clone());
                l
            }
        }
    }

    pub fn len(&self, order: usize) -> usize {
        self.count_upto[order]
    }

    pub fn monomial(&self, i: usize) -> MultiIndex {
        MultiIndex(self.monomials[i].iter().map(|&e| e as u32).collect())
    }

    pub fn index_of(&self, beta: &MultiIndex) -> Option<usize> {
        let key: Vec<u8> = beta.0.iter().map(|&e| e as u8).collect();
        self.index.get(&key).copied()
    }
}

fn push_monomials(out: &mut Vec<Vec<u8>>, buf: &mut [u8], pos: usize, remaining: usize) {
    if pos + 1 == buf.len() {
        buf[pos] = remaining as u8;
        out.push(buf.to_vec());
        return;
    }
    for e in (0..=remaining).rev() {
        buf[pos] = e as u8;
        push_monomials(out, buf, pos + 1, remaining - e);
    }
    buf[pos] = 0;
}

/// Truncated Taylor expansion of a scalar field about a point.
#[derive(Clone)]
pub struct Jet<S> {
    layout: Arc<Layout>,
    order: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Jet<S> {
    pub fn zero(dim: usize, order: usize) -> Self {
        let layout = Layout::get(dim, order);
        let coeffs = vec![S::zero(); layout.len(order)];
        Jet {
            layout,
            order,
            coeffs,
        }
    }

    pub fn constant(dim: usize, order: usize, value: S) -> Self {
        let mut j = Self::zero(dim, order);
        j.coeffs[0] = value;
        j
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::constant(dim, order, S::one())
    }

    /// The coordinate function `x_var` expanded about a point where it takes
    /// the value `at`.
    pub fn variable(dim: usize, order: usize, var: usize, at: S) -> Self {
        let mut j = Self::constant(dim, order, at);
        if order > 0 {
            let idx = j.layout.index_of(&MultiIndex::unit(dim, var)).unwrap();
            j.coeffs[idx] = S::one();
        }
        j
    }

    /// Builds a jet from explicit Taylor coefficients; absent entries are zero.
    pub fn from_coeffs(
        dim: usize,
        order: usize,
        entries: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self> {
        let mut j = Self::zero(dim, order);
        for (beta, c) in entries {
            if beta.0.len() != dim {
                return Err(Error::Structural(format!(
                    "multi-index of length {} in a {dim}-variable jet",
                    beta.0.len()
                )));
            }
            if beta.degree() > order {
                continue;
            }
            let idx = j.layout.index_of(&beta).unwrap();
            j.coeffs[idx] += &c;
        }
        Ok(j)
    }

    pub fn dim(&self) -> usize {
        self.layout.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Value of the field at the expansion point.
    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    /// Taylor coefficient `∂^β f / β!`; zero when `|β| > order`.
    pub fn coeff(&self, beta: &MultiIndex) -> S {
        if beta.degree() > self.order {
            return S::zero();
        }
        match self.layout.index_of(beta) {
            Some(i) => self.coeffs[i].clone(),
            None => S::zero(),
        }
    }

    /// Raw partial derivative `∂^β f` at the point.
    pub fn derivative(&self, beta: &MultiIndex) -> S {
        self.coeff(beta) * S::from_i64(beta.factorial() as i64)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (MultiIndex, &S)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.layout.monomial(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Jet {
            layout: self.layout.clone(),
            order,
            coeffs: self.coeffs[..self.layout.len(order)].to_vec(),
        }
    }

    fn wider_layout(&self, other: &Self) -> Arc<Layout> {
        if self.layout.order >= other.layout.order {
            self.layout.clone()
        } else {
            other.layout.clone()
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&mut S, &S)) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        let order = self.order.min(other.order);
        let len = self.layout.len(order);
        let mut coeffs = self.coeffs[..len].to_vec();
        for (c, o) in coeffs.iter_mut().zip(&other.coeffs[..len]) {
            f(c, o);
        }
        Jet {
            layout: self.wider_layout(other),
            order,
            coeffs,
        }
    }

    /// Sum truncated to the lower of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |c, o| *c += o)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |c, o| *c -= o)
    }

    pub fn add_assign(&mut self, other: &Self) {
        if other.order < self.order {
            *self = self.truncate(other.order);
        }
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c += o;
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        if other.order < self.order {
            *self = self.truncate(other.order);
        }
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c -= o;
        }
    }

    pub fn neg(&self) -> Self {
        Jet {
            layout: self.layout.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Jet {
                layout: self.layout.clone(),
                order: self.order,
                coeffs: vec![S::zero(); self.coeffs.len()],
            };
        }
        Jet {
            layout: self.layout.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect(),
        }
    }

    /// Cauchy product truncated at the lower of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let mut out = Jet::zero_like(self, other);
        out.mul_acc(self, other);
        out
    }

    fn zero_like(a: &Self, b: &Self) -> Self {
        let order = a.order.min(b.order);
        let layout = a.wider_layout(b);
        Jet {
            coeffs: vec![S::zero(); layout.len(order)],
            layout,
            order,
        }
    }

    /// `self += a * b`, truncated at `self.order` (which must not exceed the
    /// operand orders).
    pub fn mul_acc(&mut self, a: &Self, b: &Self) {
        let order = self.order.min(a.order).min(b.order);
        if order < self.order {
            *self = self.truncate(order);
        }
        let layout = if a.layout.order >= order { &a.layout } else { &b.layout };
        let len = layout.len(order);
        for (i, ai) in a.coeffs[..len].iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let di = layout.degrees[i];
            let limit = layout.count_upto[order - di];
            let row = &layout.products[i];
            for (j, bj) in b.coeffs[..limit].iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                S::mul_add_to(&mut self.coeffs[row[j] as usize], ai, bj);
            }
        }
    }

    /// `self -= a * b`
    pub fn mul_sub(&mut self, a: &Self, b: &Self) {
        let neg_a = a.neg();
        self.mul_acc(&neg_a, b);
    }

    /// Reciprocal by the truncated geometric series
    /// `(1/a₀) Σ_{k=0..K} (1 − a/a₀)^k`.
    pub fn recip(&self, field: &str) -> Result<Self> {
        let a0 = self.value().clone();
        if a0.abs() <= singular_floor::<S>() {
            return Err(Error::Singular {
                field: field.to_string(),
            });
        }
        let inv0 = S::one() / a0;
        // b = 1 - a/a0 has zero constant term
        let mut b = self.scale(&inv0).neg();
        b.coeffs[0] = S::zero();
        let mut acc = Jet::one(self.dim(), self.order);
        for _ in 0..self.order {
            acc = Jet::one(self.dim(), self.order).add(&acc.mul_truncated(&b));
        }
        Ok(acc.scale(&inv0))
    }

    /// Partial derivative in variable `var`; the result has order `K − 1`.
    pub fn partial(&self, var: usize) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderBudget {
                check: "partial derivative".into(),
                required: 1,
                available: 0,
            });
        }
        let order = self.order - 1;
        let len = self.layout.len(order);
        let shifts = &self.layout.shifts[var];
        let coeffs = (0..len)
            .map(|i| {
                let src = &self.coeffs[shifts[i] as usize];
                if src.is_zero() {
                    return S::zero();
                }
                let e = self.layout.monomials[i][var] as i64 + 1;
                src.clone() * S::from_i64(e)
            })
            .collect();
        Ok(Jet {
            layout: self.layout.clone(),
            order,
            coeffs,
        })
    }

    /// `exp` of the jet, composing the scalar exponential of the constant term
    /// with the series of the remainder. Fails in exact mode unless the
    /// constant term is zero.
    pub fn exp(&self) -> Result<Self> {
        let e0 = self.value().exp().ok_or_else(|| {
            Error::Mode(
                "exponential of a nonzero rational is not representable; use float mode".into(),
            )
        })?;
        let mut rest = self.clone();
        rest.coeffs[0] = S::zero();
        // Σ rest^k / k!, Horner from the top
        let mut acc = Jet::one(self.dim(), self.order);
        for k in (1..=self.order).rev() {
            let inv_k = S::one() / S::from_i64(k as i64);
            acc = Jet::one(self.dim(), self.order).add(&acc.mul_truncated(&rest).scale(&inv_k));
        }
        Ok(acc.scale(&e0))
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Jet::one(self.dim(), self.order);
        for _ in 0..e {
            acc = acc.mul_truncated(self);
        }
        acc
    }
}

fn singular_floor<S: Scalar>() -> S {
    if S::is_exact() {
        S::zero()
    } else {
        S::from_f64(1e-300)
    }
}

impl<S: Scalar> PartialEq for Jet<S> {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.order == other.order && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m.entry(&self.layout.monomials[i], c);
            }
        }
        m.finish()
    }
}

/// Checked Cauchy product: both operands must share dimension and order.
pub fn jet_mul<S: Scalar>(a: &Jet<S>, b: &Jet<S>) -> Result<Jet<S>> {
    if a.dim() != b.dim() || a.order() != b.order() {
        return Err(Error::Structural(format!(
            "jet product of (n={}, K={}) and (n={}, K={})",
            a.dim(),
            a.order(),
            b.dim(),
            b.order()
        )));
    }
    Ok(a.mul_truncated(b))
}

pub fn jet_recip<S: Scalar>(a: &Jet<S>) -> Result<Jet<S>> {
    a.recip("jet")
}

/// Exact Taylor shift of a polynomial to `point`, truncated at `order`.
pub fn jet_from_polynomial<S: Scalar>(
    p: &Polynomial,
    point: &[BigRational],
    order: usize,
) -> Result<Jet<S>> {
    let n = p.nvars();
    if point.len() != n {
        return Err(Error::Structural(format!(
            "point of dimension {} for a polynomial in {n} variables",
            point.len()
        )));
    }
    let vars: Vec<Jet<S>> = (0..n)
        .map(|i| Jet::variable(n, order, i, S::from_rational(&point[i])))
        .collect();
    let mut powers: Vec<Vec<Jet<S>>> = vars.iter().map(|v| vec![Jet::one(n, order), v.clone()]).collect();
    let mut out = Jet::zero(n, order);
    for (exps, c) in p.terms() {
        let mut term = Jet::constant(n, order, S::from_rational(c));
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul_truncated(&vars[i]);
                powers[i].push(next);
            }
            term = term.mul_truncated(&powers[i][e as usize]);
        }
        out.add_assign(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    fn q(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    fn jet(n: usize, k: usize, entries: &[(&[u32], Q)]) -> Jet<Q> {
        Jet::from_coeffs(
            n,
            k,
            entries.iter().map(|(e, c)| (MultiIndex(e.to_vec()), c.clone())),
        )
        .unwrap()
    }

    #[test]
    fn layout_is_graded_and_prefix_stable() {
        let small = Layout::build(3, 2);
        let big = Layout::build(3, 4);
        assert_eq!(small.len(2), 10);
        assert_eq!(big.len(4), 35);
        for i in 0..small.len(2) {
            assert_eq!(small.monomials[i], big.monomials[i]);
        }
    }

    #[test]
    fn square_of_one_plus_u() {
        let a = jet(1, 2, &[(&[0], q(1, 1)), (&[1], q(1, 1))]);
        let expected = jet(1, 2, &[(&[0], q(1, 1)), (&[1], q(2, 1)), (&[2], q(1, 1))]);
        assert_eq!(jet_mul(&a, &a).unwrap(), expected);
    }

    #[test]
    fn zero_annihilates() {
        let a = jet(2, 3, &[(&[0, 0], q(3, 2)), (&[1, 2], q(-1, 1))]);
        assert!(jet_mul(&a, &Jet::zero(2, 3)).unwrap().is_zero());
    }

    #[test]
    fn two_variable_product() {
        // (1 + x + y)(1 - x) = 1 + y - x² - xy
        let a = jet(2, 2, &[(&[0, 0], q(1, 1)), (&[1, 0], q(1, 1)), (&[0, 1], q(1, 1))]);
        let b = jet(2, 2, &[(&[0, 0], q(1, 1)), (&[1, 0], q(-1, 1))]);
        let expected = jet(
            2,
            2,
            &[
                (&[0, 0], q(1, 1)),
                (&[0, 1], q(1, 1)),
                (&[2, 0], q(-1, 1)),
                (&[1, 1], q(-1, 1)),
            ],
        );
        assert_eq!(jet_mul(&a, &b).unwrap(), expected);
    }

    #[test]
    fn mismatched_jets_are_rejected() {
        let a: Jet<Q> = Jet::one(2, 2);
        assert!(matches!(jet_mul(&a, &Jet::one(2, 3)), Err(Error::Structural(_))));
        assert!(matches!(jet_mul(&a, &Jet::one(3, 2)), Err(Error::Structural(_))));
    }

    #[test]
    fn reciprocals() {
        let two = Jet::constant(1, 2, q(2, 1));
        assert_eq!(jet_recip(&two).unwrap(), Jet::constant(1, 2, q(1, 2)));

        let a = jet(1, 2, &[(&[0], q(1, 1)), (&[1], q(1, 1))]);
        let expected = jet(1, 2, &[(&[0], q(1, 1)), (&[1], q(-1, 1)), (&[2], q(1, 1))]);
        assert_eq!(jet_recip(&a).unwrap(), expected);

        let b = jet(1, 1, &[(&[0], q(2, 1)), (&[1], q(1, 1))]);
        let expected = jet(1, 1, &[(&[0], q(1, 2)), (&[1], q(-1, 4))]);
        assert_eq!(jet_recip(&b).unwrap(), expected);
    }

    #[test]
    fn reciprocal_of_vanishing_constant_names_field() {
        let a = jet(1, 2, &[(&[1], q(1, 1))]);
        match a.recip("g_uv") {
            Err(Error::Singular { field }) => assert_eq!(field, "g_uv"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn polynomial_shift() {
        let p = Polynomial::parse("x^2", &["x"]).unwrap();
        let j: Jet<Q> = jet_from_polynomial(&p, &[q(0, 1)], 2).unwrap();
        assert_eq!(j, jet(1, 2, &[(&[2], q(1, 1))]));
        let j: Jet<Q> = jet_from_polynomial(&p, &[q(3, 1)], 2).unwrap();
        assert_eq!(j, jet(1, 2, &[(&[0], q(9, 1)), (&[1], q(6, 1)), (&[2], q(1, 1))]));
    }

    #[test]
    fn polynomial_shift_two_variables() {
        // u x1² about (1, 2): (1 + du)(2 + dx)² = 4 + 4dx + dx² + 4du + 4du dx + du dx²
        let p = Polynomial::parse("u*x1^2", &["u", "x1"]).unwrap();
        let j: Jet<Q> = jet_from_polynomial(&p, &[q(1, 1), q(2, 1)], 3).unwrap();
        let expected = jet(
            2,
            3,
            &[
                (&[0, 0], q(4, 1)),
                (&[0, 1], q(4, 1)),
                (&[0, 2], q(1, 1)),
                (&[1, 0], q(4, 1)),
                (&[1, 1], q(4, 1)),
                (&[1, 2], q(1, 1)),
            ],
        );
        assert_eq!(j, expected);
    }

    #[test]
    fn partial_derivative_of_shifted_polynomial() {
        let p = Polynomial::parse("u*x1^2", &["u", "x1"]).unwrap();
        let j: Jet<Q> = jet_from_polynomial(&p, &[q(1, 1), q(2, 1)], 3).unwrap();
        // ∂_x1 (u x1²) = 2 u x1 -> 4 at (1,2); ∂²_x1 = 2u -> 2
        let dx = j.partial(1).unwrap();
        assert_eq!(dx.value(), &q(4, 1));
        assert_eq!(j.derivative(&MultiIndex(vec![0, 2])), q(2, 1));
        assert_eq!(j.derivative(&MultiIndex(vec![1, 2])), q(2, 1));
    }

    #[test]
    fn exp_in_float_mode() {
        let a: Jet<f64> = Jet::from_coeffs(1, 3, [(MultiIndex(vec![0]), 0.5), (MultiIndex(vec![1]), 1.0)]).unwrap();
        let e = a.exp().unwrap();
        let e0 = 0.5f64.exp();
        // exp(0.5 + t) = e^0.5 (1 + t + t²/2 + t³/6)
        let want = [e0, e0, e0 / 2.0, e0 / 6.0];
        for (k, w) in want.iter().enumerate() {
            assert!((e.coeff(&MultiIndex(vec![k as u32])) - w).abs() < 1e-14);
        }
        let exact: Jet<Q> = Jet::constant(1, 2, q(1, 1));
        assert!(matches!(exact.exp(), Err(Error::Mode(_))));
    }
}
