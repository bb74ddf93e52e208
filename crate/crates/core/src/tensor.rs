//! Dense multi-index tensors with jet-valued entries.
//!
//! Entries are stored row-major by slot order. Every entry of one tensor
//! shares the chart dimension and the jet order.

use std::fmt;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Co,
    Contra,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Co => Variance::Contra,
            Variance::Contra => Variance::Co,
        }
    }
}

#[derive(Clone)]
pub struct Tensor<S> {
    dim: usize,
    variance: Vec<Variance>,
    data: Vec<Jet<S>>,
}

/// Iterates over all multi-indices of `rank` slots in row-major order.
pub fn for_each_index(dim: usize, rank: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; rank];
    let total = dim.pow(rank as u32);
    for _ in 0..total {
        f(&idx);
        for s in (0..rank).rev() {
            idx[s] += 1;
            if idx[s] < dim {
                break;
            }
            idx[s] = 0;
        }
    }
}

/// Collects `f(idx)` over all indices in row-major order.
pub fn for_each_collect<T>(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> T) -> Vec<T> {
    let mut out = Vec::with_capacity(dim.pow(rank as u32));
    for_each_index(dim, rank, |idx| out.push(f(idx)));
    out
}

impl<S: Scalar> Tensor<S> {
    pub fn new(dim: usize, variance: Vec<Variance>, data: Vec<Jet<S>>) -> Result<Self> {
        let expected = dim.pow(variance.len() as u32);
        if data.len() != expected {
            return Err(Error::Structural(format!(
                "tensor of rank {} in dimension {dim} needs {expected} entries, got {}",
                variance.len(),
                data.len()
            )));
        }
        if let Some(first) = data.first() {
            if data.iter().any(|j| j.dim() != dim || j.order() != first.order()) {
                return Err(Error::Structural("tensor entries differ in dimension or order".into()));
            }
        }
        Ok(Tensor { dim, variance, data })
    }

    pub fn from_fn(dim: usize, variance: Vec<Variance>, mut f: impl FnMut(&[usize]) -> Jet<S>) -> Self {
        let mut data = Vec::with_capacity(dim.pow(variance.len() as u32));
        for_each_index(dim, variance.len(), |idx| data.push(f(idx)));
        let order = data.iter().map(|j| j.order()).min().unwrap_or(0);
        for j in data.iter_mut() {
            if j.order() > order {
                *j = j.truncate(order);
            }
        }
        Tensor { dim, variance, data }
    }

    pub fn zeros(dim: usize, variance: Vec<Variance>, order: usize) -> Self {
        let len = dim.pow(variance.len() as u32);
        Tensor {
            dim,
            variance,
            data: vec![Jet::zero(dim, order); len],
        }
    }

    pub fn scalar(value: Jet<S>) -> Self {
        Tensor {
            dim: value.dim(),
            variance: Vec::new(),
            data: vec![value],
        }
    }

    /// Covector with constant components.
    pub fn covector(dim: usize, order: usize, comps: &[S]) -> Self {
        Tensor::from_fn(dim, vec![Variance::Co], |i| Jet::constant(dim, order, comps[i[0]].clone()))
    }

    /// The mixed identity `δ_i^j`.
    pub fn kronecker(dim: usize, order: usize) -> Self {
        Tensor::from_fn(dim, vec![Variance::Co, Variance::Contra], |i| {
            if i[0] == i[1] {
                Jet::one(dim, order)
            } else {
                Jet::zero(dim, order)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn order(&self) -> usize {
        self.data.first().map_or(0, |j| j.order())
    }

    pub fn data(&self) -> &[Jet<S>] {
        &self.data
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Jet<S> {
        &self.data[self.offset(idx)]
    }

    pub fn value(&self, idx: &[usize]) -> &S {
        self.get(idx).value()
    }

    /// Constant terms of all entries, row-major.
    pub fn values(&self) -> Vec<S> {
        self.data.iter().map(|j| j.value().clone()).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map(|j| j.truncate(order))
    }

    /// Relabels slot variances without touching the data.
    pub fn with_variance(mut self, variance: Vec<Variance>) -> Self {
        assert_eq!(variance.len(), self.variance.len());
        self.variance = variance;
        self
    }

    pub fn map(&self, f: impl Fn(&Jet<S>) -> Jet<S>) -> Self {
        Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Jet<S>, &Jet<S>) -> Jet<S>) -> Result<Self> {
        if self.dim != other.dim || self.variance != other.variance {
            return Err(Error::Structural(format!(
                "tensor shapes differ: {:?} vs {:?}",
                self.variance, other.variance
            )));
        }
        Ok(Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|j| j.scale(s))
    }

    pub fn scale_jet(&self, s: &Jet<S>) -> Self {
        self.map(|j| j.mul_truncated(s))
    }

    /// Tensor product; slots of `self` come first.
    pub fn outer(&self, other: &Self) -> Self {
        let mut variance = self.variance.clone();
        variance.extend_from_slice(&other.variance);
        let order = self.order().min(other.order());
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                if a.is_zero() || b.is_zero() {
                    data.push(Jet::zero(self.dim, order));
                } else {
                    data.push(a.mul_truncated(b));
                }
            }
        }
        Tensor {
            dim: self.dim,
            variance,
            data,
        }
    }

    /// Slot permutation: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let rank = self.rank();
        assert_eq!(perm.len(), rank);
        let variance = perm.iter().map(|&p| self.variance[p]).collect();
        let mut src = vec![0usize; rank];
        let mut data = Vec::with_capacity(self.data.len());
        for_each_index(self.dim, rank, |idx| {
            for k in 0..rank {
                src[perm[k]] = idx[k];
            }
            data.push(self.data[self.offset(&src)].clone());
        });
        Tensor {
            dim: self.dim,
            variance,
            data,
        }
    }

    /// `T − T` with slots `a` and `b` exchanged.
    pub fn antisymmetrize(&self, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.swap(a, b);
        self.sub(&self.permute(&perm)).expect("same shape")
    }

    /// Generalized product-contraction: sums `self[.., p, ..] * other[.., p, ..]`
    /// over each `(slot_self, slot_other)` pair. The result carries the free
    /// slots of `self` followed by the free slots of `other`. Variances are
    /// not checked here.
    pub fn contract_with(&self, other: &Self, pairs: &[(usize, usize)]) -> Self {
        let n = self.dim;
        let free_a: Vec<usize> = (0..self.rank()).filter(|s| !pairs.iter().any(|p| p.0 == *s)).collect();
        let free_b: Vec<usize> = (0..other.rank()).filter(|s| !pairs.iter().any(|p| p.1 == *s)).collect();
        let mut variance: Vec<Variance> = free_a.iter().map(|&s| self.variance[s]).collect();
        variance.extend(free_b.iter().map(|&s| other.variance[s]));
        let order = self.order().min(other.order());
        let zero_a: Vec<bool> = self.data.iter().map(|j| j.is_zero()).collect();
        let zero_b: Vec<bool> = other.data.iter().map(|j| j.is_zero()).collect();
        let mut ia = vec![0usize; self.rank()];
        let mut ib = vec![0usize; other.rank()];
        let mut data = Vec::with_capacity(n.pow(variance.len() as u32));
        for_each_index(n, variance.len(), |out| {
            for (k, &s) in free_a.iter().enumerate() {
                ia[s] = out[k];
            }
            for (k, &s) in free_b.iter().enumerate() {
                ib[s] = out[free_a.len() + k];
            }
            let mut acc = Jet::zero(n, order);
            for_each_index(n, pairs.len(), |c| {
                for (k, &(sa, sb)) in pairs.iter().enumerate() {
                    ia[sa] = c[k];
                    ib[sb] = c[k];
                }
                let oa = self.offset(&ia);
                let ob = other.offset(&ib);
                if !zero_a[oa] && !zero_b[ob] {
                    acc.mul_acc(&self.data[oa], &other.data[ob]);
                }
            });
            data.push(acc);
        });
        Tensor { dim: n, variance, data }
    }

    /// Self-contraction of two slots of opposite variance.
    pub fn trace(&self, a: usize, b: usize) -> Result<Self> {
        let rank = self.rank();
        if a >= rank || b >= rank || a == b {
            return Err(Error::Structural(format!("invalid trace slots ({a}, {b}) for rank {rank}")));
        }
        if self.variance[a] == self.variance[b] {
            return Err(Error::Structural(format!(
                "trace over slots ({a}, {b}) of equal variance needs a metric"
            )));
        }
        let free: Vec<usize> = (0..rank).filter(|&s| s != a && s != b).collect();
        let variance = free.iter().map(|&s| self.variance[s]).collect();
        let order = self.order();
        let mut idx = vec![0usize; rank];
        let mut data = Vec::new();
        for_each_index(self.dim, free.len(), |out| {
            for (k, &s) in free.iter().enumerate() {
                idx[s] = out[k];
            }
            let mut acc = Jet::zero(self.dim, order);
            for p in 0..self.dim {
                idx[a] = p;
                idx[b] = p;
                acc.add_assign(&self.data[self.offset(&idx)]);
            }
            data.push(acc);
        });
        Ok(Tensor {
            dim: self.dim,
            variance,
            data,
        })
    }

    /// Contracts slots `a` and `b`. Slots of equal variance need the inverse
    /// metric (both covariant) or the metric (both contravariant).
    pub fn contract(&self, a: usize, b: usize, metric_or_inverse: Option<&Tensor<S>>) -> Result<Self> {
        let rank = self.rank();
        if a >= rank || b >= rank || a == b {
            return Err(Error::Structural(format!("invalid contraction slots ({a}, {b}) for rank {rank}")));
        }
        if self.variance[a] != self.variance[b] {
            return self.trace(a, b);
        }
        let m = metric_or_inverse.ok_or_else(|| {
            Error::Structural(format!("contraction of slots ({a}, {b}) of equal variance needs a metric"))
        })?;
        self.raise_lower(b, m)?.trace(a, b)
    }

    /// Flips the variance of `slot` using a metric (to lower) or inverse
    /// metric (to raise).
    pub fn raise_lower(&self, slot: usize, metric_or_inverse: &Tensor<S>) -> Result<Self> {
        if slot >= self.rank() {
            return Err(Error::Structural(format!("slot {slot} out of range for rank {}", self.rank())));
        }
        let want = self.variance[slot].flip();
        if metric_or_inverse.rank() != 2 || metric_or_inverse.variance.iter().any(|&v| v != want) {
            return Err(Error::Structural(format!(
                "raising/lowering slot {slot} needs a rank-2 {:?} tensor",
                want
            )));
        }
        // m^{ab} t_{..b..}: result slots (a, rest of t without slot)
        let c = metric_or_inverse.contract_with(self, &[(1, slot)]);
        // move slot 0 back to position `slot`
        let rank = self.rank();
        let mut perm = Vec::with_capacity(rank);
        for k in 0..rank {
            perm.push(match k.cmp(&slot) {
                std::cmp::Ordering::Less => k + 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => k,
            });
        }
        Ok(c.permute(&perm))
    }

    /// `t + t∘σ + t∘σ²` for the 3-cycle `σ` on the given slots, i.e. the
    /// pattern `T_{ijk..} + T_{jki..} + T_{kij..}`.
    pub fn cyclic_sum(&self, slots: (usize, usize, usize)) -> Result<Self> {
        let (i, j, k) = slots;
        let rank = self.rank();
        if i == j || j == k || i == k || i >= rank || j >= rank || k >= rank {
            return Err(Error::Structural(format!("cyclic sum needs three distinct slots, got {slots:?}")));
        }
        if self.variance[i] != self.variance[j] || self.variance[j] != self.variance[k] {
            return Err(Error::Structural("cyclic sum over slots of different variance".into()));
        }
        let mut p1: Vec<usize> = (0..rank).collect();
        p1[i] = j;
        p1[j] = k;
        p1[k] = i;
        let mut p2: Vec<usize> = (0..rank).collect();
        p2[i] = k;
        p2[j] = i;
        p2[k] = j;
        let a = self.permute(&p1);
        let b = self.permute(&p2);
        self.add(&a)?.add(&b)
    }

    /// Maximum absolute value of the entry values at the point.
    pub fn sup_norm(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |m, j| m.max_abs(j.value()))
    }

    /// Position of the entry with the largest absolute value (first on ties).
    pub fn argmax_abs(&self) -> Option<Vec<usize>> {
        let mut best: Option<(usize, S)> = None;
        for (o, j) in self.data.iter().enumerate() {
            let a = j.value().abs();
            if best.as_ref().is_none_or(|(_, b)| a > *b) {
                best = Some((o, a));
            }
        }
        best.map(|(o, _)| {
            let mut idx = vec![0; self.rank()];
            let mut rem = o;
            for s in (0..self.rank()).rev() {
                idx[s] = rem % self.dim;
                rem /= self.dim;
            }
            idx
        })
    }

    /// Euclidean component inner product of the entry jets.
    pub fn dot_jets(&self, other: &Self) -> Jet<S> {
        let order = self.order().min(other.order());
        let mut acc = Jet::zero(self.dim, order);
        for (a, b) in self.data.iter().zip(&other.data) {
            if !a.is_zero() && !b.is_zero() {
                acc.mul_acc(a, b);
            }
        }
        acc
    }

    /// Sub-tensor with the first slot fixed to `i`.
    pub fn slice_first(&self, i: usize) -> Self {
        let stride = self.dim.pow(self.rank() as u32 - 1);
        Tensor {
            dim: self.dim,
            variance: self.variance[1..].to_vec(),
            data: self.data[i * stride..(i + 1) * stride].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|j| j.value().is_zero())
    }
}

impl<S: Scalar> PartialEq for Tensor<S> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.variance == other.variance && self.data == other.data
    }
}

impl<S: Scalar> fmt::Debug for Tensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor(dim={}, variance={:?}, values=[", self.dim, self.variance)?;
        for (k, v) in self.values().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "])")
    }
}

/// `sup(t) / max(sup(ref), floor)`; in exact mode a vanishing reference
/// leaves the absolute value.
pub fn relative<S: Scalar>(value: &S, reference: &S) -> S {
    if S::is_exact() {
        if reference.is_zero() {
            value.abs()
        } else {
            value.abs() / reference.abs()
        }
    } else {
        let floor = S::from_f64(1e-300);
        let r = if reference.abs() > floor { reference.abs() } else { floor };
        value.abs() / r
    }
}

pub fn residual<S: Scalar>(t: &Tensor<S>, reference: &S) -> S {
    relative(&t.sup_norm(), reference)
}
