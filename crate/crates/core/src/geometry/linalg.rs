//! Small dense linear algebra over a [`Scalar`] field.

use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

/// Numbers of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn is_lorentzian(&self) -> bool {
        self.zero == 0 && self.negative == 1 && self.positive >= 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.zero > 0
    }
}

fn zero_floor<S: Scalar>(a: &Matrix<S>) -> S {
    if S::is_exact() {
        return S::zero();
    }
    let m = a.iter().flatten().fold(S::zero(), |m, x| m.max_abs(x));
    m * S::from_f64(1e-12)
}

fn negligible<S: Scalar>(x: &S, floor: &S) -> bool {
    if S::is_exact() {
        x.is_zero()
    } else {
        x.abs() <= *floor
    }
}

/// Gauss-Jordan inverse with max-abs pivoting; `None` for a singular matrix.
pub fn inverse<S: Scalar>(a: &Matrix<S>) -> Option<Matrix<S>> {
    let n = a.len();
    let floor = zero_floor(a);
    let mut m: Matrix<S> = a.clone();
    let mut inv: Matrix<S> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| {
            m[r][col].abs().partial_cmp(&m[s][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if negligible(&m[piv][col], &floor) {
            return None;
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = S::one() / m[col][col].clone();
        for j in 0..n {
            m[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let dm = f.clone() * &m[col][j];
                m[r][j] -= &dm;
                let di = f.clone() * &inv[col][j];
                inv[r][j] -= &di;
            }
        }
    }
    Some(inv)
}

pub fn determinant<S: Scalar>(a: &Matrix<S>) -> S {
    let n = a.len();
    let mut m = a.clone();
    let mut det = S::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return S::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= &m[col][col];
        let p = S::one() / m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * &p;
            for j in col..n {
                let d = f.clone() * &m[col][j];
                m[r][j] -= &d;
            }
        }
    }
    det
}

/// Inertia by symmetric congruence elimination. When the remaining block has
/// a zero diagonal but a nonzero off-diagonal entry `a_ij`, row and column `j`
/// are added to row and column `i`, producing the pivot `2 a_ij`.
pub fn inertia<S: Scalar>(a: &Matrix<S>) -> Inertia {
    let n = a.len();
    let floor = zero_floor(a);
    let mut m = a.clone();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().max_by(|&r, &s| {
            m[r][r].abs().partial_cmp(&m[s][s].abs()).unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut p = pivot.unwrap();
        if negligible(&m[p][p], &floor) {
            let off = active
                .iter()
                .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                .filter(|(i, j)| i != j)
                .find(|&(i, j)| !negligible(&m[i][j], &floor));
            let Some((i, j)) = off else {
                out.zero += active.len();
                break;
            };
            for k in 0..n {
                let v = m[j][k].clone();
                m[i][k] += &v;
            }
            for k in 0..n {
                let v = m[k][j].clone();
                m[k][i] += &v;
            }
            p = i;
        }
        let d = m[p][p].clone();
        if d > S::zero() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        active.retain(|&r| r != p);
        let inv = S::one() / d;
        for &r in &active {
            if m[r][p].is_zero() {
                continue;
            }
            let f = m[r][p].clone() * &inv;
            for &c in &active {
                let dv = f.clone() * &m[p][c];
                m[r][c] -= &dv;
            }
        }
        for &r in &active {
            m[r][p] = S::zero();
            m[p][r] = S::zero();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(p: i64) -> BigRational {
        BigRational::from_integer(p.into())
    }

    fn null_minkowski(n: usize) -> Matrix<BigRational> {
        let mut m = vec![vec![q(0); n]; n];
        m[0][n - 1] = q(1);
        m[n - 1][0] = q(1);
        for i in 1..n - 1 {
            m[i][i] = q(1);
        }
        m
    }

    #[test]
    fn inverse_of_null_minkowski_is_itself() {
        let m = null_minkowski(5);
        assert_eq!(inverse(&m).unwrap(), m);
        assert_eq!(determinant(&m), q(-1));
    }

    #[test]
    fn inertia_of_null_frame() {
        let m = null_minkowski(4);
        let i = inertia(&m);
        assert_eq!((i.positive, i.negative, i.zero), (3, 1, 0));
        assert!(i.is_lorentzian());
        let mut d = m.clone();
        d[1][1] = q(0);
        assert_eq!(inertia(&d).zero, 1);
        assert!(inverse(&d).is_none());
        assert_eq!(determinant(&d), q(0));
    }

    #[test]
    fn float_inverse_round_trip() {
        let a = vec![vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, -4.0]];
        let inv = inverse(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| a[i][k] * inv[k][j]).sum();
                assert!((s - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        let i = inertia(&a);
        assert_eq!((i.positive, i.negative), (2, 1));
    }
}
