//! Affine Cartan data, root lattices and Weyl group combinatorics.

mod satake;
mod shift;
mod weyl;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::scalars::Q;

pub use satake::{
    validate_gsat, validate_params, QspParams, SatakeDiagram, Validation, Violation,
};
pub use shift::GradingShift;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("vectors belong to different Cartan data")]
    DatumMismatch,
    #[error("subset {0:?} is not of finite type")]
    NotFiniteType(Vec<usize>),
    #[error("invalid Cartan datum: {0}")]
    InvalidDatum(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(Validation),
    #[error("weight {0:?} has nonzero level")]
    NonzeroLevel(Vec<i64>),
}

/// Untwisted affine Cartan datum with nodes `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    label: String,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    marks: Vec<i64>,
}

impl CartanDatum {
    /// Checks the axioms of a symmetrizable affine Cartan matrix with the
    /// given symmetrizers and null-root marks.
    pub fn new(
        label: impl Into<String>,
        a: Vec<Vec<i64>>,
        d: Vec<i64>,
        marks: Vec<i64>,
    ) -> Result<CartanDatum, RootError> {
        let n = a.len();
        let bad = |m: &str| Err(RootError::InvalidDatum(m.to_string()));
        if n < 2 || a.iter().any(|r| r.len() != n) || d.len() != n || marks.len() != n {
            return bad("shapes disagree");
        }
        if marks[0] != 1 || marks.iter().any(|&m| m <= 0) || d.iter().any(|&x| x <= 0) {
            return bad("marks and symmetrizers must be positive with a_0 = 1");
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return bad("diagonal entries must be 2");
            }
            for j in 0..n {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return bad("off-diagonal sign pattern");
                }
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return bad("symmetrizer does not symmetrize");
                }
            }
            if (0..n).map(|j| marks[j] * a[i][j]).sum::<i64>() != 0 {
                return bad("marks are not in the kernel");
            }
        }
        Ok(CartanDatum {
            label: label.into(),
            a,
            d,
            marks,
        })
    }

    /// Type A of affine rank `n >= 1`.
    pub fn affine_a(n: usize) -> Result<CartanDatum, RootError> {
        if n == 0 {
            return Err(RootError::InvalidDatum("rank must be at least 1".into()));
        }
        let size = n + 1;
        let mut a = vec![vec![0; size]; size];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        if n == 1 {
            a[0][1] = -2;
            a[1][0] = -2;
        } else {
            for i in 0..size {
                let j = (i + 1) % size;
                a[i][j] = -1;
                a[j][i] = -1;
            }
        }
        CartanDatum::new(format!("A{n}"), a, vec![1; size], vec![1; size])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Finite rank `n`; nodes are `0..=n`.
    pub fn rank(&self) -> usize {
        self.a.len() - 1
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.a.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn mark(&self, i: usize) -> i64 {
        self.marks[i]
    }

    /// Coxeter number `h = Σ a_i` of the underlying finite type.
    pub fn coxeter_number(&self) -> i64 {
        self.marks.iter().sum()
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.size()];
        v[i] = 1;
        RootVec(v)
    }

    pub fn delta(&self) -> RootVec {
        RootVec(self.marks.clone())
    }

    pub fn zero_root(&self) -> RootVec {
        RootVec(vec![0; self.size()])
    }

    fn check(&self, v: &[i64]) -> Result<(), RootError> {
        if v.len() == self.size() {
            Ok(())
        } else {
            Err(RootError::DatumMismatch)
        }
    }

    /// Invariant form with `(α_i, α_j) = d_i a_ij`.
    pub fn bilinear_form(&self, mu: &RootVec, nu: &RootVec) -> Result<i64, RootError> {
        self.check(&mu.0)?;
        self.check(&nu.0)?;
        let mut s = 0;
        for i in self.nodes() {
            if mu.0[i] == 0 {
                continue;
            }
            for j in self.nodes() {
                s += mu.0[i] * nu.0[j] * self.d[i] * self.a[i][j];
            }
        }
        Ok(s)
    }

    /// The same form on rational coordinate vectors.
    pub fn form_q(&self, mu: &[Q], nu: &[Q]) -> Q {
        let mut s = Q::zero();
        for i in self.nodes() {
            if mu[i].is_zero() {
                continue;
            }
            for j in self.nodes() {
                let c = self.d[i] * self.a[i][j];
                if c != 0 && !nu[j].is_zero() {
                    s += &mu[i] * &nu[j] * Q::from_integer(c.into());
                }
            }
        }
        s
    }

    /// `⟨μ, h_i⟩ = Σ_j μ_j a_ij`.
    pub fn pairing(&self, mu: &RootVec, i: usize) -> i64 {
        self.nodes().map(|j| mu.0[j] * self.a[i][j]).sum()
    }

    /// Classical weight `(⟨μ, h_i⟩)_i` of a root vector.
    pub fn weight_of(&self, mu: &RootVec) -> Weight {
        Weight(self.nodes().map(|i| self.pairing(mu, i)).collect())
    }

    /// Level `λ(c)` up to a positive factor; the central element is
    /// proportional to `Σ d_i a_i h_i`.
    pub fn level(&self, w: &Weight) -> i64 {
        self.nodes().map(|i| self.marks[i] * self.d[i] * w.0[i]).sum()
    }

    /// A rational root-lattice lift of a level-zero weight: coordinates
    /// `c` with `Σ_j c_j a_ij = λ(h_i)` for all `i`, and `c_0 = 0`.
    pub fn lift_weight(&self, w: &Weight) -> Result<Vec<Q>, RootError> {
        if w.0.len() != self.size() {
            return Err(RootError::DatumMismatch);
        }
        if self.level(w) != 0 {
            return Err(RootError::NonzeroLevel(w.0.clone()));
        }
        // Solve the finite Cartan system on nodes 1..=n.
        let n = self.rank();
        let mut m: Vec<Vec<Q>> = (1..=n)
            .map(|i| {
                let mut row: Vec<Q> = (1..=n).map(|j| Q::from_integer(self.a[i][j].into())).collect();
                row.push(Q::from_integer(w.0[i].into()));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !m[r][c].is_zero())
                .ok_or_else(|| RootError::InvalidDatum("finite part is singular".into()))?;
            m.swap(p, c);
            let inv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=n {
                        let t = &m[c][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        let mut out = vec![Q::zero()];
        out.extend((0..n).map(|r| m[r][n].clone()));
        Ok(out)
    }
}

/// Integer coordinates in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<i64>);

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl RootVec {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x <= 0)
    }

    /// Permutes coordinates: `α_i ↦ α_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> RootVec {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[perm[i]] = x;
        }
        RootVec(v)
    }
}

impl Add for &RootVec {
    type Output = RootVec;
    fn add(self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVec {
    type Output = RootVec;
    fn sub(self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Weight data `(λ(h_i))_{i ∈ Î}` of a weight vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Weight {
    pub fn zero(size: usize) -> Weight {
        Weight(vec![0; size])
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn permute(&self, perm: &[usize]) -> Weight {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[perm[i]] = x;
        }
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let a1 = CartanDatum::affine_a(1).unwrap();
        let a0 = a1.simple_root(0);
        assert_eq!(a1.bilinear_form(&a0, &a0).unwrap(), 2);
        assert_eq!(a1.bilinear_form(&a1.delta(), &a1.delta()).unwrap(), 0);
        let a2 = CartanDatum::affine_a(2).unwrap();
        assert_eq!(
            a2.bilinear_form(&a2.simple_root(1), &a2.simple_root(2)).unwrap(),
            -1
        );
        assert_eq!(
            a1.bilinear_form(&a0, &a2.simple_root(0)),
            Err(RootError::DatumMismatch)
        );
    }

    #[test]
    fn delta_is_null() {
        for n in 1..=4 {
            let c = CartanDatum::affine_a(n).unwrap();
            for i in c.nodes() {
                assert_eq!(c.pairing(&c.delta(), i), 0);
            }
        }
    }

    #[test]
    fn rejects_bad_matrix() {
        let r = CartanDatum::new("bad", vec![vec![2, -1], vec![-2, 2]], vec![1, 1], vec![1, 1]);
        assert!(r.is_err());
    }

    #[test]
    fn lift_reproduces_weight() {
        let c = CartanDatum::affine_a(2).unwrap();
        let w = Weight(vec![-1, 1, 0]);
        let lift = c.lift_weight(&w).unwrap();
        for i in c.nodes() {
            let s: Q = c
                .nodes()
                .map(|j| &lift[j] * Q::from_integer(c.a(i, j).into()))
                .sum();
            assert_eq!(s, Q::from_integer(w.get(i).into()));
        }
    }
}
