//! Finite-dimensional type-1 representations given by generator matrices.

mod builders;
mod relations;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{LinalgError, Mat};
use crate::rootdata::{CartanDatum, GradingShift, Weight};
use crate::scalars::{Rat, ScalarError, Var};

pub use builders::{eval_sl2, trivial, vector_sl_n};
pub use relations::{verify_relations, RelationCheck, RelationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representations live over different Cartan data")]
    DatumMismatch,
    #[error("generator data violates a convention: {0}")]
    ConventionError(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Matrices of `E_i`, `F_i`, `K_i` (`i ∈ Î`) in a weight basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    cartan: CartanDatum,
    e: Vec<Mat>,
    f: Vec<Mat>,
    k: Vec<Mat>,
    weights: Vec<Weight>,
}

/// Diagonal matrix of `K_i = q_i^{λ(h_i)}`.
fn k_matrix(c: &CartanDatum, i: usize, weights: &[Weight]) -> Mat {
    Mat::diag(
        weights
            .iter()
            .map(|w| Rat::q_pow((c.d(i) * w.get(i)) as i32))
            .collect(),
    )
}

impl Rep {
    /// Assembles a representation from `E`, `F` and weight data, checking
    /// shapes, the level-zero condition and weight homogeneity.
    pub fn new(cartan: CartanDatum, e: Vec<Mat>, f: Vec<Mat>, weights: Vec<Weight>) -> Result<Rep, RepError> {
        let n = weights.len();
        let size = cartan.size();
        let bad = |m: String| Err(RepError::ConventionError(m));
        if e.len() != size || f.len() != size {
            return bad(format!("expected {size} generators of each kind"));
        }
        if e.iter().chain(&f).any(|m| m.rows() != n || m.cols() != n) {
            return bad(format!("generator matrices must be {n}x{n}"));
        }
        if weights.iter().any(|w| w.0.len() != size) {
            return bad("weight vectors have the wrong length".into());
        }
        if let Some(w) = weights.iter().find(|w| cartan.level(w) != 0) {
            return bad(format!("weight {w:?} has nonzero level"));
        }
        let k = (0..size).map(|i| k_matrix(&cartan, i, &weights)).collect();
        let rep = Rep {
            cartan,
            e,
            f,
            k,
            weights,
        };
        rep.check_homogeneous()?;
        Ok(rep)
    }

    fn check_homogeneous(&self) -> Result<(), RepError> {
        for i in self.cartan.nodes() {
            let ai = self.cartan.weight_of(&self.cartan.simple_root(i));
            for (m, sign, name) in [(&self.e[i], 1, "E"), (&self.f[i], -1, "F")] {
                for (r, c) in m.support() {
                    let expect = &self.weights[c] + &Weight(ai.0.iter().map(|x| sign * x).collect());
                    if self.weights[r] != expect {
                        return Err(RepError::ConventionError(format!(
                            "{name}_{i} entry ({r}, {c}) is not weight homogeneous"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn e(&self, i: usize) -> &Mat {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &Mat {
        &self.f[i]
    }

    pub fn k(&self, i: usize) -> &Mat {
        &self.k[i]
    }

    pub fn k_inv(&self, i: usize) -> Mat {
        self.k[i].invert().expect("K is invertible")
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Generator matrices `E_i, F_i, K_i` for all nodes, in that order.
    pub fn generators(&self) -> Vec<Mat> {
        let mut out = Vec::new();
        for i in self.cartan.nodes() {
            out.push(self.e[i].clone());
            out.push(self.f[i].clone());
            out.push(self.k[i].clone());
        }
        out
    }

    /// Partition of basis indices by weight.
    pub fn weight_decompose(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut m: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (k, w) in self.weights.iter().enumerate() {
            m.entry(w.clone()).or_default().push(k);
        }
        m
    }

    /// Replaces generator matrices without touching weights; homogeneity is
    /// re-checked.
    pub fn with_generators(&self, e: Vec<Mat>, f: Vec<Mat>) -> Result<Rep, RepError> {
        Rep::new(self.cartan.clone(), e, f, self.weights.clone())
    }

    /// Entrywise substitution in every generator.
    pub fn substitute(&self, assign: &[(Var, Rat)]) -> Result<Rep, RepError> {
        let sub = |ms: &[Mat]| ms.iter().map(|m| m.substitute(assign)).collect::<Result<Vec<_>, _>>();
        Ok(Rep {
            cartan: self.cartan.clone(),
            e: sub(&self.e)?,
            f: sub(&self.f)?,
            k: self.k.clone(),
            weights: self.weights.clone(),
        })
    }

    /// Change of basis `x ↦ P x P^{-1}` for every generator, with the weight
    /// of basis vector `i` moved to `perm[i]`.
    pub fn permute_basis(&self, perm: &[usize]) -> Rep {
        let mut weights = self.weights.clone();
        for (i, w) in self.weights.iter().enumerate() {
            weights[perm[i]] = w.clone();
        }
        Rep {
            cartan: self.cartan.clone(),
            e: self.e.iter().map(|m| m.permute(perm)).collect(),
            f: self.f.iter().map(|m| m.permute(perm)).collect(),
            k: self.k.iter().map(|m| m.permute(perm)).collect(),
            weights,
        }
    }
}

/// Tensor product with `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K^{-1} + 1⊗F`.
pub fn tensor(v: &Rep, w: &Rep) -> Result<Rep, RepError> {
    if v.cartan != w.cartan {
        return Err(RepError::DatumMismatch);
    }
    let iv = Mat::identity(v.dim());
    let iw = Mat::identity(w.dim());
    let nodes = v.cartan.nodes();
    let e = nodes
        .clone()
        .map(|i| &v.e[i].kron(&iw) + &v.k[i].kron(&w.e[i]))
        .collect();
    let f = nodes
        .map(|i| &v.f[i].kron(&w.k_inv(i)) + &iv.kron(&w.f[i]))
        .collect();
    let weights = v
        .weights
        .iter()
        .flat_map(|a| w.weights.iter().map(move |b| a + b))
        .collect();
    Rep::new(v.cartan.clone(), e, f, weights)
}

/// Automorphisms by which a representation can be pulled back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automorphism {
    /// `E_i ↦ -F_i`, `F_i ↦ -E_i`, `K_i ↦ K_i^{-1}`.
    Chevalley,
    /// Diagram automorphism `i ↦ τ(i)`.
    Diagram(Vec<usize>),
    /// `E_i ↦ β_i E_i`, `F_i ↦ β_i^{-1} F_i` with `Π β_i^{a_i} = 1`.
    Diagonal(Vec<Rat>),
}

/// `π'(x) = π(φ(x))`.
pub fn pullback(v: &Rep, auto: &Automorphism) -> Result<Rep, RepError> {
    let c = &v.cartan;
    match auto {
        Automorphism::Chevalley => Rep::new(
            c.clone(),
            v.f.iter().map(|m| -m).collect(),
            v.e.iter().map(|m| -m).collect(),
            v.weights.iter().map(|w| -w).collect(),
        ),
        Automorphism::Diagram(tau) => {
            let ok = tau.len() == c.size()
                && c.nodes().all(|i| c.nodes().all(|j| c.a(i, j) == c.a(tau[i], tau[j])));
            if !ok {
                return Err(RepError::InvalidAutomorphism(format!(
                    "{tau:?} is not a diagram automorphism"
                )));
            }
            Rep::new(
                c.clone(),
                tau.iter().map(|&t| v.e[t].clone()).collect(),
                tau.iter().map(|&t| v.f[t].clone()).collect(),
                v.weights
                    .iter()
                    .map(|w| Weight(tau.iter().map(|&t| w.get(t)).collect()))
                    .collect(),
            )
        }
        Automorphism::Diagonal(beta) => {
            if beta.len() != c.size() || beta.iter().any(Rat::is_zero) {
                return Err(RepError::InvalidAutomorphism("need one nonzero value per node".into()));
            }
            let delta = c
                .nodes()
                .fold(Rat::one(), |acc, i| &acc * &beta[i].powi(c.mark(i) as i32));
            if !delta.is_one() {
                return Err(RepError::InvalidAutomorphism(format!(
                    "beta(delta) = {delta} is not 1"
                )));
            }
            Ok(scale_generators(v, beta))
        }
    }
}

/// `E_i ↦ c_i E_i`, `F_i ↦ c_i^{-1} F_i`: an automorphism of the algebra
/// for any nonzero `c`, not necessarily inner on the loop algebra.
pub fn scale_generators(v: &Rep, c: &[Rat]) -> Rep {
    Rep {
        cartan: v.cartan.clone(),
        e: v.e.iter().zip(c).map(|(m, s)| m.scale(s)).collect(),
        f: v.f.iter().zip(c).map(|(m, s)| m.scale(&s.inv())).collect(),
        k: v.k.clone(),
        weights: v.weights.clone(),
    }
}

/// Representation with the grading shift `E_i ↦ z^{s_i} E_i`,
/// `F_i ↦ z^{-s_i} F_i` applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedRep {
    pub base: Rep,
    pub shift: GradingShift,
    rep: Rep,
}

impl ShiftedRep {
    pub fn rep(&self) -> &Rep {
        &self.rep
    }
}

pub fn shift_action(v: &Rep, s: &GradingShift) -> ShiftedRep {
    shift_action_in(v, s, Var::Z)
}

/// Grading shift in an arbitrary spectral variable.
pub fn shift_action_in(v: &Rep, s: &GradingShift, var: Var) -> ShiftedRep {
    let c: Vec<Rat> = s.0.iter().map(|&e| Rat::mono(var, e as i32)).collect();
    ShiftedRep {
        base: v.clone(),
        shift: s.clone(),
        rep: scale_generators(v, &c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_weights_add() {
        let v = eval_sl2(1, Rat::one()).unwrap();
        let vv = tensor(&v, &v).unwrap();
        let h1: Vec<i64> = vv.weights().iter().map(|w| w.get(1)).collect();
        assert_eq!(h1, vec![2, 0, 0, -2]);
        let sizes: Vec<usize> = vv.weight_decompose().values().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 1]);
    }

    #[test]
    fn trivial_is_tensor_unit() {
        let v = eval_sl2(1, Rat::var(Var::A)).unwrap();
        let t = trivial(v.cartan().clone());
        assert_eq!(tensor(&v, &t).unwrap(), v);
        assert_eq!(tensor(&t, &v).unwrap(), v);
    }

    #[test]
    fn chevalley_squares_to_identity() {
        let v = eval_sl2(2, Rat::var(Var::A)).unwrap();
        let w = pullback(&pullback(&v, &Automorphism::Chevalley).unwrap(), &Automorphism::Chevalley).unwrap();
        assert_eq!(w, v);
    }

    #[test]
    fn diagram_swap() {
        let v = eval_sl2(1, Rat::var(Var::A)).unwrap();
        let w = pullback(&v, &Automorphism::Diagram(vec![1, 0])).unwrap();
        assert_eq!(w.e(0), v.e(1));
        assert_eq!(w.e(1), v.e(0));
    }

    #[test]
    fn diagonal_requires_trivial_delta() {
        let v = eval_sl2(1, Rat::one()).unwrap();
        let bad = Automorphism::Diagonal(vec![Rat::int(2), Rat::int(3)]);
        assert!(pullback(&v, &bad).is_err());
        let good = Automorphism::Diagonal(vec![Rat::int(2), Rat::frac(1, 2)]);
        assert!(verify_relations(&pullback(&v, &good).unwrap()).passed());
    }

    #[test]
    fn zero_shift_is_identity() {
        let v = eval_sl2(1, Rat::var(Var::A)).unwrap();
        let s = shift_action(&v, &GradingShift::zero(v.cartan()));
        assert_eq!(s.rep(), &v);
        let p = shift_action(&v, &GradingShift::principal(v.cartan()));
        assert_eq!(p.rep().e(0), &v.e(0).scale(&Rat::var(Var::Z)));
    }
}
