//! Braid group operators, the Cartan correction and twists on a given
//! representation.

mod twist;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{LinalgError, Mat};
use crate::repcore::{Rep, RepError};
use crate::rootdata::{RootError, SatakeDiagram};
use crate::scalars::{qfactorial, Rat, Var, Q};

pub use twist::{realize_twist, Gauge, RealizedTwist, TwistSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("node {0} lies in X")]
    NodeInX(usize),
    #[error("gauge is not admissible: {0}")]
    GaugeInvalid(String),
    #[error("extension of gamma disagrees on alpha_{0}")]
    InconsistentExtension(usize),
    #[error("Cartan correction exponent {0} is not an integer power of q^(1/2)")]
    FractionalExponent(String),
    #[error("twisted Cartan action is not diagonal")]
    NotDiagonal,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn divided_powers(x: &Mat, d: i32) -> Vec<Mat> {
    let n = x.rows();
    let mut out = vec![Mat::identity(n)];
    let mut p = Mat::identity(n);
    for k in 1..=n {
        p = &p * x;
        if p.is_zero() {
            break;
        }
        out.push(p.scale(&qfactorial(k as u32, d).inv()));
    }
    out
}

/// Lusztig's operator `T''_{i,1}`: on a vector of weight `m = λ(h_i)` it is
/// `Σ (-1)^b q_i^{b - ac} E_i^{(a)} F_i^{(b)} E_i^{(c)}` over `-a + b - c = m`.
pub fn lusztig_t(v: &Rep, i: usize) -> Mat {
    let n = v.dim();
    let d = v.cartan().d(i) as i32;
    let ep = divided_powers(v.e(i), d);
    let fp = divided_powers(v.f(i), d);
    let mut t = Mat::zeros(n, n);
    let mut ms: Vec<i64> = v.weights().iter().map(|w| w.get(i)).collect();
    ms.sort_unstable();
    ms.dedup();
    for m in ms {
        let proj = Mat::diag(
            v.weights()
                .iter()
                .map(|w| if w.get(i) == m { Rat::one() } else { Rat::zero() })
                .collect(),
        );
        for (c, ec) in ep.iter().enumerate() {
            let right = ec * &proj;
            if right.is_zero() {
                continue;
            }
            for (a, ea) in ep.iter().enumerate() {
                let b = m + a as i64 + c as i64;
                if b < 0 || b as usize >= fp.len() {
                    continue;
                }
                let sign = if b % 2 == 0 { 1 } else { -1 };
                let coeff = Rat::q_pow(d * (b - (a * c) as i64) as i32).scale_q(&Q::from_integer(sign.into()));
                let term = &(ea * &fp[b as usize]) * &right;
                t = &t + &term.scale(&coeff);
            }
        }
    }
    t
}

/// `T_{w_1} ⋯ T_{w_l}` along a word.
pub fn braid_word(v: &Rep, word: &[usize]) -> Mat {
    word.iter()
        .fold(Mat::identity(v.dim()), |acc, &i| &acc * &lusztig_t(v, i))
}

/// Braid operator of the longest element of `W_X`.
pub fn braid_sx(v: &Rep, x: &[usize]) -> Result<Mat, BraidError> {
    let word = v.cartan().longest_element(x)?;
    Ok(braid_word(v, &word))
}

/// Exponent of `q^{1/2}` in the Cartan correction on each basis vector:
/// `(θλ, λ) + 2(λ, ρ_X)`.
fn correction_exponents(v: &Rep, d: &SatakeDiagram) -> Result<Vec<Q>, BraidError> {
    let c = v.cartan();
    let two_rho: Vec<Q> = c
        .two_rho(d.x())?
        .coords()
        .iter()
        .map(|&x| Q::from_integer(x.into()))
        .collect();
    v.weights()
        .iter()
        .map(|w| {
            let lam = c.lift_weight(w)?;
            let th = d.theta_q(&lam);
            Ok(c.form_q(&th, &lam) + c.form_q(&lam, &two_rho))
        })
        .collect()
}

/// Diagonal Cartan correction, normalized to 1 on the first basis vector.
///
/// Only ratios of its entries enter conjugations, and those are integral
/// powers of `q^{1/2}` even when the exponents themselves are not.
pub fn cartan_correction(v: &Rep, d: &SatakeDiagram) -> Result<Mat, BraidError> {
    let ex = correction_exponents(v, d)?;
    let base = ex.first().cloned().unwrap_or_else(Q::zero);
    let entries: Result<Vec<Rat>, BraidError> = ex
        .iter()
        .map(|e| {
            let rel = e - &base;
            if !rel.is_integer() {
                return Err(BraidError::FractionalExponent(rel.to_string()));
            }
            let k = rel.to_integer().to_i32().expect("small exponent");
            Ok(Rat::mono(Var::P, k))
        })
        .collect();
    Ok(Mat::diag(entries?))
}

/// `t_θ = ξ_θ · S_X` on `V`.
pub fn t_theta(v: &Rep, d: &SatakeDiagram) -> Result<Mat, BraidError> {
    Ok(&cartan_correction(v, d)? * &braid_sx(v, d.x())?)
}

/// Diagonal operator of a homomorphism on the weight lattice given by its
/// values `ext[i]` on the fundamental weights; `gamma[j]` must equal the
/// induced value on `α_j`.
pub fn gamma_operator(v: &Rep, gamma: &[Rat], ext: &[Rat]) -> Result<Mat, BraidError> {
    let c = v.cartan();
    for j in c.nodes() {
        let val = c
            .nodes()
            .fold(Rat::one(), |acc, i| &acc * &ext[i].powi(c.a(i, j) as i32));
        if val != gamma[j] {
            return Err(BraidError::InconsistentExtension(j));
        }
    }
    Ok(Mat::diag(
        v.weights()
            .iter()
            .map(|w| {
                c.nodes()
                    .fold(Rat::one(), |acc, i| &acc * &ext[i].powi(w.get(i) as i32))
            })
            .collect(),
    ))
}

/// Action of `θ_q(F_i) = Ad(t_θ)(-E_{τ(i)})` for `i ∉ X`.
pub fn theta_q_f(v: &Rep, d: &SatakeDiagram, i: usize) -> Result<Mat, BraidError> {
    if d.in_x(i) {
        return Err(BraidError::NodeInX(i));
    }
    let m = t_theta(v, d)?;
    theta_q_f_with(v, d, i, &m)
}

pub(crate) fn theta_q_f_with(v: &Rep, d: &SatakeDiagram, i: usize, m: &Mat) -> Result<Mat, BraidError> {
    let minv = m.invert()?;
    Ok(-&(&(m * v.e(d.tau()[i])) * &minv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::{eval_sl2, trivial, vector_sl_n};
    use crate::rootdata::CartanDatum;

    fn conj(t: &Mat, x: &Mat) -> Mat {
        &(t * x) * &t.invert().unwrap()
    }

    #[test]
    fn trivial_rep_gives_identity() {
        let v = trivial(CartanDatum::affine_a(1).unwrap());
        assert!(lusztig_t(&v, 0).is_identity());
    }

    #[test]
    fn fundamental_is_antidiagonal() {
        let v = eval_sl2(1, Rat::var(Var::A)).unwrap();
        let t = lusztig_t(&v, 1);
        assert_eq!(t.support(), vec![(0, 1), (1, 0)]);
        assert_eq!(conj(&t, v.k(1)), v.k_inv(1));
    }

    #[test]
    fn cartan_reflection_property() {
        let v = vector_sl_n(3, Rat::var(Var::A)).unwrap();
        let c = v.cartan().clone();
        for i in c.nodes() {
            let t = lusztig_t(&v, i);
            for j in c.nodes() {
                let expect = v.k(j) * &v.k(i).pow(0);
                let expect = &expect * &v.k_inv(i).pow((c.a(i, j)).max(0) as u32);
                let expect = &expect * &v.k(i).pow((-c.a(i, j)).max(0) as u32);
                assert_eq!(conj(&t, v.k(j)), expect);
            }
        }
    }

    #[test]
    fn braid_relation_sl3() {
        let v = vector_sl_n(3, Rat::var(Var::A)).unwrap();
        assert_eq!(braid_word(&v, &[1, 2, 1]), braid_word(&v, &[2, 1, 2]));
        assert_eq!(braid_word(&v, &[0, 1, 0]), braid_word(&v, &[1, 0, 1]));
    }

    #[test]
    fn correction_without_x() {
        let v = eval_sl2(1, Rat::one()).unwrap();
        let d = SatakeDiagram::new(v.cartan().clone(), &[], &[0, 1]).unwrap();
        // θ = -1 on the finite part, so both weights get q^{-1/4}; ratio 1
        assert!(cartan_correction(&v, &d).unwrap().is_identity());
        let v2 = eval_sl2(2, Rat::one()).unwrap();
        let xi = cartan_correction(&v2, &d).unwrap();
        assert_eq!(xi, Mat::diag(vec![Rat::one(), Rat::q(), Rat::one()]));
    }

    #[test]
    fn theta_q_fixes_x_subalgebra() {
        let v = vector_sl_n(4, Rat::var(Var::A)).unwrap();
        let d = SatakeDiagram::new(v.cartan().clone(), &[1, 3], &[0, 1, 2, 3]).unwrap();
        let m = t_theta(&v, &d).unwrap();
        for &j in d.x() {
            // θ_q(E_j) = Ad(t_θ)(-F_{τ(j)}) = E_j
            assert_eq!(conj(&m, &-v.f(d.tau()[j])), *v.e(j));
            assert_eq!(conj(&m, &-v.e(d.tau()[j])), *v.f(j));
        }
    }

    #[test]
    fn gamma_extension() {
        let v = eval_sl2(1, Rat::one()).unwrap();
        let c = Rat::var(Var::C);
        let ext = vec![c.clone(), Rat::one()];
        let gamma = vec![c.powi(2), c.powi(-2)];
        let g = gamma_operator(&v, &gamma, &ext).unwrap();
        assert_eq!(g, Mat::diag(vec![c.inv(), c.clone()]));
        assert!(gamma_operator(&v, &[c.clone(), Rat::one()], &ext).is_err());
    }

    #[test]
    fn theta_q_f_refuses_x_nodes() {
        let v = vector_sl_n(3, Rat::one()).unwrap();
        let a2 = v.cartan().clone();
        let d = SatakeDiagram::new(a2, &[1, 2], &[0, 2, 1]).unwrap();
        assert_eq!(theta_q_f(&v, &d, 1), Err(BraidError::NodeInX(1)));
    }
}
