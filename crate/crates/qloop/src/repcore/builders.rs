//! Evaluation representations in type A.
//!
//! Conventions: `E_0` acts as `a` times the lowering operator of the finite
//! part and `F_0` as `a^{-1}` times the raising operator, with `K_0` the
//! inverse of the product of the finite `K_i`.

use crate::linalg::Mat;
use crate::rootdata::{CartanDatum, Weight};
use crate::scalars::{qint, Rat};

use super::{verify_relations, Rep, RepError};

fn checked(rep: Rep) -> Result<Rep, RepError> {
    let report = verify_relations(&rep);
    match report.first_failure() {
        None => Ok(rep),
        Some(name) => Err(RepError::ConventionError(format!("relation {name} fails"))),
    }
}

/// The one-dimensional trivial representation.
pub fn trivial(cartan: CartanDatum) -> Rep {
    let size = cartan.size();
    Rep::new(
        cartan,
        vec![Mat::zeros(1, 1); size],
        vec![Mat::zeros(1, 1); size],
        vec![Weight::zero(size)],
    )
    .expect("trivial data is consistent")
}

/// Spin `spin2 / 2` evaluation representation of the affine `sl_2` loop
/// algebra at the point `a`.
///
/// Basis `v_0, …, v_n` with `v_0` highest, `F v_k = [k+1] v_{k+1}` and
/// `E v_k = [n-k+1] v_{k-1}`.
pub fn eval_sl2(spin2: u32, a: Rat) -> Result<Rep, RepError> {
    if spin2 == 0 {
        return Err(RepError::ConventionError("spin must be positive".into()));
    }
    if a.is_zero() {
        return Err(RepError::ConventionError("evaluation point must be nonzero".into()));
    }
    let n = spin2 as usize;
    let dim = n + 1;
    let mut e = Mat::zeros(dim, dim);
    let mut f = Mat::zeros(dim, dim);
    for k in 0..n {
        f.set(k + 1, k, qint(k as i64 + 1, 1));
        e.set(k, k + 1, qint((n - k) as i64, 1));
    }
    let weights = (0..dim)
        .map(|k| {
            let h = n as i64 - 2 * k as i64;
            Weight(vec![-h, h])
        })
        .collect();
    let cartan = CartanDatum::affine_a(1).expect("rank one");
    let ainv = a.inv();
    let rep = Rep::new(
        cartan,
        vec![f.scale(&a), e.clone()],
        vec![e.scale(&ainv), f],
        weights,
    )?;
    checked(rep)
}

/// Vector evaluation representation of the affine `sl_n` loop algebra,
/// `n >= 2`, at the point `a`.
pub fn vector_sl_n(n: usize, a: Rat) -> Result<Rep, RepError> {
    if n < 2 {
        return Err(RepError::ConventionError("need n >= 2".into()));
    }
    if a.is_zero() {
        return Err(RepError::ConventionError("evaluation point must be nonzero".into()));
    }
    let cartan = CartanDatum::affine_a(n - 1).expect("positive rank");
    let mut e = vec![Mat::zeros(n, n); n];
    let mut f = vec![Mat::zeros(n, n); n];
    for i in 1..n {
        e[i] = Mat::unit(n, i - 1, i);
        f[i] = Mat::unit(n, i, i - 1);
    }
    e[0] = Mat::unit(n, n - 1, 0).scale(&a);
    f[0] = Mat::unit(n, 0, n - 1).scale(&a.inv());
    let weights = (0..n)
        .map(|k| {
            let mut w = vec![0i64; n];
            for (i, wi) in w.iter_mut().enumerate().skip(1) {
                *wi = (k == i - 1) as i64 - (k == i) as i64;
            }
            w[0] = (k == n - 1) as i64 - (k == 0) as i64;
            Weight(w)
        })
        .collect();
    checked(Rep::new(cartan, e, f, weights)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_rat, Var};

    #[test]
    fn fundamental_sl2() {
        let v = eval_sl2(1, Rat::var(Var::A)).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(v.k(1), &Mat::diag(vec![Rat::q(), Rat::q_pow(-1)]));
        assert!((v.k(0) * v.k(1)).is_identity());
    }

    #[test]
    fn spin_one_weights() {
        let v = eval_sl2(2, Rat::one()).unwrap();
        let d: Vec<Rat> = (0..3).map(|i| v.k(1).get(i, i).clone()).collect();
        assert_eq!(d, vec![parse_rat("q^2").unwrap(), Rat::one(), parse_rat("q^-2").unwrap()]);
    }

    #[test]
    fn vector_rep_reduces_to_sl2() {
        let a = Rat::var(Var::A);
        assert_eq!(vector_sl_n(2, a.clone()).unwrap(), eval_sl2(1, a).unwrap());
    }

    #[test]
    fn vector_sl3_shape() {
        let v = vector_sl_n(3, Rat::var(Var::A)).unwrap();
        assert_eq!(v.e(1), &Mat::unit(3, 0, 1));
        assert_eq!(v.e(2), &Mat::unit(3, 1, 2));
        assert_eq!(v.e(0).support(), vec![(2, 0)]);
    }
}
