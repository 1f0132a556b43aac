//! Common eigenvectors with rational eigenvalues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{apply, Mat};
use crate::scalars::{Rat, Q};

/// Coefficients `c_0, …, c_n` of `det(x - m)` (Faddeev–LeVerrier).
pub fn char_poly(m: &Mat) -> Vec<Rat> {
    let n = m.rows();
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    let id = Mat::identity(n);
    let mut acc = Mat::zeros(n, n);
    for k in 1..=n {
        acc = &(m * &acc) + &id.scale(&c[n + 1 - k]);
        let t = (m * &acc).trace();
        c[n - k] = -&t.scale_q(&Q::new(BigInt::one(), BigInt::from(k)));
    }
    c
}

/// Trial division stops above this bound; larger constant terms are skipped.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial with constant coefficients (lowest degree
/// first). `None` when a coefficient is not constant or too large to factor.
pub fn rational_roots(coeffs: &[Rat]) -> Option<Vec<Q>> {
    let qs: Vec<Q> = coeffs.iter().map(Rat::constant_value).collect::<Option<_>>()?;
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| (q * Q::from(l.clone())).to_integer()).collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if roots.is_empty() {
            roots.push(Q::zero());
        }
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let eval = |x: &Q| {
        ints.iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + Q::from(c.clone()))
    };
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().expect("nonempty"))?;
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let x = Q::new(p * s, q.clone());
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn eigenvalue_candidates(b: &Mat) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    if let Some(rs) = rational_roots(&char_poly(b)) {
        out.extend(rs.into_iter().map(Rat::from_q));
    }
    for i in 0..b.rows() {
        let d = b.get(i, i);
        if !out.contains(d) {
            out.push(d.clone());
        }
    }
    out
}

/// `S ∩ ker(m)` for `S` spanned by the vectors of `basis`.
fn intersect_kernel(basis: &[Vec<Rat>], m: &Mat) -> Vec<Vec<Rat>> {
    let n = m.rows();
    let images: Vec<Vec<Rat>> = basis.iter().map(|v| apply(m, v)).collect();
    let a = Mat::from_fn(n, basis.len(), |r, c| images[c][r].clone());
    a.nullspace()
        .into_iter()
        .map(|coef| {
            (0..n)
                .map(|r| {
                    coef.iter()
                        .zip(basis)
                        .filter(|(c, _)| !c.is_zero())
                        .fold(Rat::zero(), |acc, (c, v)| &acc + &(c * &v[r]))
                })
                .collect()
        })
        .collect()
}

/// A vector that is an eigenvector of every matrix in `basis`, provided the
/// eigenvalues involved are found by [`eigenvalue_candidates`].
pub fn common_eigenvector(basis: &[Mat]) -> Option<Vec<Rat>> {
    let n = basis.first()?.rows();
    let mut spaces: Vec<Vec<Vec<Rat>>> = vec![Mat::identity(n).entries().chunks(n).map(<[Rat]>::to_vec).collect()];
    let id = Mat::identity(n);
    for b in basis {
        if b.is_diagonal() && (0..n).all(|i| b.get(i, i) == b.get(0, 0)) {
            continue;
        }
        let mut next = Vec::new();
        for mu in eigenvalue_candidates(b) {
            let shifted = b - &id.scale(&mu);
            for s in &spaces {
                let k = intersect_kernel(s, &shifted);
                if !k.is_empty() {
                    next.push(k);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        spaces = next;
    }
    spaces.into_iter().next().and_then(|s| s.into_iter().next())
}
