//! Exact polynomials and rational functions over the rationals.
//!
//! Everything downstream is expressed over the field of rational functions in
//! `p = q^(1/2)`, the spectral variables `z`, `w`, and a handful of named free
//! constants.

mod gcd;
mod poly;
mod rat;
mod text;

use thiserror::Error;

pub use gcd::gcd;
pub use poly::{Mono, Poly, Var, NVARS, Q};
pub use rat::Rat;
pub use text::{integer_parts, parse_poly, parse_rat, rat_from_json, rat_to_json, rat_to_latex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at {0}")]
    PoleAtPoint(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Quantum integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn qint(n: i64, d: i32) -> Rat {
    if n == 0 {
        return Rat::zero();
    }
    let sign = if n < 0 { -1 } else { 1 };
    let n = n.unsigned_abs() as i32;
    // q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}
    let mut acc = Rat::zero();
    let mut e = n - 1;
    while e >= -(n - 1) {
        acc = &acc + &Rat::q_pow(d * e);
        e -= 2;
    }
    if sign < 0 {
        -acc
    } else {
        acc
    }
}

/// Quantum factorial `[n]_{q^d}!`.
pub fn qfactorial(n: u32, d: i32) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, k| &acc * &qint(k, d))
}

/// Quantum binomial coefficient.
pub fn qbinomial(n: u32, k: u32, d: i32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    &qfactorial(n, d) / &(&qfactorial(k, d) * &qfactorial(n - k, d))
}
