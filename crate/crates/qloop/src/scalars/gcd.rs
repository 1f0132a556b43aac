//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive-part remainder sequences in one main variable with
//! coefficients in the remaining ones. A cheap modular degree test proves
//! coprimality up front, which is by far the most common outcome.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::{Mono, Poly, Var, NVARS};

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
///
/// Inputs are expected to carry non-negative exponents.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let m = ma.meet(&mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_mono(&ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_mono(&mb) };
    let g = gcd_free(&a1, &b1);
    if m.is_one() {
        g
    } else {
        g.mul_mono(&m)
    }
}

/// Gcd of polynomials without monomial content.
fn gcd_free(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let am = a.monic();
    let bm = b.monic();
    if am == bm {
        return am;
    }
    let va = a.vars_mask();
    let vb = b.vars_mask();
    let common = va & vb;
    if common == 0 {
        return Poly::one();
    }
    // a variable present on one side only cannot divide the gcd
    if let Some(v) = first_var(va & !vb) {
        return gcd_with_content(a, v, b);
    }
    if let Some(v) = first_var(vb & !va) {
        return gcd_with_content(b, v, a);
    }
    if coprime_certificate(&am, &bm, common) {
        return Poly::one();
    }
    let x = main_var(a, b, common);
    let ca = content(a, x);
    let cb = content(b, x);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs_gcd(&pa, &pb, x);
    (&c * &g).monic()
}

fn first_var(mask: u32) -> Option<Var> {
    if mask == 0 {
        None
    } else {
        Var::all().nth(mask.trailing_zeros() as usize)
    }
}

fn main_var(a: &Poly, b: &Poly, common: u32) -> Var {
    Var::all()
        .filter(|v| common & (1 << v.index()) != 0)
        .min_by_key(|v| (a.degree_in(*v).max(b.degree_in(*v)), v.index()))
        .expect("common variable exists")
}

/// gcd(content of `a` in `v`, `b`).
fn gcd_with_content(a: &Poly, v: Var, b: &Poly) -> Poly {
    let mut g = b.monic();
    for (_, c) in a.coeffs_in(v) {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

/// Content of `a` viewed as a polynomial in `v` (monic).
pub(crate) fn content(a: &Poly, v: Var) -> Poly {
    let cs = a.coeffs_in(v);
    let mut it = cs.into_iter();
    let mut g = match it.next() {
        Some((_, c)) => c.monic(),
        None => return Poly::zero(),
    };
    for (_, c) in it {
        if g.is_constant() {
            return Poly::one();
        }
        g = gcd(&g, &c);
    }
    g
}

fn primitive_part(a: &Poly, v: Var) -> Poly {
    let c = content(a, v);
    if c.is_constant() {
        a.monic()
    } else {
        a.div_exact(&c).expect("content divides").monic()
    }
}

/// Pseudo-remainder of `f` by `g` in `v`, without the final leading power.
fn sparse_prem(f: &Poly, g: &Poly, v: Var) -> Poly {
    let n = g.degree_in(v);
    let lg = g.lc_in(v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= n {
        let d = r.degree_in(v) - n;
        let lr = r.lc_in(v);
        let shift = Mono::var(v, d);
        let t = (&lr * g).mul_mono(&shift);
        r = &(&lg * &r) - &t;
    }
    r
}

/// Gcd of two polynomials primitive in `v`.
fn prs_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        let r = sparse_prem(&f, &g, v);
        if r.is_zero() {
            return g.monic();
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        f = g;
        g = primitive_part(&r, v);
    }
}

const MODULUS: u64 = (1u64 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a, MODULUS - 2)
}

fn bigint_mod(n: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    n.mod_floor(&m).to_u64().expect("reduced residue fits")
}

/// Evaluation point assigned to each variable for the degree test.
fn eval_point(i: usize) -> u64 {
    // splitmix64 of the index, reduced
    let mut x = (i as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x % MODULUS
}

/// Dense image of `a` in F_P[v] after evaluating every other variable.
fn univariate_image(a: &Poly, v: Var, points: &[u64; NVARS]) -> Option<Vec<u64>> {
    let deg = a.degree_in(v) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in a.terms() {
        let den = bigint_mod(c.denom());
        if den == 0 {
            return None;
        }
        let mut val = mulmod(bigint_mod(c.numer()), invmod(den));
        for (i, &e) in m.exps().iter().enumerate() {
            if i != v.index() && e != 0 {
                val = mulmod(val, powmod(points[i], e as u64));
            }
        }
        let k = m.exp(v) as usize;
        out[k] = (out[k] + val) % MODULUS;
    }
    if out[deg] == 0 {
        return None;
    }
    Some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0] == 0) {
        // a mod b
        let lb_inv = invmod(*b.last().unwrap());
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let shift = a.len() - b.len();
            let f = mulmod(*a.last().unwrap(), lb_inv);
            for (k, &bk) in b.iter().enumerate() {
                let t = mulmod(f, bk);
                a[k + shift] = (a[k + shift] + MODULUS - t) % MODULUS;
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                a.push(0);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// Proves `gcd(a, b) = 1` by showing that, in each shared variable, the
/// images under a degree-preserving evaluation modulo a prime are coprime.
/// Returns false when the test is inconclusive.
fn coprime_certificate(a: &Poly, b: &Poly, common: u32) -> bool {
    let mut points = [0u64; NVARS];
    for (i, p) in points.iter_mut().enumerate() {
        *p = eval_point(i);
    }
    for v in Var::all() {
        if common & (1 << v.index()) == 0 {
            continue;
        }
        let (ia, ib) = match (univariate_image(a, v, &points), univariate_image(b, v, &points)) {
            (Some(x), Some(y)) => (x, y),
            _ => return false,
        };
        if univariate_gcd_degree(ia, ib) != 0 {
            return false;
        }
    }
    true
}
