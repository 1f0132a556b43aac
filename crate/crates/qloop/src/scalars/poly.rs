use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of named variables a polynomial may mention.
pub const NVARS: usize = 17;

const NAMES: [&str; NVARS] = [
    "p", "z", "w", "a", "b", "c", "l", "g0", "g1", "g2", "g3", "g4", "s0", "s1", "s2", "s3", "s4",
];

/// One of the fixed named variables.
///
/// `p` is the square root of the deformation parameter `q`; `z` and `w` are
/// spectral variables; `a`, `b`, `c`, `l` are free constants (evaluation
/// points, ratios); `g0..g4` and `s0..s4` hold the coideal parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub const P: Var = Var(0);
    pub const Z: Var = Var(1);
    pub const W: Var = Var(2);
    pub const A: Var = Var(3);
    pub const B: Var = Var(4);
    pub const C: Var = Var(5);
    pub const L: Var = Var(6);

    /// Parameter variable `g{i}`, `i < 5`.
    pub fn gamma(i: usize) -> Var {
        assert!(i < 5, "only five parameter slots");
        Var(7 + i as u8)
    }

    /// Parameter variable `s{i}`, `i < 5`.
    pub fn sigma(i: usize) -> Var {
        assert!(i < 5, "only five parameter slots");
        Var(12 + i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        NAMES[self.0 as usize]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        NAMES.iter().position(|n| *n == name).map(|i| Var(i as u8))
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }
}

pub type Q = BigRational;

/// Exponent vector with its cached total degree.
///
/// Ordered graded-lexicographically: total degree first, then exponents of
/// `p, z, w, ...` in turn.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    deg: i32,
    exps: [i16; NVARS],
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Mono {
    fn default() -> Self {
        Mono::one()
    }
}

impl Mono {
    pub fn one() -> Mono {
        Mono {
            deg: 0,
            exps: [0; NVARS],
        }
    }

    pub fn var(v: Var, e: i16) -> Mono {
        let mut m = Mono::one();
        m.exps[v.index()] = e;
        m.deg = e as i32;
        m
    }

    pub fn from_exps(exps: [i16; NVARS]) -> Mono {
        let deg = exps.iter().map(|&e| e as i32).sum();
        Mono { deg, exps }
    }

    pub fn exp(&self, v: Var) -> i16 {
        self.exps[v.index()]
    }

    pub fn exps(&self) -> &[i16; NVARS] {
        &self.exps
    }

    pub fn degree(&self) -> i32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e += *f;
        }
        Mono {
            deg: self.deg + o.deg,
            exps,
        }
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e -= *f;
        }
        Mono {
            deg: self.deg - o.deg,
            exps,
        }
    }

    /// True when every exponent of `o` is at most the matching one here.
    pub fn divisible_by(&self, o: &Mono) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(e, f)| e >= f)
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps.iter()) {
            *e = (*e).min(*f);
        }
        Mono::from_exps(exps)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    /// Splits into the parts with positive and with negated negative exponents.
    pub fn split_signs(&self) -> (Mono, Mono) {
        let mut pos = [0i16; NVARS];
        let mut neg = [0i16; NVARS];
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                pos[i] = e;
            } else {
                neg[i] = -e;
            }
        }
        (Mono::from_exps(pos), Mono::from_exps(neg))
    }

    pub fn without(&self, v: Var) -> Mono {
        let mut exps = self.exps;
        exps[v.index()] = 0;
        Mono::from_exps(exps)
    }

    pub fn vars_mask(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

/// Sparse multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted with the leading (largest) monomial first and no zero
/// coefficients are stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Q)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::poly_to_string(self, false))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::one(), c)],
            }
        }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Q::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Mono::var(v, 1), Q::one())
    }

    pub fn term(m: Mono, c: Q) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(mut terms: Vec<(Mono, Q)>) -> Poly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Mono, Q)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Q {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Q::zero)
    }

    /// Largest total degree of a term (0 for the zero polynomial).
    pub fn total_degree(&self) -> i32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn vars_mask(&self) -> u32 {
        self.terms.iter().fold(0, |m, (mo, _)| m | mo.vars_mask())
    }

    pub fn degree_in(&self, v: Var) -> i16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> i16 {
        self.terms.iter().map(|t| t.0.exp(v)).min().unwrap_or(0)
    }

    /// Elementwise minimum exponent over all terms (the monomial content).
    pub fn min_exponents(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::one(),
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_nonnegative())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (*m, k * c))
                .collect(),
        }
    }

    /// Multiplies by a monomial; ordering is preserved.
    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn div_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `v`, largest exponent first.
    pub fn coeffs_in(&self, v: Var) -> Vec<(i16, Poly)> {
        let mut buckets: Vec<(i16, Vec<(Mono, Q)>)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let rest = m.without(v);
            match buckets.iter_mut().find(|(k, _)| *k == e) {
                Some((_, ts)) => ts.push((rest, c.clone())),
                None => buckets.push((e, vec![(rest, c.clone())])),
            }
        }
        buckets.sort_by(|a, b| b.0.cmp(&a.0));
        buckets
            .into_iter()
            .map(|(e, ts)| (e, Poly::from_terms(ts)))
            .collect()
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v);
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) == d)
                .map(|(m, c)| (m.without(v), c.clone()))
                .collect(),
        )
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.terms[0].clone();
        if d.terms.len() == 1 {
            let inv = dc.recip();
            return Some(Poly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (m.div(&dm), c * &inv))
                    .collect(),
            });
        }
        let dinv = dc.recip();
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, Q)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !rm.divisible_by(&dm) && self.is_polynomial() && d.is_polynomial() {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = &rc * &dinv;
            // rem -= qc * qm * d
            let sub: Vec<(Mono, Q)> = d.terms.iter().map(|(m, c)| (m.mul(&qm), -(c * &qc))).collect();
            rem = merge_add(&rem.terms, &sub);
            quot.push((qm, qc));
            if quot.len() > 100_000 {
                return None;
            }
            if let Some((nm, _)) = rem.terms.first() {
                // a remainder whose leading term falls below the divisor can never vanish
                if nm.degree() < dm.degree() && self.is_polynomial() && d.is_polynomial() {
                    return None;
                }
            }
        }
        Some(Poly { terms: quot })
    }

    /// Evaluates under a map of variables to values of any ring built from `Q`.
    pub fn eval_with<T, F>(&self, mut value_of: F, zero: T) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        F: FnMut(&Mono, &Q) -> T,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            acc = acc + value_of(m, c);
        }
        acc
    }
}

fn merge_add(a: &[(Mono, Q)], b: &[(Mono, Q)]) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Poly { terms: out }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        merge_add(&self.terms, &o.terms)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let neg: Vec<(Mono, Q)> = o.terms.iter().map(|(m, c)| (*m, -c)).collect();
        merge_add(&self.terms, &neg)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return Poly {
                terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return o * self;
        }
        let mut prods = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                prods.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::from_terms(prods)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Least common multiple of the coefficient denominators.
pub(crate) fn coeff_denominator_lcm(p: &Poly) -> BigInt {
    use num_integer::Integer;
    p.terms
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

/// Gcd of the coefficient numerators (always positive).
pub(crate) fn coeff_numerator_gcd(p: &Poly) -> BigInt {
    use num_integer::Integer;
    p.terms
        .iter()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
        .abs()
}
