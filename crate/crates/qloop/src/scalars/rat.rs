use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Mono, Poly, Var, Q};
use super::ScalarError;

/// Rational function in canonical reduced form.
///
/// Numerator and denominator are genuine polynomials (no negative exponents),
/// share no common factor, and the denominator has leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl Rat {
    pub fn zero() -> Rat {
        Rat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Rat {
        Rat {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Rat {
        Rat::from_poly(Poly::int(n))
    }

    pub fn from_q(c: Q) -> Rat {
        Rat::from_poly(Poly::constant(c))
    }

    pub fn frac(n: i64, d: i64) -> Rat {
        Rat::from_q(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(v: Var) -> Rat {
        Rat::from_poly(Poly::var(v))
    }

    /// `q = p^2`.
    pub fn q() -> Rat {
        Rat::mono(Var::P, 2)
    }

    /// `q^e`, any integer `e`.
    pub fn q_pow(e: i32) -> Rat {
        Rat::mono(Var::P, 2 * e)
    }

    /// A single variable raised to an integer power.
    pub fn mono(v: Var, e: i32) -> Rat {
        Rat::from_laurent_term(Mono::var(v, e as i16), Q::one())
    }

    pub fn from_laurent_term(m: Mono, c: Q) -> Rat {
        if c.is_zero() {
            return Rat::zero();
        }
        let (pos, neg) = m.split_signs();
        Rat {
            num: Poly::term(pos, c),
            den: Poly::term(neg, Q::one()),
        }
    }

    /// Wraps a polynomial, moving negative exponents into the denominator.
    pub fn from_poly(p: Poly) -> Rat {
        if p.is_polynomial() {
            return Rat {
                num: p,
                den: Poly::one(),
            };
        }
        let m = p.min_exponents();
        let (_, neg) = m.split_signs();
        Rat {
            num: p.mul_mono(&neg),
            den: Poly::term(neg, Q::one()),
        }
    }

    /// Canonical form of `num / den`; Laurent inputs are accepted.
    pub fn normalize(num: Poly, den: Poly) -> Result<Rat, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Rat::zero());
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let num = num.div_mono(&mn);
        let den = den.div_mono(&md);
        let (mpos, mneg) = mn.div(&md).split_signs();
        let num = if mpos.is_one() { num } else { num.mul_mono(&mpos) };
        let den = if mneg.is_one() { den } else { den.mul_mono(&mneg) };
        Ok(Rat::reduce(num, den))
    }

    /// Cancels the gcd of two polynomials and makes the denominator monic.
    fn reduce(num: Poly, den: Poly) -> Rat {
        if den.is_constant() {
            let c = den.leading_coeff();
            return Rat {
                num: if c.is_one() { num } else { num.scale(&c.recip()) },
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Rat::monic_den(num, den)
    }

    fn monic_den(num: Poly, den: Poly) -> Rat {
        let c = den.leading_coeff();
        if c.is_one() {
            Rat { num, den }
        } else {
            let inv = c.recip();
            Rat {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Nonzero constant multiple of a Laurent monomial.
    pub fn as_laurent_term(&self) -> Option<(Mono, Q)> {
        if self.num.is_monomial() && self.den.is_monomial() {
            let (nm, nc) = &self.num.terms()[0];
            let (dm, _) = &self.den.terms()[0];
            Some((nm.div(dm), nc.clone()))
        } else {
            None
        }
    }

    pub fn vars_mask(&self) -> u32 {
        self.num.vars_mask() | self.den.vars_mask()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.vars_mask() & (1 << v.index()) != 0
    }

    /// Total degree of numerator plus denominator, used for pivot choice.
    pub fn weight(&self) -> i64 {
        (self.num.total_degree() + self.den.total_degree()) as i64 * 1000
            + (self.num.len() + self.den.len()) as i64
    }

    pub fn recip(&self) -> Result<Rat, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rat::monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn inv(&self) -> Rat {
        self.recip().expect("inverse of a nonzero element")
    }

    pub fn checked_div(&self, o: &Rat) -> Result<Rat, ScalarError> {
        Ok(self * &o.recip()?)
    }

    pub fn powi(&self, e: i32) -> Rat {
        if e == 0 {
            return Rat::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let n = e.unsigned_abs();
        Rat {
            num: base.num.pow(n),
            den: base.den.pow(n),
        }
    }

    pub fn scale_q(&self, c: &Q) -> Rat {
        if c.is_zero() {
            return Rat::zero();
        }
        Rat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Simultaneous substitution of variables by rational functions.
    pub fn substitute(&self, assign: &[(Var, Rat)]) -> Result<Rat, ScalarError> {
        if assign.iter().all(|(v, _)| !self.mentions(*v)) {
            return Ok(self.clone());
        }
        // Laurent-monomial images act on exponents directly.
        let monos: Option<Vec<(Var, Mono, Q)>> = assign
            .iter()
            .map(|(v, r)| r.as_laurent_term().map(|(m, c)| (*v, m, c)))
            .collect();
        match monos {
            Some(ms) => {
                let num = subst_monomial(&self.num, &ms);
                let den = subst_monomial(&self.den, &ms);
                if den.is_zero() {
                    return Err(ScalarError::PoleAtPoint(describe(assign)));
                }
                Rat::normalize(num, den)
            }
            None => {
                let n = eval_general(&self.num, assign);
                let d = eval_general(&self.den, assign);
                if d.is_zero() {
                    return Err(ScalarError::PoleAtPoint(describe(assign)));
                }
                n.checked_div(&d)
            }
        }
    }
}

/// Evaluates a polynomial with some variables replaced by rational functions.
fn eval_general(p: &Poly, assign: &[(Var, Rat)]) -> Rat {
    let mut powers: Vec<Vec<Rat>> = assign.iter().map(|_| vec![Rat::one()]).collect();
    let mut acc = Rat::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut val = Rat::one();
        for (k, (v, r)) in assign.iter().enumerate() {
            let e = m.exp(*v);
            if e == 0 {
                continue;
            }
            rest = rest.without(*v);
            let e = e as usize;
            while powers[k].len() <= e {
                let next = &powers[k][powers[k].len() - 1] * r;
                powers[k].push(next);
            }
            val = &val * &powers[k][e];
        }
        let t = Rat::from_laurent_term(rest, c.clone());
        acc = &acc + &(&val * &t);
    }
    acc
}

fn subst_monomial(p: &Poly, ms: &[(Var, Mono, Q)]) -> Poly {
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut out = *m;
        let mut coeff = c.clone();
        for (v, img, k) in ms {
            let e = m.exp(*v);
            if e == 0 {
                continue;
            }
            out = out.without(*v);
            let mut im = Mono::one();
            for _ in 0..e.unsigned_abs() {
                im = im.mul(img);
            }
            if e < 0 {
                im = Mono::one().div(&im);
            }
            out = out.mul(&im);
            let kp = num_traits::pow::pow(k.clone(), e.unsigned_abs() as usize);
            if e > 0 {
                coeff *= kp;
            } else {
                coeff /= kp;
            }
        }
        terms.push((out, coeff));
    }
    Poly::from_terms(terms)
}

fn describe(assign: &[(Var, Rat)]) -> String {
    assign
        .iter()
        .map(|(v, r)| format!("{}={}", v.name(), r))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num + &o.num;
            if n.is_zero() {
                return Rat::zero();
            }
            if self.den.is_one() {
                return Rat {
                    num: n,
                    den: Poly::one(),
                };
            }
            return Rat::reduce(n, self.den.clone());
        }
        if self.den.is_one() {
            return Rat {
                num: &(&self.num * &o.den) + &o.num,
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return Rat {
                num: &(&o.num * &self.den) + &self.num,
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = &(&self.num * &o.den) + &(&o.num * &self.den);
            if n.is_zero() {
                return Rat::zero();
            }
            return Rat::monic_den(n, &self.den * &o.den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&o.num * &b1);
        if t.is_zero() {
            return Rat::zero();
        }
        let g2 = gcd(&t, &g);
        if g2.is_one() {
            Rat::monic_den(t, &b1 * &o.den)
        } else {
            let t2 = t.div_exact(&g2).expect("gcd divides");
            let dd = o.den.div_exact(&g2).expect("gcd divides");
            Rat::monic_den(t2, &b1 * &dd)
        }
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, o: &Rat) -> Rat {
        self + &(-o)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        if self.is_zero() || o.is_zero() {
            return Rat::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Rat {
                num: &self.num * &o.num,
                den: Poly::one(),
            };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                o.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (n2, d1) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (
                o.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        Rat::monic_den(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        self.checked_div(o).expect("division by a nonzero element")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl From<Poly> for Rat {
    fn from(p: Poly) -> Rat {
        Rat::from_poly(p)
    }
}
