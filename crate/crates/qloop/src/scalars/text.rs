//! Text and JSON forms of polynomials and rational functions.
//!
//! Text output clears coefficient denominators so both parts carry coprime
//! integer coefficients, and prints `q` instead of `p` whenever every `p`
//! exponent is even.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::poly::{coeff_denominator_lcm, coeff_numerator_gcd, Mono, Poly, Var, NVARS, Q};
use super::rat::Rat;
use super::ScalarError;

fn p_exponents_even(p: &Poly) -> bool {
    p.terms().iter().all(|(m, _)| m.exp(Var::P) % 2 == 0)
}

fn mono_to_string(m: &Mono, use_q: bool) -> String {
    let mut parts = Vec::new();
    // free constants first, then q, then the spectral variables
    let order = Var::all().skip(3).chain([Var::P, Var::Z, Var::W]);
    for v in order {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        let (name, e) = if v == Var::P && use_q {
            ("q", e / 2)
        } else {
            (v.name(), e)
        };
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

fn coeff_to_string(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints terms in canonical order with explicit signs.
pub(crate) fn poly_to_string(p: &Poly, use_q: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if m.is_one() {
            coeff_to_string(&a)
        } else if a.is_one() {
            mono_to_string(m, use_q)
        } else {
            format!("{}*{}", coeff_to_string(&a), mono_to_string(m, use_q))
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Numerator and denominator scaled to coprime integer coefficients.
pub fn integer_parts(r: &Rat) -> (Poly, Poly) {
    let l = coeff_denominator_lcm(r.num()).lcm(&coeff_denominator_lcm(r.den()));
    let lq = Q::from_integer(l);
    let n = r.num().scale(&lq);
    let d = r.den().scale(&lq);
    let g = coeff_numerator_gcd(&n).gcd(&coeff_numerator_gcd(&d));
    if g.is_zero() || g.is_one() {
        (n, d)
    } else {
        let gi = Q::new(BigInt::one(), g);
        (n.scale(&gi), d.scale(&gi))
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.len() > 1 || p.terms().iter().any(|(m, c)| !m.is_one() && !c.abs().is_one())
}

/// Canonical text of a rational function; `use_q` is decided automatically.
pub fn rat_to_string(r: &Rat) -> String {
    let use_q = p_exponents_even(r.num()) && p_exponents_even(r.den());
    let (n, d) = integer_parts(r);
    if d.is_one() {
        return poly_to_string(&n, use_q);
    }
    let ns = poly_to_string(&n, use_q);
    let ds = poly_to_string(&d, use_q);
    let ns = if needs_parens(&n) { format!("({ns})") } else { ns };
    let ds = if needs_parens(&d) || d.len() > 1 { format!("({ds})") } else { ds };
    format!("{ns}/{ds}")
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rat_to_string(self))
    }
}

/// LaTeX rendering of a rational function.
pub fn rat_to_latex(r: &Rat) -> String {
    let use_q = p_exponents_even(r.num()) && p_exponents_even(r.den());
    let (n, d) = integer_parts(r);
    let tex = |p: &Poly| {
        poly_to_string(p, use_q)
            .replace('*', " ")
            .split(' ')
            .map(latex_token)
            .collect::<Vec<_>>()
            .join(" ")
    };
    if d.is_one() {
        tex(&n)
    } else {
        format!("\\frac{{{}}}{{{}}}", tex(&n), tex(&d))
    }
}

fn latex_token(tok: &str) -> String {
    // z^12 -> z^{12}, g0 -> \gamma_{0}, s1 -> \sigma_{1}, l -> \lambda
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, Some(e)),
        None => (tok, None),
    };
    let base = match base {
        "l" => "\\lambda".to_string(),
        b if b.len() == 2 && b.starts_with('g') => format!("\\gamma_{{{}}}", &b[1..]),
        b if b.len() == 2 && b.starts_with('s') => format!("\\sigma_{{{}}}", &b[1..]),
        b => b.to_string(),
    };
    match exp {
        Some(e) => format!("{base}^{{{e}}}"),
        None => base,
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Rat, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Rat, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Rat, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Rat, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            if base.is_zero() && e < 0 {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(base.powi(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.signed_int()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.signed_int(),
        }
    }

    fn signed_int(&mut self) -> Result<i32, ScalarError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected integer exponent"));
        }
        let v: i32 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Rat, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Rat::from_q(Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                if name == "q" {
                    return Ok(Rat::q());
                }
                match Var::from_name(&name) {
                    Some(v) => Ok(Rat::var(v)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable `{name}`")))
                    }
                }
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses the text form (also accepts `p` for `q^(1/2)`).
pub fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let r = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

/// Parses a polynomial; fails if the expression is not polynomial.
pub fn parse_poly(s: &str) -> Result<Poly, ScalarError> {
    let r = parse_rat(s)?;
    if r.den().is_one() {
        Ok(r.num().clone())
    } else {
        Err(ScalarError::Parse(format!("`{s}` is not a polynomial")))
    }
}

fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let mut exps = Map::new();
                for v in Var::all() {
                    let e = m.exp(v);
                    if e != 0 {
                        exps.insert(v.name().to_string(), json!(e));
                    }
                }
                json!({ "coeff": coeff_to_string(c), "exps": exps })
            })
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<Poly, ScalarError> {
    let bad = |m: &str| ScalarError::Parse(format!("term map: {m}"));
    let arr = v.as_array().ok_or_else(|| bad("expected an array of terms"))?;
    let mut terms = Vec::new();
    for t in arr {
        let c = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing coeff"))?;
        let c: Q = c.parse().map_err(|_| bad("bad coefficient"))?;
        let mut exps = [0i16; NVARS];
        if let Some(map) = t.get("exps").and_then(Value::as_object) {
            for (k, e) in map {
                let var = Var::from_name(k).ok_or_else(|| bad("unknown variable"))?;
                let e = e.as_i64().ok_or_else(|| bad("exponent must be an integer"))?;
                exps[var.index()] = e as i16;
            }
        }
        terms.push((Mono::from_exps(exps), c));
    }
    Ok(Poly::from_terms(terms))
}

/// JSON term-map form `{"num": [...], "den": [...]}`.
pub fn rat_to_json(r: &Rat) -> Value {
    json!({ "num": poly_to_json(r.num()), "den": poly_to_json(r.den()) })
}

pub fn rat_from_json(v: &Value) -> Result<Rat, ScalarError> {
    let num = poly_from_json(v.get("num").unwrap_or(&Value::Null))?;
    let den = poly_from_json(v.get("den").unwrap_or(&Value::Null))?;
    Rat::normalize(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_in_q_when_even() {
        let r = parse_rat("q*(1 - l*z)/(q^2 - l*z)").unwrap();
        assert_eq!(r.to_string(), "(-l*q*z + q)/(q^2 - l*z)");
    }

    #[test]
    fn prints_in_p_when_odd() {
        let r = parse_rat("p^3 + 1").unwrap();
        assert_eq!(r.to_string(), "p^3 + 1");
    }

    #[test]
    fn clears_denominators() {
        let r = parse_rat("(z/2 + 1/3)/(z - 1)").unwrap();
        assert_eq!(r.to_string(), "(3*z + 2)/(6*z - 6)");
    }

    #[test]
    fn negative_exponent_input() {
        let r = parse_rat("q^-1 + q^(-1)*z").unwrap();
        assert_eq!(r.to_string(), "(z + 1)/q");
    }

    #[test]
    fn json_round_trip() {
        let r = parse_rat("(2*g0*q - s1*z)/(q^2*z - 3)").unwrap();
        assert_eq!(rat_from_json(&rat_to_json(&r)).unwrap(), r);
    }
}
