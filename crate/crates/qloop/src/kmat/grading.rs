//! Passage from the principal grading shift to the τ-minimal one.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::linalg::Mat;
use crate::repcore::Rep;
use crate::rootdata::{GradingShift, QspParams, SatakeDiagram};
use crate::scalars::{Rat, Var, Q};

use super::{qsp_generators, KMatrix, KmatError};

/// `h_τ = h / Σ_{i ∈ {0, τ(0)}} mark_i`, so that `z^{h_τ}` under the
/// τ-minimal shift matches the principal shift on `δ`.
pub fn coxeter_shift_factor(d: &SatakeDiagram) -> Q {
    let c = d.cartan();
    let t0 = d.tau()[0];
    let orbit_marks = if t0 == 0 { c.mark(0) } else { c.mark(0) + c.mark(t0) };
    Q::new(c.coxeter_number().into(), orbit_marks.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingConversion {
    /// `M_{ψ^*V}(z^{-m})^{-1} K^{pr}(z^m) M_V(z^m)`.
    pub matrix: Mat,
    /// Root order `m` introduced to clear fractional exponents.
    pub root_order: i64,
    pub h_tau: Q,
    /// The τ-minimal K-matrix is evaluated at `z^{exponent}`.
    pub exponent: i64,
    /// Whether the result satisfies the τ-minimal intertwining conditions.
    pub intertwines: bool,
}

/// Exponents `f(λ)` of the diagonal operator `M`, with `f(α_i) = 1 - h_τ s_τ(α_i)`.
fn m_exponents(v: &Rep, d: &SatakeDiagram, h_tau: &Q) -> Result<Vec<Q>, KmatError> {
    let c = v.cartan();
    let s = GradingShift::tau_minimal(d);
    let f: Vec<Q> = c
        .nodes()
        .map(|i| Q::one() - h_tau * Q::from_integer(s.get(i).into()))
        .collect();
    v.weights()
        .iter()
        .map(|w| {
            let lift = c.lift_weight(w)?;
            Ok(lift.iter().zip(&f).map(|(a, b)| a * b).sum())
        })
        .collect()
}

fn diag_powers(exps: &[Q], m: i64, sign: i64) -> Mat {
    Mat::diag(
        exps.iter()
            .map(|e| {
                let k = (e * Q::from_integer((m * sign).into())).to_integer();
                Rat::mono(Var::Z, k.to_i32().expect("small exponent"))
            })
            .collect(),
    )
}

pub fn convert_grading(
    kpr: &KMatrix,
    v: &Rep,
    d: &SatakeDiagram,
    params: &QspParams,
) -> Result<GradingConversion, KmatError> {
    let h_tau = coxeter_shift_factor(d);
    let target = &kpr.twist.target;
    let fv = m_exponents(v, d, &h_tau)?;
    let fp = m_exponents(target, d, &h_tau)?;
    let m = fv
        .iter()
        .chain(&fp)
        .chain(std::iter::once(&h_tau))
        .fold(1i64, |acc, q| acc.lcm(&q.denom().to_i64().expect("small denominator")));
    let zm = Rat::mono(Var::Z, m as i32);
    let k = kpr.at(&zm)?;
    let matrix = &(&diag_powers(&fp, m, 1) * &k) * &diag_powers(&fv, m, 1);
    let exponent = (&h_tau * Q::from_integer(m.into())).to_integer().to_i64().expect("small");
    let s = GradingShift::tau_minimal(d);
    let y = Rat::mono(Var::Z, exponent as i32);
    let src = qsp_generators(v, d, params, &s)?.substitute(&[(Var::Z, y.clone())])?;
    let dst = qsp_generators(target, d, params, &s)?.substitute(&[(Var::Z, y.inv())])?;
    let intertwines = src
        .mats
        .iter()
        .zip(&dst.mats)
        .all(|(a, b)| &matrix * a == b * &matrix);
    Ok(GradingConversion {
        matrix,
        root_order: m,
        h_tau,
        exponent,
        intertwines,
    })
}
