//! Rational K-matrices as intertwiners `V(z) → ψ^*(V)(1/z)` of the coideal
//! subalgebra attached to a Satake diagram and parameters.

mod grading;
mod verify;

use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::{realize_twist, t_theta, theta_q_f_with, BraidError, Gauge, RealizedTwist, TwistSpec};
use crate::linalg::{full_support, intertwiner_space, LinalgError, Mat};
use crate::repcore::{Rep, RepError};
use crate::rmat::RmatError;
use crate::rootdata::{validate_params, GradingShift, QspParams, RootError, RootVec, SatakeDiagram, Validation};
use crate::scalars::{Rat, ScalarError, Var};

pub use grading::{convert_grading, coxeter_shift_factor, GradingConversion};
pub use verify::{
    check_gre, check_k_unitarity, check_standard_re, paired_unitarity, regular_at_zero, verify_gre,
    verify_standard_re, GreFactors,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KmatError {
    #[error("intertwiner space has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(Validation),
    #[error("grading shift is not τ-invariant")]
    ShiftNotInvariant,
    #[error("diagram is not restrictable: need 0 ∉ X and τ(0) = 0")]
    NotRestrictable,
    #[error("standard form needs the auxiliary gauge and τ = η₀")]
    NotStandardForm,
    #[error("twist is not involutive on this representation")]
    NotInvolutive,
    #[error("normalization condition fails: {0}")]
    AmbiguousNormalization(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Rmat(#[from] RmatError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Shifted actions of a generating set of the coideal subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QspGenerators {
    pub labels: Vec<String>,
    pub mats: Vec<Mat>,
}

impl QspGenerators {
    fn push(&mut self, label: String, m: Mat) {
        self.labels.push(label);
        self.mats.push(m);
    }

    pub fn substitute(&self, assign: &[(Var, Rat)]) -> Result<QspGenerators, ScalarError> {
        Ok(QspGenerators {
            labels: self.labels.clone(),
            mats: self
                .mats
                .iter()
                .map(|m| m.substitute(assign))
                .collect::<Result<_, _>>()?,
        })
    }
}

fn z_pow(e: i64) -> Rat {
    Rat::mono(Var::Z, e as i32)
}

/// `K_h` for `h` given by coroot coordinates (simply-laced identification).
fn cartan_element(v: &Rep, h: &RootVec) -> Mat {
    let c = v.cartan();
    Mat::diag(
        v.weights()
            .iter()
            .map(|w| {
                let e: i64 = c.nodes().map(|j| h.coords()[j] * c.d(j) * w.get(j)).sum();
                Rat::q_pow(e as i32)
            })
            .collect(),
    )
}

/// Generators `B_i` (`i ∉ X`), `E_i, F_i, K_i` (`i ∈ X`) and, for restricted
/// rank above one, `K_h` for `h = α_i + θ(α_i)`, acting on `V` through the
/// shift `s`.
pub fn qsp_generators(
    v: &Rep,
    d: &SatakeDiagram,
    params: &QspParams,
    shift: &GradingShift,
) -> Result<QspGenerators, KmatError> {
    let report = validate_params(d, params);
    if !report.valid {
        return Err(KmatError::InvalidParams(report));
    }
    if !shift.is_tau_invariant(d.tau()) {
        return Err(KmatError::ShiftNotInvariant);
    }
    let c = v.cartan();
    let t = t_theta(v, d)?;
    let mut out = QspGenerators {
        labels: Vec::new(),
        mats: Vec::new(),
    };
    for i in c.nodes() {
        let s = shift.get(i);
        let f = v.f(i).scale(&z_pow(-s));
        if d.in_x(i) {
            out.push(format!("F{i}"), f);
            out.push(format!("E{i}"), v.e(i).scale(&z_pow(s)));
            out.push(format!("K{i}"), v.k(i).clone());
            continue;
        }
        let theta_alpha = d.theta(&c.simple_root(i));
        let twisted = theta_q_f_with(v, d, i, &t)?.scale(&(&params.gamma[i] * &z_pow(-shift.exponent(&theta_alpha))));
        let mut b = &f + &twisted;
        if !params.sigma[i].is_zero() {
            b = &b + &v.k_inv(i).scale(&params.sigma[i]);
        }
        out.push(format!("B{i}"), b);
    }
    if d.restricted_rank() > 1 {
        let mut seen: Vec<Mat> = Vec::new();
        for i in c.nodes() {
            let a = c.simple_root(i);
            let h = &a + &d.theta(&a);
            let k = cartan_element(v, &h);
            if k.is_identity() || seen.contains(&k) {
                continue;
            }
            seen.push(k.clone());
            out.push(format!("K[{:?}]", h.coords()), k);
        }
    }
    Ok(out)
}

/// How the one-dimensional solution was scaled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizationRule {
    /// `K v = g v` on the ℓ-highest weight basis vector `index`.
    LHighestWeight { index: usize },
    /// Entry `(row, col)` set to 1; not canonical.
    FirstEntry { row: usize, col: usize },
    /// `K from = to` for caller-supplied vectors.
    Paired,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KNormalization {
    pub rule: NormalizationRule,
    pub canonical: bool,
    /// Factor divided out of the raw kernel vector.
    pub scalar: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMatrix {
    pub matrix: Mat,
    pub kernel_dim: usize,
    pub gauge: Gauge,
    pub shift: GradingShift,
    pub normalization: KNormalization,
    pub twist: RealizedTwist,
    /// `π_V(P)` for the group-like part `P` of the gauge.
    pub gauge_operator: Mat,
}

impl KMatrix {
    pub fn at(&self, z: &Rat) -> Result<Mat, ScalarError> {
        self.matrix.substitute(&[(Var::Z, z.clone())])
    }

    pub fn to_json(&self) -> Value {
        let rule = match &self.normalization.rule {
            NormalizationRule::LHighestWeight { index } => json!({"rule": "l-highest-weight", "index": index}),
            NormalizationRule::FirstEntry { row, col } => json!({"rule": "first-entry", "row": row, "col": col}),
            NormalizationRule::Paired => json!({"rule": "paired"}),
        };
        json!({
            "dim": self.matrix.rows(),
            "kernel_dimension": self.kernel_dim,
            "gauge": format!("{:?}", self.gauge),
            "shift": self.shift.0,
            "normalization": {
                "method": rule,
                "canonical": self.normalization.canonical,
                "scalar": self.normalization.scalar.to_string(),
            },
            "matrix": self.matrix.to_json(),
            "latex": self.matrix.to_latex(),
        })
    }
}

/// The basis vector killed by `F_0` and every finite `E_i`, if unique.
pub fn l_highest_weight_index(v: &Rep) -> Option<usize> {
    let c = v.cartan();
    let zero_col = |m: &Mat, k: usize| m.col(k).iter().all(Rat::is_zero);
    let found: Vec<usize> = (0..v.dim())
        .filter(|&k| zero_col(v.f(0), k) && c.nodes().skip(1).all(|i| zero_col(v.e(i), k)))
        .collect();
    (found.len() == 1).then(|| found[0])
}

/// The scalar `c` with `x = c y`, if any.
pub fn proportionality(x: &[Rat], y: &[Rat]) -> Option<Rat> {
    let j = y.iter().position(|e| !e.is_zero())?;
    let c = x[j].checked_div(&y[j]).ok()?;
    if c.is_zero() {
        return None;
    }
    x.iter().zip(y).all(|(a, b)| *a == &c * b).then_some(c)
}

/// Scales `k` so that `k · from = to`.
pub fn normalize_on(k: &Mat, from: &[Rat], to: &[Rat]) -> Result<(Mat, Rat), KmatError> {
    let image = crate::linalg::apply(k, from);
    let c = proportionality(&image, to)
        .ok_or_else(|| KmatError::AmbiguousNormalization("image is not proportional to the target vector".into()))?;
    Ok((k.scale(&c.inv()), c))
}

/// Raw intertwiner space for `V(z) → ψ^*(V)(1/z)`.
pub fn k_intertwiners(
    v: &Rep,
    twist: &RealizedTwist,
    d: &SatakeDiagram,
    params: &QspParams,
    shift: &GradingShift,
) -> Result<Vec<Mat>, KmatError> {
    let src = qsp_generators(v, d, params, shift)?;
    let z = Rat::var(Var::Z);
    let dst = qsp_generators(&twist.target, d, params, shift)?.substitute(&[(Var::Z, z.inv())])?;
    let pairs: Vec<(Mat, Mat)> = src.mats.into_iter().zip(dst.mats).collect();
    let n = v.dim();
    Ok(intertwiner_space(&pairs, n, n, &full_support(n, n))?)
}

/// Solves for the K-matrix of `V` and normalizes it.
///
/// The ℓ-highest weight rule `K̄ v = g v` is used whenever it applies; it is
/// flagged canonical for restricted rank one. Otherwise the first nonzero
/// entry in row-major order is set to 1.
pub fn solve_k(v: &Rep, spec: &TwistSpec, shift: &GradingShift, params: &QspParams) -> Result<KMatrix, KmatError> {
    spec.validate(params)?;
    let d = &spec.diagram;
    let twist = realize_twist(v, spec)?;
    let space = k_intertwiners(v, &twist, d, params, shift)?;
    if space.len() != 1 {
        return Err(KmatError::KernelDimension(space.len()));
    }
    let raw = space.into_iter().next().expect("one vector");
    let gauge_operator = &twist.conjugator * &t_theta(v, d)?;
    let by_vector = l_highest_weight_index(v).and_then(|k| {
        let from = Mat::identity(v.dim()).col(k);
        let to = gauge_operator.col(k);
        normalize_on(&raw, &from, &to).ok().map(|(m, c)| (m, c, k))
    });
    let (matrix, normalization) = match by_vector {
        Some((m, scalar, index)) => (
            m,
            KNormalization {
                rule: NormalizationRule::LHighestWeight { index },
                canonical: d.restricted_rank() == 1,
                scalar,
            },
        ),
        None => {
            let (row, col) = raw.first_nonzero().expect("nonzero kernel vector");
            let scalar = raw.get(row, col).clone();
            (
                raw.scale(&scalar.inv()),
                KNormalization {
                    rule: NormalizationRule::FirstEntry { row, col },
                    canonical: false,
                    scalar,
                },
            )
        }
    };
    Ok(KMatrix {
        matrix,
        kernel_dim: 1,
        gauge: spec.gauge,
        shift: shift.clone(),
        normalization,
        twist,
        gauge_operator,
    })
}
