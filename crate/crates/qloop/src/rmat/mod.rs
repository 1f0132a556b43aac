//! Rational R-matrices as intertwiners of shifted tensor products.
//!
//! `R(z)` on `V ⊗ W` satisfies `R(z) Δ_z(x) = Δ_z^op(x) R(z)`, where `Δ_z`
//! shifts the second factor by `E_0 ↦ z E_0`, and is normalized to fix the
//! tensor product of highest weight vectors.

use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{intertwiner_space, LinalgError, Mat};
use crate::report::Check;
use crate::repcore::{shift_action_in, Rep, RepError};
use crate::rootdata::GradingShift;
use crate::scalars::{Rat, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RmatError {
    #[error("intertwiner space has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("no unique highest weight vector: {0}")]
    NoHighestWeightVector(String),
    #[error("representations belong to different Cartan data")]
    DatumMismatch,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which basis vector was fixed and the raw kernel entry divided out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub index: usize,
    pub scalar: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    pub matrix: Mat,
    pub kernel_dim: usize,
    pub normalization: Normalization,
    pub dims: (usize, usize),
}

impl RMatrix {
    /// The same matrix in another spectral variable or at `z ↦ f(z)`.
    pub fn at(&self, z: &Rat) -> Result<Mat, ScalarError> {
        self.matrix.substitute(&[(Var::Z, z.clone())])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dims": [self.dims.0, self.dims.1],
            "kernel_dimension": self.kernel_dim,
            "normalization": {
                "index": self.normalization.index,
                "scalar": self.normalization.scalar.to_string(),
            },
            "matrix": self.matrix.to_json(),
        })
    }
}

/// `E_0 ↦ z E_0`, the other generators unchanged.
pub fn homogeneous_shift(v: &Rep) -> GradingShift {
    let mut s = GradingShift::zero(v.cartan());
    s.0[0] = 1;
    s
}

/// Basis index of the highest weight vector: the unique basis vector killed
/// by every finite `E_i` whose finite weight space is one-dimensional.
pub fn highest_weight_index(v: &Rep) -> Result<usize, RmatError> {
    let c = v.cartan();
    let killed: Vec<usize> = (0..v.dim())
        .filter(|&k| c.nodes().skip(1).all(|i| v.e(i).col(k).iter().all(Rat::is_zero)))
        .collect();
    if killed.len() != 1 {
        return Err(RmatError::NoHighestWeightVector(format!(
            "{} candidate vectors",
            killed.len()
        )));
    }
    let k = killed[0];
    let finite = |j: usize| -> Vec<i64> { v.weights()[j].0[1..].to_vec() };
    let mult = (0..v.dim()).filter(|&j| finite(j) == finite(k)).count();
    if mult != 1 {
        return Err(RmatError::NoHighestWeightVector(format!(
            "highest weight space has dimension {mult}"
        )));
    }
    Ok(k)
}

/// Actions of `Δ(x)` and `Δ^op(x)` on `V ⊗ W` for the Chevalley generators.
fn coproduct_pairs(v: &Rep, w: &Rep) -> Vec<(Mat, Mat)> {
    let iv = Mat::identity(v.dim());
    let iw = Mat::identity(w.dim());
    v.cartan()
        .nodes()
        .flat_map(|i| {
            let e = (
                &v.e(i).kron(&iw) + &v.k(i).kron(w.e(i)),
                &iv.kron(w.e(i)) + &v.e(i).kron(w.k(i)),
            );
            let f = (
                &v.f(i).kron(&w.k_inv(i)) + &iv.kron(w.f(i)),
                &v.k_inv(i).kron(w.f(i)) + &v.f(i).kron(&iw),
            );
            [e, f]
        })
        .collect()
}

/// Positions `(r, c)` of `V ⊗ W` with equal total weight.
fn weight_preserving_support(v: &Rep, w: &Rep) -> Vec<(usize, usize)> {
    let total: Vec<_> = v
        .weights()
        .iter()
        .flat_map(|a| w.weights().iter().map(move |b| a + b))
        .collect();
    let n = total.len();
    (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| total[r] == total[c])
        .collect()
}

/// Normalized R-matrix of `V ⊗ W(z)` for the homogeneous shift.
pub fn solve_r(v: &Rep, w: &Rep) -> Result<RMatrix, RmatError> {
    solve_r_shifted(v, w, &homogeneous_shift(w))
}

/// Normalized R-matrix with the second factor shifted by `shift`.
pub fn solve_r_shifted(v: &Rep, w: &Rep, shift: &GradingShift) -> Result<RMatrix, RmatError> {
    if v.cartan() != w.cartan() {
        return Err(RmatError::DatumMismatch);
    }
    let ws = shift_action_in(w, shift, Var::Z);
    let pairs = coproduct_pairs(v, ws.rep());
    let n = v.dim() * w.dim();
    let space = intertwiner_space(&pairs, n, n, &weight_preserving_support(v, w))?;
    if space.len() != 1 {
        return Err(RmatError::KernelDimension(space.len()));
    }
    let index = highest_weight_index(v)? * w.dim() + highest_weight_index(w)?;
    let raw = &space[0];
    let scalar = raw.get(index, index).clone();
    if scalar.is_zero() {
        return Err(RmatError::NoHighestWeightVector(
            "intertwiner vanishes on the highest weight tensor".into(),
        ));
    }
    Ok(RMatrix {
        matrix: raw.scale(&scalar.inv()),
        kernel_dim: 1,
        normalization: Normalization { index, scalar },
        dims: (v.dim(), w.dim()),
    })
}

/// Permutation of basis indices for `A ⊗ B → B ⊗ A`.
pub fn flip_perm(da: usize, db: usize) -> Vec<usize> {
    (0..da * db).map(|k| (k % db) * da + k / db).collect()
}

/// Spectral Yang–Baxter equation `R₁₂(z) R₁₃(zw) R₂₃(w) = R₂₃(w) R₁₃(zw) R₁₂(z)`
/// from the three pairwise R-matrices of `U ⊗ V ⊗ W`.
pub fn check_ybe(uv: &RMatrix, uw: &RMatrix, vw: &RMatrix) -> Result<Check, RmatError> {
    let (du, dv) = uv.dims;
    let dw = vw.dims.1;
    if uw.dims != (du, dw) || vw.dims.0 != dv {
        return Err(LinalgError::Shape("inconsistent R-matrix sizes".into()).into());
    }
    let z = Rat::var(Var::Z);
    let w = Rat::var(Var::W);
    let r12 = uv.matrix.kron(&Mat::identity(dw));
    let r23 = Mat::identity(du).kron(&vw.at(&w)?);
    // U ⊗ W ⊗ V → U ⊗ V ⊗ W
    let perm: Vec<usize> = (0..du * dv * dw)
        .map(|k| {
            let (u, rest) = (k / (dw * dv), k % (dw * dv));
            let (x, y) = (rest / dv, rest % dv);
            u * dv * dw + y * dw + x
        })
        .collect();
    let r13 = uw.at(&(&z * &w))?.kron(&Mat::identity(dv)).permute(&perm);
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    Ok(Check::equal("spectral Yang-Baxter", &lhs, &rhs))
}

/// `R_{VW}(z)^{-1} = (1 2) R_{WV}(1/z) (1 2)`, checked as a product.
pub fn check_unitarity(vw: &RMatrix, wv: &RMatrix) -> Result<Check, RmatError> {
    let (dv, dw) = vw.dims;
    if wv.dims != (dw, dv) {
        return Err(LinalgError::Shape("inconsistent R-matrix sizes".into()).into());
    }
    let back = wv.at(&Rat::var(Var::Z).inv())?.permute(&flip_perm(dw, dv));
    let prod = &vw.matrix * &back;
    Ok(Check::equal("R unitarity", &prod, &Mat::identity(dv * dw)))
}

/// Behaviour of `R` at a specialization of its variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneration {
    Pole,
    Singular,
    RegularInvertible,
}

impl Degeneration {
    pub fn as_str(self) -> &'static str {
        match self {
            Degeneration::Pole => "pole",
            Degeneration::Singular => "singular",
            Degeneration::RegularInvertible => "regular-invertible",
        }
    }
}

pub fn detect_degeneration(r: &RMatrix, point: &[(Var, Rat)]) -> Result<Degeneration, RmatError> {
    let m = match r.matrix.substitute(point) {
        Ok(m) => m,
        Err(ScalarError::PoleAtPoint(_)) | Err(ScalarError::DivisionByZero) => {
            return Ok(Degeneration::Pole)
        }
        Err(e) => return Err(e.into()),
    };
    Ok(if m.det()?.is_zero() {
        Degeneration::Singular
    } else {
        Degeneration::RegularInvertible
    })
}
