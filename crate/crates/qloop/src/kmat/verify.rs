//! Reflection equations and unitarity for computed K-matrices.

use crate::braid::{realize_twist, Gauge, TwistSpec};
use crate::exec;
use crate::linalg::Mat;
use crate::report::Check;
use crate::repcore::Rep;
use crate::rmat::{flip_perm, solve_r_shifted, RMatrix};
use crate::rootdata::{GradingShift, QspParams};
use crate::scalars::{Rat, Var};

use super::{k_intertwiners, normalize_on, proportionality, solve_k, KMatrix, KmatError, NormalizationRule};

/// Factors of the generalized reflection equation on `V ⊗ W`.
#[derive(Debug, Clone)]
pub struct GreFactors {
    /// `K_V(z)` and `K_W` (also in `z`; evaluated at `w`).
    pub kv: Mat,
    pub kw: Mat,
    pub r_psiw_psiv: RMatrix,
    pub r_psiv_w: RMatrix,
    pub r_psiw_v: RMatrix,
    pub r_v_w: RMatrix,
}

fn z() -> Rat {
    Rat::var(Var::Z)
}

fn w() -> Rat {
    Rat::var(Var::W)
}

/// `(1 2) ∘ X ∘ (1 2)` for `X` on `B ⊗ A`, as an operator on `A ⊗ B`.
fn flipped(x: &RMatrix) -> Mat {
    let (db, da) = x.dims;
    x.matrix.permute(&flip_perm(db, da))
}

fn at(m: &Mat, val: &Rat) -> Result<Mat, KmatError> {
    Ok(m.substitute(&[(Var::Z, val.clone())])?)
}

/// `R_{ψW ψV}(w/z)_{21} · 1⊗K_W(w) · R_{ψV W}(zw) · K_V(z)⊗1
///  = K_V(z)⊗1 · R_{ψW V}(zw)_{21} · 1⊗K_W(w) · R_{VW}(w/z)`.
pub fn check_gre(f: &GreFactors) -> Result<Check, KmatError> {
    let (dv, dw) = (f.kv.rows(), f.kw.rows());
    let ratio = w().checked_div(&z())?;
    let prod = &z() * &w();
    let kv = f.kv.kron(&Mat::identity(dw));
    let kw = Mat::identity(dv).kron(&at(&f.kw, &w())?);
    let a = at(&flipped(&f.r_psiw_psiv), &ratio)?;
    let b = f.r_psiv_w.at(&prod)?;
    let c = at(&flipped(&f.r_psiw_v), &prod)?;
    let d = f.r_v_w.at(&ratio)?;
    let lhs = &(&(&a * &kw) * &b) * &kv;
    let rhs = &(&(&kv * &c) * &kw) * &d;
    Ok(Check::equal("generalized reflection equation", &lhs, &rhs))
}

/// Solves every factor of the generalized reflection equation and checks it.
pub fn verify_gre(
    v: &Rep,
    w_rep: &Rep,
    spec: &TwistSpec,
    shift: &GradingShift,
    params: &QspParams,
) -> Result<(Check, GreFactors), KmatError> {
    let kv = solve_k(v, spec, shift, params)?;
    let kw = solve_k(w_rep, spec, shift, params)?;
    let pv = &kv.twist.target;
    let pw = &kw.twist.target;
    let jobs: [(&Rep, &Rep); 4] = [(pw, pv), (pv, w_rep), (pw, v), (v, w_rep)];
    let mut rs = exec::map(&jobs, |(a, b)| solve_r_shifted(a, b, shift))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter();
    let mut next = || rs.next().expect("four R-matrices");
    let factors = GreFactors {
        kv: kv.matrix,
        kw: kw.matrix,
        r_psiw_psiv: next(),
        r_psiv_w: next(),
        r_psiw_v: next(),
        r_v_w: next(),
    };
    Ok((check_gre(&factors)?, factors))
}

/// `R_{WV}(w/z)_{21} · 1⊗K_W(w) · R_{VW}(zw) · K_V(z)⊗1
///  = K_V(z)⊗1 · R_{WV}(zw)_{21} · 1⊗K_W(w) · R_{VW}(w/z)`.
pub fn check_standard_re(kv: &Mat, kw: &Mat, r_wv: &RMatrix, r_vw: &RMatrix) -> Result<Check, KmatError> {
    let (dv, dw) = (kv.rows(), kw.rows());
    let ratio = w().checked_div(&z())?;
    let prod = &z() * &w();
    let kv1 = kv.kron(&Mat::identity(dw));
    let kw2 = Mat::identity(dv).kron(&at(kw, &w())?);
    let flip_wv = flipped(r_wv);
    let lhs = &(&(&at(&flip_wv, &ratio)? * &kw2) * &r_vw.at(&prod)?) * &kv1;
    let rhs = &(&(&kv1 * &at(&flip_wv, &prod)?) * &kw2) * &r_vw.at(&ratio)?;
    Ok(Check::equal("standard reflection equation", &lhs, &rhs))
}

/// Standard reflection equation for the auxiliary gauge of a restrictable
/// diagram with `τ = η₀`, where `ψ₀^*` must fix both representations.
pub fn verify_standard_re(
    v: &Rep,
    w_rep: &Rep,
    spec: &TwistSpec,
    shift: &GradingShift,
    params: &QspParams,
) -> Result<Check, KmatError> {
    let d = &spec.diagram;
    if !d.is_restrictable() {
        return Err(KmatError::NotRestrictable);
    }
    if spec.gauge != Gauge::Auxiliary || d.build_y0()?.tau() != d.tau() {
        return Err(KmatError::NotStandardForm);
    }
    let kv = solve_k(v, spec, shift, params)?;
    let kw = solve_k(w_rep, spec, shift, params)?;
    if kv.twist.target != *v || kw.twist.target != *w_rep {
        return Ok(Check::fail(
            "standard reflection equation",
            "the twist does not fix the representations",
        ));
    }
    let r_wv = solve_r_shifted(w_rep, v, shift)?;
    let r_vw = solve_r_shifted(v, w_rep, shift)?;
    check_standard_re(&kv.matrix, &kw.matrix, &r_wv, &r_vw)
}

/// `K_{ψ^*V}(1/z) · K_V(z) = 1`; a scalar failure is reported as a defect.
pub fn check_k_unitarity(kv: &Mat, kpsi: &Mat) -> Result<Check, KmatError> {
    let prod = &at(kpsi, &z().inv())? * kv;
    let n = kv.rows();
    if prod.is_identity() {
        return Ok(Check::ok("K unitarity"));
    }
    let id = Mat::identity(n);
    let detail = match proportionality(prod.vec(), id.vec()) {
        Some(c) => format!("product is {c} times the identity"),
        None => Check::equal("K unitarity", &prod, &id).detail.unwrap_or_default(),
    };
    Ok(Check::fail("K unitarity", detail))
}

/// Unitarity with the paired normalization `K̄_V v = g v`, `K̄_{ψ^*V} g v = v`
/// on the ℓ-highest weight vector `v`.
pub fn paired_unitarity(
    v: &Rep,
    spec: &TwistSpec,
    shift: &GradingShift,
    params: &QspParams,
) -> Result<(Check, KMatrix, Mat), KmatError> {
    let kv = solve_k(v, spec, shift, params)?;
    let index = match kv.normalization.rule {
        NormalizationRule::LHighestWeight { index } => index,
        _ => {
            return Err(KmatError::AmbiguousNormalization(
                "K does not map the ℓ-highest weight vector onto its gauge image".into(),
            ))
        }
    };
    let pv = kv.twist.target.clone();
    let back = realize_twist(&pv, spec)?;
    if back.target != *v {
        return Err(KmatError::NotInvolutive);
    }
    let space = k_intertwiners(&pv, &back, &spec.diagram, params, shift)?;
    if space.len() != 1 {
        return Err(KmatError::KernelDimension(space.len()));
    }
    let gv = kv.gauge_operator.col(index);
    let vl = Mat::identity(v.dim()).col(index);
    let (kpsi, _) = normalize_on(&space[0], &gv, &vl)?;
    let check = check_k_unitarity(&kv.matrix, &kpsi)?;
    Ok((check, kv, kpsi))
}

/// No entry has a pole at `z = 0`.
pub fn regular_at_zero(m: &Mat) -> bool {
    m.substitute(&[(Var::Z, Rat::zero())]).is_ok()
}
