//! Pullbacks of a representation along twisting operators
//! `ψ = Ad(g) ∘ θ_q^{-1}` with `g = P · β̂`.
//!
//! Since `Ad(t_θ) ∘ θ_q^{-1} = ω ∘ τ`, the pullback is `(ωτ)^*V` with its
//! generators scaled by `β(θα_i)` and conjugated by `π(P) · t_θ^{-1}`.

use crate::linalg::Mat;
use crate::repcore::{pullback, Automorphism, Rep};
use crate::rootdata::{QspParams, SatakeDiagram, Weight};
use crate::scalars::{Rat, Var};

use super::{t_theta, BraidError};

/// The group-like factor `P` of the gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// `P = 1`.
    Standard,
    /// `P = t_θ`, giving `ψ = ωτ` up to `β̂`.
    SemiStandard,
    /// `P = t_ζ^{-1} t_θ` with `ζ` the auxiliary rank-one diagram.
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistSpec {
    pub diagram: SatakeDiagram,
    pub gauge: Gauge,
    /// Values of the character `β` on the simple roots.
    pub beta: Vec<Rat>,
}

/// `γ(δ)` for the character with values `γ_i` on simple roots.
pub fn gamma_delta(d: &SatakeDiagram, gamma: &[Rat]) -> Rat {
    let c = d.cartan();
    c.nodes()
        .fold(Rat::one(), |acc, i| &acc * &gamma[i].powi(c.mark(i) as i32))
}

impl TwistSpec {
    /// Gauge with `β = (γ(δ), 1, …, 1)`, trivial whenever `γ(δ) = 1`.
    pub fn new(diagram: SatakeDiagram, gauge: Gauge, params: &QspParams) -> TwistSpec {
        let mut beta = vec![Rat::one(); diagram.cartan().size()];
        let gd = gamma_delta(&diagram, &params.gamma);
        // β(δ) = β_0^{mark_0}; the affine node has mark 1 in type A
        beta[0] = gd;
        TwistSpec { diagram, gauge, beta }
    }

    pub fn with_beta(diagram: SatakeDiagram, gauge: Gauge, beta: Vec<Rat>) -> TwistSpec {
        TwistSpec { diagram, gauge, beta }
    }

    /// Requires `β(δ) = γ(δ)`.
    pub fn validate(&self, params: &QspParams) -> Result<(), BraidError> {
        let c = self.diagram.cartan();
        if self.beta.len() != c.size() || self.beta.iter().any(Rat::is_zero) {
            return Err(BraidError::GaugeInvalid("beta needs one nonzero value per node".into()));
        }
        let bd = gamma_delta(&self.diagram, &self.beta);
        let gd = gamma_delta(&self.diagram, &params.gamma);
        if bd != gd {
            return Err(BraidError::GaugeInvalid(format!("beta(delta) = {bd} but gamma(delta) = {gd}")));
        }
        Ok(())
    }

    /// `β(θα_i)` for every node.
    pub fn beta_on_theta(&self) -> Vec<Rat> {
        let d = &self.diagram;
        d.cartan()
            .nodes()
            .map(|i| {
                let t = d.theta(&d.cartan().simple_root(i));
                t.coords()
                    .iter()
                    .zip(&self.beta)
                    .fold(Rat::one(), |acc, (&e, b)| &acc * &b.powi(e as i32))
            })
            .collect()
    }
}

/// `ψ^*(V)` together with the data used to build it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedTwist {
    pub source: Rep,
    /// `π(P) · t_θ^{-1}` on the source space.
    pub conjugator: Mat,
    pub beta_scaling: Vec<Rat>,
    pub target: Rep,
}

fn weight_from_cartan(v: &Rep, k: &[Mat], row: usize) -> Result<Weight, BraidError> {
    let c = v.cartan();
    c.nodes()
        .map(|i| {
            let entry = k[i].get(row, row);
            let (m, coeff) = entry.as_laurent_term().ok_or(BraidError::NotDiagonal)?;
            let e = m.exp(Var::P) as i64;
            let only_p = Rat::from_laurent_term(m, coeff.clone()) == Rat::mono(Var::P, e as i32);
            if !only_p || e % (2 * c.d(i)) != 0 {
                return Err(BraidError::NotDiagonal);
            }
            Ok(e / (2 * c.d(i)))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Weight)
}

pub fn realize_twist(v: &Rep, spec: &TwistSpec) -> Result<RealizedTwist, BraidError> {
    let d = &spec.diagram;
    if v.cartan() != d.cartan() {
        return Err(crate::repcore::RepError::DatumMismatch.into());
    }
    let n = v.dim();
    let t = t_theta(v, d)?;
    let conjugator = match spec.gauge {
        Gauge::SemiStandard => Mat::identity(n),
        Gauge::Standard => t.invert()?,
        Gauge::Auxiliary => t_theta(v, &d.build_y0()?)?.invert()?,
    };
    let tau = pullback(v, &Automorphism::Diagram(d.tau().to_vec()))?;
    let base = pullback(&tau, &Automorphism::Chevalley)?;
    let beta_scaling = spec.beta_on_theta();
    let cinv = conjugator.invert()?;
    let conj = |m: &Mat| &(&conjugator * m) * &cinv;
    let nodes = v.cartan().nodes();
    let e: Vec<Mat> = nodes
        .clone()
        .map(|i| conj(base.e(i)).scale(&beta_scaling[i]))
        .collect();
    let f: Vec<Mat> = nodes
        .clone()
        .map(|i| conj(base.f(i)).scale(&beta_scaling[i].inv()))
        .collect();
    let k: Vec<Mat> = nodes.map(|i| conj(base.k(i))).collect();
    if k.iter().any(|m| !m.is_diagonal()) {
        return Err(BraidError::NotDiagonal);
    }
    let weights = (0..n)
        .map(|r| weight_from_cartan(v, &k, r))
        .collect::<Result<Vec<_>, _>>()?;
    let target = Rep::new(v.cartan().clone(), e, f, weights)?;
    Ok(RealizedTwist {
        source: v.clone(),
        conjugator,
        beta_scaling,
        target,
    })
}
