//! Generalized Satake diagrams, the involution on roots, and coideal
//! parameters.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::scalars::{Rat, Var, Q};

use super::{CartanDatum, RootError, RootVec};

/// One failed condition of a validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub detail: String,
}

/// Outcome of a validation: valid, or the list of failed conditions in the
/// order they were checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl Validation {
    fn from_violations(violations: Vec<Violation>) -> Validation {
        Validation {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first() {
            None => write!(f, "valid"),
            Some(v) => write!(f, "{}: {}", v.condition, v.detail),
        }
    }
}

fn violation(code: &str, detail: String) -> Violation {
    Violation {
        condition: code.to_string(),
        detail,
    }
}

/// Checks that `(X, τ)` is a generalized Satake diagram.
pub fn validate_gsat(cartan: &CartanDatum, x: &[usize], tau: &[usize]) -> Validation {
    let n = cartan.size();
    let mut out = Vec::new();
    let mut sorted = tau.to_vec();
    sorted.sort_unstable();
    if tau.len() != n || sorted != (0..n).collect::<Vec<_>>() {
        out.push(violation("gsat.tau", format!("{tau:?} is not a permutation of the nodes")));
        return Validation::from_violations(out);
    }
    if x.iter().any(|&i| i >= n) || x.len() >= n {
        out.push(violation("gsat.X", format!("{x:?} is not a proper subset of the nodes")));
        return Validation::from_violations(out);
    }
    if (0..n).any(|i| tau[tau[i]] != i) {
        out.push(violation("gsat.tau", "tau is not an involution".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if cartan.a(i, j) != cartan.a(tau[i], tau[j]) {
                out.push(violation(
                    "gsat.tau",
                    format!("tau is not a diagram automorphism at ({i}, {j})"),
                ));
                return Validation::from_violations(out);
            }
        }
    }
    let xs: BTreeSet<usize> = x.iter().copied().collect();
    if xs.iter().any(|i| !xs.contains(&tau[*i])) {
        out.push(violation("gsat.tau", "tau does not preserve X".into()));
        return Validation::from_violations(out);
    }
    if let Ok(oi) = cartan.opposition_involution(x) {
        for (&i, &j) in &oi {
            if tau[i] != j {
                out.push(violation(
                    "gsat.1",
                    format!("tau({i}) = {} but the opposition involution sends {i} to {j}", tau[i]),
                ));
                break;
            }
        }
    }
    for i in 0..n {
        if xs.contains(&i) || tau[i] != i {
            continue;
        }
        let mut nodes: Vec<usize> = xs.iter().copied().collect();
        nodes.push(i);
        let comp = cartan
            .components(&nodes)
            .into_iter()
            .find(|c| c.contains(&i))
            .expect("node lies in a component");
        if comp.len() == 2 && cartan.a(comp[0], comp[1]) * cartan.a(comp[1], comp[0]) == 1 {
            out.push(violation(
                "gsat.2",
                format!("node {i} is fixed by tau and the component {comp:?} of X ∪ {{{i}}} is of type A2"),
            ));
        }
    }
    Validation::from_violations(out)
}

/// A validated generalized Satake diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeDiagram {
    cartan: CartanDatum,
    x: Vec<usize>,
    tau: Vec<usize>,
    word: Vec<usize>,
}

impl SatakeDiagram {
    pub fn new(cartan: CartanDatum, x: &[usize], tau: &[usize]) -> Result<SatakeDiagram, RootError> {
        let v = validate_gsat(&cartan, x, tau);
        if !v.valid {
            return Err(RootError::InvalidDiagram(v));
        }
        let mut x = x.to_vec();
        x.sort_unstable();
        let word = cartan.longest_element(&x)?;
        Ok(SatakeDiagram {
            cartan,
            x,
            tau: tau.to_vec(),
            word,
        })
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn in_x(&self, i: usize) -> bool {
        self.x.contains(&i)
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Reduced word of `w_X`.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `θ(μ) = -w_X(τ(μ))`.
    pub fn theta(&self, mu: &RootVec) -> RootVec {
        -&self.cartan.weyl_act(&self.word, &mu.permute(&self.tau))
    }

    /// `θ` on rational coordinates.
    pub fn theta_q(&self, mu: &[Q]) -> Vec<Q> {
        let mut t = vec![Q::from_integer(0.into()); mu.len()];
        for (i, c) in mu.iter().enumerate() {
            t[self.tau[i]] = c.clone();
        }
        self.cartan
            .weyl_act_q(&self.word, &t)
            .into_iter()
            .map(|c| -c)
            .collect()
    }

    /// Number of τ-orbits in `Î ∖ X`.
    pub fn restricted_rank(&self) -> usize {
        self.cartan
            .nodes()
            .filter(|&i| !self.in_x(i) && self.tau[i] >= i)
            .count()
    }

    /// `0 ∉ X` and `τ(0) = 0`.
    pub fn is_restrictable(&self) -> bool {
        !self.in_x(0) && self.tau[0] == 0
    }

    /// Orbit representatives in `Î ∖ X` (the smaller index of each orbit).
    fn representatives(&self) -> Vec<usize> {
        self.cartan
            .nodes()
            .filter(|&i| !self.in_x(i) && self.tau[i] >= i)
            .collect()
    }

    pub fn i_diff(&self) -> Vec<usize> {
        self.representatives()
            .into_iter()
            .filter(|&i| {
                self.tau[i] != i
                    && self
                        .x
                        .iter()
                        .chain(std::iter::once(&self.tau[i]))
                        .any(|&j| self.cartan.a(i, j) != 0)
            })
            .collect()
    }

    pub fn i_ns(&self) -> Vec<usize> {
        self.representatives()
            .into_iter()
            .filter(|&i| self.tau[i] == i && self.x.iter().all(|&j| self.cartan.a(i, j) == 0))
            .collect()
    }

    /// The auxiliary restricted-rank-one diagram on `Y₀ = Î ∖ {0, τ(0)}`.
    pub fn build_y0(&self) -> Result<SatakeDiagram, RootError> {
        let t0 = self.tau[0];
        let y: Vec<usize> = self.cartan.nodes().filter(|&i| i != 0 && i != t0).collect();
        let oi = self.cartan.opposition_involution(&y)?;
        let mut eta: Vec<usize> = self.cartan.nodes().collect();
        eta[0] = t0;
        eta[t0] = 0;
        for (i, j) in oi {
            eta[i] = j;
        }
        SatakeDiagram::new(self.cartan.clone(), &y, &eta)
    }
}

/// Coideal parameters `γ_i` (nonzero) and `σ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QspParams {
    pub gamma: Vec<Rat>,
    pub sigma: Vec<Rat>,
}

impl QspParams {
    /// Fully symbolic admissible parameters: `γ_i = g_i` (shared along
    /// τ-orbits where required) and `σ_i = s_i` on the allowed nodes.
    pub fn symbolic(d: &SatakeDiagram) -> QspParams {
        let n = d.cartan.size();
        let diff = d.i_diff();
        let gamma = (0..n)
            .map(|i| {
                if d.in_x(i) {
                    return Rat::one();
                }
                let t = d.tau[i];
                let tied = !diff.contains(&i) && !diff.contains(&t);
                Rat::var(Var::gamma(if tied { i.min(t) } else { i }))
            })
            .collect();
        let ns = d.i_ns();
        let mut sigma = vec![Rat::zero(); n];
        for &j in &ns {
            if ns.iter().all(|&i| i == j || d.cartan.a(i, j) % 2 == 0) {
                sigma[j] = Rat::var(Var::sigma(j));
            }
        }
        QspParams { gamma, sigma }
    }

    /// `γ ≡ 1`, `σ ≡ 0` off `X` as well.
    pub fn trivial(d: &SatakeDiagram) -> QspParams {
        let n = d.cartan.size();
        QspParams {
            gamma: vec![Rat::one(); n],
            sigma: vec![Rat::zero(); n],
        }
    }

    pub fn substitute(&self, assign: &[(Var, Rat)]) -> Result<QspParams, crate::scalars::ScalarError> {
        let f = |v: &Vec<Rat>| v.iter().map(|x| x.substitute(assign)).collect::<Result<Vec<_>, _>>();
        Ok(QspParams {
            gamma: f(&self.gamma)?,
            sigma: f(&self.sigma)?,
        })
    }
}

/// Checks the admissibility constraints on `(γ, σ)`.
pub fn validate_params(d: &SatakeDiagram, p: &QspParams) -> Validation {
    let n = d.cartan.size();
    let mut out = Vec::new();
    if p.gamma.len() != n || p.sigma.len() != n {
        out.push(violation("params.shape", format!("expected {n} entries")));
        return Validation::from_violations(out);
    }
    let diff = d.i_diff();
    for i in 0..n {
        if p.gamma[i].is_zero() {
            out.push(violation("params.gamma", format!("gamma_{i} is zero")));
        }
        if d.in_x(i) && !p.gamma[i].is_one() {
            out.push(violation("params.gamma", format!("gamma_{i} must be 1 since {i} is in X")));
        }
        let t = d.tau[i];
        if !diff.contains(&i) && !diff.contains(&t) && p.gamma[i] != p.gamma[t] {
            out.push(violation("params.gamma", format!("gamma_{i} must equal gamma_{t}")));
        }
    }
    let ns = d.i_ns();
    for i in 0..n {
        if !ns.contains(&i) && !p.sigma[i].is_zero() {
            out.push(violation("params.sigma", format!("sigma_{i} must vanish")));
        }
    }
    for &i in &ns {
        for &j in &ns {
            if i != j && d.cartan.a(i, j) % 2 != 0 && !p.sigma[j].is_zero() {
                out.push(violation(
                    "params.sigma",
                    format!("a_{i}{j} is odd so sigma_{j} must vanish"),
                ));
            }
        }
    }
    Validation::from_violations(out)
}
