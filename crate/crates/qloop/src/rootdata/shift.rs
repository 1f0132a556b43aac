//! Grading shifts `s: Î → ℤ_{≥0}`.

use super::{CartanDatum, RootVec, SatakeDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradingShift(pub Vec<i64>);

impl GradingShift {
    pub fn zero(c: &CartanDatum) -> GradingShift {
        GradingShift(vec![0; c.size()])
    }

    /// `s ≡ 1`.
    pub fn principal(c: &CartanDatum) -> GradingShift {
        GradingShift(vec![1; c.size()])
    }

    /// Characteristic function of `{0, τ(0)}`.
    pub fn tau_minimal(d: &SatakeDiagram) -> GradingShift {
        let mut s = vec![0; d.cartan().size()];
        s[0] = 1;
        s[d.tau()[0]] = 1;
        GradingShift(s)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_tau_invariant(&self, tau: &[usize]) -> bool {
        (0..self.0.len()).all(|i| self.0[i] == self.0[tau[i]])
    }

    /// Linear extension to the root lattice.
    pub fn exponent(&self, mu: &RootVec) -> i64 {
        self.0.iter().zip(mu.coords()).map(|(s, c)| s * c).sum()
    }
}
