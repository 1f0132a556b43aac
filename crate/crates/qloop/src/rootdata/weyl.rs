//! Weyl group action, longest elements and opposition involutions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalars::Q;

use super::{CartanDatum, RootError, RootVec};

impl CartanDatum {
    /// `s_i(μ) = μ - ⟨μ, h_i⟩ α_i`.
    pub fn reflect(&self, i: usize, mu: &RootVec) -> RootVec {
        let k = self.pairing(mu, i);
        let mut v = mu.0.clone();
        v[i] -= k;
        RootVec(v)
    }

    /// Action of the product `s_{w_1} ⋯ s_{w_l}`; the last letter acts first.
    pub fn weyl_act(&self, word: &[usize], mu: &RootVec) -> RootVec {
        word.iter()
            .rev()
            .fold(mu.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Same action on rational coordinates.
    pub fn weyl_act_q(&self, word: &[usize], mu: &[Q]) -> Vec<Q> {
        let mut v = mu.to_vec();
        for &i in word.iter().rev() {
            let k: Q = self
                .nodes()
                .filter(|&j| !v[j].is_zero())
                .map(|j| &v[j] * Q::from_integer(self.a(i, j).into()))
                .sum();
            v[i] -= k;
        }
        v
    }

    fn check_finite(&self, x: &[usize]) -> Result<(), RootError> {
        if x.len() >= self.size() || x.iter().any(|&i| i >= self.size()) {
            return Err(RootError::NotFiniteType(x.to_vec()));
        }
        Ok(())
    }

    /// Reduced word for the longest element of `W_X`.
    ///
    /// Greedy: append the smallest `i ∈ X` with `w(α_i) > 0` until none is left.
    pub fn longest_element(&self, x: &[usize]) -> Result<Vec<usize>, RootError> {
        self.check_finite(x)?;
        let mut xs = x.to_vec();
        xs.sort_unstable();
        let mut word = Vec::new();
        loop {
            let next = xs
                .iter()
                .copied()
                .find(|&i| self.weyl_act(&word, &self.simple_root(i)).is_positive());
            match next {
                Some(i) => word.push(i),
                None => return Ok(word),
            }
        }
    }

    /// `i ↦ j` where `w_X(α_i) = -α_j`.
    pub fn opposition_involution(&self, x: &[usize]) -> Result<BTreeMap<usize, usize>, RootError> {
        let w = self.longest_element(x)?;
        let mut map = BTreeMap::new();
        for &i in x {
            let img = -&self.weyl_act(&w, &self.simple_root(i));
            let j = x
                .iter()
                .copied()
                .find(|&j| img == self.simple_root(j))
                .ok_or_else(|| RootError::NotFiniteType(x.to_vec()))?;
            map.insert(i, j);
        }
        Ok(map)
    }

    /// Positive roots of the finite root subsystem spanned by `X`.
    pub fn positive_roots(&self, x: &[usize]) -> Result<Vec<RootVec>, RootError> {
        self.check_finite(x)?;
        let mut roots: Vec<RootVec> = x.iter().map(|&i| self.simple_root(i)).collect();
        let mut k = 0;
        while k < roots.len() {
            for &i in x {
                let r = self.reflect(i, &roots[k]);
                if r.is_positive() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
            k += 1;
        }
        roots.sort();
        Ok(roots)
    }

    /// `2ρ_X`, the sum of the positive roots of `X`.
    pub fn two_rho(&self, x: &[usize]) -> Result<RootVec, RootError> {
        Ok(self
            .positive_roots(x)?
            .iter()
            .fold(self.zero_root(), |acc, r| &acc + r))
    }

    /// Connected components of the Dynkin subdiagram on `nodes`.
    pub fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for &s in nodes {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                for &v in nodes {
                    if !seen[v] && self.a(u, v) != 0 {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanDatum {
        CartanDatum::affine_a(2).unwrap()
    }

    #[test]
    fn reflections() {
        let c = CartanDatum::affine_a(1).unwrap();
        assert_eq!(c.reflect(1, &c.simple_root(1)), -&c.simple_root(1));
        assert_eq!(c.reflect(1, &c.delta()), c.delta());
        let c = a2();
        assert_eq!(c.weyl_act(&[1, 2, 1], &c.simple_root(1)), -&c.simple_root(2));
    }

    #[test]
    fn longest_words() {
        let c = a2();
        assert!(c.longest_element(&[]).unwrap().is_empty());
        assert_eq!(c.longest_element(&[1]).unwrap(), vec![1]);
        assert_eq!(c.longest_element(&[1, 2]).unwrap(), vec![1, 2, 1]);
        assert!(c.longest_element(&[0, 1, 2]).is_err());
    }

    #[test]
    fn opposition() {
        let c = a2();
        let oi = c.opposition_involution(&[1, 2]).unwrap();
        assert_eq!(oi[&1], 2);
        assert_eq!(oi[&2], 1);
        assert_eq!(c.opposition_involution(&[1]).unwrap()[&1], 1);
        assert!(c.opposition_involution(&[]).unwrap().is_empty());
    }

    #[test]
    fn longest_reverses_positive_roots() {
        for n in 1..=3 {
            let c = CartanDatum::affine_a(n).unwrap();
            for mask in 0u32..(1 << (n + 1)) - 1 {
                let x: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) != 0).collect();
                let w = c.longest_element(&x).unwrap();
                let pos = c.positive_roots(&x).unwrap();
                assert_eq!(w.len(), pos.len());
                for r in &pos {
                    let img = -&c.weyl_act(&w, r);
                    assert!(pos.contains(&img));
                }
            }
        }
    }
}
