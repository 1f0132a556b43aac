//! Span of the associative algebra generated by a set of matrices.

use crate::exec;
use crate::scalars::Rat;

use super::Mat;

/// Result of [`algebra_closure`]: a basis of the generated algebra.
#[derive(Debug, Clone)]
pub struct Closure {
    pub dimension: usize,
    pub basis: Vec<Mat>,
}

/// Incrementally maintained reduced basis for membership tests.
struct Reducer {
    // (pivot index, vector with a 1 at the pivot, zero at every other pivot)
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Reducer {
    fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether it was added.
    fn insert(&mut self, v: Vec<Rat>) -> bool {
        let v = self.reduce(v);
        let p = match v.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = v[p].inv();
        let v: Vec<Rat> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Linear span of all words in `gens` together with the identity.
///
/// Grows the span by left multiplication with the generators until it stops
/// growing. Products of a layer are formed in parallel and inserted in a
/// fixed order.
pub fn algebra_closure(gens: &[Mat]) -> Closure {
    let n = gens.first().map_or(0, Mat::rows);
    let full = n * n;
    let mut red = Reducer { rows: Vec::new() };
    let mut basis = Vec::new();
    let id = Mat::identity(n);
    red.insert(id.vec().to_vec());
    basis.push(id);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() && basis.len() < full {
        let pairs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&b| (0..gens.len()).map(move |g| (g, b)))
            .collect();
        let products = exec::map(&pairs, |&(g, b)| &gens[g] * &basis[b]);
        let mut next = Vec::new();
        for m in products {
            if basis.len() == full {
                break;
            }
            if red.insert(m.vec().to_vec()) {
                next.push(basis.len());
                basis.push(m);
            }
        }
        frontier = next;
    }
    Closure {
        dimension: basis.len(),
        basis,
    }
}
