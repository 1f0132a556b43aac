//! Spaces of matrices `X` with `X · A_k = A'_k · X` for all `k`.

use std::collections::{BTreeSet, HashMap};

use crate::exec;
use crate::scalars::Rat;

use super::{LinalgError, Mat};

/// Basis of `{X : X A_k = A'_k X}` among matrices supported on `unknowns`.
///
/// `pairs[k] = (A_k, A'_k)` with `A_k` acting on the source (`cols × cols`)
/// and `A'_k` on the target (`rows × rows`).
pub fn intertwiner_space(
    pairs: &[(Mat, Mat)],
    rows: usize,
    cols: usize,
    unknowns: &[(usize, usize)],
) -> Result<Vec<Mat>, LinalgError> {
    for (a, b) in pairs {
        if a.rows() != cols || !a.is_square() || b.rows() != rows || !b.is_square() {
            return Err(LinalgError::Shape("intertwiner pair has the wrong size".into()));
        }
    }
    let index: HashMap<(usize, usize), usize> =
        unknowns.iter().enumerate().map(|(k, &rc)| (rc, k)).collect();
    let by_row: Vec<Vec<(usize, usize)>> = (0..rows)
        .map(|r| unknowns.iter().copied().filter(|&(i, _)| i == r).collect())
        .collect();
    let by_col: Vec<Vec<(usize, usize)>> = (0..cols)
        .map(|c| unknowns.iter().copied().filter(|&(_, j)| j == c).collect())
        .collect();
    let tasks: Vec<(usize, usize)> = (0..pairs.len())
        .flat_map(|p| (0..rows).map(move |r| (p, r)))
        .collect();
    let blocks = exec::map(&tasks, |&(p, r)| {
        let (a, b) = &pairs[p];
        let mut out = Vec::new();
        for c in 0..cols {
            let mut eq = vec![Rat::zero(); unknowns.len()];
            // (X A)[r][c] = Σ_k X[r][k] A[k][c]
            for &(_, k) in &by_row[r] {
                let x = a.get(k, c);
                if !x.is_zero() {
                    let u = index[&(r, k)];
                    eq[u] = &eq[u] + x;
                }
            }
            // (A' X)[r][c] = Σ_k A'[r][k] X[k][c]
            for &(k, _) in &by_col[c] {
                let x = b.get(r, k);
                if !x.is_zero() {
                    let u = index[&(k, c)];
                    eq[u] = &eq[u] - x;
                }
            }
            if eq.iter().any(|x| !x.is_zero()) {
                out.push(eq);
            }
        }
        out
    });
    let mut seen = BTreeSet::new();
    let mut eqs = Vec::new();
    for eq in blocks.into_iter().flatten() {
        let key: Vec<String> = eq.iter().map(|x| x.to_string()).collect();
        if seen.insert(key) {
            eqs.push(eq);
        }
    }
    let kernel = if eqs.is_empty() {
        (0..unknowns.len())
            .map(|k| {
                let mut v = vec![Rat::zero(); unknowns.len()];
                v[k] = Rat::one();
                v
            })
            .collect()
    } else {
        let n = eqs.len();
        Mat::from_vec(n, unknowns.len(), eqs.into_iter().flatten().collect())?.nullspace()
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut m = Mat::zeros(rows, cols);
            for (x, &(r, c)) in v.into_iter().zip(unknowns) {
                m.set(r, c, x);
            }
            m
        })
        .collect())
}

/// Every position of a `rows × cols` matrix.
pub fn full_support(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutant_of_a_nilpotent() {
        let e = Mat::unit(2, 0, 1);
        let sp = intertwiner_space(&[(e.clone(), e)], 2, 2, &full_support(2, 2)).unwrap();
        // polynomials in e
        assert_eq!(sp.len(), 2);
    }

    #[test]
    fn no_generators_gives_everything() {
        assert_eq!(intertwiner_space(&[], 2, 3, &full_support(2, 3)).unwrap().len(), 6);
    }

    #[test]
    fn solutions_intertwine() {
        let a = Mat::from_ints(&[&[1, 1], &[0, 2]]);
        let b = Mat::from_ints(&[&[2, 0], &[0, 1]]);
        let sp = intertwiner_space(&[(a.clone(), b.clone())], 2, 2, &full_support(2, 2)).unwrap();
        // same simple spectrum {1, 2}: one intertwiner per eigenvalue
        assert_eq!(sp.len(), 2);
        for x in &sp {
            assert_eq!(x * &a, &b * x);
        }
    }
}
