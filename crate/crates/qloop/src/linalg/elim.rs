//! Fraction-free elimination.
//!
//! Rows are first scaled to polynomial rows, then reduced with Bareiss'
//! exact-division recurrence, so every intermediate entry is a minor of the
//! cleared matrix. Only the final back-substitution works with fractions.

use crate::exec;
use crate::scalars::{gcd, Poly, Rat};

use super::{LinalgError, Mat};

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

/// Scales a row of fractions to polynomials without common content.
///
/// Returns the polynomial row and the factor `s` with `poly_row = s * row`.
fn clear_row(row: &[Rat]) -> (Vec<Poly>, Rat) {
    let mut l = Poly::one();
    for x in row.iter().filter(|x| !x.is_zero()) {
        l = poly_lcm(&l, x.den());
    }
    let mut out: Vec<Poly> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                Poly::zero()
            } else {
                x.num() * &l.div_exact(x.den()).expect("lcm is a multiple")
            }
        })
        .collect();
    let mut content = Poly::zero();
    for p in out.iter().filter(|p| !p.is_zero()) {
        content = if content.is_zero() { p.clone() } else { gcd(&content, p) };
        if content.is_constant() {
            break;
        }
    }
    let mut scale = Rat::from(l);
    if !content.is_zero() && !content.is_constant() {
        for p in out.iter_mut().filter(|p| !p.is_zero()) {
            *p = p.div_exact(&content).expect("content divides");
        }
        scale = scale.checked_div(&Rat::from(content)).expect("nonzero content");
    }
    (out, scale)
}

fn pivot_weight(p: &Poly) -> (i32, usize) {
    (p.total_degree(), p.len())
}

struct Forward {
    rows: Vec<Vec<Poly>>,
    pivots: Vec<usize>,
    odd_swaps: bool,
    dropped: bool,
}

/// Bareiss elimination to row echelon form; zero rows are discarded as soon
/// as they appear.
fn forward(mut a: Vec<Vec<Poly>>, cols: usize) -> Forward {
    let before = a.len();
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut dropped = a.len() != before;
    let mut prev = Poly::one();
    let mut pivots = Vec::new();
    let mut odd_swaps = false;
    let mut k = 0;
    for c in 0..cols {
        if k == a.len() {
            break;
        }
        let best = (k..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (pivot_weight(&a[i][c]), i));
        let p = match best {
            Some(p) => p,
            None => continue,
        };
        if p != k {
            a.swap(p, k);
            odd_swaps = !odd_swaps;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let prow = &head[k];
        let piv = &prow[c];
        let prev_ref = &prev;
        exec::for_each_mut(tail, |row| {
            let f = std::mem::replace(&mut row[c], Poly::zero());
            for j in c + 1..cols {
                let t = if f.is_zero() || prow[j].is_zero() {
                    piv * &row[j]
                } else {
                    &(piv * &row[j]) - &(&f * &prow[j])
                };
                row[j] = if prev_ref.is_one() {
                    t
                } else {
                    t.div_exact(prev_ref).expect("Bareiss division is exact")
                };
            }
        });
        prev = head[k][c].clone();
        pivots.push(c);
        k += 1;
        let before = a.len();
        let mut idx = 0;
        a.retain(|r| {
            idx += 1;
            idx <= k || r.iter().any(|x| !x.is_zero())
        });
        dropped |= a.len() != before;
    }
    a.truncate(k);
    Forward {
        rows: a,
        pivots,
        odd_swaps,
        dropped,
    }
}

/// Reduced row echelon form over the fraction field.
pub fn rref(m: &Mat) -> Echelon {
    let cols = m.cols();
    let cleared: Vec<Vec<Poly>> = exec::map_range(m.rows(), |r| clear_row(m.row(r)).0);
    let fw = forward(cleared, cols);
    let rank = fw.pivots.len();
    let mut rows: Vec<Vec<Rat>> = exec::map_range(rank, |t| {
        let row = &fw.rows[t];
        let piv = row[fw.pivots[t]].clone();
        row.iter()
            .map(|x| {
                if x.is_zero() {
                    Rat::zero()
                } else {
                    Rat::normalize(x.clone(), piv.clone()).expect("nonzero pivot")
                }
            })
            .collect()
    });
    for t in (1..rank).rev() {
        let pc = fw.pivots[t];
        let (above, rest) = rows.split_at_mut(t);
        let prow = &rest[0];
        exec::for_each_mut(above, |row| {
            let f = std::mem::take(&mut row[pc]);
            if f.is_zero() {
                return;
            }
            for j in pc + 1..cols {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &(&f * &prow[j]);
                }
            }
        });
    }
    let mut out = Mat::zeros(m.rows(), cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, x) in row.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Echelon {
        matrix: out,
        rank,
        pivots: fw.pivots,
    }
}

pub fn rank(m: &Mat) -> usize {
    let cleared: Vec<Vec<Poly>> = exec::map_range(m.rows(), |r| clear_row(m.row(r)).0);
    forward(cleared, m.cols()).pivots.len()
}

/// Basis of the right kernel, one vector per free column.
pub fn nullspace(m: &Mat) -> Vec<Vec<Rat>> {
    let e = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (t, &pc) in e.pivots.iter().enumerate() {
                v[pc] = -e.matrix.get(t, f);
            }
            v
        })
        .collect()
}

pub fn invert(m: &Mat) -> Result<Mat, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Shape("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    if m.is_diagonal() {
        let d: Result<Vec<Rat>, _> = (0..n).map(|i| m.get(i, i).recip()).collect();
        return d.map(Mat::diag).map_err(|_| LinalgError::Singular);
    }
    let aug = Mat::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let e = rref(&aug);
    if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    Ok(Mat::from_fn(n, n, |r, c| e.matrix.get(r, n + c).clone()))
}

pub fn det(m: &Mat) -> Result<Rat, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Shape("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rat::one());
    }
    let (cleared, scales): (Vec<Vec<Poly>>, Vec<Rat>) =
        exec::map_range(n, |r| clear_row(m.row(r))).into_iter().unzip();
    if cleared.iter().any(|r| r.iter().all(Poly::is_zero)) {
        return Ok(Rat::zero());
    }
    let fw = forward(cleared, n);
    if fw.dropped || fw.pivots.len() < n {
        return Ok(Rat::zero());
    }
    let mut d = Rat::from(fw.rows[n - 1][n - 1].clone());
    if fw.odd_swaps {
        d = -d;
    }
    let s = scales.iter().fold(Rat::one(), |acc, x| &acc * x);
    Ok(d.checked_div(&s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_rat;

    fn m(rows: &[&[&str]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rat(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_reduced() {
        let e = rref(&Mat::identity(3));
        assert_eq!(e.matrix, Mat::identity(3));
        assert_eq!(e.rank, 3);
    }

    #[test]
    fn zero_has_rank_zero() {
        let e = rref(&Mat::zeros(2, 3));
        assert_eq!(e.rank, 0);
        assert!(e.matrix.is_zero());
        assert_eq!(nullspace(&Mat::zeros(3, 3)).len(), 3);
    }

    #[test]
    fn proportional_rows() {
        assert_eq!(rank(&m(&[&["1", "z"], &["z", "z^2"]])), 1);
    }

    #[test]
    fn symbolic_inverse_round_trip() {
        let a = m(&[&["a", "b"], &["c", "z"]]);
        let inv = invert(&a).unwrap();
        assert!((&a * &inv).is_identity());
        let d = det(&a).unwrap();
        assert_eq!(d, parse_rat("a*z - b*c").unwrap());
    }

    #[test]
    fn singular_detected() {
        let a = m(&[&["q", "1"], &["q^2", "q"]]);
        assert_eq!(invert(&a), Err(LinalgError::Singular));
        assert!(det(&a).unwrap().is_zero());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&["1", "q", "z"], &["q", "q^2", "q*z"], &["1/(z-1)", "0", "1"]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        let col = Mat::column(ns[0].clone());
        assert!((&a * &col).is_zero());
    }

    #[test]
    fn determinant_tracks_swaps() {
        let a = m(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(det(&a).unwrap(), Rat::int(-1));
        let b = m(&[&["z", "1", "0"], &["0", "0", "q"], &["1", "z", "0"]]);
        assert_eq!(det(&b).unwrap(), parse_rat("-q*z^2 + q").unwrap());
    }
}
