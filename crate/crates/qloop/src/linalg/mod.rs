//! Dense matrices over the rational-function field.

mod closure;
mod elim;
mod intertwine;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;
use thiserror::Error;

use crate::exec;
use crate::scalars::{rat_to_latex, Rat, ScalarError, Var};

pub use closure::{algebra_closure, Closure};
pub use intertwine::{full_support, intertwiner_space};
pub use elim::{rank, rref, Echelon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major dense matrix of canonical rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn diag(entries: Vec<Rat>) -> Mat {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Matrix unit `e_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        m.set(i, j, Rat::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Column vector.
    pub fn column(v: Vec<Rat>) -> Mat {
        Mat {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rat) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Positions of nonzero entries, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_zero() {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Rat) -> Result<Rat, ScalarError>) -> Result<Mat, ScalarError> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Entrywise substitution of variables.
    pub fn substitute(&self, assign: &[(Var, Rat)]) -> Result<Mat, ScalarError> {
        let data: Result<Vec<Rat>, ScalarError> =
            exec::map(&self.data, |x| x.substitute(assign)).into_iter().collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    /// Matrix product; rows of the result are computed independently.
    pub fn mul(&self, o: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let rows = exec::map_range(self.rows, |r| {
            let lhs = self.row(r);
            (0..o.cols)
                .map(|c| {
                    let mut acc = Rat::zero();
                    for (k, a) in lhs.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let b = o.get(k, c);
                        if !b.is_zero() {
                            acc = &acc + &(a * b);
                        }
                    }
                    acc
                })
                .collect::<Vec<_>>()
        });
        Ok(Mat {
            rows: self.rows,
            cols: o.cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    fn zip(&self, o: &Mat, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Mat, LinalgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &Mat) -> Result<Mat, LinalgError> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Mat) -> Result<Mat, LinalgError> {
        self.zip(o, |a, b| a - b)
    }

    /// Kronecker product `self ⊗ o` in the lexicographic basis.
    pub fn kron(&self, o: &Mat) -> Mat {
        let (r2, c2) = (o.rows, o.cols);
        Mat::from_fn(self.rows * r2, self.cols * c2, |r, c| {
            let a = self.get(r / r2, c / c2);
            if a.is_zero() {
                return Rat::zero();
            }
            a * o.get(r % r2, c % c2)
        })
    }

    /// `P M P^{-1}` for the permutation sending basis index `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(perm[r], perm[c], self.get(r, c).clone());
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).fold(Rat::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, o: &Mat) -> Mat {
        &(self * o) - &(o * self)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|x| !x.is_zero())
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn vec(&self) -> &[Rat] {
        &self.data
    }

    /// Reshapes a vector of length `rows * cols`, row-major.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Mat, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn invert(&self) -> Result<Mat, LinalgError> {
        elim::invert(self)
    }

    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        elim::nullspace(self)
    }

    pub fn det(&self) -> Result<Rat, LinalgError> {
        elim::det(self)
    }

    pub fn rank(&self) -> usize {
        elim::rank(self)
    }

    /// Rows of canonical text entries.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::from(
            self.to_strings()
                .into_iter()
                .map(Value::from)
                .collect::<Vec<_>>(),
        )
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::from("\\begin{pmatrix}\n");
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(rat_to_latex).collect();
            s.push_str(&row.join(" & "));
            s.push_str(if r + 1 < self.rows { " \\\\\n" } else { "\n" });
        }
        s.push_str("\\end{pmatrix}");
        s
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        Mat::mul(self, o).expect("compatible shapes")
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        Mat::add(self, o).expect("equal shapes")
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        Mat::sub(self, o).expect("equal shapes")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.map(|x| -x)
    }
}

/// Applies a matrix to a column vector.
pub fn apply(m: &Mat, v: &[Rat]) -> Vec<Rat> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rat::zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}
