//! Dense exact linear algebra over the rationals.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::poly::Scalar;

pub type RationalVector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<RationalVector>, cols: usize) -> Result<Matrix, Error> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RationalVector], rows: usize) -> Result<Matrix, Error> {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_integers<const C: usize>(rows: &[[i64; C]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_integer(v.into())).collect())
            .collect();
        Matrix::from_rows(rows, C).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RationalVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<RationalVector, Error> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rows of rational strings, for debugging output.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

fn size(v: &Scalar) -> u64 {
    v.numer().bits() + v.denom().bits()
}

/// Reduced row echelon form and the pivot columns.
///
/// Pivots are chosen by smallest coefficient size to limit growth; the
/// result does not depend on that choice.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows)
            .filter(|&i| !a[(i, c)].is_zero())
            .min_by_key(|&i| size(&a[(i, c)]))
        else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = &a[(i, j)] - &f * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// The factor that makes `v` integral with content 1 and its first nonzero
/// entry positive. Returns 1 for the zero vector.
pub fn primitive_factor(v: &[Scalar]) -> Scalar {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(&(x.numer() * (&den / x.denom())));
    }
    if g.is_zero() {
        return Scalar::one();
    }
    let sign = match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    Scalar::new(sign * den, g)
}

/// Scales `v` by [`primitive_factor`].
pub fn primitive(v: &[Scalar]) -> RationalVector {
    let f = primitive_factor(v);
    v.iter().map(|x| x * &f).collect()
}

/// A basis of `{v : m v = 0}`.
///
/// One vector per free column `f` of the rref: it has a positive entry at
/// `f`, zeros at the other free columns, and is scaled to integers with
/// content 1.
pub fn nullspace(m: &Matrix) -> Vec<RationalVector> {
    let (r, pivots) = rref(m);
    let mut out = Vec::new();
    let mut next_pivot = 0;
    for f in 0..m.cols {
        if pivots.get(next_pivot) == Some(&f) {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Scalar::zero(); m.cols];
        v[f] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, f)].clone();
        }
        let mut den = BigInt::one();
        for x in &v {
            den = den.lcm(x.denom());
        }
        let mut g = BigInt::zero();
        for x in &v {
            g = g.gcd(&(x.numer() * (&den / x.denom())));
        }
        let factor = Scalar::new(den, g);
        out.push(v.iter().map(|x| x * &factor).collect());
    }
    out
}

/// Coefficients `c` with `sum c_i basis_i = v`, or `None` if `v` is outside
/// the span. Free coefficients are set to zero.
pub fn in_span(basis: &[RationalVector], v: &[Scalar]) -> Result<Option<RationalVector>, Error> {
    let n = v.len();
    if let Some(b) = basis.iter().find(|b| b.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut cols = basis.to_vec();
    cols.push(v.to_vec());
    let aug = Matrix::from_columns(&cols, n)?;
    let (r, pivots) = rref(&aug);
    let k = basis.len();
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![Scalar::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        coeffs[p] = r[(i, k)].clone();
    }
    Ok(Some(coeffs))
}

/// An incrementally maintained row-reduced spanning set.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    dim: usize,
    /// Echelon rows, each with pivot entry 1.
    rows: Vec<(usize, RationalVector)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> RowSpace {
        RowSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> RationalVector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, Error> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        Ok(true)
    }

    /// The reduced echelon rows, in pivot order.
    pub fn basis(&self) -> Vec<RationalVector> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}
