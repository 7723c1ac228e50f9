//! Exact linear algebra over the rationals.
//!
//! Every subspace is stored through the reduced row-echelon form of a
//! spanning set, so two subspaces are equal exactly when their bases are
//! equal as matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qv(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_int_rows(cols: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(cols, rows.iter().map(|r| qv(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.row_iter().map(<[Scalar]>::to_vec).collect()
    }

    pub fn push_row(&mut self, row: &[Scalar]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.row_iter().map(|row| dot(row, v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let ot = other.transpose();
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                out.set(r, c, dot(self.row(r), ot.row(c)));
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; rows past `rank` are zero.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    /// The nonzero rows only.
    pub fn basis(&self) -> Matrix {
        Matrix {
            rows: self.rank,
            cols: self.matrix.cols,
            data: self.matrix.data[..self.rank * self.matrix.cols].to_vec(),
        }
    }
}

pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        let pivot_row: Vec<Scalar> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let factor = a.get(i, c).clone();
            for (j, p) in pivot_row.iter().enumerate().skip(c) {
                if p.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &factor * p;
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: r,
        pivots,
    }
}

/// Null space `{v : m v = 0}` with its canonical basis.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let red = rref(m);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    let mut vectors = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Scalar::zero(); n];
        v[f] = Scalar::one();
        for (i, &p) in red.pivots.iter().enumerate() {
            let e = red.matrix.get(i, f);
            if !e.is_zero() {
                v[p] = -e.clone();
            }
        }
        vectors.push(v);
    }
    Subspace::span(n, vectors).expect("kernel vectors have the ambient length")
}

/// A linear subspace of `Q^n`, stored as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        Ok(Self::row_space(&Matrix::from_rows(ambient, vectors)?))
    }

    pub fn row_space(m: &Matrix) -> Self {
        let red = rref(m);
        Subspace {
            basis: red.basis(),
            pivots: red.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: n,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        self.check_ambient(v.len())?;
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(self.basis.row_iter()) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= c * b;
                }
            }
        }
        Ok(is_zero_vec(&residual).then_some(coords))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient_dim())?;
        for row in other.basis.row_iter() {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim())?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Vectors `w` with `v . w = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        kernel_basis(&self.basis)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim())?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(kernel_basis(&a.basis.vstack(&b.basis)?))
    }
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn subspace_intersection(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersection(b)
}

/// Scales a nonzero rational vector to a primitive integer vector whose
/// first nonzero entry is positive.
pub fn primitive_integer(v: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &g * &sign))
        .collect()
}
