//! Dense matrices and vectors over exact rationals.
//!
//! Everything here is deterministic: Gaussian elimination always picks the
//! first nonzero entry of a column as pivot, kernels are built from the free
//! columns in increasing order, and particular solutions set free variables
//! to zero.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^n` as a scalar.
pub fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `true` when `(-1)^n = -1`.
pub fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Scalar::from_integer(acc)
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Scalar::new(p, q))
        }
        None => Some(Scalar::from_integer(s.parse().ok()?)),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serde adapter storing scalars as `"p/q"` strings.
pub mod scalar_serde {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let raw = String::deserialize(d)?;
        parse_scalar(&raw).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{raw}`")))
    }
}

/// Serde adapter for `Vec<Scalar>`.
pub mod vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<String> = v.iter().map(format_scalar).collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|r| {
                parse_scalar(r).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{r}`")))
            })
            .collect()
    }
}

pub fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn add_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vec(a: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|v| a * v).collect()
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MatrixRepr", try_from = "MatrixRepr")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> Self {
        let entries = (0..m.rows).map(|r| m.row(r).iter().map(format_scalar).collect()).collect();
        MatrixRepr { rows: m.rows, cols: m.cols, entries }
    }
}

impl TryFrom<MatrixRepr> for Matrix {
    type Error = String;

    fn try_from(r: MatrixRepr) -> std::result::Result<Self, String> {
        let mut rows = Vec::with_capacity(r.rows);
        for row in &r.entries {
            let parsed: Option<Vec<Scalar>> = row.iter().map(|x| parse_scalar(x)).collect();
            rows.push(parsed.ok_or_else(|| "bad rational entry".to_string())?);
        }
        Matrix::from_rows(r.rows, r.cols, rows).ok_or_else(|| "matrix shape mismatch".to_string())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Option<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix { rows, cols, data: entries.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn from_int_rows(entries: &[&[i64]]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let data = entries.iter().flat_map(|r| r.iter().map(|&v| int(v))).collect();
        Matrix { rows, cols, data }
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

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zeros(self.rows);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &other.data) }
    }

    pub fn scale(&self, a: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(a, &self.data) }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `self` to the left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = &m.data[row * m.cols + c] * &inv;
                m.data[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let delta = &factor * &m.data[row * m.cols + c];
                    if !delta.is_zero() {
                        m.data[r * m.cols + c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of the null space: one vector per free column, with a 1 in that
    /// column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = zeros(self.cols);
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// A solution of `self * x = b` with all free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn max_abs_entry(&self) -> Scalar {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero)
    }
}

/// Row-reduced basis of the span of `vectors` (all of length `n`).
pub fn span_basis(n: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.len(), n, vectors.to_vec()).expect("vector length mismatch");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn rank_of(n: usize, vectors: &[Vec<Scalar>]) -> usize {
    span_basis(n, vectors).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("3/6"), Some(frac(1, 2)));
        assert_eq!(parse_scalar("-4"), Some(int(-4)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(format_scalar(&frac(-2, 4)), "-1/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }

    #[test]
    fn hand_multiplied_product() {
        let a = Matrix::from_rows(2, 2, vec![vec![frac(1, 2), int(3)], vec![int(-1), frac(2, 3)]]).unwrap();
        let b = Matrix::from_rows(2, 2, vec![vec![int(2), frac(-1, 3)], vec![frac(1, 4), int(5)]]).unwrap();
        // [1/2*2 + 3*1/4, 1/2*(-1/3) + 3*5] = [7/4, 89/6]
        // [-1*2 + 2/3*1/4, -1*(-1/3) + 2/3*5] = [-11/6, 11/3]
        let expected =
            Matrix::from_rows(2, 2, vec![vec![frac(7, 4), frac(89, 6)], vec![frac(-11, 6), frac(11, 3)]]).unwrap();
        assert_eq!(a.mul(&b), expected);
    }

    #[test]
    fn kernel_and_rank() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[int(1), int(2)]).is_none());
        let x = m.solve(&[int(3), int(3)]).unwrap();
        assert_eq!(x, vec![int(3), int(0)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn signs() {
        assert_eq!(sign(-3), int(-1));
        assert_eq!(sign(4), int(1));
        assert!(odd(-1));
    }
}
