//! Bilinear maps `V × V -> V` of a fixed degree, stored as dense structure
//! constants per degree pair.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{BasisRef, Element, GradedSpace};
use crate::linalg::{zeros, Matrix, Scalar};

/// For each pair of source degrees `(i, j)`, a matrix
/// `V^{i+j+s} × (V^i ⊗ V^j)` whose column `a * dim V^j + b` is the image of
/// the pair `(e_a, e_b)`.
#[derive(Clone, Debug)]
pub struct Bilinear {
    space: GradedSpace,
    degree: i32,
    blocks: BTreeMap<(i32, i32), Matrix>,
}

impl PartialEq for Bilinear {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.degree == other.degree
            && self.space.basis().iter().all(|&a| {
                self.space.basis().iter().all(|&b| self.apply_basis(a, b) == other.apply_basis(a, b))
            })
    }
}

impl Bilinear {
    pub fn zero(space: &GradedSpace, degree: i32) -> Self {
        Bilinear { space: space.clone(), degree, blocks: BTreeMap::new() }
    }

    pub fn from_fn(
        space: &GradedSpace,
        degree: i32,
        mut f: impl FnMut(BasisRef, BasisRef) -> Vec<Scalar>,
    ) -> Self {
        let mut out = Bilinear::zero(space, degree);
        for i in space.support() {
            for j in space.support() {
                let rows = space.dim(i + j + degree);
                if rows == 0 {
                    continue;
                }
                let mut cols = Vec::with_capacity(space.dim(i) * space.dim(j));
                for a in space.basis_in(i) {
                    for b in space.basis_in(j) {
                        cols.push(f(a, b));
                    }
                }
                let m = Matrix::from_cols(rows, &cols);
                if !m.is_zero() {
                    out.blocks.insert((i, j), m);
                }
            }
        }
        out
    }

    /// Builds from `(a, b, c, value)` entries meaning `μ(a, b)` has coefficient
    /// `value` on `c`. Repeated entries add up.
    pub fn from_entries(
        space: &GradedSpace,
        degree: i32,
        entries: &[(BasisRef, BasisRef, BasisRef, Scalar)],
    ) -> Result<Self> {
        let mut out = Bilinear::zero(space, degree);
        for (a, b, c, v) in entries {
            for r in [a, b, c] {
                if r.index >= space.dim(r.degree) {
                    return Err(Error::Shape(format!("basis vector {r} does not exist")));
                }
            }
            if c.degree != a.degree + b.degree + degree {
                return Err(Error::Degree { expected: a.degree + b.degree + degree, found: c.degree });
            }
            out.add_entry(*a, *b, c.index, v);
        }
        Ok(out)
    }

    fn add_entry(&mut self, a: BasisRef, b: BasisRef, row: usize, v: &Scalar) {
        let (rows, cols) = (self.space.dim(a.degree + b.degree + self.degree), self.space.dim(a.degree) * self.space.dim(b.degree));
        let m = self.blocks.entry((a.degree, b.degree)).or_insert_with(|| Matrix::zero(rows, cols));
        m.add_at(row, a.index * self.space.dim(b.degree) + b.index, v);
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn blocks(&self) -> &BTreeMap<(i32, i32), Matrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// Nonzero structure constants `(a, b, c, value)` in basis order.
    pub fn entries(&self) -> Vec<(BasisRef, BasisRef, BasisRef, Scalar)> {
        let mut out = Vec::new();
        for (&(i, j), m) in &self.blocks {
            let dj = self.space.dim(j);
            for col in 0..m.cols() {
                for row in 0..m.rows() {
                    let v = m.get(row, col);
                    if !v.is_zero() {
                        out.push((
                            BasisRef { degree: i, index: col / dj },
                            BasisRef { degree: j, index: col % dj },
                            BasisRef { degree: i + j + self.degree, index: row },
                            v.clone(),
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn apply_basis(&self, a: BasisRef, b: BasisRef) -> Element {
        let degree = a.degree + b.degree + self.degree;
        let coeffs = match self.blocks.get(&(a.degree, b.degree)) {
            Some(m) => m.col(a.index * self.space.dim(b.degree) + b.index),
            None => zeros(self.space.dim(degree)),
        };
        Element::new(degree, coeffs)
    }

    pub fn apply(&self, x: &Element, y: &Element) -> Element {
        let degree = x.degree + y.degree + self.degree;
        let mut out = zeros(self.space.dim(degree));
        if let Some(m) = self.blocks.get(&(x.degree, y.degree)) {
            let dj = self.space.dim(y.degree);
            for (a, xa) in x.coeffs.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for (b, yb) in y.coeffs.iter().enumerate() {
                    if yb.is_zero() {
                        continue;
                    }
                    let c = xa * yb;
                    let col = a * dj + b;
                    for (r, o) in out.iter_mut().enumerate() {
                        let v = m.get(r, col);
                        if !v.is_zero() {
                            *o += &c * v;
                        }
                    }
                }
            }
        }
        Element::new(degree, out)
    }

    pub fn add(&self, other: &Bilinear) -> Bilinear {
        let mut out = self.clone();
        for (a, b, c, v) in other.entries() {
            out.add_entry(a, b, c.index, &v);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Bilinear {
        Bilinear {
            space: self.space.clone(),
            degree: self.degree,
            blocks: self.blocks.iter().map(|(&k, m)| (k, m.scale(s))).collect(),
        }
    }

    /// `(x, y) ↦ μ(y, x)`.
    pub fn swapped(&self) -> Bilinear {
        Bilinear::from_fn(&self.space, self.degree, |a, b| self.apply_basis(b, a).coeffs)
    }

    /// Transports the operation along a change of space: `new(a, b) =
    /// out(μ(in(a), in(b)))`.
    pub fn transport(
        &self,
        space: &GradedSpace,
        into: impl Fn(BasisRef) -> Element,
        out: impl Fn(&Element) -> Vec<Scalar>,
    ) -> Bilinear {
        Bilinear::from_fn(space, self.degree, |a, b| out(&self.apply(&into(a), &into(b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn b(d: i32, i: usize) -> BasisRef {
        BasisRef { degree: d, index: i }
    }

    #[test]
    fn entries_round_trip() {
        let v = GradedSpace::new(0, vec![2, 1]);
        let mu = Bilinear::from_entries(
            &v,
            0,
            &[(b(0, 1), b(1, 0), b(1, 0), int(3)), (b(0, 0), b(0, 1), b(0, 0), int(-2))],
        )
        .unwrap();
        let again = Bilinear::from_entries(&v, 0, &mu.entries()).unwrap();
        assert_eq!(mu, again);
        assert_eq!(mu.apply_basis(b(0, 1), b(1, 0)).coeffs, vec![int(3)]);
        assert!(mu.apply_basis(b(1, 0), b(0, 1)).is_zero());
    }

    #[test]
    fn apply_is_bilinear() {
        let v = GradedSpace::new(0, vec![2]);
        let mu = Bilinear::from_fn(&v, 0, |a, c| vec![int((a.index + 2 * c.index) as i64), int(1)]);
        let x = Element::new(0, vec![int(2), int(-1)]);
        let y = Element::new(0, vec![int(1), int(5)]);
        let direct = mu.apply(&x, &y);
        let mut expanded = Element::zero(&v, 0);
        for (i, xi) in x.coeffs.iter().enumerate() {
            for (j, yj) in y.coeffs.iter().enumerate() {
                expanded.axpy(&(xi * yj), &mu.apply_basis(b(0, i), b(0, j)));
            }
        }
        assert_eq!(direct, expanded);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let v = GradedSpace::new(0, vec![1, 1]);
        let err = Bilinear::from_entries(&v, 0, &[(b(0, 0), b(0, 0), b(1, 0), int(1))]);
        assert!(matches!(err, Err(Error::Degree { .. })));
    }
}
