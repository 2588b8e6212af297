//! Finite-dimensional graded vector spaces, homogeneous elements, homogeneous
//! linear maps and graded subspaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, is_zero_vec, sign, span_basis, zeros, Matrix, Scalar};

/// A basis vector, addressed by degree and position inside that degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisRef {
    pub degree: i32,
    pub index: usize,
}

impl fmt::Display for BasisRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.degree, self.index)
    }
}

/// Graded vector space `V = ⊕ V^i` with an explicit support window.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedSpace {
    min: i32,
    dims: Vec<usize>,
    names: Vec<Vec<String>>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        let lo = self.min.min(other.min);
        let hi = self.window_max().max(other.window_max());
        (lo..=hi).all(|i| self.dim(i) == other.dim(i))
    }
}

impl Eq for GradedSpace {}

fn default_name(degree: i32, index: usize) -> String {
    format!("e{degree}_{index}")
}

impl GradedSpace {
    /// Space with `dims[j]` basis vectors in degree `min + j`.
    pub fn new(min: i32, dims: Vec<usize>) -> Self {
        let names = dims
            .iter()
            .enumerate()
            .map(|(j, &n)| (0..n).map(|i| default_name(min + j as i32, i)).collect())
            .collect();
        GradedSpace { min, dims, names }
    }

    pub fn with_names(min: i32, names: Vec<Vec<String>>) -> Self {
        let dims = names.iter().map(Vec::len).collect();
        GradedSpace { min, dims, names }
    }

    /// Space built from `(degree, dim)` pairs; degrees may repeat (dims add up).
    pub fn from_dims(pairs: &[(i32, usize)]) -> Self {
        let mut map: BTreeMap<i32, usize> = BTreeMap::new();
        for &(d, n) in pairs {
            *map.entry(d).or_default() += n;
        }
        let (Some(&lo), Some(&hi)) = (map.keys().next(), map.keys().next_back()) else {
            return GradedSpace::zero();
        };
        GradedSpace::new(lo, (lo..=hi).map(|d| map.get(&d).copied().unwrap_or(0)).collect())
    }

    pub fn zero() -> Self {
        GradedSpace { min: 0, dims: Vec::new(), names: Vec::new() }
    }

    pub fn window_min(&self) -> i32 {
        self.min
    }

    pub fn window_max(&self) -> i32 {
        self.min + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, degree: i32) -> usize {
        if degree < self.min {
            return 0;
        }
        self.dims.get((degree - self.min) as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Degrees in the declared window, in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.min..self.min + self.dims.len() as i32
    }

    /// Degrees with a nonzero component, in increasing order.
    pub fn support(&self) -> Vec<i32> {
        self.degrees().filter(|&d| self.dim(d) > 0).collect()
    }

    /// Lowest and highest degree with a nonzero component.
    pub fn support_bounds(&self) -> Option<(i32, i32)> {
        let s = self.support();
        Some((*s.first()?, *s.last()?))
    }

    pub fn name(&self, b: BasisRef) -> &str {
        &self.names[(b.degree - self.min) as usize][b.index]
    }

    pub fn names_in(&self, degree: i32) -> &[String] {
        if self.dim(degree) == 0 {
            return &[];
        }
        &self.names[(degree - self.min) as usize]
    }

    pub fn find_name(&self, name: &str) -> Option<BasisRef> {
        self.basis().into_iter().find(|&b| self.name(b) == name)
    }

    /// All basis vectors ordered by `(degree, index)`.
    pub fn basis(&self) -> Vec<BasisRef> {
        self.degrees()
            .flat_map(|d| (0..self.dim(d)).map(move |index| BasisRef { degree: d, index }))
            .collect()
    }

    pub fn basis_in(&self, degree: i32) -> Vec<BasisRef> {
        (0..self.dim(degree)).map(|index| BasisRef { degree, index }).collect()
    }

    /// `V ⊕ W`; in each degree the basis of `V` comes first.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min.min(other.min);
        let hi = self.window_max().max(other.window_max());
        let names = (lo..=hi)
            .map(|d| {
                let mut n = self.names_in(d).to_vec();
                n.extend(other.names_in(d).iter().cloned());
                n
            })
            .collect();
        GradedSpace::with_names(lo, names)
    }

    /// `V[k]` with `V[k]^i = V^{i+k}`.
    pub fn shift(&self, k: i32) -> GradedSpace {
        GradedSpace { min: self.min - k, dims: self.dims.clone(), names: self.names.clone() }
    }

    /// Space with the given degree window and per-degree names (for building
    /// derived spaces such as tensor or Hom spaces).
    pub fn rename(&self, f: impl Fn(BasisRef, &str) -> String) -> GradedSpace {
        let names = self
            .degrees()
            .map(|d| self.basis_in(d).into_iter().map(|b| f(b, self.name(b))).collect())
            .collect();
        GradedSpace::with_names(self.min, names)
    }
}

/// Homogeneous element of a graded space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Element {
    pub degree: i32,
    #[serde(with = "linalg::vec_serde")]
    pub coeffs: Vec<Scalar>,
}

impl Element {
    pub fn new(degree: i32, coeffs: Vec<Scalar>) -> Self {
        Element { degree, coeffs }
    }

    pub fn zero(space: &GradedSpace, degree: i32) -> Self {
        Element { degree, coeffs: zeros(space.dim(degree)) }
    }

    pub fn basis(space: &GradedSpace, b: BasisRef) -> Self {
        Element { degree: b.degree, coeffs: linalg::unit(space.dim(b.degree), b.index) }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        Element { degree: self.degree, coeffs: linalg::add_vec(&self.coeffs, &other.coeffs) }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.degree, other.degree, "subtracting elements of different degrees");
        Element { degree: self.degree, coeffs: linalg::sub_vec(&self.coeffs, &other.coeffs) }
    }

    pub fn scale(&self, a: &Scalar) -> Element {
        Element { degree: self.degree, coeffs: linalg::scale_vec(a, &self.coeffs) }
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
    }

    pub fn axpy(&mut self, a: &Scalar, x: &Element) {
        assert_eq!(self.degree, x.degree);
        linalg::axpy(&mut self.coeffs, a, &x.coeffs);
    }

    pub fn check_in(&self, space: &GradedSpace) -> Result<()> {
        if self.coeffs.len() != space.dim(self.degree) {
            return Err(Error::Shape(format!(
                "element of degree {} has {} coefficients, space has dimension {}",
                self.degree,
                self.coeffs.len(),
                space.dim(self.degree)
            )));
        }
        Ok(())
    }
}

/// Linear map of fixed degree `s`, one matrix `V^i -> W^{i+s}` per source
/// degree. Absent blocks are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.degree == other.degree
            && self.sub(other).map(|m| m.is_zero()).unwrap_or(false)
    }
}

impl GradedMap {
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        degree: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (i, m) in blocks {
            let (rows, cols) = (target.dim(i + degree), source.dim(i));
            if m.rows() != rows || m.cols() != cols {
                if rows * cols == 0 && m.is_zero() {
                    continue;
                }
                return Err(Error::Shape(format!(
                    "block at source degree {i} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            if rows * cols > 0 {
                kept.insert(i, m);
            }
        }
        Ok(GradedMap { source, target, degree, blocks: kept })
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace, degree: i32) -> Self {
        GradedMap { source: source.clone(), target: target.clone(), degree, blocks: BTreeMap::new() }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let blocks = space
            .support()
            .into_iter()
            .map(|d| (d, Matrix::identity(space.dim(d))))
            .collect();
        GradedMap { source: space.clone(), target: space.clone(), degree: 0, blocks }
    }

    /// Builds a map from the images of the basis vectors.
    pub fn from_fn(
        source: &GradedSpace,
        target: &GradedSpace,
        degree: i32,
        mut image: impl FnMut(BasisRef) -> Vec<Scalar>,
    ) -> Self {
        let mut blocks = BTreeMap::new();
        for d in source.support() {
            let rows = target.dim(d + degree);
            if rows == 0 {
                continue;
            }
            let cols: Vec<Vec<Scalar>> = source.basis_in(d).into_iter().map(&mut image).collect();
            let m = Matrix::from_cols(rows, &cols);
            if !m.is_zero() {
                blocks.insert(d, m);
            }
        }
        GradedMap { source: source.clone(), target: target.clone(), degree, blocks }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    /// Matrix `V^i -> W^{i+s}` (zero when absent).
    pub fn block(&self, i: i32) -> Matrix {
        self.blocks
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.target.dim(i + self.degree), self.source.dim(i)))
    }

    pub fn apply(&self, x: &Element) -> Element {
        let rows = self.target.dim(x.degree + self.degree);
        let coeffs = match self.blocks.get(&x.degree) {
            Some(m) => m.mul_vec(&x.coeffs),
            None => zeros(rows),
        };
        Element { degree: x.degree + self.degree, coeffs }
    }

    pub fn apply_basis(&self, b: BasisRef) -> Element {
        let rows = self.target.dim(b.degree + self.degree);
        let coeffs = match self.blocks.get(&b.degree) {
            Some(m) => m.col(b.index),
            None => zeros(rows),
        };
        Element { degree: b.degree + self.degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::Shape("compose: target of g differs from source of f".into()));
        }
        let mut blocks = BTreeMap::new();
        for (&i, g) in &other.blocks {
            if let Some(f) = self.blocks.get(&(i + other.degree)) {
                let m = f.mul(g);
                if !m.is_zero() {
                    blocks.insert(i, m);
                }
            }
        }
        Ok(GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree + other.degree,
            blocks,
        })
    }

    fn combine(&self, other: &GradedMap, a: &Scalar) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Shape("combining maps with different shapes".into()));
        }
        let mut blocks = self.blocks.clone();
        for (&i, m) in &other.blocks {
            let scaled = m.scale(a);
            let entry = blocks.remove(&i);
            let sum = match entry {
                Some(e) => e.add(&scaled),
                None => scaled,
            };
            if !sum.is_zero() {
                blocks.insert(i, sum);
            }
        }
        Ok(GradedMap { source: self.source.clone(), target: self.target.clone(), degree: self.degree, blocks })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, &-Scalar::one())
    }

    pub fn scale(&self, a: &Scalar) -> GradedMap {
        let blocks = if a.is_zero() {
            BTreeMap::new()
        } else {
            self.blocks.iter().map(|(&i, m)| (i, m.scale(a))).collect()
        };
        GradedMap { source: self.source.clone(), target: self.target.clone(), degree: self.degree, blocks }
    }

    /// Same matrices, reinterpreted between other spaces (used for shifts).
    /// Block `i` of `self` becomes block `i - source_shift` of the result.
    pub fn regrade(
        &self,
        source: GradedSpace,
        target: GradedSpace,
        degree: i32,
        source_shift: i32,
    ) -> Result<GradedMap> {
        let blocks = self.blocks.iter().map(|(&i, m)| (i - source_shift, m.clone())).collect();
        GradedMap::new(source, target, degree, blocks)
    }

    /// Rank of each nonzero block.
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        self.source.support().into_iter().map(|d| (d, self.block(d).rank())).collect()
    }

    /// `[f, g] = fg - (-1)^{|f||g|} gf` for endomaps of one space.
    pub fn graded_commutator(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != self.target || other.source != other.target || self.source != other.source {
            return Err(Error::Shape("graded commutator needs endomaps of one space".into()));
        }
        let fg = self.compose(other)?;
        let gf = other.compose(self)?;
        fg.combine(&gf, &-sign(self.degree as i64 * other.degree as i64))
    }

    /// First basis vector where `self` and `other` differ.
    pub fn first_difference(&self, other: &GradedMap) -> Option<BasisRef> {
        self.source
            .basis()
            .into_iter()
            .find(|&b| self.apply_basis(b) != other.apply_basis(b))
    }
}

/// Graded subspace given by a reduced row echelon basis in each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: GradedSpace,
    rows: BTreeMap<i32, Vec<Vec<Scalar>>>,
}

impl Subspace {
    pub fn zero(ambient: &GradedSpace) -> Self {
        Subspace { ambient: ambient.clone(), rows: BTreeMap::new() }
    }

    pub fn full(ambient: &GradedSpace) -> Self {
        let rows = ambient
            .support()
            .into_iter()
            .map(|d| (d, (0..ambient.dim(d)).map(|i| linalg::unit(ambient.dim(d), i)).collect()))
            .collect();
        Subspace { ambient: ambient.clone(), rows }
    }

    pub fn span(ambient: &GradedSpace, vectors: &[Element]) -> Result<Self> {
        let mut by_degree: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
        for v in vectors {
            v.check_in(ambient)?;
            by_degree.entry(v.degree).or_default().push(v.coeffs.clone());
        }
        Ok(Self::from_degree_vectors(ambient, by_degree))
    }

    pub fn from_degree_vectors(ambient: &GradedSpace, vectors: BTreeMap<i32, Vec<Vec<Scalar>>>) -> Self {
        let mut rows = BTreeMap::new();
        for (d, vs) in vectors {
            let basis = span_basis(ambient.dim(d), &vs);
            if !basis.is_empty() {
                rows.insert(d, basis);
            }
        }
        Subspace { ambient: ambient.clone(), rows }
    }

    /// Span of the given basis vectors of the ambient space.
    pub fn coordinate(ambient: &GradedSpace, refs: &[BasisRef]) -> Self {
        let vs: Vec<Element> = refs.iter().map(|&b| Element::basis(ambient, b)).collect();
        Self::span(ambient, &vs).expect("basis refs lie in the ambient space")
    }

    pub fn ambient(&self) -> &GradedSpace {
        &self.ambient
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.rows.get(&degree).map_or(0, Vec::len)
    }

    pub fn basis_vectors(&self, degree: i32) -> &[Vec<Scalar>] {
        self.rows.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// The subspace as an abstract graded space (dimension per degree).
    pub fn as_space(&self) -> GradedSpace {
        let pairs: Vec<(i32, usize)> = self.rows.iter().map(|(&d, r)| (d, r.len())).collect();
        GradedSpace::from_dims(&pairs)
    }

    fn pivots(&self, degree: i32) -> Vec<usize> {
        self.basis_vectors(degree)
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("rref rows are nonzero"))
            .collect()
    }

    /// Coordinates of `x` in the echelon basis, or `None` when `x` is not in
    /// the subspace.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Scalar>> {
        let rows = self.basis_vectors(x.degree);
        let pivots = self.pivots(x.degree);
        let coords: Vec<Scalar> = pivots.iter().map(|&p| x.coeffs[p].clone()).collect();
        let mut rebuilt = zeros(x.coeffs.len());
        for (c, r) in coords.iter().zip(rows) {
            linalg::axpy(&mut rebuilt, c, r);
        }
        (rebuilt == x.coeffs).then_some(coords)
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.coordinates(x).is_some()
    }

    /// Inclusion of the abstract subspace into the ambient space.
    pub fn inclusion(&self) -> GradedMap {
        let space = self.as_space();
        GradedMap::from_fn(&space, &self.ambient, 0, |b| self.rows[&b.degree][b.index].clone())
    }

    /// Reduces `x` modulo the subspace and returns its coordinates on the
    /// complementary (non-pivot) unit vectors.
    pub fn quotient_coordinates(&self, x: &Element) -> Vec<Scalar> {
        let rows = self.basis_vectors(x.degree);
        let pivots = self.pivots(x.degree);
        let mut v = x.coeffs.clone();
        for (r, &p) in rows.iter().zip(&pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                linalg::axpy(&mut v, &-c, r);
            }
        }
        (0..v.len()).filter(|i| !pivots.contains(i)).map(|i| v[i].clone()).collect()
    }

    /// Non-pivot unit vectors, a complement of the subspace.
    pub fn complement_indices(&self, degree: i32) -> Vec<usize> {
        let pivots = self.pivots(degree);
        (0..self.ambient.dim(degree)).filter(|i| !pivots.contains(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.values().all(Vec::is_empty)
    }

    pub fn is_full(&self) -> bool {
        self.ambient.degrees().all(|d| self.dim(d) == self.ambient.dim(d))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vectors: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
        for s in [self, other] {
            for (&d, r) in &s.rows {
                vectors.entry(d).or_default().extend(r.iter().cloned());
            }
        }
        Subspace::from_degree_vectors(&self.ambient, vectors)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let mut vectors = BTreeMap::new();
        for (&d, a) in &self.rows {
            let Some(b) = other.rows.get(&d) else { continue };
            let n = self.ambient.dim(d);
            // columns: a_1..a_p, -b_1..-b_q; kernel gives combinations
            let mut cols: Vec<Vec<Scalar>> = a.clone();
            cols.extend(b.iter().map(|v| linalg::scale_vec(&-Scalar::one(), v)));
            let m = Matrix::from_cols(n, &cols);
            let ker = m.kernel();
            let vs: Vec<Vec<Scalar>> = ker
                .iter()
                .map(|k| {
                    let mut v = zeros(n);
                    for (c, row) in k.iter().zip(a) {
                        linalg::axpy(&mut v, c, row);
                    }
                    v
                })
                .collect();
            vectors.insert(d, vs);
        }
        Subspace::from_degree_vectors(&self.ambient, vectors)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|(&d, rows)| {
            rows.iter().all(|r| other.contains(&Element::new(d, r.clone())))
        })
    }

    /// Image of a map as a subspace of its target.
    pub fn image(f: &GradedMap) -> Subspace {
        let mut vectors = BTreeMap::new();
        for (&i, m) in f.blocks() {
            let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|c| m.col(c)).collect();
            vectors.insert(i + f.degree(), cols);
        }
        Subspace::from_degree_vectors(f.target(), vectors)
    }

    /// Kernel of a map as a subspace of its source.
    pub fn kernel(f: &GradedMap) -> Subspace {
        let mut vectors = BTreeMap::new();
        for d in f.source().support() {
            vectors.insert(d, f.block(d).kernel());
        }
        Subspace::from_degree_vectors(f.source(), vectors)
    }

    /// Image of this subspace under `f`.
    pub fn map_through(&self, f: &GradedMap) -> Subspace {
        let mut vectors: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
        for (&d, rows) in &self.rows {
            let m = f.block(d);
            vectors.insert(d + f.degree(), rows.iter().map(|r| m.mul_vec(r)).collect());
        }
        Subspace::from_degree_vectors(f.target(), vectors)
    }

    /// First basis vector (degree, row) of the subspace mapped outside it.
    pub fn first_unstable(&self, f: &GradedMap) -> Option<BasisRef> {
        for (&d, rows) in &self.rows {
            for (index, r) in rows.iter().enumerate() {
                if !self.contains(&f.apply(&Element::new(d, r.clone()))) {
                    return Some(BasisRef { degree: d, index });
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn two_dim() -> GradedSpace {
        GradedSpace::new(0, vec![1, 1])
    }

    fn shift_map(space: &GradedSpace, degree: i32, pairs: &[(BasisRef, BasisRef)]) -> GradedMap {
        GradedMap::from_fn(space, space, degree, |b| {
            let mut v = zeros(space.dim(b.degree + degree));
            for (s, t) in pairs {
                if *s == b {
                    v[t.index] = int(1);
                }
            }
            v
        })
    }

    #[test]
    fn identity_is_neutral() {
        let v = two_dim();
        let e0 = BasisRef { degree: 0, index: 0 };
        let e1 = BasisRef { degree: 1, index: 0 };
        let d = shift_map(&v, 1, &[(e0, e1)]);
        assert_eq!(GradedMap::identity(&v).compose(&d).unwrap(), d);
        assert_eq!(d.compose(&GradedMap::identity(&v)).unwrap(), d);
    }

    #[test]
    fn degrees_add_under_composition() {
        let v = two_dim();
        let e0 = BasisRef { degree: 0, index: 0 };
        let e1 = BasisRef { degree: 1, index: 0 };
        let d = shift_map(&v, 1, &[(e0, e1)]);
        let i = shift_map(&v, -1, &[(e1, e0)]);
        let c = d.compose(&i).unwrap();
        assert_eq!(c.degree(), 0);
        assert_eq!(c.apply_basis(e1), Element::basis(&v, e1));
    }

    #[test]
    fn commutator_of_d_and_contraction_is_identity() {
        // d(e0) = e1, i(e1) = e0: [d, i] = di + id = id
        let v = two_dim();
        let e0 = BasisRef { degree: 0, index: 0 };
        let e1 = BasisRef { degree: 1, index: 0 };
        let d = shift_map(&v, 1, &[(e0, e1)]);
        let i = shift_map(&v, -1, &[(e1, e0)]);
        assert_eq!(d.graded_commutator(&i).unwrap(), GradedMap::identity(&v));
    }

    #[test]
    fn odd_self_commutator_doubles_square() {
        let v = GradedSpace::new(0, vec![1, 1, 1]);
        let b = |d| BasisRef { degree: d, index: 0 };
        let d = shift_map(&v, 1, &[(b(0), b(1)), (b(1), b(2))]);
        let sq = d.compose(&d).unwrap();
        assert_eq!(d.graded_commutator(&d).unwrap(), sq.scale(&int(2)));
        let f = shift_map(&v, 2, &[(b(0), b(2))]);
        assert!(f.graded_commutator(&f).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let v = two_dim();
        let bad = GradedMap::new(v.clone(), v.clone(), 1, BTreeMap::from([(0, Matrix::zero(2, 1))]));
        assert!(matches!(bad, Err(Error::Shape(_))));
        let w = GradedSpace::new(0, vec![2]);
        let f = GradedMap::zero(&v, &v, 0);
        let g = GradedMap::zero(&w, &w, 0);
        assert!(f.compose(&g).is_err());
    }

    #[test]
    fn subspace_membership_and_intersection() {
        let v = GradedSpace::new(0, vec![3]);
        let e = |c: &[i64]| Element::new(0, c.iter().map(|&x| int(x)).collect());
        let a = Subspace::span(&v, &[e(&[1, 1, 0]), e(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(&v, &[e(&[1, 0, 0]), e(&[0, 0, 1])]).unwrap();
        assert!(a.contains(&e(&[1, 2, 1])));
        assert!(!a.contains(&e(&[1, 0, 0])));
        let c = a.intersection(&b);
        assert_eq!(c.dim(0), 1);
        assert!(c.contains(&e(&[1, 0, -1])));
        assert_eq!(a.sum(&b).dim(0), 3);
    }

    #[test]
    fn quotient_coordinates_kill_subspace() {
        let v = GradedSpace::new(0, vec![3]);
        let e = |c: &[i64]| Element::new(0, c.iter().map(|&x| int(x)).collect());
        let s = Subspace::span(&v, &[e(&[0, 1, 1])]).unwrap();
        assert_eq!(s.quotient_coordinates(&e(&[0, 2, 2])), vec![int(0), int(0)]);
        assert_eq!(s.complement_indices(0), vec![0, 2]);
    }
}
