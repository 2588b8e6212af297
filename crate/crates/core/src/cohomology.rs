//! Cochain complexes, cohomology with deterministic representatives, induced
//! maps, subcomplexes/quotients and shifts.
//!
//! Shift convention: `V[k]^i = V^{i+k}` and the differential of `V[k]` is
//! `(-1)^k d`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{BasisRef, Element, GradedMap, GradedSpace, Subspace};
use crate::linalg::{self, rank_of, sign, span_basis, zeros, Matrix, Scalar};

/// A graded space with a degree +1 square-zero differential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    space: GradedSpace,
    d: GradedMap,
}

impl Complex {
    pub fn new(space: GradedSpace, d: GradedMap) -> Result<Self> {
        check_differential(&space, &d)?;
        Ok(Complex { space, d })
    }

    pub fn zero_differential(space: GradedSpace) -> Self {
        let d = GradedMap::zero(&space, &space, 1);
        Complex { space, d }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn d(&self) -> &GradedMap {
        &self.d
    }

    pub fn cohomology(&self) -> CohomologyReport {
        cohomology_unchecked(&self.space, &self.d)
    }

    /// `V[k]`, with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        let (space, d) = shift(&self.space, &self.d, k);
        Complex { space, d }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let space = self.space.direct_sum(&other.space);
        let d = block_diagonal(&space, &[(&self.space, &self.d), (&other.space, &other.d)]);
        Complex { space, d }
    }
}

/// Checks `deg d = 1`, endomap of `space`, and `d∘d = 0`.
pub fn check_differential(space: &GradedSpace, d: &GradedMap) -> Result<()> {
    if d.degree() != 1 {
        return Err(Error::Degree { expected: 1, found: d.degree() });
    }
    if d.source() != space || d.target() != space {
        return Err(Error::Shape("differential must be an endomap of the space".into()));
    }
    for b in space.basis() {
        if !d.apply(&d.apply_basis(b)).is_zero() {
            return Err(Error::NotSquareZero(b));
        }
    }
    Ok(())
}

/// Cohomology of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeCohomology {
    pub dim: usize,
    pub cocycle_dim: usize,
    pub boundary_dim: usize,
    /// Representative cocycles, one per class.
    pub representatives: Vec<Element>,
    /// Linear map whose restriction to cocycles sends a cocycle to its class
    /// coordinates.
    pub projection: Matrix,
    boundaries: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub space: GradedSpace,
    pub degrees: BTreeMap<i32, DegreeCohomology>,
}

impl CohomologyReport {
    pub fn dim(&self, degree: i32) -> usize {
        self.degrees.get(&degree).map_or(0, |c| c.dim)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.degrees.iter().map(|(&d, c)| (d, c.dim)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(|c| c.dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Cohomology as a graded space (one basis vector per class).
    pub fn h_space(&self) -> GradedSpace {
        let pairs: Vec<(i32, usize)> = self.degrees.iter().map(|(&d, c)| (d, c.dim)).collect();
        GradedSpace::from_dims(&pairs)
    }

    pub fn representative(&self, b: BasisRef) -> &Element {
        &self.degrees[&b.degree].representatives[b.index]
    }

    pub fn representatives(&self, degree: i32) -> &[Element] {
        self.degrees.get(&degree).map_or(&[], |c| c.representatives.as_slice())
    }

    /// Class coordinates of a cocycle.
    pub fn class_of(&self, x: &Element) -> Vec<Scalar> {
        match self.degrees.get(&x.degree) {
            Some(c) if c.dim > 0 => c.projection.mul_vec(&x.coeffs),
            _ => Vec::new(),
        }
    }

    /// Cocycle built from class coordinates.
    pub fn lift(&self, degree: i32, class: &[Scalar]) -> Element {
        let mut x = Element::zero(&self.space, degree);
        for (c, r) in class.iter().zip(self.representatives(degree)) {
            x.axpy(c, r);
        }
        x
    }

    /// Whether the (closed) element lies in the image of the differential.
    pub fn is_exact(&self, x: &Element) -> bool {
        let Some(c) = self.degrees.get(&x.degree) else {
            return x.is_zero();
        };
        let mut vs = c.boundaries.clone();
        let before = vs.len();
        vs.push(x.coeffs.clone());
        rank_of(x.coeffs.len(), &vs) == before
    }
}

/// Cohomology of `(V, d)`; rejects `d∘d ≠ 0` with the first violating basis
/// vector.
pub fn cohomology(space: &GradedSpace, d: &GradedMap) -> Result<CohomologyReport> {
    check_differential(space, d)?;
    Ok(cohomology_unchecked(space, d))
}

fn cohomology_unchecked(space: &GradedSpace, d: &GradedMap) -> CohomologyReport {
    let mut degrees = BTreeMap::new();
    for i in space.support() {
        let n = space.dim(i);
        let cocycles = d.block(i).kernel();
        let prev = d.block(i - 1);
        let image_cols: Vec<Vec<Scalar>> = (0..prev.cols()).map(|c| prev.col(c)).collect();
        let boundaries = span_basis(n, &image_cols);

        // extend the boundary basis by cocycles, in kernel-basis order
        let mut spanning = boundaries.clone();
        let mut reps = Vec::new();
        for z in &cocycles {
            let mut trial = spanning.clone();
            trial.push(z.clone());
            if rank_of(n, &trial) > spanning.len() {
                spanning.push(z.clone());
                reps.push(z.clone());
            }
        }
        let b = boundaries.len();
        let h = reps.len();
        let projection = if h == 0 {
            Matrix::zero(0, n)
        } else {
            // complete to a basis of V^i with unit vectors and invert
            let mut full = spanning.clone();
            for k in 0..n {
                if full.len() == n {
                    break;
                }
                let mut trial = full.clone();
                trial.push(linalg::unit(n, k));
                if rank_of(n, &trial) > full.len() {
                    full.push(linalg::unit(n, k));
                }
            }
            let inv = Matrix::from_cols(n, &full).inverse().expect("completed basis is invertible");
            let rows: Vec<Vec<Scalar>> = (b..b + h).map(|r| inv.row(r).to_vec()).collect();
            Matrix::from_rows(h, n, rows).expect("projection shape")
        };
        degrees.insert(
            i,
            DegreeCohomology {
                dim: h,
                cocycle_dim: cocycles.len(),
                boundary_dim: b,
                representatives: reps.into_iter().map(|r| Element::new(i, r)).collect(),
                projection,
                boundaries,
            },
        );
    }
    CohomologyReport { space: space.clone(), degrees }
}

/// Checks `dW ∘ f = (-1)^{|f|} f ∘ dV`.
pub fn check_chain_map(f: &GradedMap, dv: &GradedMap, dw: &GradedMap) -> Result<()> {
    let lhs = dw.compose(f)?;
    let rhs = f.compose(dv)?.scale(&sign(f.degree() as i64));
    match lhs.first_difference(&rhs) {
        Some(b) => Err(Error::NotChainMap(b)),
        None => Ok(()),
    }
}

/// Matrix of `H(f)` in the representative bases, with injectivity and
/// surjectivity per degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InducedMap {
    pub degree: i32,
    /// Source degree `i` ↦ matrix `H^i(V) -> H^{i+s}(W)`.
    pub blocks: BTreeMap<i32, Matrix>,
    pub injective: BTreeMap<i32, bool>,
    pub surjective: BTreeMap<i32, bool>,
}

impl InducedMap {
    pub fn is_injective(&self) -> bool {
        self.injective.values().all(|&x| x)
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective.values().all(|&x| x)
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn injective_at(&self, source_degree: i32) -> bool {
        self.injective.get(&source_degree).copied().unwrap_or(true)
    }

    /// Surjectivity onto target degree `j`, i.e. of the block at source
    /// degree `j - s`.
    pub fn surjective_onto(&self, target_degree: i32) -> bool {
        self.surjective.get(&(target_degree - self.degree)).copied().unwrap_or(true)
    }

    pub fn block(&self, source_degree: i32) -> Option<&Matrix> {
        self.blocks.get(&source_degree)
    }

    /// First source degree where injectivity fails.
    pub fn first_non_injective(&self) -> Option<i32> {
        self.injective.iter().find(|(_, &ok)| !ok).map(|(&d, _)| d)
    }
}

/// `H(f)` for a chain map `f: (V, dV) -> (W, dW)`.
pub fn induced_map_on_cohomology(f: &GradedMap, dv: &GradedMap, dw: &GradedMap) -> Result<InducedMap> {
    check_differential(f.source(), dv)?;
    check_differential(f.target(), dw)?;
    check_chain_map(f, dv, dw)?;
    let hv = cohomology_unchecked(f.source(), dv);
    let hw = cohomology_unchecked(f.target(), dw);
    Ok(induced_with(f, &hv, &hw))
}

/// `H(f)` using precomputed cohomology reports (`f` must be a chain map).
pub fn induced_with(f: &GradedMap, hv: &CohomologyReport, hw: &CohomologyReport) -> InducedMap {
    let s = f.degree();
    let mut degrees: Vec<i32> = hv.degrees.keys().copied().collect();
    degrees.extend(hw.degrees.keys().map(|&j| j - s));
    degrees.sort_unstable();
    degrees.dedup();

    let mut blocks = BTreeMap::new();
    let mut injective = BTreeMap::new();
    let mut surjective = BTreeMap::new();
    for i in degrees {
        let (src, tgt) = (hv.dim(i), hw.dim(i + s));
        let cols: Vec<Vec<Scalar>> = hv.representatives(i).iter().map(|r| hw.class_of(&f.apply(r))).collect();
        let m = if tgt == 0 { Matrix::zero(0, src) } else { Matrix::from_cols(tgt, &cols) };
        let r = m.rank();
        injective.insert(i, r == src);
        surjective.insert(i, r == tgt);
        blocks.insert(i, m);
    }
    InducedMap { degree: s, blocks, injective, surjective }
}

/// Sub- and quotient complexes of a stable subspace.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub sub: Complex,
    pub quotient: Complex,
    pub inclusion: GradedMap,
    pub projection: GradedMap,
}

/// Subcomplex `(S, d|_S)` and quotient `(V/S, d)`; the quotient basis is the
/// set of non-pivot unit vectors of `S`'s echelon basis.
pub fn subquotient(space: &GradedSpace, d: &GradedMap, s: &Subspace) -> Result<Subquotient> {
    check_differential(space, d)?;
    if s.ambient() != space {
        return Err(Error::Shape("subspace lives in another space".into()));
    }
    if let Some(b) = s.first_unstable(d) {
        return Err(Error::NotStable(b));
    }
    let sub_space = s.as_space();
    let inclusion = s.inclusion();
    let sub_d = GradedMap::from_fn(&sub_space, &sub_space, 1, |b| {
        let image = d.apply(&inclusion.apply_basis(b));
        s.coordinates(&image).expect("stable subspace")
    });

    let pairs: Vec<(i32, usize)> = space
        .support()
        .into_iter()
        .map(|i| (i, space.dim(i) - s.dim(i)))
        .collect();
    let q_space = quotient_space(space, s, &pairs);
    let projection = GradedMap::from_fn(space, &q_space, 0, |b| s.quotient_coordinates(&Element::basis(space, b)));
    let q_d = GradedMap::from_fn(&q_space, &q_space, 1, |b| {
        let lifted = space_unit(space, b.degree, s.complement_indices(b.degree)[b.index]);
        s.quotient_coordinates(&d.apply(&lifted))
    });
    Ok(Subquotient {
        sub: Complex { space: sub_space, d: sub_d },
        quotient: Complex { space: q_space, d: q_d },
        inclusion,
        projection,
    })
}

fn space_unit(space: &GradedSpace, degree: i32, index: usize) -> Element {
    Element::basis(space, BasisRef { degree, index })
}

fn quotient_space(space: &GradedSpace, s: &Subspace, pairs: &[(i32, usize)]) -> GradedSpace {
    let base = GradedSpace::from_dims(pairs);
    base.rename(|b, _| {
        let idx = s.complement_indices(b.degree)[b.index];
        format!("[{}]", space.name(BasisRef { degree: b.degree, index: idx }))
    })
}

/// `V[k]` with differential `(-1)^k d`.
pub fn shift(space: &GradedSpace, d: &GradedMap, k: i32) -> (GradedSpace, GradedMap) {
    let shifted = space.shift(k);
    let d_shifted = d
        .scale(&sign(k as i64))
        .regrade(shifted.clone(), shifted.clone(), 1, k)
        .expect("shift preserves shapes");
    (shifted, d_shifted)
}

/// Block-diagonal endomap of a direct sum whose summands are listed in order.
pub fn block_diagonal(sum: &GradedSpace, parts: &[(&GradedSpace, &GradedMap)]) -> GradedMap {
    let degree = parts.first().map_or(0, |p| p.1.degree());
    GradedMap::from_fn(sum, sum, degree, |b| {
        let mut out = zeros(sum.dim(b.degree + degree));
        let (mut src_off, mut tgt_off) = (0usize, 0usize);
        for (space, f) in parts {
            let n = space.dim(b.degree);
            if b.index >= src_off && b.index < src_off + n {
                let img = f.apply_basis(BasisRef { degree: b.degree, index: b.index - src_off });
                for (k, v) in img.coeffs.into_iter().enumerate() {
                    out[tgt_off + k] = v;
                }
            }
            src_off += n;
            tgt_off += space.dim(b.degree + degree);
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn b(d: i32, i: usize) -> BasisRef {
        BasisRef { degree: d, index: i }
    }

    /// deg 0: e0; deg 1: e1, e2; d(e0) = e1
    pub(crate) fn three_dim() -> (GradedSpace, GradedMap) {
        let v = GradedSpace::new(0, vec![1, 2]);
        let d = GradedMap::from_fn(&v, &v, 1, |x| if x == b(0, 0) { vec![int(1), int(0)] } else { vec![] });
        (v, d)
    }

    #[test]
    fn zero_differential_keeps_everything() {
        let v = GradedSpace::new(-1, vec![2, 0, 3]);
        let h = Complex::zero_differential(v.clone()).cohomology();
        for i in v.degrees() {
            assert_eq!(h.dim(i), v.dim(i));
        }
    }

    #[test]
    fn contractible_pair() {
        let v = GradedSpace::new(0, vec![1, 1]);
        let d = GradedMap::from_fn(&v, &v, 1, |x| if x.degree == 0 { vec![int(1)] } else { vec![] });
        assert!(cohomology(&v, &d).unwrap().is_zero());
    }

    #[test]
    fn three_dim_example() {
        let (v, d) = three_dim();
        let h = cohomology(&v, &d).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 1);
        // class of e2 spans; e1 is exact
        let e2 = Element::basis(&v, b(1, 1));
        let e1 = Element::basis(&v, b(1, 0));
        assert_ne!(h.class_of(&e2), vec![int(0)]);
        assert!(h.is_exact(&e1));
        assert_eq!(h.class_of(&e1), vec![int(0)]);
        let rep = h.representative(b(1, 0));
        assert_eq!(h.class_of(rep), vec![int(1)]);
    }

    #[test]
    fn rejects_non_square_zero() {
        let v = GradedSpace::new(0, vec![1, 1, 1]);
        let d = GradedMap::from_fn(&v, &v, 1, |x| if x.degree < 2 { vec![int(1)] } else { vec![] });
        assert_eq!(cohomology(&v, &d).unwrap_err(), Error::NotSquareZero(b(0, 0)));
    }

    #[test]
    fn identity_induces_iso() {
        let (v, d) = three_dim();
        let h = induced_map_on_cohomology(&GradedMap::identity(&v), &d, &d).unwrap();
        assert!(h.is_iso());
        assert_eq!(h.block(1).unwrap(), &Matrix::identity(1));
    }

    #[test]
    fn contractible_inclusion_is_injective_zero() {
        let (v, d) = three_dim();
        let s = Subspace::coordinate(&v, &[b(0, 0), b(1, 0)]);
        let sq = subquotient(&v, &d, &s).unwrap();
        let h = induced_map_on_cohomology(&sq.inclusion, sq.sub.d(), &d).unwrap();
        assert!(h.is_injective());
        assert!(h.blocks.values().all(Matrix::is_zero));
    }

    #[test]
    fn non_chain_map_rejected() {
        let (v, d) = three_dim();
        let f = GradedMap::from_fn(&v, &v, 0, |x| if x == b(0, 0) { vec![int(1)] } else { vec![int(0), int(0)] });
        assert!(matches!(induced_map_on_cohomology(&f, &d, &d), Err(Error::NotChainMap(_))));
    }

    #[test]
    fn quotient_by_exact_line() {
        let (v, d) = three_dim();
        let s = Subspace::coordinate(&v, &[b(1, 0)]);
        let sq = subquotient(&v, &d, &s).unwrap();
        assert_eq!(sq.quotient.space().dim(0), 1);
        assert_eq!(sq.quotient.space().dim(1), 1);
        assert!(sq.quotient.d().is_zero());
        assert_eq!(sq.quotient.space().name(b(1, 0)), "[e1_1]");
    }

    #[test]
    fn trivial_subquotients() {
        let (v, d) = three_dim();
        let all = subquotient(&v, &d, &Subspace::full(&v)).unwrap();
        assert!(all.quotient.space().is_zero());
        let none = subquotient(&v, &d, &Subspace::zero(&v)).unwrap();
        assert_eq!(none.quotient.space(), &v);
        assert_eq!(none.quotient.d(), &d.regrade(none.quotient.space().clone(), none.quotient.space().clone(), 1, 0).unwrap());
    }

    #[test]
    fn unstable_subspace_rejected() {
        let (v, d) = three_dim();
        let s = Subspace::coordinate(&v, &[b(0, 0)]);
        assert_eq!(subquotient(&v, &d, &s).unwrap_err(), Error::NotStable(b(0, 0)));
    }

    #[test]
    fn shift_sign() {
        let (v, d) = three_dim();
        let (w, dw) = shift(&v, &d, 1);
        assert_eq!(w.dim(-1), 1);
        assert_eq!(dw.apply_basis(b(-1, 0)).coeffs, vec![int(-1), int(0)]);
        assert_eq!(cohomology(&w, &dw).unwrap().dim(0), 1);
    }
}
