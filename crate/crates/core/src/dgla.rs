//! DG-Lie algebras given by structure constants, axiom checks, morphisms and
//! the standard constructions (endomorphism algebra, products, sub-algebras,
//! pullbacks, induced bracket on cohomology).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bilinear::Bilinear;
use crate::cohomology::{self, CohomologyReport};
use crate::error::{Error, Result};
use crate::graded::{BasisRef, Element, GradedMap, GradedSpace, Subspace};
use crate::linalg::{sign, Scalar};
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq)]
pub struct Dgla {
    space: GradedSpace,
    d: GradedMap,
    bracket: Bilinear,
}

/// Basis tuple where an identity fails, with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tuple: Vec<BasisRef>,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CheckMode {
    /// Stop at the first (lexicographically minimal) violation.
    #[default]
    FirstFailure,
    /// Count every violation.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub holds: bool,
    /// Number of violating tuples; at most 1 in first-failure mode.
    pub violations: usize,
    pub witness: Option<Witness>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome { holds: true, violations: 0, witness: None }
    }

    fn from_witnesses(mut found: Vec<Witness>) -> Self {
        if found.is_empty() {
            return Outcome::pass();
        }
        let violations = found.len();
        Outcome { holds: false, violations, witness: Some(found.swap_remove(0)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub d_squared: Outcome,
    pub skew: Outcome,
    pub jacobi: Outcome,
    pub leibniz: Outcome,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.d_squared.holds && self.skew.holds && self.jacobi.holds && self.leibniz.holds
    }

    /// Name of the first failing axiom.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("d_squared", &self.d_squared),
            ("skew", &self.skew),
            ("jacobi", &self.jacobi),
            ("leibniz", &self.leibniz),
        ]
        .into_iter()
        .find(|(_, o)| !o.holds)
        .map(|(n, _)| n)
    }
}

/// Runs `test` over `items` according to `mode`.
pub(crate) fn run_check<T, F>(exec: Exec, mode: CheckMode, items: &[T], test: F) -> Outcome
where
    T: Sync,
    F: Fn(&T) -> Option<Witness> + Sync + Send,
{
    match mode {
        CheckMode::FirstFailure => match exec.find_first(items, test) {
            Some(w) => Outcome { holds: false, violations: 1, witness: Some(w) },
            None => Outcome::pass(),
        },
        CheckMode::Exhaustive => Outcome::from_witnesses(exec.filter_map(items, test)),
    }
}

pub(crate) fn compare(tuple: Vec<BasisRef>, lhs: Element, rhs: Element) -> Option<Witness> {
    (lhs != rhs).then_some(Witness { tuple, lhs, rhs })
}

pub(crate) fn pairs(basis: &[BasisRef]) -> Vec<(BasisRef, BasisRef)> {
    basis.iter().flat_map(|&a| basis.iter().map(move |&b| (a, b))).collect()
}

pub(crate) fn triples(basis: &[BasisRef]) -> Vec<(BasisRef, BasisRef, BasisRef)> {
    basis
        .iter()
        .flat_map(|&a| basis.iter().flat_map(move |&b| basis.iter().map(move |&c| (a, b, c))))
        .collect()
}

impl Dgla {
    /// Checks shapes only; the axioms are verified by [`Dgla::check_axioms`].
    pub fn new(space: GradedSpace, d: GradedMap, bracket: Bilinear) -> Result<Self> {
        if d.degree() != 1 {
            return Err(Error::Degree { expected: 1, found: d.degree() });
        }
        if d.source() != &space || d.target() != &space {
            return Err(Error::Shape("differential must be an endomap of the algebra".into()));
        }
        if bracket.degree() != 0 {
            return Err(Error::Degree { expected: 0, found: bracket.degree() });
        }
        if bracket.space() != &space {
            return Err(Error::Shape("bracket lives on another space".into()));
        }
        Ok(Dgla { space, d, bracket })
    }

    /// Zero bracket and zero differential.
    pub fn trivial(space: &GradedSpace) -> Self {
        Dgla { space: space.clone(), d: GradedMap::zero(space, space, 1), bracket: Bilinear::zero(space, 0) }
    }

    pub fn abelian(space: &GradedSpace, d: GradedMap) -> Result<Self> {
        Dgla::new(space.clone(), d, Bilinear::zero(space, 0))
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn d(&self) -> &GradedMap {
        &self.d
    }

    pub fn bracket_map(&self) -> &Bilinear {
        &self.bracket
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        self.bracket.apply(x, y)
    }

    pub fn bracket_basis(&self, a: BasisRef, b: BasisRef) -> Element {
        self.bracket.apply_basis(a, b)
    }

    pub fn diff(&self, x: &Element) -> Element {
        self.d.apply(x)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn basis_element(&self, b: BasisRef) -> Element {
        Element::basis(&self.space, b)
    }

    pub fn check_axioms(&self, exec: Exec, mode: CheckMode) -> AxiomReport {
        let basis = self.space.basis();
        let prs = pairs(&basis);
        let d_squared = run_check(exec, mode, &basis, |&a| {
            let dd = self.d.apply(&self.d.apply_basis(a));
            let zero = Element::zero(&self.space, a.degree + 2);
            compare(vec![a], dd, zero)
        });
        let skew = run_check(exec, mode, &prs, |&(a, b)| {
            let lhs = self.bracket_basis(a, b);
            let rhs = self.bracket_basis(b, a).scale(&-sign((a.degree * b.degree) as i64));
            compare(vec![a, b], lhs, rhs)
        });
        let leibniz = run_check(exec, mode, &prs, |&(a, b)| {
            let (x, y) = (self.basis_element(a), self.basis_element(b));
            let lhs = self.diff(&self.bracket(&x, &y));
            let rhs = self
                .bracket(&self.diff(&x), &y)
                .add(&self.bracket(&x, &self.diff(&y)).scale(&sign(a.degree as i64)));
            compare(vec![a, b], lhs, rhs)
        });
        let trs = triples(&basis);
        let jacobi = run_check(exec, mode, &trs, |&(a, b, c)| self.jacobi_at(a, b, c));
        AxiomReport { d_squared, skew, jacobi, leibniz }
    }

    /// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]` on one basis triple.
    fn jacobi_at(&self, a: BasisRef, b: BasisRef, c: BasisRef) -> Option<Witness> {
        let (x, y, z) = (self.basis_element(a), self.basis_element(b), self.basis_element(c));
        let lhs = self.bracket(&x, &self.bracket(&y, &z));
        let rhs = self
            .bracket(&self.bracket(&x, &y), &z)
            .add(&self.bracket(&y, &self.bracket(&x, &z)).scale(&sign((a.degree * b.degree) as i64)));
        compare(vec![a, b, c], lhs, rhs)
    }

    pub fn cohomology(&self) -> Result<CohomologyReport> {
        cohomology::cohomology(&self.space, &self.d)
    }

    /// Checks that `s` is closed under `d` and the bracket.
    pub fn check_subalgebra(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != &self.space {
            return Err(Error::Shape("subspace lives in another space".into()));
        }
        let sub = s.as_space();
        let inc = s.inclusion();
        for a in sub.basis() {
            let x = inc.apply_basis(a);
            if !s.contains(&self.diff(&x)) {
                return Err(Error::NotSubalgebra(format!("d of sub-basis vector {a} leaves the subspace")));
            }
            for b in sub.basis() {
                if !s.contains(&self.bracket(&x, &inc.apply_basis(b))) {
                    return Err(Error::NotSubalgebra(format!(
                        "bracket of sub-basis vectors {a} and {b} leaves the subspace"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The sub-DGLA on `s` in its echelon basis, with the inclusion.
    pub fn restrict(&self, s: &Subspace) -> Result<(Dgla, GradedMap)> {
        self.check_subalgebra(s)?;
        let space = s.as_space();
        let inc = s.inclusion();
        let coords = |x: &Element| s.coordinates(x).expect("closed subspace");
        let d = GradedMap::from_fn(&space, &space, 1, |b| coords(&self.diff(&inc.apply_basis(b))));
        let bracket = self.bracket.transport(&space, |b| inc.apply_basis(b), coords);
        Ok((Dgla { space, d, bracket }, inc))
    }

    /// `self × other` on `L ⊕ M` (in each degree the basis of `L` first), with
    /// the two projections.
    pub fn product(&self, other: &Dgla) -> (Dgla, GradedMap, GradedMap) {
        let space = self.space.direct_sum(&other.space);
        let (split, join) = sum_coordinates(&self.space, &other.space);
        let d = GradedMap::from_fn(&space, &space, 1, |b| {
            let (x, y) = split(&Element::basis(&space, b));
            join(&self.diff(&x), &other.diff(&y))
        });
        let bracket = Bilinear::from_fn(&space, 0, |a, b| {
            let (x1, y1) = split(&Element::basis(&space, a));
            let (x2, y2) = split(&Element::basis(&space, b));
            join(&self.bracket(&x1, &x2), &other.bracket(&y1, &y2))
        });
        let p1 = GradedMap::from_fn(&space, &self.space, 0, |b| split(&Element::basis(&space, b)).0.coeffs);
        let p2 = GradedMap::from_fn(&space, &other.space, 0, |b| split(&Element::basis(&space, b)).1.coeffs);
        (Dgla { space, d, bracket }, p1, p2)
    }
}

/// Splitting and joining coordinates of `V ⊕ W` (per degree, `V` first).
#[allow(clippy::type_complexity)]
pub fn sum_coordinates<'a>(
    v: &'a GradedSpace,
    w: &'a GradedSpace,
) -> (impl Fn(&Element) -> (Element, Element) + 'a, impl Fn(&Element, &Element) -> Vec<Scalar> + 'a) {
    let split = move |x: &Element| {
        let n = v.dim(x.degree);
        (Element::new(x.degree, x.coeffs[..n].to_vec()), Element::new(x.degree, x.coeffs[n..].to_vec()))
    };
    let join = move |x: &Element, y: &Element| {
        debug_assert_eq!(x.coeffs.len() + y.coeffs.len(), v.dim(x.degree) + w.dim(x.degree));
        let mut out = x.coeffs.clone();
        out.extend(y.coeffs.iter().cloned());
        out
    };
    (split, join)
}

/// Report of [`morphism_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub chain_map: Outcome,
    pub brackets: Outcome,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.chain_map.holds && self.brackets.holds
    }
}

/// Checks that a degree-0 map `f: L -> M` commutes with differentials and
/// brackets on all basis vectors and pairs.
pub fn morphism_check(f: &GradedMap, l: &Dgla, m: &Dgla, exec: Exec) -> Result<MorphismReport> {
    if f.degree() != 0 {
        return Err(Error::Degree { expected: 0, found: f.degree() });
    }
    if f.source() != l.space() || f.target() != m.space() {
        return Err(Error::Shape("morphism does not match the algebras".into()));
    }
    let basis = l.space().basis();
    let mode = CheckMode::FirstFailure;
    let chain_map = run_check(exec, mode, &basis, |&a| {
        compare(vec![a], f.apply(&l.d().apply_basis(a)), m.diff(&f.apply_basis(a)))
    });
    let prs = pairs(&basis);
    let brackets = run_check(exec, mode, &prs, |&(a, b)| {
        let lhs = f.apply(&l.bracket_basis(a, b));
        let rhs = m.bracket(&f.apply_basis(a), &f.apply_basis(b));
        compare(vec![a, b], lhs, rhs)
    });
    Ok(MorphismReport { chain_map, brackets })
}

/// `Hom*(V, V)` with the commutator bracket and differential `[dV, -]`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub v: GradedSpace,
    pub dv: GradedMap,
    pub dgla: Dgla,
    /// Per Hom degree, the elementary maps `(source degree, row, col)` in
    /// basis order.
    index: BTreeMap<i32, Vec<(i32, usize, usize)>>,
}

impl EndAlgebra {
    pub fn new(v: &GradedSpace, dv: &GradedMap) -> Result<Self> {
        cohomology::check_differential(v, dv)?;
        let mut index: BTreeMap<i32, Vec<(i32, usize, usize)>> = BTreeMap::new();
        let mut names: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        if let Some((lo, hi)) = v.support_bounds() {
            for n in (lo - hi)..=(hi - lo) {
                let entry = index.entry(n).or_default();
                let nm = names.entry(n).or_default();
                for i in lo..=hi {
                    for r in 0..v.dim(i + n) {
                        for c in 0..v.dim(i) {
                            entry.push((i, r, c));
                            nm.push(format!(
                                "{}<-{}",
                                v.name(BasisRef { degree: i + n, index: r }),
                                v.name(BasisRef { degree: i, index: c })
                            ));
                        }
                    }
                }
            }
        }
        let space = match (names.keys().next(), names.keys().next_back()) {
            (Some(&lo), Some(_)) => GradedSpace::with_names(lo, names.into_values().collect()),
            _ => GradedSpace::zero(),
        };
        let mut out = EndAlgebra { v: v.clone(), dv: dv.clone(), dgla: Dgla::trivial(&space), index };
        let d = GradedMap::from_fn(&space, &space, 1, |b| {
            let f = out.to_map(&Element::basis(&space, b));
            out.to_element(&dv.graded_commutator(&f).expect("endomaps")).coeffs
        });
        let bracket = Bilinear::from_fn(&space, 0, |a, b| {
            let f = out.to_map(&Element::basis(&space, a));
            let g = out.to_map(&Element::basis(&space, b));
            out.to_element(&f.graded_commutator(&g).expect("endomaps")).coeffs
        });
        out.dgla = Dgla { space, d, bracket };
        Ok(out)
    }

    pub fn space(&self) -> &GradedSpace {
        self.dgla.space()
    }

    /// The homogeneous map represented by an element.
    pub fn to_map(&self, x: &Element) -> GradedMap {
        let n = x.degree;
        let mut blocks: BTreeMap<i32, crate::linalg::Matrix> = BTreeMap::new();
        if let Some(entries) = self.index.get(&n) {
            for ((i, r, c), v) in entries.iter().zip(&x.coeffs) {
                let m = blocks
                    .entry(*i)
                    .or_insert_with(|| crate::linalg::Matrix::zero(self.v.dim(i + n), self.v.dim(*i)));
                m.add_at(*r, *c, v);
            }
        }
        GradedMap::new(self.v.clone(), self.v.clone(), n, blocks).expect("elementary blocks fit")
    }

    /// Coordinates of a homogeneous endomap.
    pub fn to_element(&self, f: &GradedMap) -> Element {
        let n = f.degree();
        let coeffs = match self.index.get(&n) {
            Some(entries) => entries.iter().map(|&(i, r, c)| f.block(i).get(r, c).clone()).collect(),
            None => Vec::new(),
        };
        Element::new(n, coeffs)
    }

    /// Basis vector of the elementary map `e_col (degree i) ↦ e_row`.
    pub fn elementary(&self, n: i32, i: i32, row: usize, col: usize) -> Option<BasisRef> {
        let pos = self.index.get(&n)?.iter().position(|&e| e == (i, row, col))?;
        Some(BasisRef { degree: n, index: pos })
    }

    /// `(source degree, row, col)` of a basis vector.
    pub fn entry_of(&self, b: BasisRef) -> (i32, usize, usize) {
        self.index[&b.degree][b.index]
    }
}

/// Both sides of the Künneth identity for `Hom*(V, V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethReport {
    pub end_cohomology: BTreeMap<i32, usize>,
    pub hom_of_cohomology: BTreeMap<i32, usize>,
    pub holds: bool,
}

pub fn kunneth_check(v: &GradedSpace, dv: &GradedMap) -> Result<KunnethReport> {
    let end = EndAlgebra::new(v, dv)?;
    let h_end = end.dgla.cohomology()?;
    let h_v = cohomology::cohomology(v, dv)?;
    let mut hom: BTreeMap<i32, usize> = BTreeMap::new();
    for (&j, cj) in &h_v.degrees {
        for (&k, ck) in &h_v.degrees {
            *hom.entry(k - j).or_default() += cj.dim * ck.dim;
        }
    }
    let mut lhs = h_end.dims();
    let keys: Vec<i32> = lhs.keys().chain(hom.keys()).copied().collect();
    for k in keys {
        lhs.entry(k).or_default();
        hom.entry(k).or_default();
    }
    let holds = lhs == hom;
    Ok(KunnethReport { end_cohomology: lhs, hom_of_cohomology: hom, holds })
}

/// Pullback `L ×_N M` of two morphisms with a common target.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub dgla: Dgla,
    pub to_l: GradedMap,
    pub to_m: GradedMap,
}

pub fn pullback(f: &GradedMap, l: &Dgla, g: &GradedMap, m: &Dgla, n: &Dgla) -> Result<Pullback> {
    if f.target() != n.space() || g.target() != n.space() {
        return Err(Error::Shape("pullback maps must share their target".into()));
    }
    if f.source() != l.space() || g.source() != m.space() {
        return Err(Error::Shape("pullback maps do not match their sources".into()));
    }
    let (prod, p1, p2) = l.product(m);
    let diff = f.compose(&p1)?.sub(&g.compose(&p2)?)?;
    let k = Subspace::kernel(&diff);
    let (dgla, inc) = prod.restrict(&k)?;
    Ok(Pullback { dgla, to_l: p1.compose(&inc)?, to_m: p2.compose(&inc)? })
}

/// The graded Lie algebra `H*(L)` in the representative basis.
#[derive(Clone, Debug)]
pub struct HStar {
    pub cohomology: CohomologyReport,
    pub bracket: Bilinear,
}

impl HStar {
    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    /// `(H*(L), 0, [,])` as a DGLA.
    pub fn as_dgla(&self) -> Dgla {
        let space = self.bracket.space().clone();
        Dgla { d: GradedMap::zero(&space, &space, 1), bracket: self.bracket.clone(), space }
    }
}

/// Induced bracket on cohomology: `[[x],[y]] = [[x,y]]`.
pub fn h_star_bracket(l: &Dgla) -> Result<HStar> {
    let h = l.cohomology()?;
    let space = h.h_space();
    let bracket = Bilinear::from_fn(&space, 0, |a, b| {
        h.class_of(&l.bracket(h.representative(a), h.representative(b)))
    });
    Ok(HStar { cohomology: h, bracket })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, zeros};

    fn b(d: i32, i: usize) -> BasisRef {
        BasisRef { degree: d, index: i }
    }

    /// sl2 with basis (h, e, f) in degree 0.
    fn sl2(ef: Vec<Scalar>) -> Dgla {
        let space = GradedSpace::new(0, vec![3]);
        let table = |x: usize, y: usize| -> Vec<Scalar> {
            match (x, y) {
                (0, 1) => vec![int(0), int(2), int(0)],
                (1, 0) => vec![int(0), int(-2), int(0)],
                (0, 2) => vec![int(0), int(0), int(-2)],
                (2, 0) => vec![int(0), int(0), int(2)],
                (1, 2) => ef.clone(),
                (2, 1) => ef.iter().map(|v| -v).collect(),
                _ => zeros(3),
            }
        };
        let br = Bilinear::from_fn(&space, 0, |a, c| table(a.index, c.index));
        Dgla::new(space.clone(), GradedMap::zero(&space, &space, 1), br).unwrap()
    }

    #[test]
    fn sl2_passes_and_broken_sl2_fails_jacobi() {
        let good = sl2(vec![int(1), int(0), int(0)]);
        assert!(good.check_axioms(Exec::Sequential, CheckMode::FirstFailure).holds());
        let bad = sl2(vec![int(1), int(1), int(0)]);
        let report = bad.check_axioms(Exec::Sequential, CheckMode::FirstFailure);
        assert!(report.skew.holds && report.leibniz.holds && report.d_squared.holds);
        let w = report.jacobi.witness.unwrap();
        // first ordered triple where Jacobi breaks
        assert_eq!(w.tuple, vec![b(0, 0), b(0, 1), b(0, 2)]);
    }

    #[test]
    fn exhaustive_mode_counts_and_agrees() {
        let bad = sl2(vec![int(1), int(1), int(0)]);
        let first = bad.check_axioms(Exec::Parallel, CheckMode::FirstFailure);
        let all = bad.check_axioms(Exec::Parallel, CheckMode::Exhaustive);
        assert_eq!(first.jacobi.witness, all.jacobi.witness);
        assert!(all.jacobi.violations > 1);
    }

    #[test]
    fn end_dimensions_and_axioms() {
        let v = GradedSpace::new(0, vec![1, 1]);
        let end = EndAlgebra::new(&v, &GradedMap::zero(&v, &v, 1)).unwrap();
        assert_eq!((end.space().dim(-1), end.space().dim(0), end.space().dim(1)), (1, 2, 1));
        assert!(end.dgla.check_axioms(Exec::Sequential, CheckMode::Exhaustive).holds());
    }

    #[test]
    fn end_of_contractible_is_acyclic() {
        let v = GradedSpace::new(0, vec![1, 1]);
        let dv = GradedMap::from_fn(&v, &v, 1, |c| if c.degree == 0 { vec![int(1)] } else { vec![] });
        let end = EndAlgebra::new(&v, &dv).unwrap();
        assert!(end.dgla.check_axioms(Exec::Sequential, CheckMode::FirstFailure).holds());
        assert!(end.dgla.cohomology().unwrap().is_zero());
        assert!(kunneth_check(&v, &dv).unwrap().holds);
    }

    #[test]
    fn end_map_round_trip() {
        let v = GradedSpace::new(-1, vec![1, 2]);
        let end = EndAlgebra::new(&v, &GradedMap::zero(&v, &v, 1)).unwrap();
        for bref in end.space().basis() {
            let x = Element::basis(end.space(), bref);
            assert_eq!(end.to_element(&end.to_map(&x)), x);
        }
    }

    #[test]
    fn morphism_witness_for_scaled_bracket() {
        let l = sl2(vec![int(1), int(0), int(0)]);
        let f = GradedMap::identity(l.space()).scale(&int(2));
        let r = morphism_check(&f, &l, &l, Exec::Sequential).unwrap();
        assert!(r.chain_map.holds);
        assert!(!r.brackets.holds);
        assert_eq!(r.brackets.witness.unwrap().tuple, vec![b(0, 0), b(0, 1)]);
        let id = morphism_check(&GradedMap::identity(l.space()), &l, &l, Exec::Sequential).unwrap();
        assert!(id.holds());
    }

    #[test]
    fn h_star_of_sl2_is_sl2() {
        let l = sl2(vec![int(1), int(0), int(0)]);
        let h = h_star_bracket(&l).unwrap();
        assert!(!h.is_abelian());
        assert_eq!(h.bracket, *l.bracket_map());
    }

    #[test]
    fn pullback_along_identity() {
        let l = sl2(vec![int(1), int(0), int(0)]);
        let id = GradedMap::identity(l.space());
        let p = pullback(&id, &l, &id, &l, &l).unwrap();
        assert_eq!(p.dgla.space(), l.space());
        assert!(morphism_check(&p.to_l, &p.dgla, &l, Exec::Sequential).unwrap().holds());
    }
}
