//! Derived brackets of Lie type: a DG-Lie algebra `M = L ⊕ A` with `A`
//! abelian and `[dA, A] ⊆ A` yields `(A[-1], δ, {,})`, and the example of a
//! degree one map `π: W -> V` realised inside `End(V ⊕ W)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bilinear::Bilinear;
use crate::cartan::{btt_certify, lie_derivative_map, BttCertificate, CartanCalculus};
use crate::cohomology::{block_diagonal, check_differential};
use crate::dgla::{compare, pairs, run_check, CheckMode, Dgla, EndAlgebra, Outcome};
use crate::error::{Error, Result};
use crate::graded::{BasisRef, Element, GradedMap, GradedSpace, Subspace};
use crate::linalg::{int, sign, span_basis, zeros, Matrix, Scalar};
use crate::par::Exec;

/// `M = L ⊕ A` given by bases of `L` and `A`.
#[derive(Clone, Debug)]
pub struct LieTypeSplit {
    pub m: Dgla,
    pub l: Subspace,
    pub a: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTypeReport {
    pub direct_sum: bool,
    pub l_subalgebra: bool,
    /// `[a,b] = 0` on `A`.
    pub a_abelian: Outcome,
    /// `[da,b] ∈ A`.
    pub derived_closed: Outcome,
}

impl LieTypeReport {
    pub fn holds(&self) -> bool {
        self.direct_sum && self.l_subalgebra && self.a_abelian.holds && self.derived_closed.holds
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.direct_sum {
            Some("direct_sum")
        } else if !self.l_subalgebra {
            Some("l_subalgebra")
        } else if !self.a_abelian.holds {
            Some("a_abelian")
        } else if !self.derived_closed.holds {
            Some("derived_closed")
        } else {
            None
        }
    }
}

impl LieTypeSplit {
    pub fn new(m: Dgla, l: Subspace, a: Subspace) -> Result<Self> {
        if l.ambient() != m.space() || a.ambient() != m.space() {
            return Err(Error::Shape("L and A must be subspaces of M".into()));
        }
        Ok(LieTypeSplit { m, l, a })
    }

    fn a_element(&self, b: BasisRef) -> Element {
        Element::new(b.degree, self.a.basis_vectors(b.degree)[b.index].clone())
    }

    /// Coordinates in `A` of the `A`-component along `L`, per degree.
    fn projection_matrix(&self, degree: i32) -> Option<Matrix> {
        let n = self.m.space().dim(degree);
        let (dl, da) = (self.l.dim(degree), self.a.dim(degree));
        if dl + da != n {
            return None;
        }
        let mut cols: Vec<Vec<Scalar>> = self.l.basis_vectors(degree).to_vec();
        cols.extend(self.a.basis_vectors(degree).iter().cloned());
        let inv = Matrix::from_cols(n, &cols).inverse()?;
        let rows: Vec<Vec<Scalar>> = (dl..n).map(|r| inv.row(r).to_vec()).collect();
        Matrix::from_rows(da, n, rows)
    }

    /// `p: M -> A` along `L`, in `A`-coordinates.
    pub fn project(&self, x: &Element) -> Vec<Scalar> {
        match self.projection_matrix(x.degree) {
            Some(p) if self.a.dim(x.degree) > 0 => p.mul_vec(&x.coeffs),
            _ => Vec::new(),
        }
    }
}

pub fn lietype_check(s: &LieTypeSplit, exec: Exec) -> LieTypeReport {
    let degrees: Vec<i32> = s.m.space().degrees().collect();
    let direct_sum = degrees.iter().all(|&d| {
        let n = s.m.space().dim(d);
        let mut vs = s.l.basis_vectors(d).to_vec();
        vs.extend(s.a.basis_vectors(d).iter().cloned());
        vs.len() == n && span_basis(n, &vs).len() == n
    });
    let l_subalgebra = s.m.check_subalgebra(&s.l).is_ok();
    let a_basis: Vec<BasisRef> = s.a.as_space().basis();
    let prs = pairs(&a_basis);
    let mode = CheckMode::FirstFailure;
    let a_abelian = run_check(exec, mode, &prs, |&(x, y)| {
        let v = s.m.bracket(&s.a_element(x), &s.a_element(y));
        let z = Element::zero(s.m.space(), v.degree);
        compare(vec![x, y], v, z)
    });
    let derived_closed = run_check(exec, mode, &prs, |&(x, y)| {
        let v = s.m.bracket(&s.m.diff(&s.a_element(x)), &s.a_element(y));
        if s.a.contains(&v) {
            None
        } else {
            let inside = Element::zero(s.m.space(), v.degree);
            compare(vec![x, y], v, inside)
        }
    });
    LieTypeReport { direct_sum, l_subalgebra, a_abelian, derived_closed }
}

/// `(A[-1], δ, {,})` with `δa = -p(da)` and `{a,b} = -(-1)^i [da,b]` for
/// `a ∈ A[-1]^i`, together with the inclusion `i_a = a`, a degree −1 map
/// into `M`.
#[derive(Clone, Debug)]
pub struct DerivedDgla {
    pub dgla: Dgla,
    pub inclusion: GradedMap,
}

pub fn lietype_dgla(s: &LieTypeSplit, exec: Exec) -> Result<DerivedDgla> {
    let report = lietype_check(s, exec);
    if let Some(name) = report.first_failure() {
        return Err(Error::Precondition(format!("not of Lie type: {name} fails")));
    }
    let a_space = s.a.as_space();
    let space = a_space.shift(-1);
    let elem = |b: BasisRef| s.a_element(BasisRef { degree: b.degree - 1, index: b.index });
    let delta = GradedMap::from_fn(&space, &space, 1, |b| {
        s.project(&s.m.diff(&elem(b))).into_iter().map(|v| -v).collect()
    });
    let bracket = Bilinear::from_fn(&space, 0, |x, y| {
        let v = s.m.bracket(&s.m.diff(&elem(x)), &elem(y)).scale(&-sign(x.degree as i64));
        s.a.coordinates(&v).expect("derived bracket lands in A")
    });
    let inclusion = GradedMap::from_fn(&space, s.m.space(), -1, |b| elem(b).coeffs);
    Ok(DerivedDgla { dgla: Dgla::new(space, delta, bracket)?, inclusion })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTypeCertificate {
    pub btt: BttCertificate,
    /// `p(𝒍_a) = 0` for every basis vector of `A[-1]`.
    pub lie_in_l: bool,
}

/// The Cartan calculus on `A[-1] -> M` with `H = L` and `i_a = -a`.
///
/// Leibniz on `[a,b] = 0` gives `[a,db] = (-1)^i [da,b] = -{a,b}`, so the
/// plain inclusion satisfies `i_{a,b} = -[i_a, d i_b]`; its negative is the
/// Cartan homotopy. `p(𝒍_a) = 0` holds for either sign.
pub fn lietype_calculus(s: &LieTypeSplit, exec: Exec) -> Result<CartanCalculus> {
    let derived = lietype_dgla(s, exec)?;
    let i = derived.inclusion.scale(&int(-1));
    CartanCalculus::new(derived.dgla, s.m.clone(), i, s.l.clone())
}

/// Certifies the calculus of [`lietype_calculus`] and checks `p(𝒍_a) = 0`.
pub fn lietype_btt(s: &LieTypeSplit, exec: Exec) -> Result<LieTypeCertificate> {
    let data = lietype_calculus(s, exec)?;
    let lie = lie_derivative_map(&data.l, &data.m, &data.i);
    let lie_in_l = data
        .l
        .space()
        .basis()
        .into_iter()
        .all(|b| s.project(&lie.apply_basis(b)).iter().all(num_traits::Zero::is_zero));
    Ok(LieTypeCertificate { btt: btt_certify(&data, exec)?, lie_in_l })
}

/// `(V, d_V)`, `(W, d_W)` and `π ∈ Hom¹(W, V)`.
#[derive(Clone, Debug)]
pub struct PiData {
    pub v: GradedSpace,
    pub dv: GradedMap,
    pub w: GradedSpace,
    pub dw: GradedMap,
    pub pi: GradedMap,
}

impl PiData {
    pub fn new(v: GradedSpace, dv: GradedMap, w: GradedSpace, dw: GradedMap, pi: GradedMap) -> Result<Self> {
        check_differential(&v, &dv)?;
        check_differential(&w, &dw)?;
        if pi.source() != &w || pi.target() != &v {
            return Err(Error::Shape("π must map W to V".into()));
        }
        if pi.degree() != 1 {
            return Err(Error::Degree { expected: 1, found: pi.degree() });
        }
        Ok(PiData { v, dv, w, dw, pi })
    }

    /// `D = (d_V  -π ; 0  d_W)` on `V ⊕ W` (V first in every degree).
    pub fn big_d(&self) -> GradedMap {
        let sum = self.v.direct_sum(&self.w);
        let diag = block_diagonal(&sum, &[(&self.v, &self.dv), (&self.w, &self.dw)]);
        let off = GradedMap::from_fn(&sum, &sum, 1, |b| {
            let mut out = zeros(sum.dim(b.degree + 1));
            let nv = self.v.dim(b.degree);
            if b.index >= nv {
                let img = self.pi.apply_basis(BasisRef { degree: b.degree, index: b.index - nv });
                for (r, x) in img.coeffs.iter().enumerate() {
                    out[r] = -x;
                }
            }
            out
        });
        diag.add(&off).expect("same shape")
    }
}

/// The π-example: `M = End(V ⊕ W)` with `[D, -]`, `A` the maps `V -> W`,
/// `L` the maps with zero lower-left block.
#[derive(Clone, Debug)]
pub struct PiExample {
    pub data: PiData,
    pub end: EndAlgebra,
    pub split: LieTypeSplit,
}

pub fn pi_example_build(p: &PiData) -> Result<PiExample> {
    let sum = p.v.direct_sum(&p.w);
    let d = p.big_d();
    let end = EndAlgebra::new(&sum, &d)?;
    let space = end.space().clone();
    let (mut lower, mut rest) = (Vec::new(), Vec::new());
    for b in space.basis() {
        let (i, r, c) = end.entry_of(b);
        let from_v = c < p.v.dim(i);
        let to_w = r >= p.v.dim(i + b.degree);
        if from_v && to_w {
            lower.push(b);
        } else {
            rest.push(b);
        }
    }
    let split = LieTypeSplit::new(end.dgla.clone(), Subspace::coordinate(&space, &rest), Subspace::coordinate(&space, &lower))?;
    Ok(PiExample { data: p.clone(), end, split })
}

impl PiExample {
    /// An element of `A[-1]` as a map `V -> W` (lower-left block).
    fn as_lower(&self, b: BasisRef) -> GradedMap {
        let x = Element::new(b.degree - 1, self.split.a.basis_vectors(b.degree - 1)[b.index].clone());
        self.end.to_map(&x)
    }

    /// `[f,g]_π = fπg - (-1)^{ij} gπf`, compared with the abstract derived
    /// bracket on every basis pair of `A[-1]`.
    pub fn compare_brackets(&self, exec: Exec) -> Result<Outcome> {
        let derived = lietype_dgla(&self.split, exec)?;
        let sum = self.data.v.direct_sum(&self.data.w);
        let big_pi = GradedMap::from_fn(&sum, &sum, 1, |b| {
            let mut out = zeros(sum.dim(b.degree + 1));
            let nv = self.data.v.dim(b.degree);
            if b.index >= nv {
                let img = self.data.pi.apply_basis(BasisRef { degree: b.degree, index: b.index - nv });
                out[..img.coeffs.len()].clone_from_slice(&img.coeffs);
            }
            out
        });
        let basis = derived.dgla.space().basis();
        let prs = pairs(&basis);
        Ok(run_check(exec, CheckMode::FirstFailure, &prs, |&(x, y)| {
            let (f, g) = (self.as_lower(x), self.as_lower(y));
            let fpg = f.compose(&big_pi).and_then(|h| h.compose(&g)).expect("endomaps");
            let gpf = g.compose(&big_pi).and_then(|h| h.compose(&f)).expect("endomaps");
            let pi_bracket = fpg.sub(&gpf.scale(&sign((x.degree * y.degree) as i64))).expect("same degree");
            let lhs = self.end.to_element(&pi_bracket);
            let rhs = derived.inclusion.apply(&derived.dgla.bracket_basis(x, y));
            compare(vec![x, y], lhs, rhs)
        }))
    }

    /// `δf = -d_W f - (-1)^i f d_V`, compared with `δ` of the derived algebra.
    pub fn compare_differentials(&self, exec: Exec) -> Result<bool> {
        let derived = lietype_dgla(&self.split, exec)?;
        let sum = self.data.v.direct_sum(&self.data.w);
        let dsum = block_diagonal(&sum, &[(&self.data.v, &self.data.dv), (&self.data.w, &self.data.dw)]);
        Ok(derived.dgla.space().basis().into_iter().all(|b| {
            let f = self.as_lower(b);
            let expected = dsum
                .compose(&f)
                .expect("endomaps")
                .scale(&int(-1))
                .sub(&f.compose(&dsum).expect("endomaps").scale(&sign(b.degree as i64)))
                .expect("same degree");
            self.end.to_element(&expected) == derived.inclusion.apply(&derived.dgla.diff(&Element::basis(derived.dgla.space(), b)))
        }))
    }
}

/// Dimensions of the `A[-1]` part, by degree.
pub fn derived_dims(s: &LieTypeSplit) -> BTreeMap<i32, usize> {
    let a = s.a.as_space().shift(-1);
    a.support().into_iter().map(|d| (d, a.dim(d))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn line(deg: i32) -> (GradedSpace, GradedMap) {
        let s = GradedSpace::new(deg, vec![1]);
        let d = GradedMap::zero(&s, &s, 1);
        (s, d)
    }

    fn pi_data(v_deg: i32, w_deg: i32, pi_value: i64) -> PiData {
        let (v, dv) = line(v_deg);
        let (w, dw) = line(w_deg);
        let pi = GradedMap::from_fn(&w, &v, 1, |_| if v.dim(w_deg + 1) == 1 { vec![int(pi_value)] } else { vec![] });
        PiData::new(v, dv, w, dw, pi).unwrap()
    }

    #[test]
    fn pi_zero_gives_abelian_derived_algebra() {
        let ex = pi_example_build(&pi_data(0, 0, 0)).unwrap();
        assert!(lietype_check(&ex.split, Exec::Sequential).holds());
        let d = lietype_dgla(&ex.split, Exec::Sequential).unwrap();
        assert!(d.dgla.is_abelian());
        assert!(d.dgla.check_axioms(Exec::Sequential, CheckMode::Exhaustive).holds());
        let cert = lietype_btt(&ex.split, Exec::Sequential).unwrap();
        assert!(cert.btt.certified() && cert.lie_in_l);
    }

    #[test]
    fn nonzero_pi_matches_block_formula() {
        // V = K^2 in degree 1, W = K in degree 0, π(w) = v1 + 3 v2
        let v = GradedSpace::new(1, vec![2]);
        let w = GradedSpace::new(0, vec![1]);
        let pi = GradedMap::from_fn(&w, &v, 1, |_| vec![int(1), int(3)]);
        let p = PiData::new(v.clone(), GradedMap::zero(&v, &v, 1), w.clone(), GradedMap::zero(&w, &w, 1), pi).unwrap();
        let ex = pi_example_build(&p).unwrap();
        assert!(lietype_check(&ex.split, Exec::Sequential).holds());
        let d = lietype_dgla(&ex.split, Exec::Sequential).unwrap();
        assert_eq!(derived_dims(&ex.split), BTreeMap::from([(0, 2)]));
        assert!(!d.dgla.is_abelian());
        assert!(d.dgla.check_axioms(Exec::Sequential, CheckMode::Exhaustive).holds());
        assert!(ex.compare_brackets(Exec::Sequential).unwrap().holds);
        assert!(ex.compare_differentials(Exec::Sequential).unwrap());
        let cert = lietype_btt(&ex.split, Exec::Sequential).unwrap();
        assert!(cert.lie_in_l);
    }

    #[test]
    fn abelian_failure_is_named() {
        // A = all of End(K): not abelian once the bracket is nonzero
        let v = GradedSpace::new(0, vec![2]);
        let end = EndAlgebra::new(&v, &GradedMap::zero(&v, &v, 1)).unwrap();
        let s = LieTypeSplit::new(end.dgla.clone(), Subspace::zero(end.space()), Subspace::full(end.space())).unwrap();
        assert_eq!(lietype_check(&s, Exec::Sequential).first_failure(), Some("a_abelian"));
        assert!(matches!(lietype_dgla(&s, Exec::Sequential), Err(Error::Precondition(_))));
    }

    #[test]
    fn chain_condition_violation_reported() {
        // V = span(v0 in 0, v1 in 1) with d v0 = v1, W in degree 0, π(w) = v1:
        // d_V π = 0 but π d_W = 0 as well, so use W with d w0 = w1 instead
        let v = GradedSpace::new(0, vec![0, 1]);
        let dv = GradedMap::zero(&v, &v, 1);
        let w = GradedSpace::new(-1, vec![1, 1]);
        let dw = GradedMap::from_fn(&w, &w, 1, |b| if b.degree == -1 { vec![int(1)] } else { vec![] });
        // π: W^{-1} -> V^0 (zero space) and W^0 -> V^1
        let pi = GradedMap::from_fn(&w, &v, 1, |b| if b.degree == 0 { vec![int(1)] } else { vec![] });
        let p = PiData::new(v, dv, w, dw, pi).unwrap();
        assert!(matches!(pi_example_build(&p), Err(Error::NotSquareZero(_))));
    }

    #[test]
    fn plain_inclusion_fails_the_cartan_identity_by_a_sign() {
        let v = GradedSpace::new(1, vec![2]);
        let w = GradedSpace::new(0, vec![1]);
        let pi = GradedMap::from_fn(&w, &v, 1, |_| vec![int(1), int(3)]);
        let p = PiData::new(v.clone(), GradedMap::zero(&v, &v, 1), w.clone(), GradedMap::zero(&w, &w, 1), pi).unwrap();
        let ex = pi_example_build(&p).unwrap();
        let d = lietype_dgla(&ex.split, Exec::Sequential).unwrap();
        let plain = crate::cartan::cartan_check(&d.dgla, &ex.split.m, &d.inclusion, Exec::Sequential).unwrap();
        assert!(plain.commuting.holds && !plain.bracket_rule.holds);
        let data = lietype_calculus(&ex.split, Exec::Sequential).unwrap();
        assert!(crate::cartan::cartan_check(&data.l, &data.m, &data.i, Exec::Sequential).unwrap().holds());
    }
}
