//! Polynomial forms `M[t,dt]`, evaluation and integration, the explicit
//! factorisation `L -> P_f -> M`, and the cone model of the homotopy fibre.
//!
//! An element of `M[t,dt]` of degree `k` is `Σ m_p t^p + Σ n_q t^q dt` with
//! `m_p ∈ M^k` and `n_q ∈ M^{k-1}`; forms are written to the right of the
//! coefficients. Brackets follow the Koszul rule
//! `[m⊗ω, n⊗η] = (-1)^{|ω||n|} [m,n]⊗ωη`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::{self, check_chain_map, induced_with, CohomologyReport, InducedMap};
use crate::dgla::{morphism_check, Dgla};
use crate::error::{Error, Result};
use crate::graded::{Element, GradedMap, GradedSpace, Subspace};
use crate::linalg::{int, sign, zeros, Matrix, Scalar};
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyElement {
    degree: i32,
    /// `p ↦ m_p`, coefficient of `t^p`, degree `degree`.
    t_terms: BTreeMap<u32, Element>,
    /// `q ↦ n_q`, coefficient of `t^q dt`, degree `degree - 1`.
    dt_terms: BTreeMap<u32, Element>,
}

fn push(map: &mut BTreeMap<u32, Element>, p: u32, x: Element) {
    if x.is_zero() {
        return;
    }
    match map.remove(&p) {
        Some(old) => {
            let sum = old.add(&x);
            if !sum.is_zero() {
                map.insert(p, sum);
            }
        }
        None => {
            map.insert(p, x);
        }
    }
}

impl PolyElement {
    pub fn zero(degree: i32) -> Self {
        PolyElement { degree, t_terms: BTreeMap::new(), dt_terms: BTreeMap::new() }
    }

    /// `m t^p`.
    pub fn monomial(m: Element, p: u32) -> Self {
        let mut out = PolyElement::zero(m.degree);
        push(&mut out.t_terms, p, m);
        out
    }

    /// `n t^q dt`.
    pub fn dt_monomial(n: Element, q: u32) -> Self {
        let mut out = PolyElement::zero(n.degree + 1);
        push(&mut out.dt_terms, q, n);
        out
    }

    pub fn constant(m: Element) -> Self {
        PolyElement::monomial(m, 0)
    }

    /// `m · p(t)` for a polynomial given by its coefficients.
    pub fn times_poly(m: &Element, coeffs: &[Scalar]) -> Self {
        let mut out = PolyElement::zero(m.degree);
        for (p, c) in coeffs.iter().enumerate() {
            push(&mut out.t_terms, p as u32, m.scale(c));
        }
        out
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn t_terms(&self) -> &BTreeMap<u32, Element> {
        &self.t_terms
    }

    pub fn dt_terms(&self) -> &BTreeMap<u32, Element> {
        &self.dt_terms
    }

    pub fn is_zero(&self) -> bool {
        self.t_terms.is_empty() && self.dt_terms.is_empty()
    }

    /// Highest power of `t` appearing (with or without `dt`).
    pub fn t_degree(&self) -> u32 {
        let a = self.t_terms.keys().next_back().copied().unwrap_or(0);
        let b = self.dt_terms.keys().next_back().copied().unwrap_or(0);
        a.max(b)
    }

    pub fn add(&self, other: &PolyElement) -> PolyElement {
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        let mut out = self.clone();
        for (&p, m) in &other.t_terms {
            push(&mut out.t_terms, p, m.clone());
        }
        for (&q, n) in &other.dt_terms {
            push(&mut out.dt_terms, q, n.clone());
        }
        out
    }

    pub fn scale(&self, a: &Scalar) -> PolyElement {
        let mut out = PolyElement::zero(self.degree);
        for (&p, m) in &self.t_terms {
            push(&mut out.t_terms, p, m.scale(a));
        }
        for (&q, n) in &self.dt_terms {
            push(&mut out.dt_terms, q, n.scale(a));
        }
        out
    }

    pub fn sub(&self, other: &PolyElement) -> PolyElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// `d(m p(t) + n q(t) dt) = (dm) p + (-1)^{|m|} m p' dt + (dn) q dt`.
    pub fn poly_d(&self, d: &GradedMap) -> PolyElement {
        let mut out = PolyElement::zero(self.degree + 1);
        let s = sign(self.degree as i64);
        for (&p, m) in &self.t_terms {
            push(&mut out.t_terms, p, d.apply(m));
            if p > 0 {
                push(&mut out.dt_terms, p - 1, m.scale(&(&s * int(p as i64))));
            }
        }
        for (&q, n) in &self.dt_terms {
            push(&mut out.dt_terms, q, d.apply(n));
        }
        out
    }

    pub fn poly_bracket(&self, other: &PolyElement, m: &Dgla) -> PolyElement {
        let mut out = PolyElement::zero(self.degree + other.degree);
        for (&p, x) in &self.t_terms {
            for (&q, y) in &other.t_terms {
                push(&mut out.t_terms, p + q, m.bracket(x, y));
            }
            for (&q, y) in &other.dt_terms {
                push(&mut out.dt_terms, p + q, m.bracket(x, y));
            }
        }
        for (&q, y) in &self.dt_terms {
            for (&p, x) in &other.t_terms {
                let s = sign(x.degree as i64);
                push(&mut out.dt_terms, p + q, m.bracket(y, x).scale(&s));
            }
        }
        out
    }

    /// `e_a`: substitute `t = a`, drop `dt` terms.
    pub fn evaluate(&self, space: &GradedSpace, a: &Scalar) -> Element {
        let mut out = Element::zero(space, self.degree);
        for (&p, m) in &self.t_terms {
            out.axpy(&num_traits::pow(a.clone(), p as usize), m);
        }
        out
    }

    /// `Σ n_q / (q + 1)`, the integral over `[0, 1]` of the `dt` part, with
    /// the form written to the right of the coefficient.
    pub fn integrate01(&self, space: &GradedSpace) -> Element {
        let mut out = Element::zero(space, self.degree - 1);
        for (&q, n) in &self.dt_terms {
            out.axpy(&Scalar::new(1.into(), (q as i64 + 1).into()), n);
        }
        out
    }

    /// Integral with the form written to the left of the coefficient
    /// (`q(t) dt · n = (-1)^{|n|} n q(t) dt`).
    pub fn integrate01_left(&self, space: &GradedSpace) -> Element {
        self.integrate01(space).scale(&sign(self.degree as i64 - 1))
    }
}

/// The subcomplex `M[t,dt]^{≤T}` of forms with `t`-degree at most `T`
/// (`t^q dt` with `q < T`), materialized as a graded space.
#[derive(Clone, Debug)]
pub struct PolySpace {
    pub base: GradedSpace,
    pub truncation: u32,
    pub space: GradedSpace,
}

impl PolySpace {
    pub fn new(base: &GradedSpace, truncation: u32) -> Self {
        let mut names: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        if let Some((lo, hi)) = base.support_bounds() {
            for n in lo..=hi + 1 {
                let v = names.entry(n).or_default();
                for p in 0..=truncation {
                    for nm in base.names_in(n) {
                        v.push(if p == 0 { nm.clone() } else { format!("{nm}*t^{p}") });
                    }
                }
                for q in 0..truncation {
                    for nm in base.names_in(n - 1) {
                        v.push(if q == 0 { format!("{nm}*dt") } else { format!("{nm}*t^{q}dt") });
                    }
                }
            }
        }
        let space = match names.keys().next() {
            Some(&lo) => GradedSpace::with_names(lo, names.into_values().collect()),
            None => GradedSpace::zero(),
        };
        PolySpace { base: base.clone(), truncation, space }
    }

    pub fn to_poly(&self, x: &Element) -> PolyElement {
        let n = x.degree;
        let (a, b) = (self.base.dim(n), self.base.dim(n - 1));
        let mut out = PolyElement::zero(n);
        for p in 0..=self.truncation as usize {
            let m = Element::new(n, x.coeffs[p * a..(p + 1) * a].to_vec());
            push(&mut out.t_terms, p as u32, m);
        }
        let off = (self.truncation as usize + 1) * a;
        for q in 0..self.truncation as usize {
            let m = Element::new(n - 1, x.coeffs[off + q * b..off + (q + 1) * b].to_vec());
            push(&mut out.dt_terms, q as u32, m);
        }
        out
    }

    /// Coordinates of a form; `None` if it exceeds the truncation.
    pub fn to_element(&self, x: &PolyElement) -> Option<Element> {
        let n = x.degree;
        let (a, b) = (self.base.dim(n), self.base.dim(n - 1));
        let t = self.truncation;
        if x.t_terms.keys().any(|&p| p > t) || x.dt_terms.keys().any(|&q| q >= t) {
            return None;
        }
        let mut coeffs = zeros(self.space.dim(n));
        for (&p, m) in &x.t_terms {
            for (j, c) in m.coeffs.iter().enumerate() {
                coeffs[p as usize * a + j] = c.clone();
            }
        }
        let off = (t as usize + 1) * a;
        for (&q, m) in &x.dt_terms {
            for (j, c) in m.coeffs.iter().enumerate() {
                coeffs[off + q as usize * b + j] = c.clone();
            }
        }
        Some(Element::new(n, coeffs))
    }

    pub fn differential(&self, d: &GradedMap) -> GradedMap {
        GradedMap::from_fn(&self.space, &self.space, 1, |b| {
            let x = self.to_poly(&Element::basis(&self.space, b));
            self.to_element(&x.poly_d(d)).expect("truncation is a subcomplex").coeffs
        })
    }

    /// `e_a` as a degree-0 map to the base.
    pub fn evaluation(&self, a: &Scalar) -> GradedMap {
        GradedMap::from_fn(&self.space, &self.base, 0, |b| {
            self.to_poly(&Element::basis(&self.space, b)).evaluate(&self.base, a).coeffs
        })
    }

    /// Inclusion of constants.
    pub fn constants(&self) -> GradedMap {
        GradedMap::from_fn(&self.base, &self.space, 0, |b| {
            let m = PolyElement::constant(Element::basis(&self.base, b));
            self.to_element(&m).expect("constants fit").coeffs
        })
    }
}

/// `L ⊕ M[t,dt]^{≤T}` with coordinates split into the two parts.
#[derive(Clone, Debug)]
struct PairSpace {
    l: GradedSpace,
    poly: PolySpace,
    space: GradedSpace,
}

impl PairSpace {
    fn new(l: &GradedSpace, m: &GradedSpace, truncation: u32) -> Self {
        let poly = PolySpace::new(m, truncation);
        let space = l.direct_sum(&poly.space);
        PairSpace { l: l.clone(), poly, space }
    }

    fn split(&self, x: &Element) -> (Element, PolyElement) {
        let n = self.l.dim(x.degree);
        let a = Element::new(x.degree, x.coeffs[..n].to_vec());
        let b = Element::new(x.degree, x.coeffs[n..].to_vec());
        (a, self.poly.to_poly(&b))
    }

    fn join(&self, x: &Element, m: &PolyElement) -> Option<Element> {
        let mut coeffs = x.coeffs.clone();
        coeffs.extend(self.poly.to_element(m)?.coeffs);
        Some(Element::new(x.degree, coeffs))
    }

    fn differential(&self, dl: &GradedMap, dm: &GradedMap) -> GradedMap {
        GradedMap::from_fn(&self.space, &self.space, 1, |b| {
            let (x, m) = self.split(&Element::basis(&self.space, b));
            self.join(&dl.apply(&x), &m.poly_d(dm)).expect("subcomplex").coeffs
        })
    }

    fn map_to(&self, target: &GradedSpace, f: impl Fn(&Element, &PolyElement) -> Vec<Scalar>) -> GradedMap {
        GradedMap::from_fn(&self.space, target, 0, |b| {
            let (x, m) = self.split(&Element::basis(&self.space, b));
            f(&x, &m)
        })
    }
}

/// Ledger of the explicit factorisation `L -i-> P_f -g-> M`, computed on the
/// truncation `P_f ∩ (L × M[t,dt]^{≤T})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationLedger {
    pub truncation: u32,
    pub i_lands_in_p: bool,
    pub g_after_i_is_f: bool,
    pub p_after_i_is_id: bool,
    /// Every basis `m` of `M` has the preimage `(0, (1-t)m)` in `P_f`.
    pub g_surjective: bool,
    pub p_surjective: bool,
    pub p_quasi_iso: bool,
    pub i_quasi_iso: bool,
    /// Brackets of basis pairs of `P_f` (computed in `M[t,dt]`) satisfy
    /// `m(1) = f(x)`.
    pub bracket_closed: bool,
    /// `g` and `p` preserve brackets of basis pairs.
    pub g_p_preserve_brackets: bool,
    pub p_f_dims: BTreeMap<i32, usize>,
}

impl FactorizationLedger {
    pub fn holds(&self) -> bool {
        self.i_lands_in_p
            && self.g_after_i_is_f
            && self.p_after_i_is_id
            && self.g_surjective
            && self.p_surjective
            && self.p_quasi_iso
            && self.i_quasi_iso
            && self.bracket_closed
            && self.g_p_preserve_brackets
    }
}

pub fn factorize(f: &GradedMap, l: &Dgla, m: &Dgla, truncation: u32, exec: Exec) -> Result<FactorizationLedger> {
    if truncation == 0 {
        return Err(Error::Precondition("truncation must be at least 1".into()));
    }
    if !morphism_check(f, l, m, exec)?.holds() {
        return Err(Error::Precondition("f is not a morphism of DG-Lie algebras".into()));
    }
    let pair = PairSpace::new(l.space(), m.space(), truncation);
    let one = Scalar::one();
    let constraint = pair.map_to(m.space(), |x, poly| poly.evaluate(m.space(), &one).sub(&f.apply(x)).coeffs);
    let p_sub = Subspace::kernel(&constraint);
    let big_d = pair.differential(l.d(), m.d());
    let sq = cohomology::subquotient(&pair.space, &big_d, &p_sub)?;
    let (p_space, p_d, inc) = (sq.sub.space().clone(), sq.sub.d().clone(), sq.inclusion.clone());

    let i_map = GradedMap::from_fn(l.space(), &pair.space, 0, |b| {
        let x = Element::basis(l.space(), b);
        pair.join(&x, &PolyElement::constant(f.apply(&x))).expect("constant").coeffs
    });
    let zero_scalar = Scalar::zero();
    let g_map = pair.map_to(m.space(), |_, poly| poly.evaluate(m.space(), &zero_scalar).coeffs);
    let p_map = pair.map_to(l.space(), |x, _| x.coeffs.clone());

    let basis_l = l.space().basis();
    let i_lands_in_p = basis_l.iter().all(|&b| p_sub.contains(&i_map.apply_basis(b)));
    let g_after_i_is_f = g_map.compose(&i_map)? == *f;
    let p_after_i_is_id = p_map.compose(&i_map)? == GradedMap::identity(l.space());

    let one_minus_t = [Scalar::one(), -Scalar::one()];
    let g_surjective = m.space().basis().into_iter().all(|b| {
        let mb = Element::basis(m.space(), b);
        let pre = pair
            .join(&Element::zero(l.space(), b.degree), &PolyElement::times_poly(&mb, &one_minus_t))
            .expect("linear forms fit");
        p_sub.contains(&pre) && g_map.apply(&pre) == mb
    });

    // p restricted to P_f
    let p_on_p = p_map.compose(&inc)?;
    let p_surjective = Subspace::image(&p_on_p).is_full();
    let h_p = cohomology::cohomology(&p_space, &p_d)?;
    let h_l = l.cohomology()?;
    let p_quasi_iso = induced_with(&p_on_p, &h_p, &h_l).is_iso();
    let i_into_p = GradedMap::from_fn(l.space(), &p_space, 0, |b| {
        p_sub.coordinates(&i_map.apply_basis(b)).unwrap_or_else(|| zeros(p_space.dim(b.degree)))
    });
    let i_quasi_iso = i_lands_in_p && induced_with(&i_into_p, &h_l, &h_p).is_iso();

    let p_basis: Vec<(Element, PolyElement)> =
        p_space.basis().into_iter().map(|b| pair.split(&inc.apply_basis(b))).collect();
    let idx: Vec<(usize, usize)> =
        (0..p_basis.len()).flat_map(|a| (0..p_basis.len()).map(move |b| (a, b))).collect();
    let bad = exec.find_first(&idx, |&(a, b)| {
        let ((x, mx), (y, my)) = (&p_basis[a], &p_basis[b]);
        let xy = l.bracket(x, y);
        let mxy = mx.poly_bracket(my, m);
        let closed = mxy.evaluate(m.space(), &one) == f.apply(&xy);
        let g_ok = mxy.evaluate(m.space(), &zero_scalar)
            == m.bracket(&mx.evaluate(m.space(), &zero_scalar), &my.evaluate(m.space(), &zero_scalar));
        let d_ok = {
            // Leibniz in M[t,dt] on the pair, a sanity check of the form calculus
            let lhs = mxy.poly_d(m.d());
            let rhs = mx
                .poly_d(m.d())
                .poly_bracket(my, m)
                .add(&mx.poly_bracket(&my.poly_d(m.d()), m).scale(&sign(mx.degree() as i64)));
            lhs == rhs
        };
        (!closed || !g_ok || !d_ok).then_some((closed, g_ok && d_ok))
    });
    let (bracket_closed, g_p_preserve_brackets) = bad.unwrap_or((true, true));

    Ok(FactorizationLedger {
        truncation,
        i_lands_in_p,
        g_after_i_is_f,
        p_after_i_is_id,
        g_surjective,
        p_surjective,
        p_quasi_iso,
        i_quasi_iso,
        bracket_closed,
        g_p_preserve_brackets,
        p_f_dims: p_space.support().into_iter().map(|d| (d, p_space.dim(d))).collect(),
    })
}

/// The cone `C(f)^i = L^i ⊕ M^{i-1}` with `D(x, m) = (dx, f(x) - dm)`.
#[derive(Clone, Debug)]
pub struct ConeModel {
    pub space: GradedSpace,
    pub d: GradedMap,
    /// `H^{i-1}(M) -> H^i(C)`, `m ↦ (0, m)`, a degree 1 chain map.
    pub iota: GradedMap,
    /// `C -> L`, `(x, m) ↦ x`.
    pub pi: GradedMap,
    pub f: GradedMap,
    pub dl: GradedMap,
    pub dm: GradedMap,
}

impl ConeModel {
    /// Cone of a chain map `f: (L, dL) -> (M, dM)` of degree 0.
    pub fn new(f: &GradedMap, dl: &GradedMap, dm: &GradedMap) -> Result<Self> {
        if f.degree() != 0 {
            return Err(Error::Degree { expected: 0, found: f.degree() });
        }
        cohomology::check_differential(f.source(), dl)?;
        cohomology::check_differential(f.target(), dm)?;
        check_chain_map(f, dl, dm)?;
        let (l, m) = (f.source().clone(), f.target().clone());
        let sm = m.shift(-1).rename(|_, n| format!("s{n}"));
        let space = l.direct_sum(&sm);
        let split = |x: &Element| {
            let n = l.dim(x.degree);
            (Element::new(x.degree, x.coeffs[..n].to_vec()), Element::new(x.degree - 1, x.coeffs[n..].to_vec()))
        };
        let join = |x: &Element, y: &Element| {
            let mut c = x.coeffs.clone();
            c.extend(y.coeffs.iter().cloned());
            c
        };
        let d = GradedMap::from_fn(&space, &space, 1, |b| {
            let (x, y) = split(&Element::basis(&space, b));
            join(&dl.apply(&x), &f.apply(&x).sub(&dm.apply(&y)))
        });
        let iota = GradedMap::from_fn(&m, &space, 1, |b| {
            join(&Element::zero(&l, b.degree + 1), &Element::basis(&m, b))
        });
        let pi = GradedMap::from_fn(&space, &l, 0, |b| split(&Element::basis(&space, b)).0.coeffs);
        cohomology::check_differential(&space, &d)?;
        Ok(ConeModel { space, d, iota, pi, f: f.clone(), dl: dl.clone(), dm: dm.clone() })
    }

    pub fn cohomology(&self) -> CohomologyReport {
        cohomology::cohomology(&self.space, &self.d).expect("checked at construction")
    }

    /// Exactness of `H^{i-1}(M) -> H^i(C) -> H^i(L) -> H^i(M) -> H^{i+1}(C)`
    /// at every joint.
    pub fn les_check(&self) -> LesReport {
        let hc = self.cohomology();
        let hl = cohomology::cohomology(self.f.source(), &self.dl).expect("checked");
        let hm = cohomology::cohomology(self.f.target(), &self.dm).expect("checked");
        let iota = induced_with(&self.iota, &hm, &hc);
        let pi = induced_with(&self.pi, &hc, &hl);
        let f = induced_with(&self.f, &hl, &hm);

        let mut degrees: Vec<i32> = Vec::new();
        for s in [self.f.source(), self.f.target(), &self.space] {
            if let Some((lo, hi)) = s.support_bounds() {
                degrees.extend([lo - 1, hi + 1]);
            }
        }
        let (lo, hi) = match (degrees.iter().min(), degrees.iter().max()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0, -1),
        };
        let mut joints = Vec::new();
        for i in lo..=hi {
            joints.push(joint("C", i, &block(&iota, i - 1, hm.dim(i - 1), hc.dim(i)), &block(&pi, i, hc.dim(i), hl.dim(i)), hc.dim(i)));
            joints.push(joint("L", i, &block(&pi, i, hc.dim(i), hl.dim(i)), &block(&f, i, hl.dim(i), hm.dim(i)), hl.dim(i)));
            joints.push(joint("M", i, &block(&f, i, hl.dim(i), hm.dim(i)), &block(&iota, i, hm.dim(i), hc.dim(i + 1)), hm.dim(i)));
        }
        let exact = joints.iter().all(|j| j.exact);
        LesReport { joints, exact, cone_dims: hc.dims(), induced_f: f }
    }
}

fn block(m: &InducedMap, source_degree: i32, src: usize, tgt: usize) -> Matrix {
    m.block(source_degree).cloned().unwrap_or_else(|| Matrix::zero(tgt, src))
}

fn joint(at: &str, degree: i32, a: &Matrix, b: &Matrix, middle: usize) -> Joint {
    let composite_zero = a.cols() == 0 || b.rows() == 0 || b.mul(a).is_zero();
    let (ra, rb) = (a.rank(), b.rank());
    Joint { at: format!("{at}^{degree}"), degree, rank_in: ra, rank_out: rb, middle, exact: composite_zero && ra + rb == middle }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Joint {
    pub at: String,
    pub degree: i32,
    pub rank_in: usize,
    pub rank_out: usize,
    pub middle: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LesReport {
    pub joints: Vec<Joint>,
    pub exact: bool,
    pub cone_dims: BTreeMap<i32, usize>,
    pub induced_f: InducedMap,
}

/// Quasi-isomorphism checks for the projection onto `(M/f(L))[-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwProjectionReport {
    /// `C(f) -> (M/f(L))[-1]`, `(x, m) ↦ [m]`.
    pub cone_chain_map: bool,
    pub cone_quasi_iso: bool,
    pub cone_surjective: bool,
    pub truncation: u32,
    /// `TW(f)^{≤T} -> (M/f(L))[-1]`, `(x, ω) ↦ [∫ω]` with the form on the left.
    pub tw_chain_map: bool,
    pub tw_quasi_iso: bool,
    pub tw_surjective: bool,
    /// The same map with the form written on the right; it anticommutes with
    /// the differentials in odd degrees, so it is recorded only for reference.
    pub right_form_chain_map: bool,
}

impl TwProjectionReport {
    pub fn holds(&self) -> bool {
        self.cone_chain_map
            && self.cone_quasi_iso
            && self.cone_surjective
            && self.tw_chain_map
            && self.tw_quasi_iso
            && self.tw_surjective
    }
}

pub fn tw_projection_quasi_iso_check(f: &GradedMap, l: &Dgla, m: &Dgla, truncation: u32) -> Result<TwProjectionReport> {
    if truncation == 0 {
        return Err(Error::Precondition("truncation must be at least 1".into()));
    }
    if !Subspace::kernel(f).is_zero() {
        return Err(Error::NotInjective);
    }
    let cone = ConeModel::new(f, l.d(), m.d())?;
    let image = Subspace::image(f);
    let q = cohomology::subquotient(m.space(), m.d(), &image)?;
    let (qs, qd) = cohomology::shift(q.quotient.space(), q.quotient.d(), -1);
    let h_q = cohomology::cohomology(&qs, &qd)?;

    let to_q = |mm: &Element| image.quotient_coordinates(mm);
    let n_l = |deg: i32| l.space().dim(deg);
    let cone_map = GradedMap::from_fn(&cone.space, &qs, 0, |b| {
        let x = Element::basis(&cone.space, b);
        to_q(&Element::new(b.degree - 1, x.coeffs[n_l(b.degree)..].to_vec()))
    });
    let cone_chain_map = check_chain_map(&cone_map, &cone.d, &qd).is_ok();
    let cone_induced = induced_with(&cone_map, &cone.cohomology(), &h_q);
    let cone_surjective = Subspace::image(&cone_map).is_full();

    // truncated TW(f): m(0) = 0 and m(1) = f(x)
    let pair = PairSpace::new(l.space(), m.space(), truncation);
    let mm = m.space().direct_sum(m.space());
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let constraint = pair.map_to(&mm, |x, poly| {
        let mut c = poly.evaluate(m.space(), &zero).coeffs;
        c.extend(poly.evaluate(m.space(), &one).sub(&f.apply(x)).coeffs);
        c
    });
    let tw_sub = Subspace::kernel(&constraint);
    let big_d = pair.differential(l.d(), m.d());
    let tw = cohomology::subquotient(&pair.space, &big_d, &tw_sub)?;
    let tw_space = tw.sub.space().clone();
    let integral = |left: bool| {
        GradedMap::from_fn(&tw_space, &qs, 0, |b| {
            let (_, poly) = pair.split(&tw.inclusion.apply_basis(b));
            let v = if left { poly.integrate01_left(m.space()) } else { poly.integrate01(m.space()) };
            to_q(&v)
        })
    };
    let left = integral(true);
    let tw_chain_map = check_chain_map(&left, tw.sub.d(), &qd).is_ok();
    let right_form_chain_map = check_chain_map(&integral(false), tw.sub.d(), &qd).is_ok();
    let tw_induced = induced_with(&left, &tw.sub.cohomology(), &h_q);
    let tw_surjective = Subspace::image(&left).is_full();

    Ok(TwProjectionReport {
        cone_chain_map,
        cone_quasi_iso: cone_chain_map && cone_induced.is_iso(),
        cone_surjective,
        truncation,
        tw_chain_map,
        tw_quasi_iso: tw_chain_map && tw_induced.is_iso(),
        tw_surjective,
        right_form_chain_map,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiberVerdict {
    /// `H*(f)` injective in every degree.
    HomotopyAbelian,
    /// Only `H^1(f)` is injective.
    Unobstructed,
    NoCertificate,
}

/// Certificate for the homotopy fibre, computed on the cone model. The
/// evidence is the injectivity pattern of `H*(f)` together with the cone
/// cohomology; no Maurer–Cartan replay is done on the fibre itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberCertificate {
    pub verdict: FiberVerdict,
    pub injective: BTreeMap<i32, bool>,
    pub induced_f: InducedMap,
    pub cone_dims: BTreeMap<i32, usize>,
    pub les_exact: bool,
}

pub fn homotopy_fiber_abelian_probe(f: &GradedMap, l: &Dgla, m: &Dgla, exec: Exec) -> Result<FiberCertificate> {
    if !morphism_check(f, l, m, exec)?.holds() {
        return Err(Error::Precondition("f is not a morphism of DG-Lie algebras".into()));
    }
    let cone = ConeModel::new(f, l.d(), m.d())?;
    let les = cone.les_check();
    let induced = les.induced_f.clone();
    let verdict = if induced.is_injective() {
        FiberVerdict::HomotopyAbelian
    } else if induced.injective_at(1) {
        FiberVerdict::Unobstructed
    } else {
        FiberVerdict::NoCertificate
    };
    Ok(FiberCertificate {
        verdict,
        injective: induced.injective.clone(),
        induced_f: induced,
        cone_dims: les.cone_dims,
        les_exact: les.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::Bilinear;
    use crate::graded::BasisRef;
    use crate::linalg::{frac, int};

    fn b(d: i32, i: usize) -> BasisRef {
        BasisRef { degree: d, index: i }
    }

    /// `M` with basis `u` (deg 0), `v` (deg 1), `du = v`, bracket `[u,v] = v`.
    fn small_m() -> Dgla {
        let s = GradedSpace::new(0, vec![1, 1]);
        let d = GradedMap::from_fn(&s, &s, 1, |c| if c.degree == 0 { vec![int(1)] } else { vec![] });
        let br = Bilinear::from_entries(&s, 0, &[(b(0, 0), b(1, 0), b(1, 0), int(1)), (b(1, 0), b(0, 0), b(1, 0), int(-1))]).unwrap();
        Dgla::new(s, d, br).unwrap()
    }

    #[test]
    fn poly_d_of_m_t() {
        let m = small_m();
        let u = Element::basis(m.space(), b(0, 0));
        let x = PolyElement::monomial(u.clone(), 1);
        let dx = x.poly_d(m.d());
        let expected = PolyElement::monomial(m.diff(&u), 1).add(&PolyElement::dt_monomial(u, 0));
        assert_eq!(dx, expected);
        assert!(dx.poly_d(m.d()).is_zero());
    }

    #[test]
    fn bracket_rules() {
        let m = small_m();
        let u = Element::basis(m.space(), b(0, 0));
        let v = Element::basis(m.space(), b(1, 0));
        let a = PolyElement::dt_monomial(u.clone(), 0);
        assert!(a.poly_bracket(&a, &m).is_zero());
        let lhs = PolyElement::monomial(u.clone(), 1).poly_bracket(&PolyElement::dt_monomial(v.clone(), 1), &m);
        assert_eq!(lhs, PolyElement::dt_monomial(m.bracket(&u, &v), 2));
        let c = PolyElement::constant(u.clone()).poly_bracket(&PolyElement::constant(v.clone()), &m);
        assert_eq!(c, PolyElement::constant(v));
    }

    #[test]
    fn evaluation_and_integral() {
        let m = small_m();
        let s = m.space();
        let u = Element::basis(s, b(0, 0));
        let x = PolyElement::monomial(u.clone(), 1).add(&PolyElement::dt_monomial(Element::zero(s, -1), 0));
        assert_eq!(x.evaluate(s, &int(1)), u);
        assert_eq!(PolyElement::monomial(u.clone(), 2).evaluate(s, &int(2)), u.scale(&int(4)));
        assert!(PolyElement::monomial(u.clone(), 2).integrate01(s).is_zero());
        let n = PolyElement::dt_monomial(u.clone(), 0);
        assert_eq!(n.integrate01(s), u);
        let centered = PolyElement::dt_monomial(u.scale(&int(2)), 1).add(&PolyElement::dt_monomial(u.neg(), 0));
        assert!(centered.integrate01(s).is_zero());
        assert_eq!(PolyElement::dt_monomial(u.clone(), 2).integrate01(s), u.scale(&frac(1, 3)));
    }

    #[test]
    fn poly_space_is_subcomplex_with_base_cohomology() {
        let m = small_m();
        let p = PolySpace::new(m.space(), 3);
        let d = p.differential(m.d());
        let h = cohomology::cohomology(&p.space, &d).unwrap();
        assert_eq!(h.total_dim(), 0);
        assert!(m.cohomology().unwrap().is_zero());
        // a base with cohomology in two degrees
        let s = GradedSpace::new(-1, vec![1, 0, 2]);
        let p = PolySpace::new(&s, 2);
        let h = cohomology::cohomology(&p.space, &p.differential(&GradedMap::zero(&s, &s, 1))).unwrap();
        assert_eq!((h.dim(-1), h.dim(0), h.dim(1), h.dim(2), h.total_dim()), (1, 0, 2, 0, 3));
    }

    #[test]
    fn factorize_identity_and_zero() {
        let m = small_m();
        let id = GradedMap::identity(m.space());
        assert!(factorize(&id, &m, &m, 2, Exec::Sequential).unwrap().holds());
        let zero = GradedMap::zero(m.space(), m.space(), 0);
        assert!(factorize(&zero, &m, &m, 1, Exec::Sequential).unwrap().holds());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let m = small_m();
        let id = GradedMap::identity(m.space());
        let cone = ConeModel::new(&id, m.d(), m.d()).unwrap();
        assert!(cone.cohomology().is_zero());
        assert!(cone.les_check().exact);
    }

    #[test]
    fn cone_of_zero_map_between_lines() {
        let s = GradedSpace::new(0, vec![1]);
        let l = Dgla::trivial(&s);
        let zero = GradedMap::zero(&s, &s, 0);
        let cone = ConeModel::new(&zero, l.d(), l.d()).unwrap();
        let h = cone.cohomology();
        assert_eq!((h.dim(0), h.dim(1), h.dim(-1)), (1, 1, 0));
        assert!(cone.les_check().exact);
    }

    #[test]
    fn tw_projection_for_line_inclusion() {
        // L = <u> inside M = <u, w> in degree 0, zero differential
        let ls = GradedSpace::new(0, vec![1]);
        let ms = GradedSpace::new(0, vec![2]);
        let l = Dgla::trivial(&ls);
        let m = Dgla::trivial(&ms);
        let f = GradedMap::from_fn(&ls, &ms, 0, |_| vec![int(1), int(0)]);
        let r = tw_projection_quasi_iso_check(&f, &l, &m, 2).unwrap();
        assert!(r.holds(), "{r:?}");
        let id = GradedMap::identity(&ms);
        assert!(tw_projection_quasi_iso_check(&id, &m, &m, 1).unwrap().holds());
    }

    #[test]
    fn right_form_integral_fails_to_commute_in_odd_degree() {
        let m = small_m();
        let ls = GradedSpace::zero();
        let l = Dgla::trivial(&ls);
        let f = GradedMap::zero(&ls, m.space(), 0);
        let r = tw_projection_quasi_iso_check(&f, &l, &m, 2).unwrap();
        assert!(r.holds());
        assert!(!r.right_form_chain_map);
    }
}
