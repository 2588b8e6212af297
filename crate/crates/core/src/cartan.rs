//! Cartan homotopies, Lie derivatives, the homotopy-abelianity certificate
//! built from a Cartan calculus, its relaxed obstruction-only variant, and
//! the obstruction-annihilating map on cone models.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bilinear::Bilinear;
use crate::cohomology::{self, check_chain_map, induced_with, InducedMap};
use crate::dgla::{compare, h_star_bracket, morphism_check, pairs, run_check, CheckMode, Dgla, MorphismReport, Outcome};
use crate::error::{Error, Result};
use crate::graded::{BasisRef, Element, GradedMap, GradedSpace, Subspace};
use crate::homotopy::ConeModel;
use crate::linalg::{sign, Matrix, Scalar};
use crate::par::Exec;

/// `[i_a, i_b] = 0` and `i_{[a,b]} = [i_a, d_M i_b]` on all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanReport {
    pub commuting: Outcome,
    pub bracket_rule: Outcome,
}

impl CartanReport {
    pub fn holds(&self) -> bool {
        self.commuting.holds && self.bracket_rule.holds
    }
}

fn check_shape(l: &Dgla, m: &Dgla, i: &GradedMap) -> Result<()> {
    if i.degree() != -1 {
        return Err(Error::Degree { expected: -1, found: i.degree() });
    }
    if i.source() != l.space() || i.target() != m.space() {
        return Err(Error::Shape("Cartan homotopy does not match L and M".into()));
    }
    Ok(())
}

pub fn cartan_check(l: &Dgla, m: &Dgla, i: &GradedMap, exec: Exec) -> Result<CartanReport> {
    check_shape(l, m, i)?;
    let basis = l.space().basis();
    let prs = pairs(&basis);
    let mode = CheckMode::FirstFailure;
    let commuting = run_check(exec, mode, &prs, |&(a, b)| {
        let v = m.bracket(&i.apply_basis(a), &i.apply_basis(b));
        let zero = Element::zero(m.space(), v.degree);
        compare(vec![a, b], v, zero)
    });
    let bracket_rule = run_check(exec, mode, &prs, |&(a, b)| {
        let lhs = i.apply(&l.bracket_basis(a, b));
        let rhs = m.bracket(&i.apply_basis(a), &m.diff(&i.apply_basis(b)));
        compare(vec![a, b], lhs, rhs)
    });
    Ok(CartanReport { commuting, bracket_rule })
}

/// `𝒍 = d_M i + i d_L` without any checks.
pub fn lie_derivative_map(l: &Dgla, m: &Dgla, i: &GradedMap) -> GradedMap {
    GradedMap::from_fn(l.space(), m.space(), 0, |b| {
        m.diff(&i.apply_basis(b)).add(&i.apply(&l.d().apply_basis(b))).coeffs
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieDerivative {
    pub map: GradedMap,
    pub morphism: MorphismReport,
    /// `d_M i + i d_L = 𝒍`, re-verified on the assembled maps.
    pub homotopy_identity: bool,
}

pub fn lie_derivative(l: &Dgla, m: &Dgla, i: &GradedMap, exec: Exec) -> Result<LieDerivative> {
    if !cartan_check(l, m, i, exec)?.holds() {
        return Err(Error::Precondition("i is not a Cartan homotopy".into()));
    }
    let map = lie_derivative_map(l, m, i);
    let morphism = morphism_check(&map, l, m, exec)?;
    let homotopy = m.d().compose(i)?.add(&i.compose(l.d())?)?;
    Ok(LieDerivative { homotopy_identity: homotopy == map, map, morphism })
}

/// A Cartan homotopy `i: L -> M` with a sub-DGLA `H ⊆ M`.
#[derive(Clone, Debug)]
pub struct CartanCalculus {
    pub l: Dgla,
    pub m: Dgla,
    pub i: GradedMap,
    pub h: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisEntry {
    pub holds: bool,
    /// Degrees where the injectivity check was made, with its result.
    pub per_degree: BTreeMap<i32, bool>,
    pub detail: String,
    pub witness: Option<Vec<BasisRef>>,
}

impl HypothesisEntry {
    fn simple(holds: bool, detail: impl Into<String>, witness: Option<Vec<BasisRef>>) -> Self {
        HypothesisEntry { holds, per_degree: BTreeMap::new(), detail: detail.into(), witness }
    }

    fn injectivity(map: &InducedMap, degrees: Option<&[i32]>, what: &str) -> Self {
        let per_degree = map.injective.clone();
        let holds = match degrees {
            Some(ds) => ds.iter().all(|&d| map.injective_at(d)),
            None => map.is_injective(),
        };
        let detail = match (holds, degrees) {
            (true, _) => format!("{what} is injective in the required degrees"),
            (false, Some(ds)) => {
                let bad: Vec<i32> = ds.iter().copied().filter(|&d| !map.injective_at(d)).collect();
                format!("{what} is not injective in degree {bad:?}")
            }
            (false, None) => format!("{what} is not injective in degree {}", map.first_non_injective().unwrap_or(0)),
        };
        HypothesisEntry { holds, per_degree, detail, witness: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BttVerdict {
    HomotopyAbelianCertified,
    SmoothnessOnlyCertified,
    /// Number of the first failing hypothesis.
    Failed(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BttCertificate {
    pub relaxed: bool,
    pub hypotheses: [HypothesisEntry; 4],
    pub verdict: BttVerdict,
    /// Whether `H*(L)` has zero bracket; recorded on success.
    pub h_star_abelian: Option<bool>,
}

impl BttCertificate {
    pub fn certified(&self) -> bool {
        !matches!(self.verdict, BttVerdict::Failed(_))
    }

    pub fn failing_hypothesis(&self) -> Option<u8> {
        match self.verdict {
            BttVerdict::Failed(k) => Some(k),
            _ => None,
        }
    }
}

impl CartanCalculus {
    pub fn new(l: Dgla, m: Dgla, i: GradedMap, h: Subspace) -> Result<Self> {
        check_shape(&l, &m, &i)?;
        m.check_subalgebra(&h)?;
        Ok(CartanCalculus { l, m, i, h })
    }

    /// `i` followed by the projection, as a degree-0 map `L -> (M/H)[-1]`,
    /// together with the target complex.
    pub fn i_to_quotient(&self) -> Result<(GradedSpace, GradedMap, GradedMap)> {
        let sq = cohomology::subquotient(self.m.space(), self.m.d(), &self.h)?;
        let (qs, qd) = cohomology::shift(sq.quotient.space(), sq.quotient.d(), -1);
        let map = GradedMap::from_fn(self.l.space(), &qs, 0, |b| self.h.quotient_coordinates(&self.i.apply_basis(b)));
        Ok((qs, qd, map))
    }

    fn inclusion_induced(&self) -> Result<InducedMap> {
        let sq = cohomology::subquotient(self.m.space(), self.m.d(), &self.h)?;
        cohomology::induced_map_on_cohomology(&sq.inclusion, sq.sub.d(), self.m.d())
    }

    fn ledger(&self, exec: Exec, degrees3: Option<&[i32]>, degrees4: Option<&[i32]>) -> Result<[HypothesisEntry; 4]> {
        let cartan = cartan_check(&self.l, &self.m, &self.i, exec)?;
        let h1 = match (&cartan.commuting.witness, &cartan.bracket_rule.witness) {
            (Some(w), _) => HypothesisEntry::simple(false, "[i_a, i_b] != 0", Some(w.tuple.clone())),
            (None, Some(w)) => HypothesisEntry::simple(false, "i_[a,b] != [i_a, d i_b]", Some(w.tuple.clone())),
            _ => HypothesisEntry::simple(true, "Cartan identities hold on all basis pairs", None),
        };

        let lie = lie_derivative_map(&self.l, &self.m, &self.i);
        let outside = self.l.space().basis().into_iter().find(|&b| !self.h.contains(&lie.apply_basis(b)));
        let h2 = match outside {
            Some(b) => HypothesisEntry::simple(false, format!("Lie derivative of basis vector {b} is not in H"), Some(vec![b])),
            None => HypothesisEntry::simple(true, "every Lie derivative lies in H", None),
        };

        let h3 = HypothesisEntry::injectivity(&self.inclusion_induced()?, degrees3, "H*(H) -> H*(M)");

        let (qs, qd, map) = self.i_to_quotient()?;
        let h4 = match check_chain_map(&map, self.l.d(), &qd) {
            Err(Error::NotChainMap(b)) => HypothesisEntry::simple(false, format!("i does not descend to a chain map at {b}"), Some(vec![b])),
            Err(e) => return Err(e),
            Ok(()) => {
                let hl = self.l.cohomology()?;
                let hq = cohomology::cohomology(&qs, &qd)?;
                HypothesisEntry::injectivity(&induced_with(&map, &hl, &hq), degrees4, "H*(i): H*(L) -> H*((M/H)[-1])")
            }
        };
        Ok([h1, h2, h3, h4])
    }

    fn certificate(&self, relaxed: bool, exec: Exec) -> Result<BttCertificate> {
        let hypotheses = if relaxed {
            self.ledger(exec, Some(&[1]), Some(&[2]))?
        } else {
            self.ledger(exec, None, None)?
        };
        let first_bad = hypotheses.iter().position(|h| !h.holds);
        let verdict = match (first_bad, relaxed) {
            (Some(k), _) => BttVerdict::Failed(k as u8 + 1),
            (None, false) => BttVerdict::HomotopyAbelianCertified,
            (None, true) => BttVerdict::SmoothnessOnlyCertified,
        };
        let h_star_abelian = if first_bad.is_none() && !relaxed {
            Some(h_star_bracket(&self.l)?.is_abelian())
        } else {
            None
        };
        Ok(BttCertificate { relaxed, hypotheses, verdict, h_star_abelian })
    }
}

pub fn btt_certify(data: &CartanCalculus, exec: Exec) -> Result<BttCertificate> {
    data.certificate(false, exec)
}

/// Hypotheses (1), (2) in full, (3) only in degree 1 and (4) only in degree 2.
pub fn btt_relaxed(data: &CartanCalculus, exec: Exec) -> Result<BttCertificate> {
    data.certificate(true, exec)
}

/// `K[s] ⊗ L` with `|s| = -1`, `s² = 0`, `d(s) = 1`. In each degree `i` the
/// basis is `1⊗L^i` followed by `s⊗L^{i+1}`.
#[derive(Clone, Debug)]
pub struct KsTensor {
    pub dgla: Dgla,
    /// `a ↦ 1⊗a`.
    pub alpha: GradedMap,
    l_space: GradedSpace,
}

impl KsTensor {
    /// `(1⊗a part, s⊗b part)` of an element.
    pub fn split(&self, x: &Element) -> (Element, Element) {
        let n = self.l_space.dim(x.degree);
        (Element::new(x.degree, x.coeffs[..n].to_vec()), Element::new(x.degree + 1, x.coeffs[n..].to_vec()))
    }

    pub fn join(&self, one: &Element, s: &Element) -> Element {
        let mut c = one.coeffs.clone();
        c.extend(s.coeffs.iter().cloned());
        Element::new(one.degree, c)
    }
}

pub fn ks_plus_tensor(l: &Dgla) -> KsTensor {
    let ls = l.space().clone();
    let sl = ls.shift(1).rename(|_, n| format!("s*{n}"));
    let space = ls.direct_sum(&sl);
    let mut out = KsTensor { dgla: Dgla::trivial(&space), alpha: GradedMap::zero(&ls, &space, 0), l_space: ls.clone() };
    let zero_l = |deg: i32| Element::zero(&ls, deg);
    let d = GradedMap::from_fn(&space, &space, 1, |b| {
        let (a, sa) = out.split(&Element::basis(&space, b));
        // d(1⊗a + s⊗c) = 1⊗(da + c) - s⊗dc
        out.join(&l.diff(&a).add(&sa), &l.diff(&sa).neg()).coeffs
    });
    let bracket = Bilinear::from_fn(&space, 0, |p, q| {
        let (a, sa) = out.split(&Element::basis(&space, p));
        let (b, sb) = out.split(&Element::basis(&space, q));
        let one = l.bracket(&a, &b);
        // [1⊗a, s⊗b] = (-1)^{|a|} s⊗[a,b],  [s⊗a, 1⊗b] = s⊗[a,b]
        let s_part = l.bracket(&a, &sb).scale(&sign(a.degree as i64)).add(&l.bracket(&sa, &b));
        out.join(&one, &s_part).coeffs
    });
    let alpha = GradedMap::from_fn(&ls, &space, 0, |b| {
        out.join(&Element::basis(&ls, b), &zero_l(b.degree + 1)).coeffs
    });
    out.dgla = Dgla::new(space, d, bracket).expect("shapes match");
    out.alpha = alpha;
    out
}

/// `s = H²(φ) ∘ H²(p)^{-1}: H²(L) -> H²(C(χ))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annihilator {
    pub matrix: Matrix,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Whether `s` is injective on `H²(L)`.
    pub injective: bool,
}

impl Annihilator {
    pub fn apply(&self, class: &[Scalar]) -> Vec<Scalar> {
        if self.target_dim == 0 {
            return Vec::new();
        }
        self.matrix.mul_vec(class)
    }
}

/// Builds `s` from the cone models of `α: L -> K[s]⊗L` and `χ: H -> M`,
/// with `φ(x, y) = (𝒍x, Φy)`, `Φ(1⊗a) = 𝒍_a`, `Φ(s⊗a) = i_a`.
pub fn obstruction_annihilator(data: &CartanCalculus, exec: Exec) -> Result<Annihilator> {
    let (l, m, i, h) = (&data.l, &data.m, &data.i, &data.h);
    if !cartan_check(l, m, i, exec)?.holds() {
        return Err(Error::Precondition("i is not a Cartan homotopy".into()));
    }
    let lie = lie_derivative_map(l, m, i);
    if l.space().basis().into_iter().any(|b| !h.contains(&lie.apply_basis(b))) {
        return Err(Error::Precondition("Lie derivatives must lie in H".into()));
    }
    let ks = ks_plus_tensor(l);
    let (hl, hinc) = m.restrict(h)?;
    let cone_a = ConeModel::new(&ks.alpha, l.d(), ks.dgla.d())?;
    let cone_c = ConeModel::new(&hinc, hl.d(), m.d())?;

    let big_phi = |y: &Element| {
        let (one, s) = ks.split(y);
        lie.apply(&one).add(&i.apply(&s))
    };
    let ls = l.space();
    let phi = GradedMap::from_fn(&cone_a.space, &cone_c.space, 0, |b| {
        let x = Element::basis(&cone_a.space, b);
        let n = ls.dim(b.degree);
        let head = Element::new(b.degree, x.coeffs[..n].to_vec());
        let tail = Element::new(b.degree - 1, x.coeffs[n..].to_vec());
        let mut c = h.coordinates(&lie.apply(&head)).expect("Lie derivative in H");
        c.extend(big_phi(&tail).coeffs);
        c
    });
    check_chain_map(&phi, &cone_a.d, &cone_c.d)?;
    let h_a = cone_a.cohomology();
    let h_c = cone_c.cohomology();
    let h_l = l.cohomology()?;
    let p = induced_with(&cone_a.pi, &h_a, &h_l);
    let p2 = p.block(2).cloned().unwrap_or_else(|| Matrix::zero(h_l.dim(2), h_a.dim(2)));
    let p2_inv = if p2.rows() == 0 { Matrix::zero(0, 0) } else { p2.inverse().ok_or_else(|| Error::Precondition("H²(p) is not invertible".into()))? };
    let phi2 = induced_with(&phi, &h_a, &h_c).block(2).cloned().unwrap_or_else(|| Matrix::zero(h_c.dim(2), h_a.dim(2)));
    let matrix = if phi2.rows() == 0 || p2_inv.rows() == 0 {
        Matrix::zero(h_c.dim(2), h_l.dim(2))
    } else {
        phi2.mul(&p2_inv)
    };
    let injective = matrix.rank() == h_l.dim(2);
    Ok(Annihilator { source_dim: h_l.dim(2), target_dim: h_c.dim(2), injective, matrix })
}
