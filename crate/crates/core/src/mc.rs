//! Maurer–Cartan elements over truncated polynomial rings
//! `K[t_1..t_g]/m^{n+1}`, order-by-order lifting with obstruction classes in
//! `H²`, the gauge action, and an unobstructedness probe.
//!
//! The equation is `dx + ½[x,x] = 0` for `x ∈ L¹ ⊗ m`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyReport;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::graded::Element;
use crate::linalg::{factorial, format_scalar, frac, int, Scalar};
use crate::par::Exec;

/// Exponent vector of a monomial in `t_1..t_g`. Ordered by total degree,
/// then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn var(vars: usize, j: usize) -> Monomial {
        let mut e = vec![0; vars];
        e[j] = 1;
        Monomial(e)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), &self.0).cmp(&(other.total(), &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { format!("t{}", j + 1) } else { format!("t{}^{}", j + 1, e) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `K[t_1..t_g]/m^{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinBase {
    pub vars: usize,
    pub order: u32,
}

impl ArtinBase {
    pub fn new(vars: usize, order: u32) -> Result<Self> {
        if vars == 0 || order == 0 {
            return Err(Error::Precondition("need at least one variable and order at least 1".into()));
        }
        Ok(ArtinBase { vars, order })
    }

    /// All monomials of the given total degree, in order.
    pub fn monomials(&self, degree: u32) -> Vec<Monomial> {
        fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() == vars - 1 {
                let mut e = prefix.clone();
                e.push(left);
                out.push(Monomial(e));
                return;
            }
            for a in (0..=left).rev() {
                prefix.push(a);
                rec(vars, left - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.vars, degree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

/// Element of `L^k ⊗ m`: one coefficient per monomial of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub degree: i32,
    pub base: ArtinBase,
    pub terms: BTreeMap<Monomial, Element>,
}

impl Series {
    pub fn zero(base: ArtinBase, degree: i32) -> Self {
        Series { degree, base, terms: BTreeMap::new() }
    }

    /// Adds `x ⊗ μ`, dropping it if `μ` is beyond the truncation.
    pub fn add_term(&mut self, mu: Monomial, x: Element) {
        assert_eq!(x.degree, self.degree, "series terms must share the degree");
        if mu.total() > self.base.order || mu.total() == 0 || x.is_zero() {
            return;
        }
        match self.terms.remove(&mu) {
            Some(old) => {
                let s = old.add(&x);
                if !s.is_zero() {
                    self.terms.insert(mu, s);
                }
            }
            None => {
                self.terms.insert(mu, x);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (mu, x) in &other.terms {
            out.add_term(mu.clone(), x.clone());
        }
        out
    }

    pub fn scale(&self, a: &Scalar) -> Series {
        let mut out = Series::zero(self.base, self.degree);
        for (mu, x) in &self.terms {
            out.add_term(mu.clone(), x.scale(a));
        }
        out
    }

    pub fn d(&self, l: &Dgla) -> Series {
        let mut out = Series::zero(self.base, self.degree + 1);
        for (mu, x) in &self.terms {
            out.add_term(mu.clone(), l.diff(x));
        }
        out
    }

    pub fn bracket(&self, other: &Series, l: &Dgla) -> Series {
        let mut out = Series::zero(self.base, self.degree + other.degree);
        for (mu, x) in &self.terms {
            for (nu, y) in &other.terms {
                let m = mu.times(nu);
                if m.total() <= self.base.order {
                    out.add_term(m, l.bracket(x, y));
                }
            }
        }
        out
    }

    /// Part of exact order `j`.
    pub fn at_order(&self, j: u32) -> impl Iterator<Item = (&Monomial, &Element)> {
        self.terms.iter().filter(move |(m, _)| m.total() == j)
    }

    /// Drops terms of order above `j`.
    pub fn truncate(&self, j: u32) -> Series {
        let mut out = Series::zero(self.base, self.degree);
        for (mu, x) in &self.terms {
            if mu.total() <= j {
                out.add_term(mu.clone(), x.clone());
            }
        }
        out
    }

    /// Machine-readable form: monomial ↦ coefficient strings.
    pub fn to_table(&self) -> BTreeMap<String, Vec<String>> {
        self.terms.iter().map(|(m, x)| (m.to_string(), x.coeffs.iter().map(format_scalar).collect())).collect()
    }
}

/// `dx + ½[x,x]`.
pub fn mc_residual(l: &Dgla, x: &Series) -> Result<Series> {
    if x.degree != 1 {
        return Err(Error::Degree { expected: 1, found: x.degree });
    }
    Ok(x.d(l).add(&x.bracket(x, l).scale(&frac(1, 2))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionEntry {
    pub order: u32,
    pub monomial: String,
    /// Coordinates in the representative basis of `H²(L)`.
    pub class: Vec<String>,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McState {
    pub x: Series,
    /// Highest order `j` with `dx + ½[x,x] ≡ 0 mod m^{j+1}`.
    pub order: u32,
    pub ledger: Vec<ObstructionEntry>,
    /// Obstruction classes as exact scalars, parallel to `ledger`.
    pub classes: Vec<Vec<Scalar>>,
    /// Residual components at the halting order that were not closed
    /// (never expected; recorded rather than trusted).
    pub non_closed: usize,
}

impl McState {
    pub fn obstructed(&self) -> bool {
        self.ledger.iter().any(|e| !e.vanishes)
    }

    pub fn first_obstruction(&self) -> Option<&ObstructionEntry> {
        self.ledger.iter().find(|e| !e.vanishes)
    }
}

/// Lifts `x_1 = Σ_j t_j v_j` order by order up to the base order. Each
/// `v_j` must be a closed element of `L¹`. Correctors are the minimal-pivot
/// preimages under `d`.
pub fn mc_solve(l: &Dgla, h: &CohomologyReport, first_order: &[Element], base: ArtinBase) -> Result<McState> {
    if first_order.len() != base.vars {
        return Err(Error::Shape(format!("expected {} first-order classes, got {}", base.vars, first_order.len())));
    }
    let mut x = Series::zero(base, 1);
    for (j, v) in first_order.iter().enumerate() {
        if v.degree != 1 || v.coeffs.len() != l.space().dim(1) {
            return Err(Error::Degree { expected: 1, found: v.degree });
        }
        if !l.diff(v).is_zero() {
            return Err(Error::Precondition(format!("first-order datum {j} is not closed")));
        }
        x.add_term(Monomial::var(base.vars, j), v.clone());
    }
    lift_from(l, h, x, 1)
}

/// Continues lifting an MC element known to solve the equation modulo
/// `m^{start+1}`.
pub fn lift_from(l: &Dgla, h: &CohomologyReport, mut x: Series, start: u32) -> Result<McState> {
    let base = x.base;
    let d1 = l.d().block(1);
    let mut ledger = Vec::new();
    let mut classes = Vec::new();
    let mut order = start;
    let mut non_closed = 0;
    for j in (start + 1)..=base.order {
        let r = mc_residual(l, &x)?;
        let mut blocked = false;
        let mut correction = Series::zero(base, 1);
        for mu in base.monomials(j) {
            let rm = r.terms.get(&mu).cloned().unwrap_or_else(|| Element::zero(l.space(), 2));
            if !l.diff(&rm).is_zero() {
                non_closed += 1;
            }
            let class = h.class_of(&rm);
            let vanishes = class.iter().all(Zero::is_zero) && h.is_exact(&rm);
            ledger.push(ObstructionEntry {
                order: j,
                monomial: mu.to_string(),
                class: class.iter().map(format_scalar).collect(),
                vanishes,
            });
            classes.push(class);
            if !vanishes {
                blocked = true;
                continue;
            }
            if rm.is_zero() {
                continue;
            }
            let neg: Vec<Scalar> = rm.coeffs.iter().map(|c| -c).collect();
            let c = d1.solve(&neg).ok_or_else(|| Error::Precondition("exact residual without preimage".into()))?;
            correction.add_term(mu, Element::new(1, c));
        }
        if blocked {
            return Ok(McState { x, order, ledger, classes, non_closed });
        }
        x = x.add(&correction);
        order = j;
    }
    Ok(McState { x, order, ledger, classes, non_closed })
}

/// `e^a * x = x + Σ_{n≥0} ad_a^n([a,x] - da) / (n+1)!` for `a ∈ L⁰ ⊗ m`.
pub fn gauge_act(l: &Dgla, a: &Series, x: &Series) -> Result<Series> {
    if a.degree != 0 {
        return Err(Error::Degree { expected: 0, found: a.degree });
    }
    if x.degree != 1 {
        return Err(Error::Degree { expected: 1, found: x.degree });
    }
    let mut term = a.bracket(x, l).add(&a.d(l).scale(&int(-1)));
    let mut out = x.clone();
    let mut n = 0u32;
    while !term.is_zero() {
        out = out.add(&term.scale(&(int(1) / factorial(n + 1))));
        term = a.bracket(&term, l);
        n += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRun {
    /// Index of the `H¹` basis class assigned to each variable.
    pub classes: Vec<usize>,
    pub order_reached: u32,
    pub ledger: Vec<ObstructionEntry>,
    pub obstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeVerdict {
    pub base: ArtinBase,
    pub h1_dim: usize,
    pub h2_dim: usize,
    pub runs: Vec<ProbeRun>,
    pub passes: bool,
}

impl ProbeVerdict {
    pub fn first_obstructed(&self) -> Option<&ProbeRun> {
        self.runs.iter().find(|r| r.obstructed)
    }
}

fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, size, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Solves from every assignment of `H¹` basis classes to the variables
/// (multisets of size `g`); passes iff no run meets a nonzero obstruction.
pub fn unobstructed_probe(l: &Dgla, base: ArtinBase, exec: Exec) -> Result<ProbeVerdict> {
    let h = l.cohomology()?;
    let h1 = h.dim(1);
    let assignments = multisets(h1, base.vars);
    let runs: Vec<Result<ProbeRun>> = exec.map(&assignments, |choice| {
        let first: Vec<Element> = choice.iter().map(|&c| h.representatives(1)[c].clone()).collect();
        let state = mc_solve(l, &h, &first, base)?;
        Ok(ProbeRun {
            classes: choice.clone(),
            order_reached: state.order,
            obstructed: state.obstructed(),
            ledger: state.ledger,
        })
    });
    let runs: Vec<ProbeRun> = runs.into_iter().collect::<Result<_>>()?;
    let passes = runs.iter().all(|r| !r.obstructed && r.order_reached == base.order);
    Ok(ProbeVerdict { base, h1_dim: h1, h2_dim: h.dim(2), runs, passes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::Bilinear;
    use crate::graded::{BasisRef, GradedMap, GradedSpace};
    use crate::linalg::int;

    /// `e` in degree 1, `c` in degree 2, `[e,e] = c`, `d = 0`.
    fn obstructed_toy() -> Dgla {
        let s = GradedSpace::new(1, vec![1, 1]);
        let e = BasisRef { degree: 1, index: 0 };
        let c = BasisRef { degree: 2, index: 0 };
        let br = Bilinear::from_entries(&s, 0, &[(e, e, c, int(1))]).unwrap();
        Dgla::new(s.clone(), GradedMap::zero(&s, &s, 1), br).unwrap()
    }

    #[test]
    fn monomials_ordered() {
        let b = ArtinBase::new(2, 2).unwrap();
        let m: Vec<String> = b.monomials(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(m, vec!["t2^2", "t1*t2", "t1^2"]);
    }

    #[test]
    fn residual_of_single_term() {
        let l = obstructed_toy();
        let b = ArtinBase::new(1, 3).unwrap();
        let mut x = Series::zero(b, 1);
        x.add_term(Monomial(vec![1]), Element::new(1, vec![int(1)]));
        let r = mc_residual(&l, &x).unwrap();
        let mut expected = Series::zero(b, 2);
        expected.add_term(Monomial(vec![2]), Element::new(2, vec![frac(1, 2)]));
        assert_eq!(r, expected);
    }

    #[test]
    fn toy_is_obstructed_at_order_two() {
        let l = obstructed_toy();
        let v = unobstructed_probe(&l, ArtinBase::new(1, 3).unwrap(), Exec::Sequential).unwrap();
        assert!(!v.passes);
        let run = v.first_obstructed().unwrap();
        assert_eq!(run.order_reached, 1);
        let ob = run.ledger.iter().find(|e| !e.vanishes).unwrap();
        assert_eq!((ob.order, ob.class.clone()), (2, vec!["1/2".to_string()]));
    }

    #[test]
    fn abelian_with_h2_is_unobstructed() {
        let s = GradedSpace::new(1, vec![2, 1]);
        let l = Dgla::trivial(&s);
        let v = unobstructed_probe(&l, ArtinBase::new(2, 3).unwrap(), Exec::Parallel).unwrap();
        assert!(v.passes);
        assert_eq!(v.h2_dim, 1);
        assert_eq!(v.runs.len(), 3);
    }

    #[test]
    fn gauge_of_zero_in_abelian_is_minus_da() {
        let s = GradedSpace::new(0, vec![1, 1]);
        let d = GradedMap::from_fn(&s, &s, 1, |b| if b.degree == 0 { vec![int(1)] } else { vec![] });
        let l = Dgla::abelian(&s, d).unwrap();
        let b = ArtinBase::new(1, 2).unwrap();
        let mut a = Series::zero(b, 0);
        a.add_term(Monomial(vec![1]), Element::new(0, vec![int(3)]));
        let x = gauge_act(&l, &a, &Series::zero(b, 1)).unwrap();
        let mut expected = Series::zero(b, 1);
        expected.add_term(Monomial(vec![1]), Element::new(1, vec![int(-3)]));
        assert_eq!(x, expected);
        assert!(gauge_act(&l, &Series::zero(b, 0), &expected).unwrap() == expected);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(0, 2).len(), 0);
        assert_eq!(multisets(2, 1), vec![vec![0], vec![1]]);
    }
}
