//! One function per command. Each returns a [`Report`]; errors from the
//! core are split into input errors (shapes, degrees) and mathematical
//! failures (everything else).

use std::collections::BTreeMap;

use dgla_core::bv::{bv_check, bv_pipeline, bv_to_dgla, d_delta_lemma_check, degeneration_solve, exp_tf_witness, BvVerdict};
use dgla_core::cartan::{btt_certify, btt_relaxed, BttCertificate, BttVerdict, CartanCalculus};
use dgla_core::coder::{q_square_check, splitting_check, SplittingVerdict};
use dgla_core::derived::{lietype_btt, lietype_check, lietype_dgla, LieTypeSplit};
use dgla_core::dgla::{h_star_bracket, morphism_check, CheckMode, Dgla, Outcome};
use dgla_core::homotopy::{factorize, homotopy_fiber_abelian_probe, tw_projection_quasi_iso_check, ConeModel};
use dgla_core::linalg::format_scalar;
use dgla_core::mc::{unobstructed_probe, ArtinBase, ProbeVerdict};
use dgla_core::{Exec, GradedSpace, Subspace};

use crate::format::{AlgebraDecl, InputError, Loaded};
use crate::report::Report;

pub enum Failure {
    Input(String),
    Math(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<dgla_core::Error> for Failure {
    fn from(e: dgla_core::Error) -> Self {
        use dgla_core::Error as E;
        match e {
            E::Shape(_) | E::Degree { .. } => Failure::Input(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

pub type CmdResult = Result<Report, Failure>;

fn mode(exhaustive: bool) -> CheckMode {
    if exhaustive {
        CheckMode::Exhaustive
    } else {
        CheckMode::FirstFailure
    }
}

/// Witness tuples are named through `space` when they index its basis.
fn outcome_value(o: &Outcome, space: Option<&GradedSpace>) -> String {
    match &o.witness {
        None => "holds".into(),
        Some(w) => {
            let at: Vec<String> = w.tuple.iter().map(|&b| space.map_or_else(|| b.to_string(), |s| s.name(b).to_string())).collect();
            format!("{} violation(s), first at ({})", o.violations, at.join(", "))
        }
    }
}

fn dims_text(dims: &BTreeMap<i32, usize>) -> String {
    let parts: Vec<String> = dims.iter().filter(|(_, &n)| n > 0).map(|(d, n)| format!("H^{d}={n}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

fn axioms_into(r: &mut Report, l: &Dgla, exec: Exec, exhaustive: bool) {
    let a = l.check_axioms(exec, mode(exhaustive));
    for (name, o) in [("d^2 = 0", &a.d_squared), ("skew", &a.skew), ("jacobi", &a.jacobi), ("leibniz", &a.leibniz)] {
        r.check(name, o.holds, outcome_value(o, Some(l.space())));
    }
    r.with_detail(&a);
}

pub fn check(f: &Loaded, algebra: &str, exhaustive: bool, exec: Exec) -> CmdResult {
    let mut r = Report::new("check");
    axioms_into(&mut r, f.algebra(algebra)?, exec, exhaustive);
    Ok(r)
}

pub fn cohomology(f: &Loaded, algebra: &str) -> CmdResult {
    let l = f.algebra(algebra)?;
    let h = l.cohomology()?;
    let mut r = Report::new("cohomology");
    r.info("dims", dims_text(&h.dims()));
    let reps: BTreeMap<i32, Vec<Vec<String>>> = h
        .dims()
        .into_iter()
        .filter(|(_, n)| *n > 0)
        .map(|(d, _)| (d, h.representatives(d).iter().map(|e| e.coeffs.iter().map(format_scalar).collect()).collect()))
        .collect();
    let hs = h_star_bracket(l)?;
    r.info("bracket on H*", if hs.is_abelian() { "zero" } else { "nonzero" });
    r.with_detail(&serde_json::json!({ "dims": h.dims(), "representatives": reps, "h_star_abelian": hs.is_abelian() }));
    Ok(r)
}

fn btt_rows(r: &mut Report, c: &BttCertificate) {
    for (k, h) in c.hypotheses.iter().enumerate() {
        r.info(format!("hypothesis {}", k + 1), format!("{}: {}", if h.holds { "holds" } else { "fails" }, h.detail));
    }
    let verdict = match c.verdict {
        BttVerdict::HomotopyAbelianCertified => "homotopy abelian (certified)".to_string(),
        BttVerdict::SmoothnessOnlyCertified => "smoothness only (certified)".to_string(),
        BttVerdict::Failed(k) => format!("failed at hypothesis {k}"),
    };
    r.check("verdict", c.certified(), verdict);
    if let Some(ab) = c.h_star_abelian {
        r.check("bracket on H*(L) vanishes", ab || c.relaxed, ab.to_string());
    }
}

fn probe_row(r: &mut Report, name: &str, p: &ProbeVerdict) {
    let value = match p.first_obstructed() {
        None => format!("{} run(s), no obstruction (H^1={}, H^2={})", p.runs.len(), p.h1_dim, p.h2_dim),
        Some(run) => format!("obstructed from classes {:?}", run.classes),
    };
    r.check(name, p.passes, value);
}

pub struct BttArgs<'a> {
    pub i: &'a str,
    pub h: &'a str,
    pub relaxed: bool,
    pub probe: bool,
}

pub fn btt(f: &Loaded, a: BttArgs, exec: Exec) -> CmdResult {
    let (i, decl) = f.map(a.i)?;
    let (h, hdecl) = f.subspace(a.h)?;
    if hdecl.ambient != decl.target {
        return Err(Failure::Input(format!("subspace {:?} must live in {:?}", a.h, decl.target)));
    }
    let l = f.algebra(&decl.source)?.clone();
    let m = f.algebra(&decl.target)?.clone();
    let data = CartanCalculus::new(l, m, i, h)?;
    let cert = if a.relaxed { btt_relaxed(&data, exec)? } else { btt_certify(&data, exec)? };
    let mut r = Report::new(if a.relaxed { "btt-relaxed" } else { "btt" });
    btt_rows(&mut r, &cert);
    let mut probes = Vec::new();
    if a.probe && cert.certified() {
        for (vars, order) in [(1, 5), (2, 3)] {
            let p = unobstructed_probe(&data.l, ArtinBase::new(vars, order)?, exec)?;
            probe_row(&mut r, &format!("MC probe g={vars} n={order}"), &p);
            probes.push(p);
        }
    }
    r.with_detail(&serde_json::json!({ "certificate": cert, "probes": probes }));
    Ok(r)
}

pub enum BvOp {
    Check { exhaustive: bool },
    Dgla,
    Degeneration,
    Pipeline { vars: usize, order: u32 },
    Lemma,
    ExpTf { f: String, max_steps: Option<usize> },
}

pub fn bv(f: &Loaded, op: BvOp, exec: Exec) -> CmdResult {
    match op {
        BvOp::Check { exhaustive } => {
            let a = f.dbv()?;
            let rep = bv_check(&a, exec, mode(exhaustive));
            let mut r = Report::new("bv check");
            r.check("k odd", rep.k_odd, a.k().to_string());
            for (name, o) in [
                ("associative", &rep.associative),
                ("commutative", &rep.commutative),
                ("unit", &rep.unit),
                ("d^2 = 0", &rep.d_squared),
                ("delta^2 = 0", &rep.delta_squared),
                ("delta(1) = 0", &rep.delta_unit),
                ("d derivation", &rep.d_derivation),
                ("d delta + delta d = 0", &rep.anticommute),
                ("seven-term identity", &rep.seven_term),
            ] {
                r.check(name, o.holds, outcome_value(o, Some(a.space())));
            }
            r.with_detail(&rep);
            Ok(r)
        }
        BvOp::Dgla => {
            let a = f.dbv()?;
            let l = bv_to_dgla(&a, exec)?;
            let mut r = Report::new("bv dgla");
            axioms_into(&mut r, &l, exec, false);
            let axioms = r.detail.take();
            r.with_detail(&serde_json::json!({ "dgla": AlgebraDecl::from_dgla(&l), "axioms": axioms }));
            Ok(r)
        }
        BvOp::Degeneration => {
            let w = degeneration_solve(&f.dbv()?, exec)?;
            let mut r = Report::new("bv degeneration");
            r.info("closed generators", w.chains.len().to_string());
            let value = match &w.failure {
                None => format!("every closed element extends (step {})", w.step),
                Some(inf) => format!("no chain from a degree {} element (ranks {} < {})", inf.start.degree, inf.coefficient_rank, inf.augmented_rank),
            };
            r.check("degeneration", w.holds, value);
            r.with_detail(&w);
            Ok(r)
        }
        BvOp::Pipeline { vars, order } => {
            let p = bv_pipeline(&f.dbv()?, ArtinBase::new(vars, order)?, exec)?;
            let mut r = Report::new("bv pipeline");
            r.check("degeneration", p.degeneration.holds, format!("{} chain(s)", p.degeneration.chains.len()));
            if let Some(c) = &p.consequences {
                r.check("L axioms", c.axioms_hold, c.axioms_hold.to_string());
                r.check("bracket on H*(L) vanishes", c.h_star_abelian, c.h_star_abelian.to_string());
                probe_row(&mut r, &format!("MC probe g={vars} n={order}"), &c.probe);
            }
            r.check("verdict", p.verdict == BvVerdict::ConsequencesVerified, format!("{:?}", p.verdict));
            r.with_detail(&p);
            Ok(r)
        }
        BvOp::Lemma => {
            let rep = d_delta_lemma_check(&f.bicomplex()?, exec)?;
            let mut r = Report::new("bv lemma");
            for d in &rep.per_degree {
                r.info(format!("degree {}", d.degree), format!("dims {:?} {}", d.dims, if d.holds { "equal" } else { "differ" }));
            }
            r.check("d-delta lemma", rep.holds, rep.holds.to_string());
            r.info("degeneration", rep.degeneration_holds.to_string());
            r.with_detail(&rep);
            Ok(r)
        }
        BvOp::ExpTf { f: name, max_steps } => {
            let b = f.bicomplex()?;
            let (map, _) = f.map(&name)?;
            let w = exp_tf_witness(&b, &map, max_steps, exec)?;
            let mut r = Report::new("bv exp-tf");
            r.check("chains satisfy delta a_i = d a_(i+1)", w.verified, format!("{} chain(s)", w.chains.len()));
            r.check("f nilpotent within the window", !w.truncated, (!w.truncated).to_string());
            r.info("degeneration (solver)", w.solver_holds.to_string());
            r.with_detail(&w);
            Ok(r)
        }
    }
}

pub fn coder(f: &Loaded, split: bool, algebra: &str, trunc: usize, exec: Exec) -> CmdResult {
    let l = f.algebra(algebra)?;
    if !split {
        let rep = q_square_check(l, trunc, exec)?;
        let mut r = Report::new("coder q2");
        r.check("q_2 defined on symmetric words", rep.well_defined, rep.well_defined.to_string());
        for c in &rep.components {
            let value = match &c.first_word {
                None => "0".to_string(),
                Some(w) => format!("nonzero on {}", w.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" . ")),
            };
            r.check(format!("pQ^2 on length {}", c.length), c.vanishes, value);
        }
        r.check("agrees with the axioms", rep.matches_axioms, rep.matches_axioms.to_string());
        r.with_detail(&rep);
        return Ok(r);
    }
    let rep = splitting_check(l, trunc, exec)?;
    let mut r = Report::new("coder split");
    r.info("classes", rep.classes.to_string());
    r.info("word length", rep.stages.to_string());
    let (ok, value) = match &rep.verdict {
        SplittingVerdict::Certified => (true, "every class lifts; truncation is exact".to_string()),
        SplittingVerdict::SurjectiveUpToStage { stage } => (true, format!("every class lifts through length {stage}")),
        SplittingVerdict::ObstructedAtStage { class, stage } => (false, format!("class {class} has no lift at length {stage}")),
    };
    r.check("splitting", ok, value);
    if let Some(c) = &rep.cartan {
        r.check("i_a = a . w is a Cartan homotopy", c.cartan_holds, c.cartan_holds.to_string());
        r.check("Lie derivatives land in ker b", c.lie_in_ker_b, c.lie_in_ker_b.to_string());
    }
    r.with_detail(&rep);
    Ok(r)
}

pub enum LietypeOp {
    Check,
    Dgla,
    Btt,
}

pub fn lietype(f: &Loaded, op: LietypeOp, l_name: &str, a_name: &str, exec: Exec) -> CmdResult {
    let pi = f.file.pi_example.as_ref().map(|_| f.pi_example()).transpose()?;
    let split = match &pi {
        Some(p) => p.split.clone(),
        None => {
            let (l, ls) = f.subspace(l_name)?;
            let (a, as_) = f.subspace(a_name)?;
            if ls.ambient != as_.ambient {
                return Err(Failure::Input("L and A must live in the same algebra".into()));
            }
            LieTypeSplit::new(f.algebra(&ls.ambient)?.clone(), l, a)?
        }
    };
    match op {
        LietypeOp::Check => {
            let rep = lietype_check(&split, exec);
            let mut r = Report::new("lietype check");
            r.check("M = L + A direct", rep.direct_sum, rep.direct_sum.to_string());
            r.check("L sub-DG-Lie", rep.l_subalgebra, rep.l_subalgebra.to_string());
            r.check("A abelian", rep.a_abelian.holds, outcome_value(&rep.a_abelian, None));
            r.check("[dA, A] in A", rep.derived_closed.holds, outcome_value(&rep.derived_closed, None));
            let mut extra = serde_json::Map::new();
            if let (Some(p), true) = (&pi, rep.holds()) {
                let b = p.compare_brackets(exec)?;
                let d = p.compare_differentials(exec)?;
                r.check("bracket = f pi g - (-1)^ij g pi f", b.holds, outcome_value(&b, None));
                r.check("delta f = -d_W f - (-1)^i f d_V", d, d.to_string());
                extra.insert("pi_bracket".into(), serde_json::to_value(&b).expect("serializes"));
                extra.insert("pi_differential".into(), d.into());
            }
            extra.insert("split".into(), serde_json::to_value(&rep).expect("serializes"));
            r.with_detail(&extra);
            Ok(r)
        }
        LietypeOp::Dgla => {
            let derived = lietype_dgla(&split, exec)?;
            let mut r = Report::new("lietype dgla");
            axioms_into(&mut r, &derived.dgla, exec, false);
            let axioms = r.detail.take();
            r.with_detail(&serde_json::json!({ "dgla": AlgebraDecl::from_dgla(&derived.dgla), "axioms": axioms }));
            Ok(r)
        }
        LietypeOp::Btt => {
            let cert = lietype_btt(&split, exec)?;
            let mut r = Report::new("lietype btt");
            btt_rows(&mut r, &cert.btt);
            r.check("p(l_a) = 0", cert.lie_in_l, cert.lie_in_l.to_string());
            r.with_detail(&cert);
            Ok(r)
        }
    }
}

/// The probe runs over `K[t_1..t_g]/m^(min(n, K)+1)`.
pub fn mc(f: &Loaded, algebra: &str, vars: usize, order: u32, max_order: Option<u32>, exec: Exec) -> CmdResult {
    let l = f.algebra(algebra)?;
    let order = max_order.map_or(order, |k| order.min(k));
    let p = unobstructed_probe(l, ArtinBase::new(vars, order)?, exec)?;
    let mut r = Report::new("mc");
    r.info("base", format!("{vars} variable(s), order {order}"));
    probe_row(&mut r, "unobstructed", &p);
    if let Some(e) = p.first_obstructed().and_then(|run| run.ledger.iter().find(|e| !e.vanishes)) {
        r.info("first obstruction", format!("order {} at {}: class {:?}", e.order, e.monomial, e.class));
    }
    r.with_detail(&p);
    Ok(r)
}

pub fn fiber(f: &Loaded, map: &str, trunc: u32, exec: Exec) -> CmdResult {
    let (g, decl) = f.map(map)?;
    let (l, m) = (f.algebra(&decl.source)?, f.algebra(&decl.target)?);
    let mut r = Report::new("fiber");
    let morphism = morphism_check(&g, l, m, exec)?;
    r.check("f commutes with d", morphism.chain_map.holds, outcome_value(&morphism.chain_map, Some(l.space())));
    r.check("f preserves brackets", morphism.brackets.holds, outcome_value(&morphism.brackets, Some(l.space())));
    if !morphism.holds() {
        r.with_detail(&serde_json::json!({ "morphism": morphism }));
        return Ok(r);
    }
    let les = ConeModel::new(&g, l.d(), m.d())?.les_check();
    let bad = les.joints.iter().find(|j| !j.exact).map_or("every joint".to_string(), |j| format!("not exact at {}", j.at));
    r.check("long exact sequence", les.exact, bad);
    r.info("cone cohomology", dims_text(&les.cone_dims));
    let cert = homotopy_fiber_abelian_probe(&g, l, m, exec)?;
    r.info("fibre verdict", format!("{:?}", cert.verdict));
    let ledger = factorize(&g, l, m, trunc, exec)?;
    r.check("factorisation ledger", ledger.holds(), format!("truncation {trunc}"));
    let tw = if Subspace::kernel(&g).is_zero() {
        let tw = tw_projection_quasi_iso_check(&g, l, m, trunc)?;
        r.check("integral map is a quasi-isomorphism onto (M/f(L))[-1]", tw.holds(), tw.holds().to_string());
        Some(tw)
    } else {
        None
    };
    r.with_detail(&serde_json::json!({ "les": les, "fiber": cert, "factorization": ledger, "tw_projection": tw }));
    Ok(r)
}
