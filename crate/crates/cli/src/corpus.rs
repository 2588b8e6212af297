//! The shipped fixture corpus, generated from the named fixtures of the core
//! crate. Every file carries its scenario and expected exit code.

use std::collections::BTreeMap;
use std::path::Path;

use dgla_core::bv::{Bicomplex, DbvAlgebra};
use dgla_core::cartan::CartanCalculus;
use dgla_core::derived::PiExample;
use dgla_core::dgla::Dgla;
use dgla_core::fixtures;
use dgla_core::linalg::int;
use dgla_core::{GradedMap, GradedSpace};

use crate::format::{
    blocks_of, span_of, table_of, AlgebraDecl, ComplexDecl, FixtureFile, MapDecl, OperatorDecl, PiDecl, Scenario, SpaceDecl,
    SubspaceDecl,
};

fn base(description: &str, main: AlgebraDecl) -> FixtureFile {
    FixtureFile {
        description: Some(description.into()),
        space: main.space,
        differential: main.differential,
        bracket: main.bracket,
        product: None,
        unit: None,
        delta: None,
        k: None,
        algebras: BTreeMap::new(),
        maps: BTreeMap::new(),
        subspaces: BTreeMap::new(),
        pi_example: None,
        scenario: None,
    }
}

fn scenario(mut f: FixtureFile, args: &[&str], expect_exit: i32) -> FixtureFile {
    f.scenario = Some(Scenario { args: args.iter().map(|s| s.to_string()).collect(), expect_exit });
    f
}

fn dgla_file(description: &str, l: &Dgla) -> FixtureFile {
    base(description, AlgebraDecl::from_dgla(l))
}

fn map_decl(source: &str, target: &str, f: &GradedMap) -> MapDecl {
    MapDecl { source: source.into(), target: target.into(), degree: f.degree(), blocks: blocks_of(f) }
}

fn cartan_file(description: &str, c: &CartanCalculus) -> FixtureFile {
    let mut f = dgla_file(description, &c.m);
    f.algebras.insert("L".into(), AlgebraDecl::from_dgla(&c.l));
    f.maps.insert("i".into(), map_decl("L", "main", &c.i));
    let span = span_of(&c.h, &f.space);
    f.subspaces.insert("H".into(), SubspaceDecl { ambient: "main".into(), span });
    f
}

fn morphism_file(description: &str, l: &Dgla, m: &Dgla, g: &GradedMap) -> FixtureFile {
    let mut f = dgla_file(description, m);
    f.algebras.insert("L".into(), AlgebraDecl::from_dgla(l));
    f.maps.insert("f".into(), map_decl("L", "main", g));
    f
}

fn complex(s: &GradedSpace, d: &GradedMap) -> ComplexDecl {
    ComplexDecl { space: SpaceDecl::from_space(s), differential: blocks_of(d) }
}

fn pi_file(description: &str, p: &PiExample) -> FixtureFile {
    let mut f = base(description, AlgebraDecl { space: SpaceDecl::empty(), differential: BTreeMap::new(), bracket: None });
    let d = &p.data;
    f.pi_example = Some(PiDecl { v: complex(&d.v, &d.dv), w: complex(&d.w, &d.dw), pi: blocks_of(&d.pi) });
    f
}

fn bicomplex_file(description: &str, b: &Bicomplex) -> FixtureFile {
    let main = AlgebraDecl { space: SpaceDecl::from_space(&b.space), differential: blocks_of(&b.d), bracket: None };
    let mut f = base(description, main);
    f.delta = Some(OperatorDecl { degree: b.delta.degree(), blocks: blocks_of(&b.delta) });
    f
}

fn dbv_file(description: &str, a: &DbvAlgebra) -> FixtureFile {
    let mut f = bicomplex_file(description, &a.bicomplex());
    f.product = Some(table_of(a.product(), &f.space));
    let unit = a.unit();
    let idx = unit.coeffs.iter().position(|c| *c == int(1)).expect("unit is a basis vector");
    f.unit = Some(f.space.name_of(dgla_core::BasisRef { degree: 0, index: idx }));
    f.k = Some(a.k());
    f
}

/// `(file stem, fixture)` for every shipped fixture.
pub fn corpus() -> Vec<(String, FixtureFile)> {
    let mut out: Vec<(String, FixtureFile)> = Vec::new();
    let mut push = |name: &str, f: FixtureFile| out.push((name.to_string(), f));

    let abelian = fixtures::abelian_with_h2();
    push("check_abelian", scenario(dgla_file("abelian, H^1 = K^2, H^2 = K", &abelian), &["check"], 0));
    push("check_sl2", scenario(dgla_file("sl2 in degree 0", &fixtures::sl2()), &["check"], 0));
    push(
        "check_sl2_broken_jacobi",
        scenario(dgla_file("sl2 with [e,f] = h + e; Jacobi fails", &fixtures::sl2_broken_jacobi()), &["check"], 1),
    );
    push(
        "check_leibniz_broken",
        scenario(dgla_file("[x,y] = y, dy = u; Leibniz fails", &fixtures::leibniz_broken()), &["check"], 1),
    );
    push("cohomology_sl2", scenario(dgla_file("sl2 in degree 0", &fixtures::sl2()), &["cohomology"], 0));

    push("q2_sl2", scenario(dgla_file("sl2 in degree 0", &fixtures::sl2()), &["coder", "q2", "--trunc", "3"], 0));
    push(
        "q2_broken_jacobi",
        scenario(dgla_file("Jacobi fails, so pQ^2 is nonzero on words of length 3", &fixtures::sl2_broken_jacobi()), &["coder", "q2", "--trunc", "3"], 1),
    );
    push("split_abelian", scenario(dgla_file("abelian: every class lifts", &abelian), &["coder", "split", "--trunc", "3"], 0));
    push(
        "split_obstructed_toy",
        scenario(dgla_file("[e,e] = c with c a class: no lift", &fixtures::obstructed_toy()), &["coder", "split", "--trunc", "3"], 1),
    );

    push("mc_abelian", scenario(dgla_file("abelian: unobstructed", &abelian), &["mc", "--vars", "2", "--order", "3"], 0));
    push(
        "mc_obstructed_toy",
        scenario(dgla_file("obstructed at order 2", &fixtures::obstructed_toy()), &["mc", "--vars", "1", "--order", "5"], 1),
    );
    push(
        "mc_order_three_toy",
        scenario(dgla_file("obstructed at order 3", &fixtures::order_three_toy()), &["mc", "--vars", "1", "--order", "5"], 1),
    );

    for (name, c, failing) in fixtures::cartan_corpus() {
        let expect = i32::from(failing.is_some());
        let what = match failing {
            None => "certified".to_string(),
            Some(k) => format!("rejected at hypothesis {k}"),
        };
        push(&format!("btt_{name}"), scenario(cartan_file(&what, &c), &["btt", "--i", "i", "--h", "H", "--probe"], expect));
    }
    push(
        "btt_relaxed_smoothness_only",
        scenario(cartan_file("relaxed hypotheses hold", &fixtures::smoothness_only()), &["btt-relaxed", "--i", "i", "--h", "H"], 0),
    );
    push(
        "btt_relaxed_broken_3",
        scenario(cartan_file("rejected at hypothesis 3", &fixtures::broken_3()), &["btt-relaxed", "--i", "i", "--h", "H"], 1),
    );

    for (name, p, injective) in fixtures::lietype_corpus() {
        let what = if injective { "H*(L) -> H*(M) injective" } else { "H*(L) -> H*(M) not injective" };
        push(&format!("lietype_btt_{name}"), scenario(pi_file(what, &p), &["lietype", "btt"], i32::from(!injective)));
    }
    let plane = fixtures::lietype_corpus().into_iter().find(|(n, _, _)| *n == "pi_plane").expect("pi_plane").1;
    push("lietype_check_pi_plane", scenario(pi_file("nonabelian derived bracket", &plane), &["lietype", "check"], 0));
    push("lietype_dgla_pi_plane", scenario(pi_file("nonabelian derived bracket", &plane), &["lietype", "dgla"], 0));

    for (name, a, valid, degenerates) in fixtures::bv_corpus() {
        let f = dbv_file(name, &a);
        if valid {
            let expect = i32::from(degenerates != Some(true));
            push(&format!("bv_pipeline_{name}"), scenario(f.clone(), &["bv", "pipeline"], expect));
            push(&format!("bv_check_{name}"), scenario(f, &["bv", "check"], 0));
        } else {
            push(&format!("bv_check_{name}"), scenario(f, &["bv", "check"], 1));
        }
    }
    let dd = dbv_file("d = delta", &fixtures::d_equals_delta());
    push("bv_degeneration_d_equals_delta", scenario(dd.clone(), &["bv", "degeneration"], 0));
    push("bv_lemma_d_equals_delta", scenario(dd, &["bv", "lemma"], 1));
    push(
        "bv_degeneration_theta_line",
        scenario(dbv_file("delta(theta) = 1 is not d-exact", &fixtures::theta_line()), &["bv", "degeneration"], 1),
    );
    push("bv_dgla_schouten_toy", scenario(dbv_file("schouten toy", &fixtures::schouten_toy()), &["bv", "dgla"], 0));

    let (b, tf) = fixtures::jordan_exp_tf();
    let mut jordan = bicomplex_file("delta = [d, f] with f a Jordan block", &b);
    jordan.maps.insert("f".into(), map_decl("main", "main", &tf));
    push("bv_exp_tf_jordan", scenario(jordan, &["bv", "exp-tf", "--f", "f"], 0));

    let v = GradedSpace::new(0, vec![1, 1]);
    let dv = fixtures::sparse_map(&v, 1, &[(fixtures::br(0, 0), fixtures::br(1, 0), 1)]);
    let u = GradedSpace::new(0, vec![1]);
    let (l, m, g) = fixtures::end_inclusion(&v, &dv, &u, &GradedMap::zero(&u, &u, 1));
    push("fiber_end_inclusion", scenario(morphism_file("End(V) -> End(V + U)", &l, &m, &g), &["fiber", "--f", "f"], 0));
    push(
        "fiber_scaled_inclusion",
        scenario(morphism_file("twice the inclusion: not a morphism", &l, &m, &g.scale(&int(2))), &["fiber", "--f", "f"], 1),
    );

    out
}

pub fn export(dir: &Path) -> std::io::Result<usize> {
    std::fs::create_dir_all(dir)?;
    let files = corpus();
    for (name, f) in &files {
        let mut text = serde_json::to_string_pretty(f).expect("fixtures serialize");
        text.push('\n');
        std::fs::write(dir.join(format!("{name}.json")), text)?;
    }
    Ok(files.len())
}
