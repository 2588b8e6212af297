use dgla_core::cartan::{btt_relaxed, obstruction_annihilator};
use dgla_core::dgla::{CheckMode, Dgla};
use dgla_core::fixtures;
use dgla_core::linalg::int;
use dgla_core::mc::{lift_from, mc_solve, unobstructed_probe, ArtinBase, Monomial};
use dgla_core::{Element, Exec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn valid_with_h1(rng: &mut ChaCha8Rng) -> Dgla {
    loop {
        let l = fixtures::random_candidate(rng);
        if l.check_axioms(Exec::Sequential, CheckMode::FirstFailure).holds() && l.cohomology().unwrap().dim(1) > 0 {
            return l;
        }
    }
}

fn classes(state: &dgla_core::mc::McState) -> Vec<(u32, String, Vec<String>)> {
    state.ledger.iter().map(|e| (e.order, e.monomial.clone(), e.class.clone())).collect()
}

#[test]
fn toy_obstruction_at_order_two() {
    let l = fixtures::obstructed_toy();
    let probe = unobstructed_probe(&l, ArtinBase::new(1, 5).unwrap(), Exec::Sequential).unwrap();
    assert!(!probe.passes);
    let run = probe.first_obstructed().unwrap();
    let entry = run.ledger.iter().find(|e| !e.vanishes).unwrap();
    assert_eq!((entry.order, entry.class.clone()), (2, vec!["1/2".to_string()]));
}

#[test]
fn exact_second_obstruction_then_class_at_order_three() {
    let l = fixtures::order_three_toy();
    let h = l.cohomology().unwrap();
    let state = mc_solve(&l, &h, &[h.representatives(1)[0].clone()], ArtinBase::new(1, 5).unwrap()).unwrap();
    let first = state.first_obstruction().unwrap();
    assert_eq!(first.order, 3);
    assert_eq!(state.order, 2);
    assert_eq!(h.representatives(2), &[Element::new(2, vec![int(0), int(1)])]);
    assert_eq!(first.class, vec!["-1/2".to_string()]);
}

#[test]
fn abelian_is_unobstructed_despite_h2() {
    let l = fixtures::abelian_with_h2();
    for base in [ArtinBase::new(1, 5).unwrap(), ArtinBase::new(2, 3).unwrap()] {
        assert!(unobstructed_probe(&l, base, Exec::Parallel).unwrap().passes);
    }
}

#[test]
fn ledger_is_gauge_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let l = valid_with_h1(&mut rng);
        let h = l.cohomology().unwrap();
        let base = ArtinBase::new(1, 4).unwrap();
        let v = h.representatives(1)[rng.gen_range(0..h.dim(1))].clone();
        let a: Vec<_> = (0..l.space().dim(0)).map(|_| int(rng.gen_range(-2..=2))).collect();
        let moved = v.sub(&l.diff(&Element::new(0, a)));
        let s1 = mc_solve(&l, &h, &[v], base).unwrap();
        let s2 = mc_solve(&l, &h, &[moved], base).unwrap();
        assert_eq!(classes(&s1), classes(&s2));
    }
}

#[test]
fn obstructions_do_not_depend_on_correctors() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut obstructed = 0;
    for n in 0..30 {
        let l = if n % 3 == 0 { fixtures::order_three_toy() } else { valid_with_h1(&mut rng) };
        let h = l.cohomology().unwrap();
        let base = ArtinBase::new(1, 4).unwrap();
        let v = h.representatives(1)[0].clone();
        let reference = mc_solve(&l, &h, &[v], base).unwrap();
        obstructed += usize::from(reference.obstructed() && reference.order >= 2);
        let z1 = l.d().block(1).kernel();
        for j in 2..=reference.order {
            // another solution of d c = -r at order j differs by a cocycle
            let mut x = reference.x.truncate(j);
            let mut z = Element::zero(l.space(), 1);
            for k in &z1 {
                z.axpy(&int(rng.gen_range(-2..=2)), &Element::new(1, k.clone()));
            }
            x.add_term(Monomial(vec![j]), z);
            let other = lift_from(&l, &h, x, j).unwrap();
            let tail = |s: &dgla_core::mc::McState| classes(s).into_iter().filter(|c| c.0 > j).collect::<Vec<_>>();
            assert_eq!(other.obstructed(), reference.obstructed());
            assert_eq!(tail(&other), tail(&reference));
        }
    }
    assert!(obstructed >= 10);
}

#[test]
fn annihilator_kills_obstructions_on_relaxed_fixtures() {
    for (name, data, _) in fixtures::cartan_corpus() {
        if !btt_relaxed(&data, Exec::Sequential).unwrap().certified() {
            continue;
        }
        let s = obstruction_annihilator(&data, Exec::Sequential).unwrap();
        for base in [ArtinBase::new(1, 5).unwrap(), ArtinBase::new(2, 3).unwrap()] {
            let h = data.l.cohomology().unwrap();
            for (c, _) in h.representatives(1).iter().enumerate() {
                let vs = vec![h.representatives(1)[c].clone(); base.vars];
                let state = mc_solve(&data.l, &h, &vs, base).unwrap();
                for class in &state.classes {
                    assert!(s.apply(class).iter().all(|x| *x == int(0)), "{name}");
                }
            }
        }
    }
}
