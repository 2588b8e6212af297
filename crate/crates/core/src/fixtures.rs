//! Named example algebras shared by tests, benches and the command line, and
//! seeded generators for randomized checks.
//!
//! Every generator takes a `ChaCha8Rng`, so a seed reproduces the same
//! fixture on every platform.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bilinear::Bilinear;
use crate::bv::{Bicomplex, DbvAlgebra, ExteriorAlgebra, OpTerm};
use crate::cartan::{ks_plus_tensor, CartanCalculus};
use crate::cohomology::block_diagonal;
use crate::derived::{pi_example_build, PiData, PiExample};
use crate::dgla::{Dgla, EndAlgebra};
use crate::graded::{BasisRef, GradedMap, GradedSpace, Subspace};
use crate::linalg::{int, sign, zeros, Matrix, Scalar};

pub fn br(degree: i32, index: usize) -> BasisRef {
    BasisRef { degree, index }
}

/// Structure constants `[a,b] = Σ c`, completed by graded skew-symmetry.
pub fn skew_bracket(space: &GradedSpace, entries: &[(BasisRef, BasisRef, BasisRef, i64)]) -> Bilinear {
    let mut all = Vec::new();
    for &(a, b, c, v) in entries {
        all.push((a, b, c, int(v)));
        if a != b {
            all.push((b, a, c, -sign((a.degree * b.degree) as i64) * int(v)));
        }
    }
    Bilinear::from_entries(space, 0, &all).expect("well-shaped structure constants")
}

/// Degree 1 map from `src -> (tgt, coefficient)` pairs.
pub fn sparse_map(space: &GradedSpace, degree: i32, entries: &[(BasisRef, BasisRef, i64)]) -> GradedMap {
    GradedMap::from_fn(space, space, degree, |b| {
        let mut v = zeros(space.dim(b.degree + degree));
        for &(s, t, c) in entries {
            if s == b {
                v[t.index] += int(c);
            }
        }
        v
    })
}

fn sl2_space() -> GradedSpace {
    GradedSpace::with_names(0, vec![vec!["h".into(), "e".into(), "f".into()]])
}

/// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h` in degree 0.
pub fn sl2() -> Dgla {
    let s = sl2_space();
    let (h, e, f) = (br(0, 0), br(0, 1), br(0, 2));
    let bracket = skew_bracket(&s, &[(h, e, e, 2), (h, f, f, -2), (e, f, h, 1)]);
    Dgla::new(s.clone(), GradedMap::zero(&s, &s, 1), bracket).expect("shapes")
}

/// sl2 with `[e,f] = h + e`: skew but not Jacobi.
pub fn sl2_broken_jacobi() -> Dgla {
    let s = sl2_space();
    let (h, e, f) = (br(0, 0), br(0, 1), br(0, 2));
    let bracket = skew_bracket(&s, &[(h, e, e, 2), (h, f, f, -2), (e, f, h, 1), (e, f, e, 1)]);
    Dgla::new(s.clone(), GradedMap::zero(&s, &s, 1), bracket).expect("shapes")
}

/// `x, y` in degree 0 with `[x,y] = y`, `u` in degree 1, `dy = u`:
/// Jacobi holds, Leibniz fails at `(x, y)`.
pub fn leibniz_broken() -> Dgla {
    let s = GradedSpace::with_names(0, vec![vec!["x".into(), "y".into()], vec!["u".into()]]);
    let bracket = skew_bracket(&s, &[(br(0, 0), br(0, 1), br(0, 1), 1)]);
    let d = sparse_map(&s, 1, &[(br(0, 1), br(1, 0), 1)]);
    Dgla::new(s, d, bracket).expect("shapes")
}

/// `e` in degree 1, `c` in degree 2, `[e,e] = c`, `d = 0`: the first
/// Maurer–Cartan obstruction is nonzero.
pub fn obstructed_toy() -> Dgla {
    let s = GradedSpace::with_names(1, vec![vec!["e".into()], vec!["c".into()]]);
    let bracket = skew_bracket(&s, &[(br(1, 0), br(1, 0), br(2, 0), 1)]);
    Dgla::new(s.clone(), GradedMap::zero(&s, &s, 1), bracket).expect("shapes")
}

/// `e, u` in degree 1, `c, w` in degree 2, `du = c`, `[e,e] = c`,
/// `[e,u] = w`: the order 2 obstruction is exact and the order 3 one is
/// `-½[w]`.
pub fn order_three_toy() -> Dgla {
    let s = GradedSpace::with_names(1, vec![vec!["e".into(), "u".into()], vec!["c".into(), "w".into()]]);
    let (e, u, c, w) = (br(1, 0), br(1, 1), br(2, 0), br(2, 1));
    let bracket = skew_bracket(&s, &[(e, e, c, 1), (e, u, w, 1)]);
    Dgla::new(s.clone(), sparse_map(&s, 1, &[(u, c, 1)]), bracket).expect("shapes")
}

/// Abelian, with `H¹` and `H²` both nonzero.
pub fn abelian_with_h2() -> Dgla {
    let s = GradedSpace::new(1, vec![2, 1]);
    Dgla::trivial(&s)
}

/// `L` abelian on `V`, `M` abelian on `V ⊕ V[1]`, `i_a = sa`, `H = V`.
pub fn shift_witness(v: &GradedSpace) -> CartanCalculus {
    let (l, m, i, _) = shift_parts(v);
    let h = Subspace::coordinate(m.space(), &v.basis());
    CartanCalculus::new(l, m, i, h).expect("sub-DGLA")
}

fn shift_parts(v: &GradedSpace) -> (Dgla, Dgla, GradedMap, GradedSpace) {
    let l = Dgla::trivial(v);
    let ms = v.direct_sum(&v.shift(1));
    let m = Dgla::trivial(&ms);
    let i = GradedMap::from_fn(v, &ms, -1, |b| {
        let mut c = zeros(ms.dim(b.degree - 1));
        c[v.dim(b.degree - 1) + b.index] = int(1);
        c
    });
    (l, m, i, ms)
}

/// The shift witness with `H = M`: (1)–(3) hold, (4) fails.
pub fn broken_4() -> CartanCalculus {
    let v = GradedSpace::new(1, vec![1]);
    let (l, m, i, ms) = shift_parts(&v);
    CartanCalculus::new(l, m, i, Subspace::full(&ms)).expect("sub-DGLA")
}

/// `L = K x` (degree 1), `M = K u ⊕ K v` with `du = v`, `i_x = u`,
/// `H = K v`: `𝒍_x = v ∈ H` but `v` is exact in `M`, so (3) fails.
pub fn broken_3() -> CartanCalculus {
    let ls = GradedSpace::with_names(1, vec![vec!["x".into()]]);
    let ms = GradedSpace::with_names(0, vec![vec!["u".into()], vec!["v".into()]]);
    let m = Dgla::abelian(&ms, sparse_map(&ms, 1, &[(br(0, 0), br(1, 0), 1)])).expect("square zero");
    let i = GradedMap::from_fn(&ls, &ms, -1, |_| vec![int(1)]);
    let h = Subspace::coordinate(&ms, &[br(1, 0)]);
    CartanCalculus::new(Dgla::trivial(&ls), m, i, h).expect("sub-DGLA")
}

/// `M = K[s] ⊗ L`, `i_a = s⊗a`, `H = 1⊗L`. A Cartan calculus for any `L`;
/// (3) holds only when `H*(L) = 0`.
pub fn ks_candidate(l: &Dgla) -> CartanCalculus {
    let ks = ks_plus_tensor(l);
    let ms = ks.dgla.space().clone();
    let ls = l.space().clone();
    let i = GradedMap::from_fn(&ls, &ms, -1, |b| {
        let mut c = zeros(ms.dim(b.degree - 1));
        c[ls.dim(b.degree - 1) + b.index] = int(1);
        c
    });
    let h = Subspace::image(&ks.alpha);
    CartanCalculus::new(l.clone(), ks.dgla, i, h).expect("sub-DGLA")
}

/// sl2 with the `K[s]` candidate: rejected at (3).
pub fn sl2_candidate() -> CartanCalculus {
    ks_candidate(&sl2())
}

/// The shift witness on `K` in degree 1 plus an extra class `z` in degree 3
/// with `i_z = 0`: injective on `H²` only, so smoothness is certified while
/// the full certificate fails at (4).
pub fn smoothness_only() -> CartanCalculus {
    let v = GradedSpace::with_names(1, vec![vec!["x".into()], vec![], vec!["z".into()]]);
    let inner = GradedSpace::with_names(1, vec![vec!["x".into()]]);
    let (_, m, _, ms) = shift_parts(&inner);
    let i = GradedMap::from_fn(&v, &ms, -1, |b| {
        let mut c = zeros(ms.dim(b.degree - 1));
        if b.degree == 1 {
            c[inner.dim(0)] = int(1);
        }
        c
    });
    let h = Subspace::coordinate(&ms, &inner.basis());
    CartanCalculus::new(Dgla::trivial(&v), m, i, h).expect("sub-DGLA")
}

/// Named Cartan fixtures: `(name, data, expected failing hypothesis)`.
pub fn cartan_corpus() -> Vec<(&'static str, CartanCalculus, Option<u8>)> {
    vec![
        ("shift_k1", shift_witness(&GradedSpace::new(1, vec![1])), None),
        ("shift_mixed", shift_witness(&GradedSpace::new(0, vec![1, 2, 1])), None),
        ("ks_acyclic", ks_candidate(&acyclic_pair()), None),
        ("sl2", sl2_candidate(), Some(3)),
        ("broken_3", broken_3(), Some(3)),
        ("broken_4", broken_4(), Some(4)),
        ("smoothness_only", smoothness_only(), Some(4)),
    ]
}

/// `u` (degree 0), `v = du` (degree 1), `[u,v] = v`: nonabelian and acyclic.
pub fn acyclic_pair() -> Dgla {
    let s = GradedSpace::with_names(0, vec![vec!["u".into()], vec!["v".into()]]);
    let d = sparse_map(&s, 1, &[(br(0, 0), br(1, 0), 1)]);
    Dgla::new(s.clone(), d, skew_bracket(&s, &[(br(0, 0), br(1, 0), br(1, 0), 1)])).expect("shapes")
}

/// `(V, W, π)` with zero differentials on one-dimensional pieces.
pub fn pi_lines(v_deg: i32, w_deg: i32, pi: i64) -> PiExample {
    let v = GradedSpace::new(v_deg, vec![1]);
    let w = GradedSpace::new(w_deg, vec![1]);
    let p = GradedMap::from_fn(&w, &v, 1, |_| if v_deg == w_deg + 1 { vec![int(pi)] } else { vec![] });
    let data = PiData::new(v.clone(), GradedMap::zero(&v, &v, 1), w.clone(), GradedMap::zero(&w, &w, 1), p).expect("valid");
    pi_example_build(&data).expect("square zero")
}

/// Named Lie-type fixtures: `(name, example, H*(L) -> H*(M) injective)`.
pub fn lietype_corpus() -> Vec<(&'static str, PiExample, bool)> {
    let plane = {
        let v = GradedSpace::new(1, vec![2]);
        let w = GradedSpace::new(0, vec![1]);
        let p = GradedMap::from_fn(&w, &v, 1, |_| vec![int(1), int(3)]);
        let data = PiData::new(v.clone(), GradedMap::zero(&v, &v, 1), w.clone(), GradedMap::zero(&w, &w, 1), p).expect("valid");
        pi_example_build(&data).expect("square zero")
    };
    let acyclic_v = {
        // V = (v0 -> v1), W = K in degree 0, π = 0
        let v = GradedSpace::new(0, vec![1, 1]);
        let dv = sparse_map(&v, 1, &[(br(0, 0), br(1, 0), 1)]);
        let w = GradedSpace::new(0, vec![1]);
        let data =
            PiData::new(v.clone(), dv, w.clone(), GradedMap::zero(&w, &w, 1), GradedMap::zero(&w, &v, 1)).expect("valid");
        pi_example_build(&data).expect("square zero")
    };
    vec![
        ("pi_zero_deg0", pi_lines(0, 0, 0), true),
        ("pi_zero_shifted", pi_lines(1, 0, 0), true),
        ("pi_line", pi_lines(1, 0, 1), false),
        ("pi_plane", plane, false),
        ("pi_zero_acyclic_v", acyclic_v, true),
    ]
}

fn one(c: i64, mult: &[usize], derivs: &[usize]) -> OpTerm {
    OpTerm::new(int(c), mult, derivs)
}

/// `Λ(a, b, c)`, all of degree 1, `Δ = c ∂_a ∂_b`, `k = 1`, `d = 0`.
pub fn schouten_toy() -> DbvAlgebra {
    let e = ExteriorAlgebra::new(&[1, 1, 1], &["a", "b", "c"]).expect("odd generators");
    e.dbv(&[], &[one(1, &[2], &[0, 1])], 1).expect("degrees")
}

/// The Schouten toy with an extra `u` of degree −1 and `d = ∂_u`.
pub fn schouten_acyclic() -> DbvAlgebra {
    let e = ExteriorAlgebra::new(&[1, 1, 1, -1], &["a", "b", "c", "u"]).expect("odd generators");
    e.dbv(&[one(1, &[], &[3])], &[one(1, &[2], &[0, 1])], 1).expect("degrees")
}

/// `Λ(u, a)` with `|u| = -1`, `|a| = 1`, `d = Δ = ∂_u`, `k = -1`.
pub fn d_equals_delta() -> DbvAlgebra {
    let e = ExteriorAlgebra::new(&[-1, 1], &["u", "a"]).expect("odd generators");
    e.dbv(&[one(1, &[], &[0])], &[one(1, &[], &[0])], -1).expect("degrees")
}

/// `Λ(θ)`, `|θ| = 1`, `Δ = ∂_θ`, `d = 0`.
pub fn theta_line() -> DbvAlgebra {
    let e = ExteriorAlgebra::new(&[1], &["th"]).expect("odd generators");
    e.dbv(&[], &[one(1, &[], &[0])], 1).expect("degrees")
}

/// `Δ = ∂_a ∂_b ∂_c` is third order: the seven-term relation fails.
pub fn third_order() -> DbvAlgebra {
    let e = ExteriorAlgebra::new(&[1, 1, 1], &["a", "b", "c"]).expect("odd generators");
    e.dbv(&[], &[one(1, &[], &[0, 1, 2])], 3).expect("degrees")
}

/// Named dBV fixtures: `(name, algebra, is dBV, degenerates)`.
pub fn bv_corpus() -> Vec<(&'static str, DbvAlgebra, bool, Option<bool>)> {
    vec![
        ("theta_line", theta_line(), true, Some(false)),
        ("schouten_toy", schouten_toy(), true, Some(false)),
        ("schouten_acyclic", schouten_acyclic(), true, Some(true)),
        ("d_equals_delta", d_equals_delta(), true, Some(true)),
        ("third_order", third_order(), false, None),
    ]
}

/// `V⁰ = V¹ = K³`, `d = diag(0,1,2)`, `f` the Jordan block on both degrees,
/// `Δ = [d,f]`.
pub fn jordan_exp_tf() -> (Bicomplex, GradedMap) {
    let s = GradedSpace::new(0, vec![3, 3]);
    let j = |b: BasisRef| {
        let mut v = zeros(3);
        if b.index < 2 {
            v[b.index + 1] = int(1);
        }
        v
    };
    let f = GradedMap::from_fn(&s, &s, 0, j);
    let d = GradedMap::from_fn(&s, &s, 1, |b| {
        let mut v = zeros(s.dim(b.degree + 1));
        if b.degree == 0 {
            v[b.index] = int(b.index as i64);
        }
        v
    });
    let delta = d.graded_commutator(&f).expect("endomaps");
    (Bicomplex::new(s, d, delta).expect("shapes"), f)
}

// ---------------------------------------------------------------- random

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.gen_range(-2..=2))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows).map(|_| (0..cols).map(|_| small(rng)).collect()).collect();
    Matrix::from_rows(rows, cols, entries).expect("shape")
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random space on a window of at most three degrees starting in `-1..=1`.
pub fn random_space(rng: &mut ChaCha8Rng, max_total: usize) -> GradedSpace {
    loop {
        let lo = rng.gen_range(-1..=1);
        let len = rng.gen_range(1..=3);
        let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=2)).collect();
        let total: usize = dims.iter().sum();
        if total >= 1 && total <= max_total {
            return GradedSpace::new(lo, dims);
        }
    }
}

/// A random square-zero differential: a random pairing of basis vectors in
/// adjacent degrees, conjugated by random invertible matrices.
pub fn random_differential(rng: &mut ChaCha8Rng, s: &GradedSpace) -> GradedMap {
    let mut used: std::collections::BTreeSet<BasisRef> = Default::default();
    let mut pairs = Vec::new();
    for b in s.basis() {
        let next = br(b.degree + 1, 0);
        if used.contains(&b) || !rng.gen_bool(0.6) {
            continue;
        }
        if let Some(t) = (0..s.dim(next.degree)).map(|i| br(next.degree, i)).find(|t| !used.contains(t)) {
            used.insert(b);
            used.insert(t);
            pairs.push((b, t, 1));
        }
    }
    let d0 = sparse_map(s, 1, &pairs);
    let conj: std::collections::BTreeMap<i32, Matrix> =
        s.support().into_iter().map(|n| (n, random_invertible(rng, s.dim(n)))).collect();
    GradedMap::from_fn(s, s, 1, |b| {
        let (p, q) = (&conj[&b.degree], conj.get(&(b.degree + 1)));
        let Some(q) = q else { return zeros(s.dim(b.degree + 1)) };
        let pinv = p.inverse().expect("invertible");
        let col = pinv.col(b.index);
        let mid = d0.block(b.degree).mul_vec(&col);
        q.mul_vec(&mid)
    })
}

/// A random degree 0 chain map `(V, dV) -> (W, dW)`: a random combination of
/// a basis of the solutions of `dW f = f dV`.
pub fn random_chain_map(rng: &mut ChaCha8Rng, v: &GradedSpace, dv: &GradedMap, w: &GradedSpace, dw: &GradedMap) -> GradedMap {
    let mut vars: Vec<(i32, usize, usize)> = Vec::new();
    for n in v.support() {
        for r in 0..w.dim(n) {
            for c in 0..v.dim(n) {
                vars.push((n, r, c));
            }
        }
    }
    let pos = |n: i32, r: usize, c: usize| vars.iter().position(|&x| x == (n, r, c));
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for n in v.support() {
        // (dW f^n - f^{n+1} dV) restricted to V^n, entry (r, c) in W^{n+1} x V^n
        let (dwn, dvn) = (dw.block(n), dv.block(n));
        for r in 0..w.dim(n + 1) {
            for c in 0..v.dim(n) {
                let mut row = zeros(vars.len());
                for k in 0..w.dim(n) {
                    if let Some(p) = pos(n, k, c) {
                        row[p] += dwn.get(r, k);
                    }
                }
                for k in 0..v.dim(n + 1) {
                    if let Some(p) = pos(n + 1, r, k) {
                        row[p] -= dvn.get(k, c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let sol = if rows.is_empty() {
        (0..vars.len()).map(|i| crate::linalg::unit(vars.len(), i)).collect()
    } else {
        Matrix::from_rows(rows.len(), vars.len(), rows).expect("shape").kernel()
    };
    let mut x = zeros(vars.len());
    for s in &sol {
        let c = small(rng);
        crate::linalg::axpy(&mut x, &c, s);
    }
    GradedMap::from_fn(v, w, 0, |b| {
        (0..w.dim(b.degree)).map(|r| pos(b.degree, r, b.index).map_or_else(|| int(0), |p| x[p].clone())).collect()
    })
}

/// A random DGLA morphism `f: L -> M`. Half of the draws are abelian with a
/// random chain map; the rest are the block inclusion
/// `End(V) -> End(V ⊕ U)`, which is injective and nonabelian.
pub fn random_morphism(rng: &mut ChaCha8Rng) -> (Dgla, Dgla, GradedMap) {
    if rng.gen_bool(0.5) {
        let v = random_space(rng, 4);
        let w = random_space(rng, 4);
        let (dv, dw) = (random_differential(rng, &v), random_differential(rng, &w));
        let f = random_chain_map(rng, &v, &dv, &w, &dw);
        (Dgla::abelian(&v, dv).expect("square zero"), Dgla::abelian(&w, dw).expect("square zero"), f)
    } else {
        let v = random_space(rng, 2);
        let u = random_space(rng, 1);
        let (dv, du) = (random_differential(rng, &v), random_differential(rng, &u));
        end_inclusion(&v, &dv, &u, &du)
    }
}

/// `End(V) -> End(V ⊕ U)`, extension by zero on `U`.
pub fn end_inclusion(v: &GradedSpace, dv: &GradedMap, u: &GradedSpace, du: &GradedMap) -> (Dgla, Dgla, GradedMap) {
    let sum = v.direct_sum(u);
    let dsum = block_diagonal(&sum, &[(v, dv), (u, du)]);
    let small_end = EndAlgebra::new(v, dv).expect("square zero");
    let big_end = EndAlgebra::new(&sum, &dsum).expect("square zero");
    let f = GradedMap::from_fn(small_end.space(), big_end.space(), 0, |b| {
        let (i, r, c) = small_end.entry_of(b);
        let target = big_end.elementary(b.degree, i, r, c).expect("entry exists in the larger algebra");
        crate::linalg::unit(big_end.space().dim(b.degree), target.index)
    });
    (small_end.dgla, big_end.dgla, f)
}

/// A random candidate `(d, [,])` on a space of total dimension at most 5.
/// Draws mix valid algebras with perturbations so that every axiom both
/// holds and fails across a run.
pub fn random_candidate(rng: &mut ChaCha8Rng) -> Dgla {
    let kind = rng.gen_range(0..7);
    let base = match kind {
        6 => {
            // three consecutive degrees, so a random d can fail d² = 0
            let s = GradedSpace::new(rng.gen_range(-1..=1), vec![rng.gen_range(1..=2), 1, rng.gen_range(1..=2)]);
            let d = random_any_map(rng, &s, 1);
            let bracket = random_bracket(rng, &s, false);
            return Dgla::new(s, d, bracket).expect("shapes");
        }
        0 => {
            let v = random_space(rng, 2);
            let dv = random_differential(rng, &v);
            EndAlgebra::new(&v, &dv).expect("square zero").dgla
        }
        1 => sl2(),
        _ => {
            let s = random_space(rng, 5);
            let d = if rng.gen_bool(0.6) { random_differential(rng, &s) } else { random_any_map(rng, &s, 1) };
            let bracket = random_bracket(rng, &s, kind == 5);
            return Dgla::new(s, d, bracket).expect("shapes");
        }
    };
    if rng.gen_bool(0.5) {
        return base;
    }
    // perturb one structure constant or the differential
    let s = base.space().clone();
    let basis = s.basis();
    let a = basis[rng.gen_range(0..basis.len())];
    let b = basis[rng.gen_range(0..basis.len())];
    let targets = s.basis_in(a.degree + b.degree);
    if targets.is_empty() || rng.gen_bool(0.3) {
        let d = base.d().add(&random_any_map(rng, &s, 1)).expect("same shape");
        return Dgla::new(s, d, base.bracket_map().clone()).expect("shapes");
    }
    let c = targets[rng.gen_range(0..targets.len())];
    let extra = if rng.gen_bool(0.5) {
        skew_bracket(&s, &[(a, b, c, 1)])
    } else {
        Bilinear::from_entries(&s, 0, &[(a, b, c, int(1))]).expect("shape")
    };
    Dgla::new(s, base.d().clone(), base.bracket_map().add(&extra)).expect("shapes")
}

fn random_any_map(rng: &mut ChaCha8Rng, s: &GradedSpace, degree: i32) -> GradedMap {
    GradedMap::from_fn(s, s, degree, |b| {
        (0..s.dim(b.degree + degree)).map(|_| if rng.gen_bool(0.6) { small(rng) } else { int(0) }).collect()
    })
}

/// Sparse structure constants; graded skew unless `raw`.
fn random_bracket(rng: &mut ChaCha8Rng, s: &GradedSpace, raw: bool) -> Bilinear {
    let basis = s.basis();
    let mut entries = Vec::new();
    for (x, &a) in basis.iter().enumerate() {
        for &b in &basis[x..] {
            for c in s.basis_in(a.degree + b.degree) {
                if rng.gen_bool(0.25) {
                    entries.push((a, b, c, rng.gen_range(-2..=2)));
                }
            }
        }
    }
    if raw {
        let all: Vec<_> = entries.into_iter().map(|(a, b, c, v)| (a, b, c, int(v))).collect();
        Bilinear::from_entries(s, 0, &all).expect("shape")
    } else {
        skew_bracket(s, &entries)
    }
}

/// A random operator sum of the given degree on an exterior algebra.
fn random_operator(rng: &mut ChaCha8Rng, e: &ExteriorAlgebra, degree: i32, max_order: usize) -> Vec<OpTerm> {
    let n = e.generator_degrees().len();
    let mut terms = Vec::new();
    for _ in 0..4 {
        let mult: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let derivs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).take(max_order).collect();
        let t = OpTerm::new(small(rng), &mult, &derivs);
        if e.term_degree(&t) == degree && !derivs.is_empty() {
            terms.push(t);
        }
    }
    terms
}

/// A random dBV candidate on `Λ` of 2 or 3 odd generators (total dimension
/// at most 8); callers filter with `bv_check`.
pub fn random_dbv(rng: &mut ChaCha8Rng) -> DbvAlgebra {
    let n = rng.gen_range(2..=3);
    let gens: Vec<i32> = (0..n).map(|_| [-1, 1, 1, 3][rng.gen_range(0..4)]).collect();
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let e = ExteriorAlgebra::new(&gens, &refs).expect("odd generators");
    let k = [1, -1, 3][rng.gen_range(0..3)];
    let d = random_operator(rng, &e, 1, 1);
    let delta = random_operator(rng, &e, -k, 2);
    e.dbv(&d, &delta, k).expect("degrees match by construction")
}

/// A random bicomplex with `Δ = [d,f]` for a rank one `f` of degree 0
/// supported in a single degree with `f² = 0`, so `[f,Δ] = 0`.
pub fn random_exp_tf(rng: &mut ChaCha8Rng) -> (Bicomplex, GradedMap) {
    loop {
        let s = random_space(rng, 5);
        let d = random_differential(rng, &s);
        let n = s.support()[rng.gen_range(0..s.support().len())];
        let dim = s.dim(n);
        let u: Vec<Scalar> = (0..dim).map(|_| small(rng)).collect();
        let phi: Vec<Scalar> = (0..dim).map(|_| small(rng)).collect();
        let dot: Scalar = u.iter().zip(&phi).map(|(a, b)| a * b).sum();
        if dot != int(0) {
            continue;
        }
        let f = GradedMap::from_fn(&s, &s, 0, |b| {
            if b.degree == n {
                u.iter().map(|x| x * &phi[b.index]).collect()
            } else {
                zeros(s.dim(b.degree))
            }
        });
        let delta = d.graded_commutator(&f).expect("endomaps");
        return (Bicomplex::new(s, d, delta).expect("shapes"), f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bv::bv_check;
    use crate::cohomology::check_differential;
    use crate::dgla::{morphism_check, CheckMode};
    use crate::par::Exec;
    use rand::SeedableRng;

    #[test]
    fn random_differentials_square_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..40 {
            let s = random_space(&mut rng, 5);
            let d = random_differential(&mut rng, &s);
            assert!(check_differential(&s, &d).is_ok());
        }
    }

    #[test]
    fn random_morphisms_are_morphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let (l, m, f) = random_morphism(&mut rng);
            assert!(morphism_check(&f, &l, &m, Exec::Sequential).unwrap().holds());
        }
    }

    #[test]
    fn named_fixtures_behave() {
        let seq = Exec::Sequential;
        assert!(sl2().check_axioms(seq, CheckMode::Exhaustive).holds());
        assert_eq!(sl2_broken_jacobi().check_axioms(seq, CheckMode::FirstFailure).first_failure(), Some("jacobi"));
        assert_eq!(leibniz_broken().check_axioms(seq, CheckMode::FirstFailure).first_failure(), Some("leibniz"));
        assert!(obstructed_toy().check_axioms(seq, CheckMode::Exhaustive).holds());
        assert!(acyclic_pair().check_axioms(seq, CheckMode::Exhaustive).holds());
        assert!(order_three_toy().check_axioms(seq, CheckMode::Exhaustive).holds());
        for (name, a, valid, _) in bv_corpus() {
            assert_eq!(bv_check(&a, seq, CheckMode::FirstFailure).holds(), valid, "{name}");
        }
    }
}
