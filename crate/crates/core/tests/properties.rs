//! Invariants over randomly generated biserial quivers.

use hybrid_core::algebra::build_algebra;
use hybrid_core::data::{BiserialQuiverData, Weights};
use hybrid_core::format::{parse_presentation, presentation_to_json};
use hybrid_core::path::{LinComb, Path};
use hybrid_core::perm::Permutation;
use hybrid_core::quiver::Quiver;
use hybrid_core::relations::generate_relations;
use hybrid_core::scalar::{qf, Q};
use proptest::prelude::*;

/// Arrows `2v` and `2v + 1` start at vertex `v`, and `f(α)` starts where `α` ends.
fn biserial(f: &[usize], m: &[u32], c: &[(i64, i64)], b: &[i64], tri: &[bool]) -> BiserialQuiverData {
    let n = f.len() / 2;
    let vertices = (0..n).map(|v| format!("v{v}")).collect();
    let arrows = (0..f.len()).map(|a| (format!("a{a}"), format!("v{}", a / 2), format!("v{}", f[a] / 2))).collect();
    let quiver = Quiver::new(vertices, arrows).unwrap();
    let f = Permutation::from_images(f.to_vec()).unwrap();
    let mut w = Weights::default();
    for a in 0..f.len() {
        // Weights are per g-orbit, so only the orbit representative gets one.
        w.m.entry(a).or_insert(m[a]);
        w.c.entry(a).or_insert(qf(c[a].0, c[a].1));
        if f.apply(a) == a && b[a] != 0 {
            w.b.insert(a, Q::from_integer(b[a].into()));
        }
    }
    let probe = BiserialQuiverData::new(quiver.clone(), f.clone(), Weights::default(), &[]).unwrap();
    let g = probe.g();
    w.m.retain(|&a, _| g.orbit_rep(a) == a);
    w.c.retain(|&a, _| g.orbit_rep(a) == a);
    let t: Vec<usize> = (0..f.len()).filter(|&a| tri[a] && matches!(f.orbit_len(a), 1 | 3)).collect();
    BiserialQuiverData::new(quiver, f, w, &t).unwrap()
}

fn data_strategy(max_vertices: usize, max_m: u32) -> impl Strategy<Value = BiserialQuiverData> {
    (1..=max_vertices)
        .prop_flat_map(move |n| {
            let k = 2 * n;
            (
                Just((0..k).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(1..=max_m, k),
                prop::collection::vec((prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=3), k),
                prop::collection::vec(-2i64..=2, k),
                prop::collection::vec(any::<bool>(), k),
            )
        })
        .prop_map(|(f, m, c, b, tri)| biserial(&f, &m, &c, &b, &tri))
}

/// A composable path of at most `len` arrows, steered by `choices`.
fn walk(d: &BiserialQuiverData, start: usize, choices: &[bool], len: usize) -> Path {
    let q = d.quiver();
    let mut arrows = Vec::new();
    let mut v = start;
    for &c in choices.iter().take(len) {
        let out = q.out_arrows(v);
        let x = out[c as usize];
        arrows.push(x);
        v = q.target(x);
    }
    if arrows.is_empty() {
        Path::stationary(start)
    } else {
        Path::from_arrows(q, arrows).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_identities(d in data_strategy(5, 3)) {
        let q = d.quiver();
        let (f, g) = (d.f(), d.g());
        let n = q.num_arrows();
        prop_assert_eq!(f.compose(&f.inverse()), Permutation::identity(n));
        prop_assert_eq!(f.inverse().compose(f), Permutation::identity(n));
        let covered: usize = g.cycles().iter().map(Vec::len).sum();
        prop_assert_eq!(covered, n);
        for a in 0..n {
            prop_assert_eq!(d.bar(d.bar(a)), a);
            prop_assert_ne!(d.bar(a), a);
            prop_assert_eq!(q.source(d.bar(a)), q.source(a));
            prop_assert_eq!(g.apply(a), d.bar(f.apply(a)));
            prop_assert_eq!(q.source(g.apply(a)), q.target(a));
            prop_assert_eq!(g.pow(a, g.orbit_len(a)), a);
            prop_assert_eq!(d.mn(a), d.m(a) as usize * g.orbit_len(a));
            let b = d.b_path(a);
            prop_assert_eq!(b.len(), d.mn(a));
            prop_assert_eq!(b.target(q), q.source(a));
            prop_assert_eq!(d.a_path(a), b.prefix(d.mn(a) - 1));
            prop_assert_eq!(d.in_t(a), d.in_t(f.apply(a)));
        }
    }

    #[test]
    fn presentation_round_trip(d in data_strategy(5, 4)) {
        let text = presentation_to_json(&d);
        let back = parse_presentation(&text).unwrap();
        prop_assert_eq!(presentation_to_json(&back), text);
        prop_assert_eq!(back, d);
    }

    #[test]
    fn classification_ignores_names(d in data_strategy(5, 3)) {
        let r = d.renamed(|a| format!("x_{a}"), |v| format!("w{v}")).unwrap();
        let q = d.quiver();
        let map: Vec<usize> = (0..q.num_arrows()).map(|a| r.quiver().arrow_id(&format!("x_{}", q.arrow_name(a))).unwrap()).collect();
        let (c1, c2) = (d.classify_arrows(), r.classify_arrows());
        let (v1, v2) = (d.classify_vertices(), r.classify_vertices());
        for a in 0..q.num_arrows() {
            prop_assert_eq!(c1.virtual_kind[a], c2.virtual_kind[map[a]]);
            prop_assert_eq!(c1.critical[a], c2.critical[map[a]]);
            prop_assert_eq!(c1.border[a], c2.border[map[a]]);
            prop_assert_eq!(r.mn(map[a]), d.mn(a));
            prop_assert_eq!(r.c(map[a]), d.c(a));
        }
        for v in 0..q.num_vertices() {
            let w = r.quiver().vertex_id(&format!("w{}", q.vertex_name(v))).unwrap();
            prop_assert_eq!(v1[v], v2[w]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_forms_are_linear(
        d in data_strategy(3, 2),
        walks in prop::collection::vec((prop::collection::vec(any::<bool>(), 8), 0usize..8), 2),
        (x, y) in (-4i64..=4, -4i64..=4),
    ) {
        let Ok(a) = build_algebra(&d, &generate_relations(&d, &d.classify_arrows())) else { return Ok(()) };
        let q = d.quiver();
        let p1 = walk(&d, 0, &walks[0].0, walks[0].1);
        let p2 = walk(&d, 0, &walks[1].0, walks[1].1);
        let (x, y) = (Q::from_integer(x.into()), Q::from_integer(y.into()));
        let mut l = LinComb::term(p1.clone(), x.clone());
        l.add_term(p2.clone(), y.clone());
        let nf = a.closure().normal_form(&l);
        let (n1, n2) = (a.closure().normal_form_path(&p1), a.closure().normal_form_path(&p2));
        let expect: Vec<Q> = n1.iter().zip(&n2).map(|(u, v)| &x * u + &y * v).collect();
        prop_assert_eq!(nf, expect);
        // Multiplying in the algebra agrees with concatenating paths.
        if let Some(p12) = p1.concat(&p2, q) {
            if p1.target(q) == p2.source {
                prop_assert_eq!(a.mul(&n1, &n2), a.closure().normal_form_path(&p12));
            }
        }
    }

    #[test]
    fn algebra_invariants(d in data_strategy(3, 2)) {
        let Ok(a) = build_algebra(&d, &generate_relations(&d, &d.classify_arrows())) else { return Ok(()) };
        prop_assert!(a.is_associative());
        let cartan = a.cartan_matrix();
        let total: usize = cartan.iter().flatten().sum();
        prop_assert_eq!(total, a.dim());
        let r = d.renamed(|s| format!("{s}'"), |s| format!("{s}'")).unwrap();
        let b = build_algebra(&r, &generate_relations(&r, &r.classify_arrows())).unwrap();
        prop_assert_eq!(b.dim(), a.dim());
        prop_assert_eq!(b.cartan_matrix(), cartan);
    }
}
