//! The eleven acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails on any failure outside the documented known failures.

mod common;

use common::oracle::{paths_from, target, NaiveAlgebra};
use hybrid_core::algebra::{add_scaled, build_algebra, is_zero_vec, FiniteDimAlgebra};
use hybrid_core::contract::contract;
use hybrid_core::data::{BiserialQuiverData, VertexClass};
use hybrid_core::modrep::*;
use hybrid_core::path::{LinComb, Path};
use hybrid_core::quiver::{ArrowId, Quiver, VertexId};
use hybrid_core::relations::generate_relations;
use hybrid_core::roundtrip::roundtrip;
use hybrid_core::scalar::{q, qf, Q};
use hybrid_core::star::star;
use hybrid_core::symmetric::{symmetric_form_exists, verify_verdict, Certificate, SymmetricVerdict};
use hybrid_core::validate::{validate, Level};
use hybrid_core::Error;
use num_traits::Zero;

/// Failures that are expected because the stated property does not hold for
/// the given input: `(criterion, prefix of the failure message)`.
const KNOWN_FAILURES: &[(usize, &str)] = &[
    // The degenerate algebra K + Nakayama with m = (3,1,1): every g-path of
    // length m n vanishes, and the zeta/xi tables assume |Q0| >= 4.
    (2, "triangle_nakayama_split:"),
    (3, "triangle_nakayama_split:"),
    // Two vertices with a border loop outside T: xi_beta = 0 although f(beta) is critical.
    (3, "disc_special_biserial: beta "),
    // The relations for m = (2,1) force sigma gamma = 0, leaving a symmetric algebra.
    (4, "disc_singular:"),
    // For x = 1/c_beta the cover kernel of U_x is not generated by the z_nu.
    (10, "disc_semidihedral x=1/2:"),
];

struct Valid {
    name: String,
    data: BiserialQuiverData,
    alg: FiniteDimAlgebra,
}

/// Corpus entries that pass full validation, with their algebras.
fn valid_entries() -> Vec<Valid> {
    common::corpus_names()
        .into_iter()
        .filter_map(|name| {
            let data = common::load(&name);
            let report = validate(&data, Level::Full).ok()?;
            if !report.passed() {
                return None;
            }
            let alg = common::build(&data);
            Some(Valid { name, data, alg })
        })
        .collect()
}

/// `x` is a nonzero scalar multiple of the nonzero vector `y`.
fn prop(x: &[Q], y: &[Q]) -> bool {
    if is_zero_vec(x) || is_zero_vec(y) {
        return false;
    }
    let i = y.iter().position(|c| !c.is_zero()).expect("nonzero");
    let l = &x[i] / &y[i];
    x.iter().zip(y).all(|(a, b)| *a == &l * b)
}

/// Normal form of `pre · p · post`, or `None` if the arrows do not compose.
fn nf(a: &FiniteDimAlgebra, qv: &Quiver, p: &Path, post: &[ArrowId], pre: &[ArrowId]) -> Option<Vec<Q>> {
    let mut arrows = pre.to_vec();
    arrows.extend(&p.arrows);
    arrows.extend(post);
    Path::from_arrows(qv, arrows).ok().map(|p| a.path_element(&p))
}

fn path_of(qv: &Quiver, arrows: Vec<ArrowId>) -> Path {
    Path::from_arrows(qv, arrows).expect("composable path")
}

fn max_mn(data: &BiserialQuiverData) -> usize {
    (0..data.quiver().num_arrows()).map(|a| data.mn(a)).max().unwrap_or(1)
}

fn naive(data: &BiserialQuiverData) -> Result<NaiveAlgebra, common::oracle::NaiveOutcome> {
    let rels = generate_relations(data, &data.classify_arrows());
    let n = max_mn(data);
    NaiveAlgebra::compute(data.quiver(), &rels.generators(), n + 1, n + 4, 4)
}

fn criterion_1(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    for v in valid.iter().filter(|v| v.data.quiver().num_vertices() >= 4) {
        let qv = v.data.quiver();
        for i in 0..qv.num_vertices() {
            let expected: usize = qv.out_arrows(i).iter().map(|&a| v.data.mn(a)).sum();
            let got = v.alg.projective_indices(i).len();
            if got != expected {
                fails.push(format!("{}: dim e_{}H = {got}, formula {expected}", v.name, qv.vertex_name(i)));
            }
        }
    }
    let data = common::load("five_vertex_surface");
    let alg = common::build(&data);
    let engine: Vec<usize> = (0..5).map(|i| alg.projective_indices(i).len()).collect();
    if engine != [8, 10, 7, 8, 5] || alg.dim() != 38 {
        fails.push(format!("five_vertex_surface: engine dims {engine:?}, total {}", alg.dim()));
    }
    match naive(&data) {
        Ok(o) if o.vertex_dims() == [8, 10, 7, 8, 5] && o.dim() == 38 => {}
        Ok(o) => fails.push(format!("five_vertex_surface: oracle dims {:?}, total {}", o.vertex_dims(), o.dim())),
        Err(e) => fails.push(format!("five_vertex_surface: oracle {e:?}")),
    }
    fails
}

fn criterion_2(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    for v in valid {
        let (d, a) = (&v.data, &v.alg);
        let qv = d.quiver();
        for al in 0..qv.num_arrows() {
            let name = qv.arrow_name(al);
            let b = a.path_element(&d.b_path(al));
            if is_zero_vec(&b) {
                fails.push(format!("{}: B_{name} = 0", v.name));
                continue;
            }
            for x in 0..qv.num_arrows() {
                if !is_zero_vec(&a.mul_arrow(&b, x)) || !is_zero_vec(&a.arrow_mul(x, &b)) {
                    fails.push(format!("{}: B_{name} not annihilated by {}", v.name, qv.arrow_name(x)));
                }
            }
            let bar = d.bar(al);
            let mut diff = a.zero();
            add_scaled(&mut diff, &b, d.c(al));
            add_scaled(&mut diff, &a.path_element(&d.b_path(bar)), &-d.c(bar).clone());
            if !is_zero_vec(&diff) {
                fails.push(format!("{}: c B_{name} - c B_{} = {}", v.name, qv.arrow_name(bar), a.display(&diff)));
            }
        }
    }
    fails
}

fn criterion_3(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    let mut checked = 0;
    for v in valid {
        let (d, a) = (&v.data, &v.alg);
        let qv = d.quiver();
        let cls = d.classify_arrows();
        let (f, g) = (d.f(), d.g());
        let (finv, ginv) = (f.inverse(), g.inverse());
        let b = |x: ArrowId| a.path_element(&d.b_path(x));
        for al in 0..qv.num_arrows() {
            let name = qv.arrow_name(al);
            let mut fail = |what: &str| fails.push(format!("{}: {name} {what}", v.name));
            let bar = d.bar(al);
            let fa = f.apply(al);
            let both_t = d.in_t(al) && d.in_t(bar);

            // Paths of length 4 through two g-steps.
            let beta = f.apply(g.apply(al));
            let p46 = a.path_element(&path_of(qv, vec![al, g.apply(al), beta, g.apply(beta)]));
            let nonzero46 = d.in_t(al) && d.in_t(g.apply(al)) && (cls.is_virtual(fa) || cls.is_critical(fa));
            let ok46 = if nonzero46 { prop(&p46, &b(al)) } else { is_zero_vec(&p46) };
            if !ok46 {
                fail("length-4 path");
            }
            checked += 1;

            if d.mn(al) < 3 || cls.is_critical(al) {
                continue;
            }
            let a_al = a.path_element(&d.a_path(al));
            let a_bar = a.path_element(&d.a_path(bar));
            let z = path_of(qv, vec![al, fa, g.apply(fa)]);
            let x = path_of(qv, vec![al, g.apply(al), f.apply(g.apply(al))]);
            let zeta = a.path_element(&z);
            let xi = a.path_element(&x);
            let is0 = |w: Option<Vec<Q>>| w.is_some_and(|w| is_zero_vec(&w));
            let isb = |w: Option<Vec<Q>>, y: ArrowId| w.is_some_and(|w| prop(&w, &b(y)));

            if both_t && (cls.is_virtual(bar) || cls.is_critical(bar)) {
                let ok = prop(&zeta, &a_al)
                    && isb(nf(a, qv, &z, &[f.pow(bar, 2)], &[]), al)
                    && is0(nf(a, qv, &z, &[g.apply(f.apply(bar))], &[]))
                    && isb(nf(a, qv, &z, &[], &[ginv.apply(al)]), ginv.apply(al))
                    && is0(nf(a, qv, &z, &[], &[finv.apply(al)]));
                if !ok {
                    fail("zeta exceptional case");
                }
            } else if !is_zero_vec(&zeta) {
                fail("zeta nonzero");
            }

            if both_t && cls.is_virtual(fa) {
                let f2 = f.pow(al, 2);
                let ok = prop(&xi, &a_bar)
                    && is0(nf(a, qv, &x, &[], &[ginv.apply(al)]))
                    && isb(nf(a, qv, &x, &[], &[f2]), f2)
                    && isb(nf(a, qv, &x, &[f2], &[]), bar)
                    && is0(nf(a, qv, &x, &[f.pow(g.apply(al), 2)], &[]));
                if !ok {
                    fail("xi virtual case");
                }
            } else if both_t && cls.is_critical(fa) {
                let ok = prop(&xi, &a_al)
                    && isb(nf(a, qv, &x, &[ginv.apply(al)], &[]), al)
                    && is0(nf(a, qv, &x, &[ginv.apply(fa)], &[]))
                    && isb(nf(a, qv, &x, &[], &[ginv.apply(al)]), ginv.apply(al))
                    && is0(nf(a, qv, &x, &[], &[f.pow(al, 2)]));
                if !ok {
                    fail("xi critical case");
                }
            } else if !is_zero_vec(&xi) {
                fail("xi nonzero");
            }
            checked += 2;
        }
    }
    if checked == 0 {
        fails.push("no arrows checked".into());
    }
    fails
}

fn criterion_4() -> Vec<String> {
    let mut fails = Vec::new();
    let mut expect = |name: &str, symmetric: bool| {
        let data = common::load(name);
        let a = common::build(&data);
        let verdict = symmetric_form_exists(&a);
        if !verify_verdict(&a, &verdict) {
            fails.push(format!("{name}: verdict does not verify"));
        }
        match (&verdict, symmetric) {
            (SymmetricVerdict::Symmetric { .. }, true) => {}
            (SymmetricVerdict::NotSymmetric(Certificate::CommutatorInSocle { .. }), false) => {}
            (SymmetricVerdict::NotSymmetric(Certificate::SocleNotSimple { .. }), false) => {}
            (_, want) => fails.push(format!("{name}: expected symmetric = {want}, got {}", verdict.is_symmetric())),
        }
    };
    expect("disc_singular", false);
    expect("linear_sigma_1", false);
    expect("linear_sigma_minus_1", false);
    expect("linear_sigma_2", true);
    let mut brauer = 0;
    for name in common::corpus_names() {
        let data = common::load(&name);
        let is_brauer = data.triangles().is_empty() && data.b_nonzero().is_empty();
        if is_brauer && validate(&data, Level::Full).is_ok_and(|r| r.passed()) {
            brauer += 1;
            expect(&name, true);
        }
    }
    if brauer == 0 {
        fails.push("no Brauer graph entries".into());
    }
    fails
}

fn criterion_5() -> Vec<String> {
    let mut fails = Vec::new();
    let data = common::load("triangle_nakayama_split");
    let qv = data.quiver();
    let a = common::build(&data);
    let mut dims: Vec<usize> = a.block_decomposition().iter().map(|b| b.dim()).collect();
    dims.sort();
    if dims != [1, 10] {
        fails.push(format!("engine block dims {dims:?}"));
    }
    match naive(&data) {
        Ok(o) => {
            let c = o.cartan();
            let n = qv.num_vertices();
            let mut comp: Vec<usize> = (0..n).collect();
            for _ in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        if c[s][t] > 0 {
                            let m = comp[s].min(comp[t]);
                            comp[s] = m;
                            comp[t] = m;
                        }
                    }
                }
            }
            let mut blocks = std::collections::BTreeMap::<usize, usize>::new();
            for s in 0..n {
                *blocks.entry(comp[s]).or_default() += c[s].iter().sum::<usize>();
            }
            let mut od: Vec<usize> = blocks.into_values().collect();
            od.sort();
            if od != [1, 10] {
                fails.push(format!("oracle block dims {od:?}"));
            }
        }
        Err(e) => fails.push(format!("oracle {e:?}")),
    }
    let (al, be) = (qv.arrow_id("alpha1").unwrap(), qv.arrow_id("beta1").unwrap());
    for word in [vec![al, be, al, be, al], vec![be, al, be, al, be]] {
        if !is_zero_vec(&a.path_element(&path_of(qv, word.clone()))) {
            fails.push(format!("{} != 0", path_of(qv, word).display(qv)));
        }
    }
    let nakayama = a.block_decomposition().into_iter().find(|b| b.dim() == 10);
    if let Some(b) = nakayama {
        let arrows: Vec<&str> = b.gabriel_arrows().iter().map(|&x| qv.arrow_name(x)).collect();
        if arrows != ["alpha1", "beta1"] {
            fails.push(format!("Nakayama block arrows {arrows:?}"));
        }
    }
    fails
}

fn criterion_6(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    for v in valid {
        let qv = v.data.quiver();
        let st = match star(&v.data) {
            Ok(s) => s,
            Err(e) => {
                fails.push(format!("{}: {e}", v.name));
                continue;
            }
        };
        let sd = &st.data;
        let sq = sd.quiver();
        if sd.f().cycles().iter().any(|c| c.len() != 1 && c.len() != 3) {
            fails.push(format!("{}: f* orbit of length other than 1 or 3", v.name));
        }
        if !validate(sd, Level::Full).is_ok_and(|r| r.passed()) {
            fails.push(format!("{}: star data fails validation", v.name));
        }
        if (0..sq.num_arrows()).any(|x| !sd.in_t(x)) {
            fails.push(format!("{}: T* != Q1*", v.name));
        }
        let outside = (0..qv.num_arrows()).filter(|&x| !v.data.in_t(x)).count();
        if sq.num_vertices() != qv.num_vertices() + outside {
            fails.push(format!("{}: |Q0*| = {}, expected {}", v.name, sq.num_vertices(), qv.num_vertices() + outside));
        }
    }
    fails
}

/// The one-vertex algebra K[x]/(x^2) with f = (a b) and m = 1 is documented
/// as a counterexample to the round trip.
const ROUNDTRIP_EXCLUDED: &[&str] = &["local_virtual_pair"];

fn criterion_7(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    let mut passed = Vec::new();
    for v in valid.iter().filter(|v| !ROUNDTRIP_EXCLUDED.contains(&v.name.as_str())) {
        match roundtrip(&v.data, &v.alg) {
            Ok(rt) if rt.report.isomorphic() => passed.push(v.name.as_str()),
            Ok(rt) => fails.push(format!("{}: {:?}", v.name, rt.report)),
            Err(e) => fails.push(format!("{}: {e}", v.name)),
        }
    }
    if passed.len() < 6 {
        fails.push(format!("only {} round trips", passed.len()));
    }
    for required in ["brauer_square", "local_one_triangle"] {
        if !passed.contains(&required) {
            fails.push(format!("{required}: round trip missing"));
        }
    }
    if !valid.iter().any(|v| {
        let t = v.data.triangles().len();
        t > 0 && t < v.data.quiver().num_arrows() && passed.contains(&v.name.as_str())
    }) {
        fails.push("no mixed round trip".into());
    }
    fails
}

fn is_wsa(v: &Valid) -> bool {
    (0..v.data.quiver().num_arrows()).all(|x| v.data.in_t(x)) && v.alg.block_vertex_sets().len() == 1
}

fn criterion_8(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    let mut count = 0;
    for v in valid.iter().filter(|v| is_wsa(v)) {
        let n = v.data.quiver().num_vertices();
        assert!(n <= 6, "exhaustive subsets need at most six vertices");
        for mask in 1u32..(1 << n) {
            let keep: Vec<VertexId> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            count += 1;
            let r = match contract(&v.data, &v.alg, &keep) {
                Ok(r) => r,
                Err(e) => {
                    fails.push(format!("{} {keep:?}: {e}", v.name));
                    continue;
                }
            };
            if !r.report.verified() {
                fails.push(format!("{} {keep:?}: {:?}", v.name, r.report));
            }
            let blocks_ok = r.data.components().is_ok_and(|cs| {
                cs.iter().all(|c| validate(c, Level::Full).is_ok_and(|rep| rep.passed()))
            });
            if !blocks_ok {
                fails.push(format!("{} {keep:?}: a block fails validation", v.name));
            }
            if !r.single_weight_arrows_are_biserial_loops() {
                fails.push(format!("{} {keep:?}: arrow with m n = 1 off a biserial loop", v.name));
            }
            if keep.len() < n && !r.every_component_leaves_triangles() {
                fails.push(format!("{} {keep:?}: a component stays inside T", v.name));
            }
        }
    }
    if count == 0 {
        fails.push("no weighted surface algebras".into());
    }

    let data = common::load("linear_sigma_2");
    let lambda = common::build(&data);
    let qv = data.quiver();
    let keep = [qv.vertex_id("1").unwrap(), qv.vertex_id("2").unwrap()];
    match contract(&data, &lambda, &keep) {
        Ok(r) => {
            let sigma = r.data.quiver().arrow_id("sigma~").expect("contracted sigma");
            let e = &r.embedding[sigma];
            let square = lambda.mul(e, e);
            let mut expected = lambda.zero();
            add_scaled(&mut expected, &lambda.path_element(&data.b_path(qv.arrow_id("gamma").unwrap())), &q(2));
            if is_zero_vec(&square) || square != expected {
                fails.push(format!("sigma~^2 = {}", lambda.display(&square)));
            }
            if *r.data.b(sigma) != q(2) {
                fails.push(format!("b(sigma~) = {}", r.data.b(sigma)));
            }
        }
        Err(e) => fails.push(format!("linear_sigma_2 contraction: {e}")),
    }
    fails
}

fn iso(a: &FiniteDimAlgebra, m: &RightModule, n: &RightModule) -> bool {
    iso_test(a, m, n).is_ok_and(|v| v.is_isomorphic())
}

fn criterion_9(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    for v in valid {
        let (d, a) = (&v.data, &v.alg);
        let qv = d.quiver();
        for beta in periodic_arrows(d) {
            let name = qv.arrow_name(beta);
            let m = arrow_module(a, beta).unwrap();
            let orb = omega_orbit(a, &m, DEFAULT_PERIOD_BOUND).unwrap();
            let len = d.f().orbit_len(beta);
            if orb.period != Some(len) || !orb.exact {
                fails.push(format!("{}: {name}H period {:?}, f-orbit {len}", v.name, orb.period));
                continue;
            }
            for r in 1..len {
                if !iso(a, &orb.modules[r], &arrow_module(a, d.f().pow(beta, r)).unwrap()) {
                    fails.push(format!("{}: Omega^{r}({name}H) not f^{r}({name})H", v.name));
                }
            }
        }
        for beta in (0..qv.num_arrows()).filter(|&x| d.is_border(x) && !d.in_t(x)) {
            let m = arrow_module(a, beta).unwrap();
            let o2 = omega(a, &omega(a, &m).unwrap()).unwrap();
            if !iso(a, &o2, &m) {
                fails.push(format!("{}: Omega^2({}H) not isomorphic", v.name, qv.arrow_name(beta)));
            }
        }
        if is_wsa(v) {
            let vc = d.classify_vertices();
            for i in (0..qv.num_vertices()).filter(|&i| vc[i] == VertexClass::Quaternion) {
                let orb = omega_orbit(a, &simple_module(a, i), DEFAULT_PERIOD_BOUND).unwrap();
                if orb.period != Some(4) || !orb.exact {
                    fails.push(format!("{}: S_{} period {:?}", v.name, qv.vertex_name(i), orb.period));
                }
            }
        }
    }
    fails
}

fn criterion_10(valid: &[Valid]) -> Vec<String> {
    let mut fails = Vec::new();
    let params = [(q(1), "1"), (q(2), "2"), (qf(1, 2), "1/2"), (q(-1), "-1")];
    let mut identity_modules = 0;
    let mut algebras = 0;
    for v in valid {
        let (d, a) = (&v.data, &v.alg);
        if !a.gabriel_quiver().is_ok_and(|g| g.is_two_regular()) {
            continue;
        }
        algebras += 1;
        let comps = separated_components(a).unwrap();
        let mut pairs = Vec::new();
        for c in &comps {
            for (x, label) in &params {
                let pair = build_detecting_pair(d, a, c, x).unwrap();
                let tag = format!("{} x={label}:", v.name);
                if !pair.st_zero || !pair.ts_zero {
                    fails.push(format!("{tag} S T or T S nonzero on {}", c.display(a)));
                }
                match pair.syzygies_swap(a) {
                    Ok((true, true)) => {}
                    other => fails.push(format!("{tag} syzygies {other:?} on {}", c.display(a))),
                }
                pairs.push(pair);
            }
        }

        let mut tests: Vec<(String, RightModule)> = Vec::new();
        for (k, c) in comps.iter().enumerate() {
            for y in [q(3), q(-2), qf(5, 3)] {
                tests.push((format!("U{k}({y})"), string_module(a, c, &y).unwrap()));
            }
        }
        for i in a.vertices().to_vec() {
            tests.push((format!("S{i}"), simple_module(a, i)));
            tests.push((format!("M{i}"), middle_module(a, i).unwrap()));
        }
        for x in 0..d.quiver().num_arrows() {
            tests.push((format!("{}H", d.quiver().arrow_name(x)), arrow_module(a, x).unwrap()));
        }
        for (label, m) in &tests {
            let mut all_exact = true;
            let mut identities = false;
            for pair in &pairs {
                let rep = check_detector_exactness(a, pair, m);
                all_exact &= rep.exact();
                if rep.exact() && rep.annihilated_by_socle {
                    if rep.kernel_identities() {
                        identities = true;
                    } else {
                        fails.push(format!("{} {label}: kernel identities fail", v.name));
                    }
                }
            }
            identity_modules += usize::from(identities);
            if all_exact && m.top_dim(a) != m.socle_dim(a) {
                fails.push(format!("{} {label}: exact everywhere but top {} soc {}", v.name, m.top_dim(a), m.socle_dim(a)));
            }
        }
    }
    if algebras == 0 {
        fails.push("no algebras with 2-regular Gabriel quiver".into());
    }
    if identity_modules < 3 {
        fails.push(format!("only {identity_modules} modules with kernel identities"));
    }
    fails
}

fn engine_nf(a: &FiniteDimAlgebra, p: &Path) -> LinComb {
    let x = a.path_element(p);
    let mut out = LinComb::zero();
    for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        out.add_term(a.basis_path(i).clone(), c.clone());
    }
    out
}

fn criterion_11() -> Vec<String> {
    let mut fails = Vec::new();
    for name in common::corpus_names() {
        let data = common::load(&name);
        let qv = data.quiver();
        let rels = generate_relations(&data, &data.classify_arrows());
        let engine = build_algebra(&data, &rels);
        let oracle = naive(&data);
        let (a, o) = match (engine, oracle) {
            (Ok(a), Ok(o)) => (a, o),
            (Err(Error::SearchCap(_) | Error::TruncationCap { .. }), Err(_)) => continue,
            (e, o) => {
                fails.push(format!("{name}: engine {:?}, oracle {:?}", e.map(|a| a.dim()), o.map(|o| o.dim())));
                continue;
            }
        };
        if a.cartan_matrix() != o.cartan() {
            fails.push(format!("{name}: Cartan {:?} vs oracle {:?}", a.cartan_matrix(), o.cartan()));
            continue;
        }
        let n = qv.num_vertices();
        for s in 0..n {
            for t in 0..n {
                let paths: Vec<Vec<ArrowId>> = a.corner(s, t).iter().map(|&i| a.basis_path(i).arrows.clone()).collect();
                if !o.independent(s, t, &paths) {
                    fails.push(format!("{name}: basis of e_{s} H e_{t} dependent modulo the oracle ideal"));
                }
            }
        }
        for s in 0..n {
            for p in paths_from(qv, s, o.nilpotency) {
                let path = Path { source: s, arrows: p.clone() };
                let nfp = engine_nf(&a, &path);
                let ok = if p.len() < o.nilpotency {
                    o.in_ideal(&LinComb::monomial(path.clone()).sub(&nfp))
                } else {
                    nfp.is_zero()
                };
                if !ok {
                    fails.push(format!("{name}: normal form of {} (to {})", path.display(qv), target(qv, s, &p)));
                }
            }
        }
    }
    fails
}

#[test]
fn acceptance() {
    println!();
    let valid = valid_entries();
    let criteria: Vec<(usize, &str, Vec<String>)> = vec![
        (1, "dimension formula", criterion_1(&valid)),
        (2, "socle behaviour", criterion_2(&valid)),
        (3, "zeta/xi tables", criterion_3(&valid)),
        (4, "symmetry gate", criterion_4()),
        (5, "degenerate triangle", criterion_5()),
        (6, "star construction", criterion_6(&valid)),
        (7, "round trip", criterion_7(&valid)),
        (8, "contraction closure", criterion_8(&valid)),
        (9, "periodicity", criterion_9(&valid)),
        (10, "detectors", criterion_10(&valid)),
        (11, "oracle equivalence", criterion_11()),
    ];
    let mut unexpected = Vec::new();
    for (id, title, fails) in &criteria {
        if fails.is_empty() {
            println!("criterion {id:>2} {title}: PASS");
            continue;
        }
        let (known, other): (Vec<&String>, Vec<&String>) =
            fails.iter().partition(|f| KNOWN_FAILURES.iter().any(|(k, p)| k == id && f.starts_with(p)));
        println!("criterion {id:>2} {title}: FAIL ({} known, {} unexpected)", known.len(), other.len());
        for f in fails {
            println!("    {f}");
        }
        unexpected.extend(other.into_iter().map(|f| format!("criterion {id}: {f}")));
    }
    assert!(unexpected.is_empty(), "unexpected failures:\n{}", unexpected.join("\n"));
}
