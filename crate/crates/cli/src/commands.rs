//! One function per subcommand. Each returns both renderings of its result
//! and the exit status; `main` prints one of them.

use crate::corpus;
use hybrid_core::algebra::{build_algebra, FiniteDimAlgebra};
use hybrid_core::contract::contract;
use hybrid_core::data::BiserialQuiverData;
use hybrid_core::error::{Error, Result};
use hybrid_core::format::{parse_presentation, presentation_to_json, PresentationFile};
use hybrid_core::modrep::{
    build_detecting_pair, check_detector_exactness, decomposition, middle_module, omega_orbit, parse_module_spec,
    separated_components, stable_hom_dim, Decomposition, RightModule,
};
use hybrid_core::quiver::VertexId;
use hybrid_core::relations::generate_relations;
use hybrid_core::roundtrip::roundtrip;
use hybrid_core::scalar::{fmt_q, parse_q};
use hybrid_core::star::star;
use hybrid_core::symmetric::{symmetric_form_exists, verify_verdict, Certificate, SymmetricVerdict};
use hybrid_core::validate::{validate, Level};
use serde_json::{json, Value};
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: EXIT_OK }
    }

    fn check(passed: bool, text: String, json: Value) -> Self {
        Output { text, json, code: if passed { EXIT_OK } else { EXIT_CHECK } }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Composition(_) => EXIT_INPUT,
        Error::TruncationCap { .. } | Error::SearchCap(_) => EXIT_CAP,
        Error::Construction(_) => EXIT_CHECK,
    }
}

pub fn load(path: &Path) -> Result<BiserialQuiverData> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn algebra(data: &BiserialQuiverData) -> Result<FiniteDimAlgebra> {
    build_algebra(data, &generate_relations(data, &data.classify_arrows()))
}

fn presentation_value(data: &BiserialQuiverData) -> Value {
    serde_json::to_value(PresentationFile::from_data(data)).expect("presentation serializes")
}

fn vertex(data: &BiserialQuiverData, name: &str) -> Result<VertexId> {
    data.quiver().vertex_id(name.trim()).ok_or_else(|| Error::Input(format!("unknown vertex {:?}", name.trim())))
}

pub fn validate_cmd(data: &BiserialQuiverData, structural: bool) -> Result<Output> {
    let level = if structural { Level::Structural } else { Level::Full };
    let report = validate(data, level)?;
    let mut text = String::new();
    for v in &report.violations {
        text += &format!("{}: {}\n", v.rule.id(), v.message);
    }
    if report.passed() {
        text += "valid\n";
    }
    let json = json!({
        "passed": report.passed(),
        "violations": report.violations.iter().map(|v| json!({"rule": v.rule.id(), "message": v.message})).collect::<Vec<_>>(),
    });
    Ok(Output::check(report.passed(), text, json))
}

pub fn describe(data: &BiserialQuiverData, relations: bool) -> Result<Output> {
    let q = data.quiver();
    let cls = data.classify_arrows();
    let vc = data.classify_vertices();
    let cycles = |p: &hybrid_core::perm::Permutation| -> Vec<Vec<String>> {
        p.cycles().iter().map(|c| c.iter().map(|&a| q.arrow_name(a).to_string()).collect()).collect()
    };
    let mut text = String::from("vertices:\n");
    for v in 0..q.num_vertices() {
        text += &format!("  {} {}\n", q.vertex_name(v), vc[v].label());
    }
    text += "arrows:\n";
    let mut arrows = Vec::new();
    for a in 0..q.num_arrows() {
        let mut tags = Vec::new();
        if data.in_t(a) {
            tags.push("triangle");
        }
        if cls.is_virtual(a) {
            tags.push("virtual");
        }
        if cls.is_critical(a) {
            tags.push("critical");
        }
        if cls.border[a] {
            tags.push("border");
        }
        text += &format!(
            "  {}: {} -> {}  m = {}, n = {}, c = {}, b = {}  {}\n",
            q.arrow_name(a),
            q.vertex_name(q.source(a)),
            q.vertex_name(q.target(a)),
            data.m(a),
            data.n(a),
            fmt_q(data.c(a)),
            fmt_q(data.b(a)),
            tags.join(" ")
        );
        arrows.push(json!({
            "name": q.arrow_name(a),
            "source": q.vertex_name(q.source(a)),
            "target": q.vertex_name(q.target(a)),
            "m": data.m(a),
            "n": data.n(a),
            "c": fmt_q(data.c(a)),
            "b": fmt_q(data.b(a)),
            "tags": tags,
        }));
    }
    let (f, g) = (cycles(data.f()), cycles(data.g()));
    let show = |cs: &[Vec<String>]| cs.iter().map(|c| format!("({})", c.join(" "))).collect::<Vec<_>>().join(" ");
    text += &format!("f: {}\ng: {}\n", show(&f), show(&g));
    let mut json = json!({
        "vertices": (0..q.num_vertices()).map(|v| json!({"name": q.vertex_name(v), "class": vc[v].label()})).collect::<Vec<_>>(),
        "arrows": arrows,
        "f": f,
        "g": g,
    });
    if relations {
        let rels = generate_relations(data, &cls);
        text += "relations:\n";
        let mut list = Vec::new();
        for r in &rels.relations {
            let g = r.generator.display(q);
            text += &format!("  {} {}: {g}\n", r.kind.label(), q.arrow_name(r.anchor));
            list.push(json!({"kind": r.kind.label(), "anchor": q.arrow_name(r.anchor), "generator": g}));
        }
        let exceptions: Vec<Value> = rels
            .exceptions
            .iter()
            .map(|e| {
                json!({
                    "kind": e.kind.label(),
                    "anchor": q.arrow_name(e.anchor),
                    "witness": q.arrow_name(e.witness),
                    "role": e.role,
                })
            })
            .collect();
        json["relations"] = json!({"relations": list, "exceptions": exceptions});
    }
    Ok(Output::ok(text, json))
}

pub fn basis(data: &BiserialQuiverData) -> Result<Output> {
    let a = algebra(data)?;
    let q = a.quiver();
    let mut text = format!("dim {}\n", a.dim());
    let mut per_vertex = serde_json::Map::new();
    for (v, d) in a.dimension_vector() {
        let paths: Vec<String> = a.projective_indices(v).iter().map(|&i| a.basis_path(i).display(q)).collect();
        text += &format!("e_{}H ({d}): {}\n", q.vertex_name(v), paths.join(", "));
        per_vertex.insert(q.vertex_name(v).to_string(), json!(paths));
    }
    let json = json!({
        "dim": a.dim(),
        "dimension_vector": a.dimension_vector().iter().map(|&(_, d)| d).collect::<Vec<_>>(),
        "cartan": a.cartan_matrix(),
        "basis": per_vertex,
    });
    Ok(Output::ok(text, json))
}

pub fn cartan(data: &BiserialQuiverData) -> Result<Output> {
    let a = algebra(data)?;
    let c = a.cartan_matrix();
    let names: Vec<&str> = a.vertices().iter().map(|&v| a.quiver().vertex_name(v)).collect();
    let width = c.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1).max(names.iter().map(|n| n.len()).max().unwrap_or(1));
    let mut text = format!("{:width$} ", "");
    text += &names.iter().map(|n| format!("{n:>width$}")).collect::<Vec<_>>().join(" ");
    text += "\n";
    for (n, row) in names.iter().zip(&c) {
        text += &format!("{n:>width$} {}\n", row.iter().map(|x| format!("{x:>width$}")).collect::<Vec<_>>().join(" "));
    }
    Ok(Output::ok(text, json!({"vertices": names, "cartan": c})))
}

pub fn blocks(data: &BiserialQuiverData) -> Result<Output> {
    let a = algebra(data)?;
    let q = a.quiver();
    let mut text = String::new();
    let mut list = Vec::new();
    for (vs, b) in a.block_vertex_sets().iter().zip(a.block_decomposition()) {
        let names: Vec<&str> = vs.iter().map(|&v| q.vertex_name(v)).collect();
        text += &format!("{{{}}}: dim {}\n", names.join(", "), b.dim());
        list.push(json!({"vertices": names, "dim": b.dim()}));
    }
    Ok(Output::ok(text, json!({"blocks": list})))
}

pub fn symmetric_check(data: &BiserialQuiverData) -> Result<Output> {
    let a = algebra(data)?;
    let verdict = symmetric_form_exists(&a);
    let verified = verify_verdict(&a, &verdict);
    let (text, json) = match &verdict {
        SymmetricVerdict::Symmetric { functional } => {
            let support: Vec<Value> = functional
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| json!([a.basis_path(i).display(a.quiver()), fmt_q(c)]))
                .collect();
            let shown: Vec<String> = support.iter().map(|p| format!("{} -> {}", p[0].as_str().unwrap(), p[1].as_str().unwrap())).collect();
            (
                format!("symmetric\nfunctional: {}\n", shown.join(", ")),
                json!({"symmetric": true, "verified": verified, "functional": support}),
            )
        }
        SymmetricVerdict::NotSymmetric(Certificate::CommutatorInSocle { element, .. }) => (
            format!("not symmetric\nsocle element in the commutator span: {}\n", a.display(element)),
            json!({"symmetric": false, "verified": verified, "certificate": {"commutator_in_socle": a.display(element)}}),
        ),
        SymmetricVerdict::NotSymmetric(Certificate::SocleNotSimple { vertex, basis }) => (
            format!("not symmetric\nsocle at {} has dimension {}\n", a.quiver().vertex_name(*vertex), basis.len()),
            json!({"symmetric": false, "verified": verified, "certificate": {"socle_not_simple": a.quiver().vertex_name(*vertex), "dim": basis.len()}}),
        ),
    };
    if !verified {
        return Err(Error::Construction("the verdict does not verify".into()));
    }
    Ok(Output::check(verdict.is_symmetric(), text, json))
}

pub fn star_cmd(data: &BiserialQuiverData) -> Result<Output> {
    let st = star(data)?;
    let p = presentation_value(&st.data);
    let json = json!({"presentation": p, "splits": st.splits, "epsilon_cycles": st.epsilon_cycles});
    Ok(Output::ok(presentation_to_json(&st.data) + "\n", json))
}

pub fn idempotent(data: &BiserialQuiverData, keep: &str) -> Result<Output> {
    let keep: Vec<VertexId> = keep.split(',').map(|v| vertex(data, v)).collect::<Result<_>>()?;
    let lambda = algebra(data)?;
    let c = contract(data, &lambda, &keep)?;
    let p = presentation_value(&c.data);
    let r = &c.report;
    let json = json!({
        "presentation": p,
        "verified": r.verified(),
        "vertex_dims": r.vertex_dims,
        "failed_relations": r.failed_relations,
    });
    Ok(Output::check(r.verified(), presentation_to_json(&c.data) + "\n", json))
}

pub fn roundtrip_cmd(data: &BiserialQuiverData) -> Result<Output> {
    let h = algebra(data)?;
    let rt = roundtrip(data, &h)?;
    let r = &rt.report;
    let mut text = format!("star dim {}, H dim {}, corner dim {}\n", r.star_dim, r.hybrid_dim, r.corner_dim);
    for (v, x, y) in &r.vertex_dims {
        text += &format!("  {v}: {x} {y}\n");
    }
    for f in &r.failed_relations {
        text += &format!("relation not preserved: {f}\n");
    }
    text += if r.isomorphic() { "isomorphic\n" } else { "not isomorphic\n" };
    let json = json!({"isomorphic": r.isomorphic(), "report": r});
    Ok(Output::check(r.isomorphic(), text, json))
}

fn dims(m: &RightModule) -> Vec<usize> {
    m.dims().to_vec()
}

pub fn omega_cmd(data: &BiserialQuiverData, spec: &str, steps: usize) -> Result<Output> {
    let a = algebra(data)?;
    let m = parse_module_spec(&a, spec)?;
    let orbit = omega_orbit(&a, &m, steps)?;
    let mut text = String::new();
    for (k, x) in orbit.modules.iter().enumerate() {
        text += &format!("Omega^{k}: {:?}\n", dims(x));
    }
    text += &match orbit.period {
        Some(p) => format!("period {p}\n"),
        None => format!("no period up to {steps}\n"),
    };
    let json = json!({
        "dimension_vectors": orbit.modules.iter().map(dims).collect::<Vec<_>>(),
        "period": orbit.period,
        "exact": orbit.exact,
    });
    Ok(Output::ok(text, json))
}

pub fn detect(data: &BiserialQuiverData, component: usize, x: &str, module: Option<&str>) -> Result<Output> {
    let a = algebra(data)?;
    let x = parse_q(x).filter(|x| !num_traits::Zero::is_zero(x)).ok_or_else(|| Error::Input(format!("bad parameter {x:?}")))?;
    let comps = separated_components(&a)?;
    let c = comps
        .get(component.wrapping_sub(1))
        .ok_or_else(|| Error::Input(format!("component {component} out of range 1..={}", comps.len())))?;
    let pair = build_detecting_pair(data, &a, c, &x)?;
    let show = |m: &[Vec<Vec<hybrid_core::scalar::Q>>]| -> Vec<Vec<String>> {
        m.iter().map(|row| row.iter().map(|e| a.display(e)).collect()).collect()
    };
    let (s, t) = (show(&pair.s), show(&pair.t));
    let (w_to_u, u_to_w) = pair.syzygies_swap(&a)?;
    let mut text = format!("component {component}: {}\nS:\n", c.display(&a));
    for row in &s {
        text += &format!("  [{}]\n", row.join(", "));
    }
    text += "T:\n";
    for row in &t {
        text += &format!("  [{}]\n", row.join(", "));
    }
    text += &format!("ST = 0: {}, TS = 0: {}\nOmega(SH) = TH: {w_to_u}, Omega(TH) = SH: {u_to_w}\n", pair.st_zero, pair.ts_zero);
    let mut json = json!({
        "component": c.display(&a),
        "x": fmt_q(&x),
        "s": s,
        "t": t,
        "st_zero": pair.st_zero,
        "ts_zero": pair.ts_zero,
        "omega_sh_is_th": w_to_u,
        "omega_th_is_sh": u_to_w,
    });
    let mut passed = pair.products_vanish() && w_to_u && u_to_w;
    if let Some(spec) = module {
        let m = parse_module_spec(&a, spec)?;
        let r = check_detector_exactness(&a, &pair, &m);
        text += &format!(
            "module {spec}: exact {}, annihilated by socle {}, kernel identities {}\n",
            r.exact(),
            r.annihilated_by_socle,
            r.kernel_identities()
        );
        json["exactness"] = json!({
            "exact": r.exact(),
            "annihilated_by_socle": r.annihilated_by_socle,
            "image_s_is_kernel_t": r.image_s_is_kernel_t,
            "image_t_is_kernel_s": r.image_t_is_kernel_s,
            "kernel_s_is_socle": r.kernel_s_is_socle,
            "kernel_t_is_radical": r.kernel_t_is_radical,
        });
        passed &= r.exact();
    }
    Ok(Output::check(passed, text, json))
}

pub fn middle(data: &BiserialQuiverData, v: &str) -> Result<Output> {
    let a = algebra(data)?;
    let v = vertex(data, v)?;
    let m = middle_module(&a, v)?;
    let dec = decomposition(&a, &m)?;
    let (label, parts) = match &dec {
        Decomposition::Zero => ("zero", None),
        Decomposition::Indecomposable => ("indecomposable", None),
        Decomposition::Decomposable { parts } => ("decomposable", Some(parts.clone())),
        Decomposition::Undetermined => ("undetermined", None),
    };
    let mut text = format!(
        "rad P/soc P at {}: dims {:?}, top {}, socle {}\n{label}\n",
        data.quiver().vertex_name(v),
        dims(&m),
        m.top_dim(&a),
        m.socle_dim(&a)
    );
    if let Some(p) = &parts {
        text += &format!("summands with dimension vectors {:?} and {:?}\n", p[0], p[1]);
    }
    let json = json!({
        "dims": dims(&m),
        "top": m.top_dim(&a),
        "socle": m.socle_dim(&a),
        "decomposition": label,
        "parts": parts,
    });
    Ok(Output::ok(text, json))
}

pub fn stablehom(data: &BiserialQuiverData, from: &str, to: &str) -> Result<Output> {
    let a = algebra(data)?;
    let (w, m) = (parse_module_spec(&a, from)?, parse_module_spec(&a, to)?);
    let d = stable_hom_dim(&a, &w, &m)?;
    Ok(Output::ok(format!("{d}\n"), json!({"stable_hom_dim": d})))
}

pub fn corpus_run(dir: &Path) -> Result<Output> {
    let report = corpus::run(dir)?;
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Output::check(report.passed, corpus::render_text(&report), json))
}
