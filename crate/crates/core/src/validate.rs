//! Structural validation of biserial quiver data and the exclusion rules for
//! hybrid algebras.
//!
//! The structural level checks the combinatorial invariants together with
//! the quiver-shape exclusions. The full level also builds the algebra and
//! runs the symmetric-form test, which catches the parameter-dependent
//! exclusions.

use crate::algebra::{build_algebra, FiniteDimAlgebra};
use crate::data::BiserialQuiverData;
use crate::error::Result;
use crate::relations::generate_relations;
use crate::symmetric::{symmetric_form_exists, Certificate, SymmetricVerdict};
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Structural,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    TwoRegular,
    Connected,
    Permutations,
    TriangleWeight,
    /// One vertex with every arrow in the triangle set and `m = 1`, or with
    /// one loop in the triangle set, `m = 1` and a nonzero border on the other.
    ExcludedLocal,
    /// Disc quiver, all arrows in the triangle set, a virtual loop and a
    /// `g`-cycle of length 3 with multiplicity 1.
    ExcludedDisc,
    /// Triangular quiver, all arrows in the triangle set and all virtual.
    ExcludedTriangle,
    NotSymmetric,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::TwoRegular => "two-regular",
            Rule::Connected => "connected",
            Rule::Permutations => "permutations",
            Rule::TriangleWeight => "triangle-weight",
            Rule::ExcludedLocal => "excluded-local",
            Rule::ExcludedDisc => "excluded-disc",
            Rule::ExcludedTriangle => "excluded-triangle",
            Rule::NotSymmetric => "not-symmetric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub level: Level,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

fn structural(data: &BiserialQuiverData) -> Vec<Violation> {
    let q = data.quiver();
    let (f, g) = (data.f(), data.g());
    let name = |a| q.arrow_name(a).to_string();
    let mut out = Vec::new();
    let mut push = |rule, message: String| out.push(Violation { rule, message });

    if !q.is_two_regular() {
        for v in 0..q.num_vertices() {
            let (o, i) = (q.out_arrows(v).len(), q.in_arrows(v).len());
            if o != 2 || i != 2 {
                push(Rule::TwoRegular, format!("vertex {} has {o} outgoing and {i} incoming arrows", q.vertex_name(v)));
            }
        }
    }
    if !q.is_connected() {
        push(Rule::Connected, "the quiver is not connected".into());
    }
    let f_inv = f.inverse();
    let g_inv = g.inverse();
    for a in 0..q.num_arrows() {
        if q.source(f.apply(a)) != q.target(a) || g.apply(a) != data.bar(f.apply(a)) {
            push(Rule::Permutations, format!("f or g is inconsistent at {}", name(a)));
        }
        if f_inv.apply(a) != g_inv.apply(data.bar(a)) {
            push(Rule::Permutations, format!("f^-1({0}) differs from g^-1(bar {0})", name(a)));
        }
        if data.in_t(a) && g.orbit_rep(a) == a && data.mn(a) < 2 {
            push(Rule::TriangleWeight, format!("m n = {} on the triangle arrow {}", data.mn(a), name(a)));
        }
    }

    let all_t = (0..q.num_arrows()).all(|a| data.in_t(a));
    let cls = data.classify_arrows();
    match q.num_vertices() {
        1 => {
            let m_one = data.m(0) == 1;
            if all_t && m_one {
                push(Rule::ExcludedLocal, "local algebra with every arrow in the triangle set and m = 1".into());
            }
            let in_t: Vec<_> = (0..q.num_arrows()).filter(|&a| data.in_t(a)).collect();
            if let [t] = in_t[..] {
                let other = data.bar(t);
                if m_one && !data.b(other).is_zero() {
                    push(
                        Rule::ExcludedLocal,
                        format!("local algebra with triangle set {{{}}}, m = 1 and b_{} nonzero", name(t), name(other)),
                    );
                }
            }
        }
        2 => {
            let virtual_loop = (0..q.num_arrows()).any(|a| q.source(a) == q.target(a) && cls.is_virtual(a));
            let simple_three_cycle = g.cycles().iter().any(|c| c.len() == 3 && data.m(c[0]) == 1);
            if all_t && virtual_loop && simple_three_cycle {
                push(
                    Rule::ExcludedDisc,
                    "two vertices, every arrow in the triangle set, a virtual loop and a g-cycle of length 3 with m = 1"
                        .into(),
                );
            }
        }
        3
            if all_t && (0..q.num_arrows()).all(|a| cls.is_virtual(a)) => {
                push(Rule::ExcludedTriangle, "three vertices, every arrow in the triangle set and virtual".into());
            }
        _ => {}
    }
    out
}

fn certificate_message(a: &FiniteDimAlgebra, cert: &Certificate) -> String {
    match cert {
        Certificate::CommutatorInSocle { element, .. } => {
            format!("the socle element {} is a sum of commutators", a.display(element))
        }
        Certificate::SocleNotSimple { vertex, basis } => format!(
            "soc(H) e_{} has dimension {}",
            a.quiver().vertex_name(*vertex),
            basis.len()
        ),
    }
}

/// Runs the checks of `level`. Structural violations stop the full level
/// before the algebra is built; build failures (caps) are returned as errors.
pub fn validate(data: &BiserialQuiverData, level: Level) -> Result<ValidationReport> {
    let mut violations = structural(data);
    if level == Level::Full && violations.is_empty() {
        let rels = generate_relations(data, &data.classify_arrows());
        let a = build_algebra(data, &rels)?;
        if let SymmetricVerdict::NotSymmetric(cert) = symmetric_form_exists(&a) {
            violations.push(Violation { rule: Rule::NotSymmetric, message: certificate_message(&a, &cert) });
        }
    }
    Ok(ValidationReport { level, violations })
}
