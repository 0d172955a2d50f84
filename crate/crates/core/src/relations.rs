//! Generators of the relation ideal of a hybrid algebra.

use crate::data::{ArrowClassification, BiserialQuiverData};
use crate::path::{LinComb, Path};
use crate::quiver::ArrowId;
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `a f(a)`, corrected by `c A` on the triangle set.
    FProduct,
    /// `a^2` for an `f`-fixed loop, corrected by `c A` and the border term `b B`.
    BorderSquare,
    /// The zero relation `zeta_a = a f(a) g(f(a))`.
    Zeta,
    /// The zero relation `xi_a = a g(a) f(g(a))`.
    Xi,
    /// `c_a B_a - c_bar(a) B_bar(a)`.
    Socle,
}

impl RelationKind {
    pub fn label(self) -> &'static str {
        match self {
            RelationKind::FProduct => "f-product",
            RelationKind::BorderSquare => "border-square",
            RelationKind::Zeta => "zeta",
            RelationKind::Xi => "xi",
            RelationKind::Socle => "socle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub generator: LinComb,
    pub kind: RelationKind,
    pub anchor: ArrowId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessRole {
    Virtual,
    Critical,
}

/// A zero relation suppressed because a nearby arrow is virtual or critical.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exception {
    pub kind: RelationKind,
    pub anchor: ArrowId,
    pub witness: ArrowId,
    pub role: WitnessRole,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
    pub exceptions: Vec<Exception>,
}

impl RelationSet {
    pub fn generators(&self) -> Vec<LinComb> {
        self.relations.iter().map(|r| r.generator.clone()).collect()
    }

    pub fn of_kind(&self, kind: RelationKind) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.kind == kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPaths {
    pub zeta: Path,
    pub xi: Path,
    pub zeta_exception: Option<(ArrowId, WitnessRole)>,
    pub xi_exception: Option<(ArrowId, WitnessRole)>,
}

fn role(cls: &ArrowClassification, a: ArrowId) -> Option<WitnessRole> {
    if cls.is_virtual(a) {
        Some(WitnessRole::Virtual)
    } else if cls.is_critical(a) {
        Some(WitnessRole::Critical)
    } else {
        None
    }
}

pub fn special_paths(data: &BiserialQuiverData, cls: &ArrowClassification, a: ArrowId) -> SpecialPaths {
    let (f, g) = (data.f(), data.g());
    let q = data.quiver();
    let fa = f.apply(a);
    let ga = g.apply(a);
    let zeta = Path { source: q.source(a), arrows: vec![a, fa, g.apply(fa)] };
    let xi = Path { source: q.source(a), arrows: vec![a, ga, f.apply(ga)] };
    let bar = data.bar(a);
    let zeta_exception = if data.in_t(a) && data.in_t(bar) {
        role(cls, bar).map(|r| (bar, r))
    } else {
        None
    };
    let xi_exception = if data.in_t(a) && data.in_t(ga) {
        role(cls, fa).map(|r| (fa, r))
    } else {
        None
    };
    SpecialPaths { zeta, xi, zeta_exception, xi_exception }
}

pub fn generate_relations(data: &BiserialQuiverData, cls: &ArrowClassification) -> RelationSet {
    let q = data.quiver();
    let f = data.f();
    let mut out = RelationSet::default();
    let mono = |p: Path| LinComb::monomial(p);
    for a in 0..q.num_arrows() {
        let bar = data.bar(a);
        let fa = f.apply(a);
        let mut gen = mono(Path { source: q.source(a), arrows: vec![a, fa] });
        if data.in_t(a) {
            gen.add_term(data.a_path(bar), -data.c(bar).clone());
        }
        let kind = if fa == a {
            if !data.b(a).is_zero() {
                gen.add_term(data.b_path(bar), -data.b(a).clone());
            }
            RelationKind::BorderSquare
        } else {
            RelationKind::FProduct
        };
        out.relations.push(Relation { generator: gen, kind, anchor: a });
    }
    for a in 0..q.num_arrows() {
        let sp = special_paths(data, cls, a);
        match sp.zeta_exception {
            Some((witness, role)) => out.exceptions.push(Exception { kind: RelationKind::Zeta, anchor: a, witness, role }),
            None => out.relations.push(Relation { generator: mono(sp.zeta), kind: RelationKind::Zeta, anchor: a }),
        }
        match sp.xi_exception {
            Some((witness, role)) => out.exceptions.push(Exception { kind: RelationKind::Xi, anchor: a, witness, role }),
            None => out.relations.push(Relation { generator: mono(sp.xi), kind: RelationKind::Xi, anchor: a }),
        }
    }
    for a in 0..q.num_arrows() {
        let bar = data.bar(a);
        if a > bar {
            continue;
        }
        let mut gen = LinComb::term(data.b_path(a), data.c(a).clone());
        gen.add_term(data.b_path(bar), -data.c(bar).clone());
        out.relations.push(Relation { generator: gen, kind: RelationKind::Socle, anchor: a });
    }
    out
}
