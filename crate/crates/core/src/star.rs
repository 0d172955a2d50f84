//! The star construction: every arrow `a` outside the triangle set is split
//! as `a' a''` through a new vertex `x_a`, and an arrow `eps_a` from
//! `x_{f(a)}` to `x_a` closes the triangle `(a'' f(a)' eps_a)`. The result is
//! a triangulation quiver with every arrow in the triangle set.

use crate::data::{BiserialQuiverData, Weights};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quiver::{ArrowId, Quiver};
use crate::scalar::Q;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// The arrows replacing one arrow `a` outside the triangle set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitArrow {
    pub original: String,
    pub vertex: String,
    pub first: String,
    pub second: String,
    pub epsilon: String,
}

/// Weight and parameter chosen on one cycle of `eps` arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonChoice {
    pub cycle: Vec<String>,
    pub m: u32,
    #[serde(serialize_with = "crate::scalar::serialize_q")]
    pub c: Q,
}

#[derive(Clone, Debug)]
pub struct StarResult {
    pub data: BiserialQuiverData,
    pub splits: Vec<SplitArrow>,
    pub epsilon_cycles: Vec<EpsilonChoice>,
}

impl StarResult {
    /// Arrow of the original quiver that a star arrow comes from; `eps`
    /// arrows have none.
    pub fn origin<'a>(&'a self, name: &'a str) -> Option<&'a str> {
        self.splits
            .iter()
            .find(|s| s.first == name || s.second == name)
            .map(|s| s.original.as_str())
            .or_else(|| (!self.splits.iter().any(|s| s.epsilon == name)).then_some(name))
    }
}

fn fresh(taken: &HashMap<String, ()>, name: String) -> Result<String> {
    if taken.contains_key(&name) {
        return Err(Error::Construction(format!("the name {name:?} is already used")));
    }
    Ok(name)
}

pub fn star(data: &BiserialQuiverData) -> Result<StarResult> {
    let q = data.quiver();
    let f = data.f();
    let name = |a: ArrowId| q.arrow_name(a).to_string();
    let mut taken: HashMap<String, ()> = HashMap::new();
    for v in q.vertex_names() {
        taken.insert(v.clone(), ());
    }
    for a in 0..q.num_arrows() {
        taken.insert(name(a), ());
    }

    let outside: Vec<ArrowId> = (0..q.num_arrows()).filter(|&a| !data.in_t(a)).collect();
    let mut splits: BTreeMap<ArrowId, SplitArrow> = BTreeMap::new();
    for &a in &outside {
        let n = name(a);
        splits.insert(
            a,
            SplitArrow {
                original: n.clone(),
                vertex: fresh(&taken, format!("x_{n}"))?,
                first: fresh(&taken, format!("{n}'"))?,
                second: fresh(&taken, format!("{n}''"))?,
                epsilon: fresh(&taken, format!("eps_{n}"))?,
            },
        );
    }

    let mut vertices: Vec<String> = q.vertex_names().to_vec();
    vertices.extend(splits.values().map(|s| s.vertex.clone()));
    let vname = |v| q.vertex_name(v).to_string();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for a in 0..q.num_arrows() {
        match splits.get(&a) {
            None => arrows.push((name(a), vname(q.source(a)), vname(q.target(a)))),
            Some(s) => {
                arrows.push((s.first.clone(), vname(q.source(a)), s.vertex.clone()));
                arrows.push((s.second.clone(), s.vertex.clone(), vname(q.target(a))));
                arrows.push((s.epsilon.clone(), splits[&f.apply(a)].vertex.clone(), s.vertex.clone()));
            }
        }
    }
    let star_q = Quiver::new(vertices, arrows)?;
    let id = |n: &str| star_q.arrow_id(n).expect("star arrow exists");

    let mut images = vec![usize::MAX; star_q.num_arrows()];
    for a in 0..q.num_arrows() {
        match splits.get(&a) {
            None => images[id(&name(a))] = id(&name(f.apply(a))),
            Some(s) => {
                let fa = &splits[&f.apply(a)];
                images[id(&s.second)] = id(&fa.first);
                images[id(&fa.first)] = id(&s.epsilon);
                images[id(&s.epsilon)] = id(&s.second);
            }
        }
    }
    let star_f = Permutation::from_images(images)?;

    // Weights on cycles through original arrows are inherited; a split arrow
    // carries the weights of its g-orbit through its first half.
    let mut weights = Weights::default();
    for a in 0..q.num_arrows() {
        let carrier = splits.get(&a).map_or_else(|| name(a), |s| s.first.clone());
        weights.m.insert(id(&carrier), data.m(a));
        weights.c.insert(id(&carrier), data.c(a).clone());
        if data.in_t(a) && !data.b(a).is_zero() {
            weights.b.insert(id(&carrier), data.b(a).clone());
        }
    }

    let all: Vec<ArrowId> = (0..star_q.num_arrows()).collect();
    let provisional = BiserialQuiverData::new(star_q.clone(), star_f.clone(), weights.clone(), &all)?;
    let eps_ids: Vec<ArrowId> = splits.values().map(|s| id(&s.epsilon)).collect();
    let mut epsilon_cycles = Vec::new();
    let mut forced = Vec::new();
    let mut done = vec![false; star_q.num_arrows()];
    for &e in &eps_ids {
        if done[e] {
            continue;
        }
        let cycle = provisional.g().orbit(e);
        for &x in &cycle {
            done[x] = true;
        }
        let n = cycle.len();
        // A border loop a outside the triangle set with b_a != 0 is recovered
        // from a virtual eps loop: (a' a'')^2 = c_eps c_bar(a) B_bar(a).
        let border = splits.iter().find(|(&a, s)| id(&s.epsilon) == e && f.apply(a) == a && !data.b(a).is_zero());
        forced.push(border.is_some());
        let (m, c) = match border {
            Some((&a, _)) => (2, data.b(a).clone() / data.c(data.bar(a)).clone()),
            None => {
                let m = if n == 1 { 4 } else { 3usize.div_ceil(n) as u32 };
                (m, crate::scalar::one())
            }
        };
        epsilon_cycles.push(EpsilonChoice {
            cycle: cycle.iter().map(|&x| star_q.arrow_name(x).to_string()).collect(),
            m,
            c,
        });
        weights.m.insert(e, m);
        weights.c.insert(e, epsilon_cycles.last().expect("just pushed").c.clone());
    }

    let mut result = BiserialQuiverData::new(star_q.clone(), star_f.clone(), weights.clone(), &all)?;
    // A free cycle that still carries a virtual or critical arrow is raised once more.
    let cls = result.classify_arrows();
    let mut raised = false;
    for (choice, &forced) in epsilon_cycles.iter_mut().zip(&forced) {
        let e = id(&choice.cycle[0]);
        if !forced && choice.cycle.iter().any(|x| cls.is_critical(id(x)) || cls.is_virtual(id(x))) {
            choice.m += 1;
            weights.m.insert(e, choice.m);
            raised = true;
        }
    }
    if raised {
        result = BiserialQuiverData::new(star_q, star_f, weights, &all)?;
    }
    Ok(StarResult { data: result, splits: splits.into_values().collect(), epsilon_cycles })
}
