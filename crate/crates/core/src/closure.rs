//! Two-sided ideal closure of a set of relations in a path algebra.
//!
//! The ideal generated by a finite set of relations is spanned by products
//! `u r v`. We only ever form such products exactly: a product with a
//! surviving term longer than `L` is deferred, never truncated, so every row
//! is a genuine element of the ideal. Rows are kept in echelon form keyed by
//! their largest monomial. Whenever the ideal is found to contain a single
//! monomial, that monomial is recorded as dead: every path containing it is
//! zero, and such paths are dropped from all later vectors. This keeps the
//! working space close to the size of the quotient.
//!
//! The result is certified when every surviving path of length `L` reduces to
//! zero. Since the span lies in the ideal, all paths of length at least `L`
//! are then zero in the quotient, so the non-pivot paths span it. They are
//! shown to be independent by checking that the induced right action on their
//! span satisfies every relation and sends each idempotent along each basis
//! path to that path, which makes the span a copy of the regular module.

use crate::error::{Error, Result};
use crate::path::{LinComb, Path};
use crate::quiver::{ArrowId, Quiver};
use crate::scalar::Q;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

/// Monomial key: preferred monomials (class 0) sort below all others, so they
/// are never chosen as pivots ahead of a non-preferred monomial.
type Key = (u8, Path);
type Vector = BTreeMap<Key, Q>;

#[derive(Clone, Debug)]
pub struct ClosureConfig {
    pub initial_len: usize,
    pub cap: usize,
    /// Upper bound on the number of surviving paths enumerated per attempt.
    pub live_limit: usize,
}

#[derive(Clone, Debug)]
pub struct IdealClosure {
    quiver: Quiver,
    max_len: usize,
    preferred: HashSet<Path>,
    dead: HashSet<Vec<ArrowId>>,
    rows: HashMap<Key, Vector>,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// `right[a][j]`: coordinates of `basis[j] * a`, sparse.
    right: Vec<Vec<Vec<(usize, Q)>>>,
}

struct State<'a> {
    quiver: &'a Quiver,
    max_len: usize,
    preferred: &'a HashSet<Path>,
    dead: HashSet<Vec<ArrowId>>,
    rows: HashMap<Key, Vector>,
    queue: VecDeque<Vector>,
    /// Ideal elements with a live term longer than `max_len`, waiting for
    /// that term to become dead.
    deferred: Vec<Vector>,
    dirty: bool,
}

impl<'a> State<'a> {
    fn key(&self, p: Path) -> Key {
        let class = if self.preferred.contains(&p) { 0 } else { 1 };
        (class, p)
    }

    fn has_dead_factor(&self, arrows: &[ArrowId]) -> bool {
        has_dead_factor(&self.dead, arrows)
    }

    fn vector_of(&self, l: &LinComb) -> Vector {
        let mut v = Vector::new();
        for (p, c) in l.terms() {
            if !self.has_dead_factor(&p.arrows) {
                add_into(&mut v, self.key(p.clone()), c.clone());
            }
        }
        v
    }

    fn admit(&mut self, v: Vector) {
        if v.is_empty() {
            return;
        }
        if v.keys().any(|(_, p)| p.len() > self.max_len) {
            self.deferred.push(v);
        } else {
            self.queue.push_back(v);
        }
    }

    /// `a * v`, dropping terms whose new prefixes are dead.
    fn left_mul(&self, a: ArrowId, v: &Vector) -> Vector {
        let q = self.quiver;
        let mut out = Vector::new();
        for ((_, p), c) in v {
            if q.target(a) != p.source {
                continue;
            }
            let mut arrows = Vec::with_capacity(p.len() + 1);
            arrows.push(a);
            arrows.extend_from_slice(&p.arrows);
            if (1..=arrows.len()).any(|j| self.dead.contains(&arrows[..j])) {
                continue;
            }
            let np = Path { source: q.source(a), arrows };
            add_into(&mut out, self.key(np), c.clone());
        }
        out
    }

    /// `v * a`, dropping terms whose new suffixes are dead.
    fn right_mul(&self, v: &Vector, a: ArrowId) -> Vector {
        let q = self.quiver;
        let mut out = Vector::new();
        for ((_, p), c) in v {
            if p.target(q) != q.source(a) {
                continue;
            }
            let mut arrows = p.arrows.clone();
            arrows.push(a);
            if (0..arrows.len()).any(|i| self.dead.contains(&arrows[i..])) {
                continue;
            }
            let np = Path { source: p.source, arrows };
            add_into(&mut out, self.key(np), c.clone());
        }
        out
    }

    fn strip(&self, v: Vector) -> Vector {
        v.into_iter().filter(|((_, p), _)| !self.has_dead_factor(&p.arrows)).collect()
    }

    fn run(&mut self) -> Result<()> {
        loop {
            while let Some(v) = self.queue.pop_front() {
                let v = self.reduce(v);
                let Some((lead, lc)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
                    continue;
                };
                let inv = lc.recip();
                let row: Vector = v.into_iter().map(|(k, c)| (k, c * &inv)).collect();
                if row.len() == 1 {
                    if lead.1.is_stationary() {
                        return Err(Error::Construction(format!(
                            "the relations kill the idempotent of vertex {}",
                            self.quiver.vertex_name(lead.1.source)
                        )));
                    }
                    self.dead.insert(lead.1.arrows.clone());
                    self.dirty = true;
                }
                for a in 0..self.quiver.num_arrows() {
                    let l = self.left_mul(a, &row);
                    self.admit(l);
                    let r = self.right_mul(&row, a);
                    self.admit(r);
                }
                self.rows.insert(lead, row);
            }
            self.interreduce();
            if !self.dirty {
                return Ok(());
            }
            self.dirty = false;
            let stale: Vec<Key> = self
                .rows
                .iter()
                .filter(|(_, r)| r.len() > 1 && r.keys().any(|(_, p)| self.has_dead_factor(&p.arrows)))
                .map(|(k, _)| k.clone())
                .collect();
            for k in stale {
                let r = self.rows.remove(&k).expect("stale row present");
                let s = self.strip(r);
                self.admit(s);
            }
            for v in std::mem::take(&mut self.deferred) {
                let s = self.strip(v);
                self.admit(s);
            }
        }
    }

    fn reduce(&self, mut v: Vector) -> Vector {
        reduce_with(&self.rows, &mut v);
        v
    }

    /// Reduces row tails against the other rows; rows whose tail vanishes
    /// become monomials and are recorded as dead.
    fn interreduce(&mut self) {
        let keys: Vec<Key> = self.rows.keys().cloned().collect();
        for k in keys {
            let Some(row) = self.rows.get(&k) else { continue };
            if row.len() == 1 {
                continue;
            }
            let tail: Vector = row.iter().filter(|(rk, _)| **rk != k).map(|(a, b)| (a.clone(), b.clone())).collect();
            let mut reduced = tail.clone();
            reduce_with(&self.rows, &mut reduced);
            if reduced == tail {
                continue;
            }
            reduced.insert(k.clone(), Q::one());
            if reduced.len() == 1 {
                self.dead.insert(k.1.arrows.clone());
                self.dirty = true;
            }
            self.rows.insert(k, reduced);
        }
    }
}

fn sparse(v: &[Q]) -> Vec<(usize, Q)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn has_dead_factor(dead: &HashSet<Vec<ArrowId>>, arrows: &[ArrowId]) -> bool {
    (0..arrows.len()).any(|i| (i + 1..=arrows.len()).any(|j| dead.contains(&arrows[i..j])))
}

fn add_into(v: &mut Vector, k: Key, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match v.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Eliminates every pivot occurring in `v`, largest first.
fn reduce_with(rows: &HashMap<Key, Vector>, v: &mut Vector) {
    let mut cursor: Option<Key> = None;
    loop {
        let next = match &cursor {
            None => v.keys().next_back().cloned(),
            Some(c) => v.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
        };
        let Some(k) = next else { break };
        if let Some(row) = rows.get(&k) {
            let coef = v[&k].clone();
            for (rk, rc) in row {
                add_into(v, rk.clone(), -(rc * &coef));
            }
        }
        cursor = Some(k);
    }
}

impl IdealClosure {
    /// Computes the closure, growing the truncation length until certified.
    pub fn compute(
        quiver: &Quiver,
        generators: &[LinComb],
        preferred: HashSet<Path>,
        config: &ClosureConfig,
    ) -> Result<IdealClosure> {
        let mut len = config.initial_len.max(1);
        loop {
            if let Some(c) = Self::attempt(quiver, generators, &preferred, len, config.live_limit)? {
                return Ok(c);
            }
            if len >= config.cap {
                return Err(Error::TruncationCap { cap: config.cap });
            }
            len = (len + len / 2 + 1).min(config.cap);
        }
    }

    /// One closure at a fixed truncation length; `None` when not certified.
    pub fn attempt(
        quiver: &Quiver,
        generators: &[LinComb],
        preferred: &HashSet<Path>,
        max_len: usize,
        live_limit: usize,
    ) -> Result<Option<IdealClosure>> {
        let mut st = State {
            quiver,
            max_len,
            preferred,
            dead: HashSet::new(),
            rows: HashMap::new(),
            queue: VecDeque::new(),
            deferred: Vec::new(),
            dirty: false,
        };
        for g in generators {
            let v = st.vector_of(g);
            st.admit(v);
        }
        st.run()?;
        let mut closure = IdealClosure {
            quiver: quiver.clone(),
            max_len,
            preferred: preferred.clone(),
            dead: st.dead,
            rows: st.rows,
            basis: Vec::new(),
            basis_index: HashMap::new(),
            right: Vec::new(),
        };
        let live = closure.live_paths(live_limit)?;
        let mut basis = Vec::new();
        for p in live {
            if p.len() == max_len {
                let mut v = Vector::new();
                v.insert(closure.key(p), Q::one());
                reduce_with(&closure.rows, &mut v);
                if !v.is_empty() {
                    return Ok(None);
                }
                continue;
            }
            if !closure.rows.contains_key(&closure.key(p.clone())) {
                basis.push(p);
            }
        }
        basis.sort();
        closure.basis_index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        closure.basis = basis;
        closure.right = (0..quiver.num_arrows())
            .map(|a| {
                closure
                    .basis
                    .iter()
                    .map(|p| match p.concat(&Path::arrow(quiver, a), quiver) {
                        Some(pa) => sparse(&closure.normal_form_path(&pa)),
                        None => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        if !closure.is_regular_module(generators) {
            return Ok(None);
        }
        Ok(Some(closure))
    }

    /// The right action on the basis span satisfies the relations and maps
    /// each idempotent along each basis path to that path.
    fn is_regular_module(&self, generators: &[LinComb]) -> bool {
        let n = self.basis.len();
        let unit = |j: usize| {
            let mut v = vec![Q::zero(); n];
            v[j] = Q::one();
            v
        };
        for (j, p) in self.basis.iter().enumerate() {
            let start = self.basis_index[&Path::stationary(p.source)];
            if self.act_path(&unit(start), &p.arrows) != unit(j) {
                return false;
            }
        }
        for g in generators {
            for (j, p) in self.basis.iter().enumerate() {
                let t = p.target(&self.quiver);
                let mut acc = vec![Q::zero(); n];
                for (r, c) in g.terms() {
                    if r.source != t {
                        continue;
                    }
                    for (i, x) in self.act_path(&unit(j), &r.arrows).into_iter().enumerate() {
                        acc[i] += x * c;
                    }
                }
                if acc.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// `x * a` for a coordinate vector `x`.
    pub fn act_arrow(&self, x: &[Q], a: ArrowId) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.basis.len()];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, c) in &self.right[a][j] {
                out[*i] += c * xj;
            }
        }
        out
    }

    /// `x * p` for the path with the given arrows.
    pub fn act_path(&self, x: &[Q], arrows: &[ArrowId]) -> Vec<Q> {
        let mut v = x.to_vec();
        for &a in arrows {
            v = self.act_arrow(&v, a);
        }
        v
    }

    /// Sparse images of the basis under right multiplication by `a`.
    pub fn right_table(&self, a: ArrowId) -> &[Vec<(usize, Q)>] {
        &self.right[a]
    }

    fn key(&self, p: Path) -> Key {
        let class = if self.preferred.contains(&p) { 0 } else { 1 };
        (class, p)
    }

    fn has_dead_factor(&self, arrows: &[ArrowId]) -> bool {
        has_dead_factor(&self.dead, arrows)
    }

    /// All paths of length at most `max_len` without a dead factor.
    fn live_paths(&self, limit: usize) -> Result<Vec<Path>> {
        let q = &self.quiver;
        let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::stationary).collect();
        let mut frontier = out.clone();
        for _ in 0..self.max_len {
            let mut next = Vec::new();
            for p in &frontier {
                let t = p.target(q);
                for a in q.out_arrows(t) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    if (0..arrows.len()).any(|i| self.dead.contains(&arrows[i..])) {
                        continue;
                    }
                    next.push(Path { source: p.source, arrows });
                }
            }
            out.extend(next.iter().cloned());
            if out.len() > limit {
                return Err(Error::SearchCap(format!("more than {limit} surviving paths")));
            }
            frontier = next;
        }
        Ok(out)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Dead monomials found during the closure (minimal or not).
    pub fn dead_monomials(&self) -> usize {
        self.dead.len()
    }

    /// Coordinates of `x` over the quotient basis.
    pub fn normal_form(&self, x: &LinComb) -> Vec<Q> {
        let mut v = Vector::new();
        for (p, c) in x.terms() {
            // Paths of length at least max_len are certified to lie in the ideal.
            if p.len() > self.max_len || self.has_dead_factor(&p.arrows) {
                continue;
            }
            add_into(&mut v, self.key(p.clone()), c.clone());
        }
        reduce_with(&self.rows, &mut v);
        let mut out = vec![Q::zero(); self.basis.len()];
        for ((_, p), c) in v {
            match self.basis_index.get(&p) {
                Some(&i) => out[i] = c,
                // Non-basis paths of length max_len are certified to reduce to zero.
                None => unreachable!("unreduced path {} in a certified closure", p.display(&self.quiver)),
            }
        }
        out
    }

    pub fn normal_form_path(&self, p: &Path) -> Vec<Q> {
        self.normal_form(&LinComb::monomial(p.clone()))
    }
}
