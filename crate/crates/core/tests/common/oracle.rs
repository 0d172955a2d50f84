//! Brute-force quotient of a path algebra, written independently of the
//! engine's closure: ideals are spanned block by block by explicit products
//! `u r v`, with its own elimination over maps keyed by arrow sequences.

use hybrid_core::path::LinComb;
use hybrid_core::quiver::{ArrowId, Quiver, VertexId};
use hybrid_core::scalar::Q;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Key(pub Vec<ArrowId>);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Vector = BTreeMap<Key, Q>;
type Block = (VertexId, VertexId);

/// Span of vectors in one block, pivots at the largest path.
#[derive(Default, Clone)]
struct Span {
    rows: BTreeMap<Key, Vector>,
}

impl Span {
    fn reduce(&self, mut v: Vector) -> Vector {
        loop {
            let Some(p) = v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned() else {
                return v;
            };
            let c = v[&p].clone();
            for (k, x) in &self.rows[&p] {
                let e = v.entry(k.clone()).or_insert_with(Q::zero);
                *e -= x * &c;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    fn insert(&mut self, v: Vector) -> Option<Vector> {
        let r = self.reduce(v);
        let (p, c) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))?;
        let r: Vector = r.into_iter().map(|(k, x)| (k, x / &c)).collect();
        self.rows.insert(p, r.clone());
        Some(r)
    }
}

pub fn target(q: &Quiver, s: VertexId, p: &[ArrowId]) -> VertexId {
    p.last().map_or(s, |&a| q.target(a))
}

pub fn paths_from(q: &Quiver, s: VertexId, max_len: usize) -> Vec<Vec<ArrowId>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for a in q.out_arrows(target(q, s, p)) {
                let mut x: Vec<ArrowId> = p.clone();
                x.push(a);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Ideal generated by `gens` inside the span of paths of length `<= limit`.
/// With `truncate`, longer terms of products are dropped (the ideal of
/// `KQ / J^(limit+1)`); without, products with a longer term are discarded,
/// so every vector found is a genuine element of the ideal.
fn ideal(q: &Quiver, gens: &[(Block, Vector)], limit: usize, truncate: bool) -> HashMap<Block, Span> {
    let mut spans: HashMap<Block, Span> = HashMap::new();
    let mut queue: Vec<(Block, Vector)> = Vec::new();
    let fits = |v: &Vector| v.keys().all(|k| k.0.len() <= limit);
    let cut = |v: Vector| -> Vector { v.into_iter().filter(|(k, _)| k.0.len() <= limit).collect() };
    for (b, v) in gens {
        if truncate {
            queue.push((*b, cut(v.clone())));
        } else if fits(v) {
            queue.push((*b, v.clone()));
        }
    }
    while let Some(((s, t), v)) = queue.pop() {
        if v.is_empty() {
            continue;
        }
        let Some(r) = spans.entry((s, t)).or_default().insert(v) else { continue };
        for a in q.out_arrows(t) {
            let w: Vector = r.iter().map(|(k, c)| (Key([k.0.clone(), vec![a]].concat()), c.clone())).collect();
            if truncate {
                queue.push(((s, q.target(a)), cut(w)));
            } else if fits(&w) {
                queue.push(((s, q.target(a)), w));
            }
        }
        for a in q.in_arrows(s) {
            let w: Vector = r.iter().map(|(k, c)| (Key([vec![a], k.0.clone()].concat()), c.clone())).collect();
            if truncate {
                queue.push(((q.source(a), t), cut(w)));
            } else if fits(&w) {
                queue.push(((q.source(a), t), w));
            }
        }
    }
    spans
}

fn to_vector(q: &Quiver, x: &LinComb) -> Option<(Block, Vector)> {
    let (s, t) = x.endpoints(q)?;
    let v = x.terms().map(|(p, c)| (Key(p.arrows.clone()), c.clone())).collect();
    Some(((s, t), v))
}

pub struct NaiveAlgebra {
    quiver: Quiver,
    /// Paths of length `>= nilpotency` lie in the ideal.
    pub nilpotency: usize,
    spans: HashMap<Block, Span>,
    /// Non-pivot paths of each block.
    pub basis: BTreeMap<Block, Vec<Vec<ArrowId>>>,
}

#[derive(Debug)]
pub enum NaiveOutcome {
    /// No `N <= max_n` with `J^N` provably inside the ideal.
    NotCertified { max_n: usize },
}

impl NaiveAlgebra {
    /// Searches `N` from `start` to `max_n`, trying spans of length `N + k`
    /// for `k <= extra`.
    pub fn compute(q: &Quiver, gens: &[LinComb], start: usize, max_n: usize, extra: usize) -> Result<Self, NaiveOutcome> {
        let gens: Vec<(Block, Vector)> =
            gens.iter().filter(|g| !g.is_zero()).map(|g| to_vector(q, g).expect("relations have fixed endpoints")).collect();
        for n in start..=max_n {
            for m in n..=n + extra {
                let exact = ideal(q, &gens, m, false);
                let all_in = (0..q.num_vertices()).all(|s| {
                    paths_from(q, s, n).into_iter().filter(|p| p.len() == n).all(|p| {
                        let t = target(q, s, &p);
                        let v: Vector = [(Key(p), Q::from_integer(1.into()))].into();
                        exact.get(&(s, t)).is_some_and(|sp| sp.reduce(v).is_empty())
                    })
                });
                if all_in {
                    return Ok(Self::truncated(q, &gens, n));
                }
            }
        }
        Err(NaiveOutcome::NotCertified { max_n })
    }

    fn truncated(q: &Quiver, gens: &[(Block, Vector)], n: usize) -> Self {
        let spans = ideal(q, gens, n - 1, true);
        let mut basis: BTreeMap<Block, Vec<Vec<ArrowId>>> = BTreeMap::new();
        for s in 0..q.num_vertices() {
            for p in paths_from(q, s, n - 1) {
                let t = target(q, s, &p);
                let pivot = spans.get(&(s, t)).is_some_and(|sp| sp.rows.contains_key(&Key(p.clone())));
                if !pivot {
                    basis.entry((s, t)).or_default().push(p);
                }
            }
        }
        NaiveAlgebra { quiver: q.clone(), nilpotency: n, spans, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn block_dim(&self, s: VertexId, t: VertexId) -> usize {
        self.basis.get(&(s, t)).map_or(0, Vec::len)
    }

    /// `dim e_s H` for each vertex.
    pub fn vertex_dims(&self) -> Vec<usize> {
        let n = self.quiver.num_vertices();
        (0..n).map(|s| (0..n).map(|t| self.block_dim(s, t)).sum()).collect()
    }

    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.quiver.num_vertices();
        (0..n).map(|s| (0..n).map(|t| self.block_dim(s, t)).collect()).collect()
    }

    /// Whether `x` (with fixed endpoints) lies in the ideal.
    pub fn in_ideal(&self, x: &LinComb) -> bool {
        if x.is_zero() {
            return true;
        }
        let Some((b, v)) = to_vector(&self.quiver, x) else { return false };
        let v: Vector = v.into_iter().filter(|(k, _)| k.0.len() < self.nilpotency).collect();
        v.is_empty() || self.spans.get(&b).is_some_and(|sp| sp.reduce(v).is_empty())
    }

    /// Whether the given paths are linearly independent modulo the ideal.
    pub fn independent(&self, s: VertexId, t: VertexId, paths: &[Vec<ArrowId>]) -> bool {
        let mut sp = self.spans.get(&(s, t)).cloned().unwrap_or_default();
        paths.iter().all(|p| sp.insert([(Key(p.clone()), Q::from_integer(1.into()))].into()).is_some())
    }
}
