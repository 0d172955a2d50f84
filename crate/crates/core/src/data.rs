//! Biserial quiver data `(Q, f, m, c, b, T)` and the derived combinatorics:
//! the permutation `g`, the involution `bar`, orbit lengths, the monomials
//! `A` and `B`, and the arrow and vertex classifications.

use crate::error::{Error, Result};
use crate::path::Path;
use crate::perm::Permutation;
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::scalar::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiserialQuiverData {
    quiver: Quiver,
    f: Permutation,
    g: Permutation,
    bar: Vec<ArrowId>,
    m: Vec<u32>,
    c: Vec<Q>,
    b: Vec<Q>,
    triangles: Vec<bool>,
}

/// Raw per-arrow parameters, keyed by any member of the relevant orbit.
#[derive(Clone, Debug, Default)]
pub struct Weights {
    pub m: BTreeMap<ArrowId, u32>,
    pub c: BTreeMap<ArrowId, Q>,
    pub b: BTreeMap<ArrowId, Q>,
}

/// The other arrow starting at the source of each arrow.
pub fn bar_involution(q: &Quiver) -> Result<Vec<ArrowId>> {
    let mut bar = vec![0; q.num_arrows()];
    for v in 0..q.num_vertices() {
        let out = q.out_arrows(v);
        if out.len() != 2 {
            return Err(Error::Input(format!(
                "vertex {} has {} outgoing arrows, expected 2",
                q.vertex_name(v),
                out.len()
            )));
        }
        bar[out[0]] = out[1];
        bar[out[1]] = out[0];
    }
    Ok(bar)
}

/// `g = bar ∘ f`; reports the first arrow where `f` is not compatible with the quiver.
pub fn derive_g(q: &Quiver, f: &Permutation) -> Result<Permutation> {
    if f.len() != q.num_arrows() {
        return Err(Error::Input("f must permute all arrows".into()));
    }
    for a in 0..q.num_arrows() {
        if q.source(f.apply(a)) != q.target(a) {
            return Err(Error::Input(format!(
                "f({}) = {} does not start at the target of {}",
                q.arrow_name(a),
                q.arrow_name(f.apply(a)),
                q.arrow_name(a)
            )));
        }
    }
    let bar = bar_involution(q)?;
    Permutation::from_images((0..q.num_arrows()).map(|a| bar[f.apply(a)]).collect())
}

impl BiserialQuiverData {
    /// Missing weights default to `m = 1`, `c = 1`, `b = 0`. `triangles` may
    /// name any subset; it is closed under `f`, and every resulting `f`-orbit
    /// must have length 1 or 3.
    pub fn new(quiver: Quiver, f: Permutation, weights: Weights, triangles: &[ArrowId]) -> Result<Self> {
        let g = derive_g(&quiver, &f)?;
        let bar = bar_involution(&quiver)?;
        let n = quiver.num_arrows();
        let name = |a: ArrowId| quiver.arrow_name(a).to_string();

        let mut m = vec![0u32; n];
        for (&a, &val) in &weights.m {
            if val == 0 {
                return Err(Error::Input(format!("weight of {} must be positive", name(a))));
            }
            for x in g.orbit(a) {
                if m[x] != 0 && m[x] != val {
                    return Err(Error::Input(format!("conflicting weights on the g-orbit of {}", name(a))));
                }
                m[x] = val;
            }
        }
        m.iter_mut().filter(|x| **x == 0).for_each(|x| *x = 1);

        let mut c: Vec<Option<Q>> = vec![None; n];
        for (&a, val) in &weights.c {
            if val.is_zero() {
                return Err(Error::Input(format!("parameter of {} must be nonzero", name(a))));
            }
            for x in g.orbit(a) {
                if c[x].as_ref().is_some_and(|y| y != val) {
                    return Err(Error::Input(format!("conflicting parameters on the g-orbit of {}", name(a))));
                }
                c[x] = Some(val.clone());
            }
        }
        let c = c.into_iter().map(|x| x.unwrap_or_else(Q::one)).collect();

        let mut b = vec![Q::zero(); n];
        for (&a, val) in &weights.b {
            if f.apply(a) != a {
                return Err(Error::Input(format!("border value given for {}, which is not fixed by f", name(a))));
            }
            b[a] = val.clone();
        }

        let mut tri = vec![false; n];
        for &a in triangles {
            let orbit = f.orbit(a);
            if orbit.len() != 1 && orbit.len() != 3 {
                return Err(Error::Input(format!(
                    "{} lies in an f-orbit of length {}, not a triangle",
                    name(a),
                    orbit.len()
                )));
            }
            for x in orbit {
                tri[x] = true;
            }
        }
        Ok(BiserialQuiverData { quiver, f, g, bar, m, c, b, triangles: tri })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn f(&self) -> &Permutation {
        &self.f
    }

    pub fn g(&self) -> &Permutation {
        &self.g
    }

    pub fn bar(&self, a: ArrowId) -> ArrowId {
        self.bar[a]
    }

    pub fn m(&self, a: ArrowId) -> u32 {
        self.m[a]
    }

    pub fn c(&self, a: ArrowId) -> &Q {
        &self.c[a]
    }

    /// Border scalar; zero for arrows not fixed by `f`.
    pub fn b(&self, a: ArrowId) -> &Q {
        &self.b[a]
    }

    pub fn in_t(&self, a: ArrowId) -> bool {
        self.triangles[a]
    }

    pub fn triangles(&self) -> Vec<ArrowId> {
        (0..self.quiver.num_arrows()).filter(|&a| self.triangles[a]).collect()
    }

    /// Length of the `g`-orbit of `a`.
    pub fn n(&self, a: ArrowId) -> usize {
        self.g.orbit_len(a)
    }

    pub fn mn(&self, a: ArrowId) -> usize {
        self.m[a] as usize * self.n(a)
    }

    pub fn is_border(&self, a: ArrowId) -> bool {
        self.f.apply(a) == a
    }

    /// The first `len` arrows along the `g`-cycle starting with `a`.
    pub fn g_path(&self, a: ArrowId, len: usize) -> Path {
        if len == 0 {
            return Path::stationary(self.quiver.source(a));
        }
        let mut arrows = Vec::with_capacity(len);
        let mut x = a;
        for _ in 0..len {
            arrows.push(x);
            x = self.g.apply(x);
        }
        Path { source: self.quiver.source(a), arrows }
    }

    /// `B_a`: the `g`-path of length `m_a n_a` starting with `a`.
    pub fn b_path(&self, a: ArrowId) -> Path {
        self.g_path(a, self.mn(a))
    }

    /// `A_a`: the `g`-path of length `m_a n_a - 1` starting with `a`.
    pub fn a_path(&self, a: ArrowId) -> Path {
        self.g_path(a, self.mn(a) - 1)
    }

    /// Weight map keyed by `g`-orbit representatives (least arrow id).
    pub fn m_by_orbit(&self) -> BTreeMap<ArrowId, u32> {
        self.g.cycles().iter().map(|cyc| (cyc[0], self.m[cyc[0]])).collect()
    }

    pub fn c_by_orbit(&self) -> BTreeMap<ArrowId, Q> {
        self.g.cycles().iter().map(|cyc| (cyc[0], self.c[cyc[0]].clone())).collect()
    }

    /// Nonzero border values.
    pub fn b_nonzero(&self) -> BTreeMap<ArrowId, Q> {
        (0..self.quiver.num_arrows())
            .filter(|&a| !self.b[a].is_zero())
            .map(|a| (a, self.b[a].clone()))
            .collect()
    }

    /// `f`-orbit representatives of the triangle set.
    pub fn triangle_reps(&self) -> Vec<ArrowId> {
        self.f.cycles().into_iter().filter(|cyc| self.triangles[cyc[0]]).map(|cyc| cyc[0]).collect()
    }

    pub fn weights(&self) -> Weights {
        Weights { m: self.m_by_orbit(), c: self.c_by_orbit(), b: self.b_nonzero() }
    }

    pub fn with_c(&self, a: ArrowId, value: Q) -> Result<Self> {
        let mut w = self.weights();
        w.c.insert(self.g.orbit_rep(a), value);
        BiserialQuiverData::new(self.quiver.clone(), self.f.clone(), w, &self.triangles())
    }

    pub fn classify_arrows(&self) -> ArrowClassification {
        let n = self.quiver.num_arrows();
        let vc = self.classify_vertices();
        let mut virtual_kind = vec![None; n];
        for a in 0..n {
            let mn = self.mn(a);
            if mn == 1 && vc[self.quiver.source(a)] == VertexClass::Biserial {
                virtual_kind[a] = Some(VirtualKind::Biserial);
            } else if mn == 2 && self.triangles[self.bar[a]] {
                virtual_kind[a] = Some(VirtualKind::Triangle);
            }
        }
        let critical = (0..n)
            .map(|a| self.mn(a) == 3 && self.triangles[a] && virtual_kind[self.f.apply(a)].is_some())
            .collect();
        let border = (0..n).map(|a| self.is_border(a)).collect();
        ArrowClassification { virtual_kind, critical, border }
    }

    pub fn classify_vertices(&self) -> Vec<VertexClass> {
        (0..self.quiver.num_vertices())
            .map(|v| {
                let inside = self.quiver.out_arrows(v).iter().filter(|&&a| self.triangles[a]).count();
                match inside {
                    0 => VertexClass::Biserial,
                    2 => VertexClass::Quaternion,
                    _ => VertexClass::Hybrid,
                }
            })
            .collect()
    }

    /// The data on a union of connected components of the quiver.
    pub fn restrict(&self, vertices: &[VertexId]) -> Result<Self> {
        let q = &self.quiver;
        let inside = |v: VertexId| vertices.contains(&v);
        let kept: Vec<ArrowId> = (0..q.num_arrows()).filter(|&a| inside(q.source(a))).collect();
        if kept.iter().any(|&a| !inside(q.target(a))) {
            return Err(Error::Input("vertex set is not a union of components".into()));
        }
        let names = (0..q.num_vertices()).filter(|&v| inside(v)).map(|v| q.vertex_name(v).to_string()).collect();
        let arrows = kept
            .iter()
            .map(|&a| (q.arrow_name(a).to_string(), q.vertex_name(q.source(a)).to_string(), q.vertex_name(q.target(a)).to_string()))
            .collect();
        let nq = Quiver::new(names, arrows)?;
        let map = |a: ArrowId| nq.arrow_id(q.arrow_name(a)).expect("kept arrow");
        let cycles: Vec<Vec<ArrowId>> = self
            .f
            .cycles()
            .iter()
            .filter(|cyc| inside(q.source(cyc[0])))
            .map(|cyc| cyc.iter().map(|&a| map(a)).collect())
            .collect();
        let f = Permutation::from_cycles(nq.num_arrows(), &cycles)?;
        let mut weights = Weights::default();
        for &a in &kept {
            weights.m.insert(map(a), self.m[a]);
            weights.c.insert(map(a), self.c[a].clone());
            if !self.b[a].is_zero() {
                weights.b.insert(map(a), self.b[a].clone());
            }
        }
        let t: Vec<ArrowId> = kept.iter().filter(|&&a| self.triangles[a]).map(|&a| map(a)).collect();
        BiserialQuiverData::new(nq, f, weights, &t)
    }

    /// One data set per connected component of the quiver.
    pub fn components(&self) -> Result<Vec<Self>> {
        self.quiver.components(|_| true).iter().map(|c| self.restrict(c)).collect()
    }

    /// Same combinatorial data with every arrow and vertex renamed.
    pub fn renamed(&self, arrow_name: impl Fn(&str) -> String, vertex_name: impl Fn(&str) -> String) -> Result<Self> {
        let q = &self.quiver;
        let vertices = q.vertex_names().iter().map(|v| vertex_name(v)).collect();
        let arrows = q
            .arrows()
            .iter()
            .map(|a| (arrow_name(&a.name), vertex_name(q.vertex_name(a.source)), vertex_name(q.vertex_name(a.target))))
            .collect();
        let nq = Quiver::new(vertices, arrows)?;
        let map: Vec<ArrowId> = (0..q.num_arrows())
            .map(|a| nq.arrow_id(&arrow_name(q.arrow_name(a))).expect("renamed arrow exists"))
            .collect();
        let cycles: Vec<Vec<ArrowId>> =
            self.f.cycles().iter().map(|cyc| cyc.iter().map(|&a| map[a]).collect()).collect();
        let f = Permutation::from_cycles(nq.num_arrows(), &cycles)?;
        let w = self.weights();
        let weights = Weights {
            m: w.m.iter().map(|(&a, &v)| (map[a], v)).collect(),
            c: w.c.iter().map(|(&a, v)| (map[a], v.clone())).collect(),
            b: w.b.iter().map(|(&a, v)| (map[a], v.clone())).collect(),
        };
        let t: Vec<ArrowId> = self.triangles().iter().map(|&a| map[a]).collect();
        BiserialQuiverData::new(nq, f, weights, &t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    Biserial,
    Hybrid,
    Quaternion,
}

impl VertexClass {
    pub fn label(self) -> &'static str {
        match self {
            VertexClass::Biserial => "biserial",
            VertexClass::Hybrid => "hybrid",
            VertexClass::Quaternion => "quaternion",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VirtualKind {
    /// `m n = 1` at a biserial vertex.
    Biserial,
    /// `m n = 2` with the partner arrow in the triangle set.
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowClassification {
    pub virtual_kind: Vec<Option<VirtualKind>>,
    pub critical: Vec<bool>,
    pub border: Vec<bool>,
}

impl ArrowClassification {
    pub fn is_virtual(&self, a: ArrowId) -> bool {
        self.virtual_kind[a].is_some()
    }

    pub fn is_critical(&self, a: ArrowId) -> bool {
        self.critical[a]
    }

    pub fn virtual_arrows(&self) -> Vec<ArrowId> {
        (0..self.virtual_kind.len()).filter(|&a| self.is_virtual(a)).collect()
    }

    pub fn critical_arrows(&self) -> Vec<ArrowId> {
        (0..self.critical.len()).filter(|&a| self.critical[a]).collect()
    }
}
