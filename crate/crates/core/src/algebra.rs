//! Finite-dimensional quotients of path algebras with exact structure constants.

use crate::closure::{ClosureConfig, IdealClosure};
use crate::data::BiserialQuiverData;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::path::{LinComb, Path};
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::relations::RelationSet;
use crate::scalar::Q;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

/// Sparse image of one basis vector.
pub type SparseRow = Vec<(usize, Q)>;

/// `H = KQ/I`, or one block of it. Elements are coordinate vectors over
/// `basis()`; every basis element is a path.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    closure: Arc<IdealClosure>,
    vertices: Vec<VertexId>,
    /// Closure basis indices belonging to this algebra, in order.
    members: Vec<usize>,
    local: HashMap<usize, usize>,
    right: Vec<Vec<SparseRow>>,
    left: Vec<Vec<SparseRow>>,
}

pub fn closure_config(data: &BiserialQuiverData) -> ClosureConfig {
    let q = data.quiver();
    let max_mn = (0..q.num_arrows()).map(|a| data.mn(a)).max().unwrap_or(1);
    ClosureConfig { initial_len: max_mn + 3, cap: 4 * max_mn + 8, live_limit: 50_000 }
}

/// Stationary paths and the initial submonomials of every `B_a`.
pub fn preferred_paths(data: &BiserialQuiverData) -> HashSet<Path> {
    let q = data.quiver();
    let mut out: HashSet<Path> = (0..q.num_vertices()).map(Path::stationary).collect();
    for a in 0..q.num_arrows() {
        let b = data.b_path(a);
        for k in 1..=b.len() {
            out.insert(b.prefix(k));
        }
    }
    out
}

pub fn build_algebra(data: &BiserialQuiverData, relations: &RelationSet) -> Result<FiniteDimAlgebra> {
    FiniteDimAlgebra::from_relations(
        data.quiver(),
        &relations.generators(),
        preferred_paths(data),
        &closure_config(data),
    )
}

impl FiniteDimAlgebra {
    pub fn from_relations(
        quiver: &Quiver,
        generators: &[LinComb],
        preferred: HashSet<Path>,
        config: &ClosureConfig,
    ) -> Result<Self> {
        let closure = IdealClosure::compute(quiver, generators, preferred, config)?;
        let members: Vec<usize> = (0..closure.basis().len()).collect();
        let vertices = (0..quiver.num_vertices()).collect();
        Ok(Self::restricted(Arc::new(closure), vertices, members))
    }

    fn restricted(closure: Arc<IdealClosure>, vertices: Vec<VertexId>, members: Vec<usize>) -> Self {
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let q = closure.quiver().clone();
        let n = members.len();
        let mut right = vec![vec![Vec::new(); n]; q.num_arrows()];
        let mut left = vec![vec![Vec::new(); n]; q.num_arrows()];
        for a in 0..q.num_arrows() {
            let table = closure.right_table(a);
            for (i, &g) in members.iter().enumerate() {
                right[a][i] = table[g].iter().filter_map(|(k, c)| local.get(k).map(|&l| (l, c.clone()))).collect();
                let p = &closure.basis()[g];
                if let Some(ap) = Path::arrow(&q, a).concat(p, &q) {
                    let v = closure.normal_form_path(&ap);
                    left[a][i] = v
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .filter_map(|(k, c)| local.get(&k).map(|&l| (l, c)))
                        .collect();
                }
            }
        }
        FiniteDimAlgebra { closure, vertices, members, local, right, left }
    }

    pub fn quiver(&self) -> &Quiver {
        self.closure.quiver()
    }

    pub fn closure(&self) -> &IdealClosure {
        &self.closure
    }

    /// Vertices of this algebra (all of `Q_0`, or those of one block).
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.closure.basis()[self.members[i]]
    }

    pub fn basis(&self) -> Vec<Path> {
        (0..self.dim()).map(|i| self.basis_path(i).clone()).collect()
    }

    pub fn basis_source(&self, i: usize) -> VertexId {
        self.basis_path(i).source
    }

    pub fn basis_target(&self, i: usize) -> VertexId {
        self.basis_path(i).target(self.quiver())
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim()]
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Q> {
        let mut v = self.zero();
        v[i] = Q::one();
        v
    }

    fn from_global(&self, v: Vec<Q>) -> Vec<Q> {
        let mut out = self.zero();
        for (g, c) in v.into_iter().enumerate() {
            if let Some(&l) = self.local.get(&g) {
                out[l] = c;
            }
        }
        out
    }

    /// Coordinates of `x` in the basis; the normal form of `x`.
    pub fn element(&self, x: &LinComb) -> Vec<Q> {
        self.from_global(self.closure.normal_form(x))
    }

    pub fn path_element(&self, p: &Path) -> Vec<Q> {
        self.from_global(self.closure.normal_form_path(p))
    }

    /// Parses and reduces an expression such as `a.b - 2*c`.
    pub fn parse_element(&self, text: &str) -> Result<Vec<Q>> {
        Ok(self.element(&LinComb::parse(self.quiver(), text)?))
    }

    pub fn idempotent(&self, v: VertexId) -> Vec<Q> {
        self.path_element(&Path::stationary(v))
    }

    pub fn one(&self) -> Vec<Q> {
        let mut out = self.zero();
        for &v in &self.vertices {
            add_assign(&mut out, &self.idempotent(v));
        }
        out
    }

    pub fn arrow_element(&self, a: ArrowId) -> Vec<Q> {
        self.path_element(&Path::arrow(self.quiver(), a))
    }

    pub fn right_table(&self, a: ArrowId) -> &[SparseRow] {
        &self.right[a]
    }

    pub fn left_table(&self, a: ArrowId) -> &[SparseRow] {
        &self.left[a]
    }

    /// `x * a`.
    pub fn mul_arrow(&self, x: &[Q], a: ArrowId) -> Vec<Q> {
        apply_sparse(&self.right[a], x)
    }

    /// `a * x`.
    pub fn arrow_mul(&self, a: ArrowId, x: &[Q]) -> Vec<Q> {
        apply_sparse(&self.left[a], x)
    }

    fn mul_path(&self, x: &[Q], p: &Path) -> Vec<Q> {
        let mut v = x.to_vec();
        // Right multiplication by e_s keeps exactly the terms ending at s.
        for (i, c) in v.iter_mut().enumerate() {
            if !c.is_zero() && self.basis_target(i) != p.source {
                *c = Q::zero();
            }
        }
        for &a in &p.arrows {
            v = self.mul_arrow(&v, a);
        }
        v
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = self.zero();
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let xp = self.mul_path(x, self.basis_path(j));
            add_scaled(&mut out, &xp, yj);
        }
        out
    }

    /// Product of two basis elements.
    pub fn structure_constant(&self, i: usize, j: usize) -> Vec<Q> {
        self.mul_path(&self.unit_vector(i), self.basis_path(j))
    }

    pub fn display(&self, x: &[Q]) -> String {
        let mut l = LinComb::zero();
        for (i, c) in x.iter().enumerate() {
            l.add_term(self.basis_path(i).clone(), c.clone());
        }
        l.display(self.quiver())
    }

    /// Basis indices of `e_i H e_j`.
    pub fn corner(&self, i: VertexId, j: VertexId) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis_source(k) == i && self.basis_target(k) == j).collect()
    }

    /// Basis indices of `e_i H`.
    pub fn projective_indices(&self, i: VertexId) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis_source(k) == i).collect()
    }

    /// `dim e_i H` for each vertex of the algebra.
    pub fn dimension_vector(&self) -> Vec<(VertexId, usize)> {
        self.vertices.iter().map(|&v| (v, self.projective_indices(v).len())).collect()
    }

    /// Entry `(i, j)` is `dim e_i H e_j`, over `vertices()`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        self.vertices.iter().map(|&i| self.vertices.iter().map(|&j| self.corner(i, j).len()).collect()).collect()
    }

    /// Bases of `J, J^2, ...` down to the last nonzero power.
    pub fn radical_powers(&self) -> Vec<Vec<Vec<Q>>> {
        let n = self.dim();
        let mut current: Vec<Vec<Q>> =
            (0..n).filter(|&i| !self.basis_path(i).is_stationary()).map(|i| self.unit_vector(i)).collect();
        let mut out = Vec::new();
        while !current.is_empty() {
            let mut next = Echelon::new(n);
            for x in &current {
                for a in self.arrows() {
                    next.insert(&self.mul_arrow(x, a));
                }
            }
            out.push(current);
            current = next.rows().to_vec();
        }
        out
    }

    /// Arrows of `Q` with both ends in this algebra.
    pub fn arrows(&self) -> Vec<ArrowId> {
        let q = self.quiver();
        let vs: HashSet<VertexId> = self.vertices.iter().copied().collect();
        (0..q.num_arrows()).filter(|&a| vs.contains(&q.source(a)) && vs.contains(&q.target(a))).collect()
    }

    /// Arrows whose residues form a basis of `J/J^2`, chosen greedily in
    /// arrow order.
    pub fn gabriel_arrows(&self) -> Vec<ArrowId> {
        let powers = self.radical_powers();
        let mut span = Echelon::new(self.dim());
        if let Some(j2) = powers.get(1) {
            for x in j2 {
                span.insert(x);
            }
        }
        self.arrows().into_iter().filter(|&a| span.insert(&self.arrow_element(a))).collect()
    }

    /// The Gabriel quiver, with arrows named after the chosen arrows of `Q`.
    pub fn gabriel_quiver(&self) -> Result<Quiver> {
        let q = self.quiver();
        let names = self.vertices.iter().map(|&v| q.vertex_name(v).to_string()).collect();
        let arrows = self
            .gabriel_arrows()
            .into_iter()
            .map(|a| (q.arrow_name(a).to_string(), q.vertex_name(q.source(a)).to_string(), q.vertex_name(q.target(a)).to_string()))
            .collect();
        Quiver::new(names, arrows)
    }

    /// Vertex sets of the blocks: components of the Gabriel quiver.
    pub fn block_vertex_sets(&self) -> Vec<Vec<VertexId>> {
        let q = self.quiver();
        let mut parent: HashMap<VertexId, VertexId> = self.vertices.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut HashMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let mut r = v;
            while p[&r] != r {
                r = p[&r];
            }
            p.insert(v, r);
            r
        }
        for a in self.gabriel_arrows() {
            let (x, y) = (find(&mut parent, q.source(a)), find(&mut parent, q.target(a)));
            if x != y {
                parent.insert(x.max(y), x.min(y));
            }
        }
        let mut groups: Vec<BTreeSet<VertexId>> = Vec::new();
        let mut root_of: HashMap<VertexId, usize> = HashMap::new();
        for &v in &self.vertices {
            let r = find(&mut parent, v);
            let idx = *root_of.entry(r).or_insert_with(|| {
                groups.push(BTreeSet::new());
                groups.len() - 1
            });
            groups[idx].insert(v);
        }
        groups.into_iter().map(|g| g.into_iter().collect()).collect()
    }

    /// The algebra `eHe` for a union of blocks; errors when `vertices` is
    /// not a union of blocks.
    pub fn block(&self, vertices: &[VertexId]) -> Result<FiniteDimAlgebra> {
        let vs: HashSet<VertexId> = vertices.iter().copied().collect();
        for k in 0..self.dim() {
            if vs.contains(&self.basis_source(k)) != vs.contains(&self.basis_target(k)) {
                return Err(Error::Input("vertex set is not a union of blocks".into()));
            }
        }
        let members = (0..self.dim()).filter(|&k| vs.contains(&self.basis_source(k))).map(|k| self.members[k]).collect();
        let mut vertices: Vec<VertexId> = vertices.to_vec();
        vertices.sort_unstable();
        Ok(Self::restricted(self.closure.clone(), vertices, members))
    }

    pub fn block_decomposition(&self) -> Vec<FiniteDimAlgebra> {
        self.block_vertex_sets().iter().map(|vs| self.block(vs).expect("blocks are closed")).collect()
    }

    /// `soc(e_i H)`: elements of `e_i H` killed by every arrow.
    pub fn socle_of_projective(&self, i: VertexId) -> Vec<Vec<Q>> {
        let idx = self.projective_indices(i);
        let arrows = self.arrows();
        let n = self.dim();
        // Rows: basis vectors of e_iH; columns: images under all arrows.
        let rows: Vec<Vec<Q>> = idx
            .iter()
            .map(|&k| {
                let e = self.unit_vector(k);
                arrows.iter().flat_map(|&a| self.mul_arrow(&e, a)).collect()
            })
            .collect();
        let m = Matrix::from_rows(rows, arrows.len() * n);
        m.left_nullspace()
            .into_iter()
            .map(|coeffs| {
                let mut v = self.zero();
                for (t, &k) in idx.iter().enumerate() {
                    v[k] = coeffs[t].clone();
                }
                v
            })
            .collect()
    }

    /// Checks `(xy)z = x(yz)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let products: Vec<Vec<Vec<Q>>> = (0..n).map(|i| (0..n).map(|j| self.structure_constant(i, j)).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&products[i][j], &self.unit_vector(k));
                    let rhs = self.mul(&self.unit_vector(i), &products[j][k]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn apply_sparse(table: &[SparseRow], x: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); x.len()];
    for (j, xj) in x.iter().enumerate() {
        if xj.is_zero() {
            continue;
        }
        for (i, c) in &table[j] {
            out[*i] += c * xj;
        }
    }
    out
}

pub fn add_assign(x: &mut [Q], y: &[Q]) {
    for (a, b) in x.iter_mut().zip(y) {
        *a += b;
    }
}

pub fn add_scaled(x: &mut [Q], y: &[Q], s: &Q) {
    for (a, b) in x.iter_mut().zip(y) {
        if !b.is_zero() {
            *a += b * s;
        }
    }
}

pub fn is_zero_vec(x: &[Q]) -> bool {
    x.iter().all(Zero::is_zero)
}
