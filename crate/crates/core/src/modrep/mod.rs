//! Right modules over a finite-dimensional algebra, given as representations
//! of its quiver: a space `M e_v` at each vertex and, for each arrow `a`, the
//! matrix of `m -> m a` from the space at the source of `a` to the space at
//! its target. Matrices act on row vectors.
//!
//! Modules cut out of the algebra (arrow modules, middles, detecting modules)
//! are subquotients of a direct sum of indecomposable projectives `e_v H`,
//! whose basis at a vertex `w` is the set of basis paths from `v` to `w`.

mod detect;

pub use detect::{
    build_cyclic_detector, build_detecting_pair, check_detector_exactness, cyclic_candidates,
    separated_components, string_module, CyclicDetector, DetectorPair, ExactnessReport, SeparatedComponent,
};

use crate::algebra::FiniteDimAlgebra;
use crate::data::{BiserialQuiverData, VirtualKind};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::path::{LinComb, Path};
use crate::quiver::{ArrowId, VertexId};
use crate::scalar::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Default bound for Ω-period searches.
pub const DEFAULT_PERIOD_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    dims: Vec<usize>,
    actions: Vec<Matrix>,
}

impl RightModule {
    /// Checks the shapes and that the arrow action factors through the algebra.
    pub fn new(a: &FiniteDimAlgebra, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Self> {
        let q = a.quiver();
        if dims.len() != q.num_vertices() || actions.len() != q.num_arrows() {
            return Err(Error::Input(format!(
                "a module needs {} vertex dimensions and {} arrow matrices",
                q.num_vertices(),
                q.num_arrows()
            )));
        }
        for (v, &d) in dims.iter().enumerate() {
            if d > 0 && !a.vertices().contains(&v) {
                return Err(Error::Input(format!("vertex {} is not a vertex of the algebra", q.vertex_name(v))));
            }
        }
        for (x, m) in actions.iter().enumerate() {
            if m.rows() != dims[q.source(x)] || m.cols() != dims[q.target(x)] {
                return Err(Error::Input(format!("the matrix of {} has the wrong shape", q.arrow_name(x))));
            }
        }
        let m = RightModule { dims, actions };
        if !m.is_module(a) {
            return Err(Error::Input("the arrow matrices do not satisfy the relations of the algebra".into()));
        }
        Ok(m)
    }

    pub fn zero(a: &FiniteDimAlgebra) -> Self {
        let q = a.quiver();
        RightModule { dims: vec![0; q.num_vertices()], actions: vec![Matrix::zeros(0, 0); q.num_arrows()] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn action(&self, arrow: ArrowId) -> &Matrix {
        &self.actions[arrow]
    }

    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.source]);
        for &x in &p.arrows {
            m = m.mul(&self.actions[x]);
        }
        m
    }

    /// Action of every basis path of `a`.
    pub fn basis_actions(&self, a: &FiniteDimAlgebra) -> Vec<Matrix> {
        (0..a.dim()).map(|k| self.path_action(a.basis_path(k))).collect()
    }

    /// Matrix of `m -> m x` from `M e_s` to `M e_t`, using the part of `x` in `e_s H e_t`.
    pub fn element_action(&self, a: &FiniteDimAlgebra, x: &[Q], s: VertexId, t: VertexId) -> Matrix {
        let mut out = Matrix::zeros(self.dims[s], self.dims[t]);
        for (k, c) in x.iter().enumerate() {
            if !c.is_zero() && a.basis_source(k) == s && a.basis_target(k) == t {
                out.add_scaled(&self.path_action(a.basis_path(k)), c);
            }
        }
        out
    }

    /// The action of a product of a basis path and an arrow agrees with the
    /// action of its normal form; by induction on length every path then acts
    /// through its normal form, so the ideal acts as zero.
    pub fn is_module(&self, a: &FiniteDimAlgebra) -> bool {
        let q = a.quiver();
        let mats = self.basis_actions(a);
        for x in a.arrows() {
            let table = a.right_table(x);
            for k in 0..a.dim() {
                if a.basis_target(k) != q.source(x) {
                    continue;
                }
                let lhs = mats[k].mul(&self.actions[x]);
                let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                for (j, c) in &table[k] {
                    rhs.add_scaled(&mats[*j], c);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `rad(M) e_v` for every vertex: the images of the arrows ending at `v`.
    pub fn radical(&self, a: &FiniteDimAlgebra) -> Vec<Echelon> {
        let q = a.quiver();
        let mut out: Vec<Echelon> = self.dims.iter().map(|&d| Echelon::new(d)).collect();
        for x in 0..q.num_arrows() {
            for row in self.actions[x].row_vecs() {
                out[q.target(x)].insert(&row);
            }
        }
        out
    }

    /// `soc(M) e_v` for every vertex: the vectors killed by every arrow.
    pub fn socle(&self, a: &FiniteDimAlgebra) -> Vec<Echelon> {
        let q = a.quiver();
        (0..q.num_vertices())
            .map(|v| {
                let d = self.dims[v];
                let out = q.out_arrows(v);
                let width: usize = out.iter().map(|&x| self.dims[q.target(x)]).sum();
                let rows: Vec<Vec<Q>> = (0..d)
                    .map(|i| out.iter().flat_map(|&x| self.actions[x].row(i).to_vec()).collect())
                    .collect();
                let mut e = Echelon::new(d);
                for k in Matrix::from_rows(rows, width).left_nullspace() {
                    e.insert(&k);
                }
                e
            })
            .collect()
    }

    pub fn top_dim(&self, a: &FiniteDimAlgebra) -> usize {
        self.dim() - self.radical(a).iter().map(Echelon::rank).sum::<usize>()
    }

    pub fn socle_dim(&self, a: &FiniteDimAlgebra) -> usize {
        self.socle(a).iter().map(Echelon::rank).sum()
    }

    /// Whether `soc(H)` acts as zero.
    pub fn annihilated_by_socle(&self, a: &FiniteDimAlgebra) -> bool {
        a.vertices().iter().all(|&v| {
            a.socle_of_projective(v)
                .iter()
                .all(|s| a.vertices().iter().all(|&t| self.element_action(a, s, v, t).is_zero()))
        })
    }

    pub fn direct_sum(&self, other: &RightModule, a: &FiniteDimAlgebra) -> RightModule {
        let q = a.quiver();
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(x, y)| x + y).collect();
        let actions = (0..q.num_arrows())
            .map(|x| {
                let (s, t) = (q.source(x), q.target(x));
                let mut m = Matrix::zeros(dims[s], dims[t]);
                let (m1, m2) = (&self.actions[x], &other.actions[x]);
                for i in 0..m1.rows() {
                    for j in 0..m1.cols() {
                        m.set(i, j, m1.get(i, j).clone());
                    }
                }
                for i in 0..m2.rows() {
                    for j in 0..m2.cols() {
                        m.set(m1.rows() + i, m1.cols() + j, m2.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        RightModule { dims, actions }
    }

    /// The submodule with the given invariant subspaces; its basis at each
    /// vertex is the stored echelon basis.
    pub fn submodule(&self, a: &FiniteDimAlgebra, spaces: &[Echelon]) -> Result<(RightModule, ModuleMap)> {
        let q = a.quiver();
        let dims: Vec<usize> = spaces.iter().map(Echelon::rank).collect();
        let mut actions = Vec::with_capacity(q.num_arrows());
        for x in 0..q.num_arrows() {
            let (s, t) = (q.source(x), q.target(x));
            let rows = spaces[s]
                .rows()
                .iter()
                .map(|u| {
                    spaces[t].coordinates(&self.actions[x].apply(u)).ok_or_else(|| {
                        Error::Construction(format!("the subspace is not closed under {}", q.arrow_name(x)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            actions.push(Matrix::from_rows(rows, dims[t]));
        }
        let inclusion =
            ModuleMap::new(spaces.iter().zip(&self.dims).map(|(e, &d)| Matrix::from_rows(e.rows().to_vec(), d)).collect());
        Ok((RightModule { dims, actions }, inclusion))
    }

    /// `M / N` for invariant subspaces `N`; the basis of the quotient at a
    /// vertex is given by the unit vectors outside the pivots of `N`.
    pub fn quotient(&self, a: &FiniteDimAlgebra, spaces: &[Echelon]) -> (RightModule, ModuleMap) {
        let q = a.quiver();
        let free: Vec<Vec<usize>> = spaces.iter().map(Echelon::non_pivots).collect();
        let project = |v: VertexId, x: &[Q]| -> Vec<Q> {
            let r = spaces[v].reduce(x);
            free[v].iter().map(|&c| r[c].clone()).collect()
        };
        let dims: Vec<usize> = free.iter().map(Vec::len).collect();
        let actions = (0..q.num_arrows())
            .map(|x| {
                let (s, t) = (q.source(x), q.target(x));
                let rows = free[s].iter().map(|&c| project(t, self.actions[x].row(c))).collect();
                Matrix::from_rows(rows, dims[t])
            })
            .collect();
        let projection = ModuleMap::new(
            (0..q.num_vertices())
                .map(|v| {
                    let rows = (0..self.dims[v]).map(|i| project(v, &unit(self.dims[v], i))).collect();
                    Matrix::from_rows(rows, dims[v])
                })
                .collect(),
        );
        (RightModule { dims, actions }, projection)
    }

    /// The smallest submodule containing the given vectors `(vertex, vector)`.
    pub fn generated(&self, a: &FiniteDimAlgebra, gens: &[(VertexId, Vec<Q>)]) -> Vec<Echelon> {
        let q = a.quiver();
        let mut spaces: Vec<Echelon> = self.dims.iter().map(|&d| Echelon::new(d)).collect();
        let mut queue: Vec<(VertexId, Vec<Q>)> = Vec::new();
        for (v, g) in gens {
            if spaces[*v].insert(g) {
                queue.push((*v, g.clone()));
            }
        }
        while let Some((v, u)) = queue.pop() {
            for x in q.out_arrows(v) {
                let w = self.actions[x].apply(&u);
                let t = q.target(x);
                if spaces[t].insert(&w) {
                    queue.push((t, w));
                }
            }
        }
        spaces
    }
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// A homomorphism `M -> N`: one matrix `M e_v -> N e_v` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(blocks: Vec<Matrix>) -> Self {
        ModuleMap { blocks }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn identity(m: &RightModule) -> Self {
        ModuleMap { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&then.blocks).map(|(f, g)| f.mul(g)).collect() }
    }

    pub fn is_homomorphism(&self, a: &FiniteDimAlgebra, m: &RightModule, n: &RightModule) -> bool {
        let q = a.quiver();
        (0..q.num_arrows()).all(|x| {
            let (s, t) = (q.source(x), q.target(x));
            m.actions[x].mul(&self.blocks[t]) == self.blocks[s].mul(&n.actions[x])
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::zero();
        for b in &self.blocks {
            for i in 0..b.rows().min(b.cols()) {
                t += b.get(i, i);
            }
        }
        t
    }

    fn flatten(&self) -> Vec<Q> {
        self.blocks.iter().flat_map(|b| b.row_vecs().into_iter().flatten()).collect()
    }

    fn combination(basis: &[ModuleMap], coeffs: &[Q]) -> ModuleMap {
        let mut blocks: Vec<Matrix> = basis[0].blocks.iter().map(|b| Matrix::zeros(b.rows(), b.cols())).collect();
        for (h, c) in basis.iter().zip(coeffs) {
            for (acc, b) in blocks.iter_mut().zip(&h.blocks) {
                acc.add_scaled(b, c);
            }
        }
        ModuleMap { blocks }
    }
}

/// `e_{v_1} H + ... + e_{v_r} H` with its basis of pairs (summand, basis path).
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    summands: Vec<VertexId>,
    /// Basis of `P e_w` for every vertex `w`.
    index: Vec<Vec<(usize, usize)>>,
    position: HashMap<(usize, usize), usize>,
    module: RightModule,
}

impl ProjectiveSum {
    pub fn new(a: &FiniteDimAlgebra, summands: &[VertexId]) -> Self {
        let q = a.quiver();
        let mut index = vec![Vec::new(); q.num_vertices()];
        let mut position = HashMap::new();
        for (k, &v) in summands.iter().enumerate() {
            for j in a.projective_indices(v) {
                let w = a.basis_target(j);
                position.insert((k, j), index[w].len());
                index[w].push((k, j));
            }
        }
        let dims: Vec<usize> = index.iter().map(Vec::len).collect();
        let actions = (0..q.num_arrows())
            .map(|x| {
                let (s, t) = (q.source(x), q.target(x));
                let mut m = Matrix::zeros(dims[s], dims[t]);
                if a.vertices().contains(&s) {
                    let table = a.right_table(x);
                    for (r, &(k, j)) in index[s].iter().enumerate() {
                        for (j2, c) in &table[j] {
                            m.set(r, position[&(k, *j2)], c.clone());
                        }
                    }
                }
                m
            })
            .collect();
        ProjectiveSum { summands: summands.to_vec(), index, position, module: RightModule { dims, actions } }
    }

    pub fn summands(&self) -> &[VertexId] {
        &self.summands
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    /// Splits an element `(x_1, ..., x_r)`, `x_k` in `e_{v_k} H`, into its parts at each vertex.
    pub fn element(&self, a: &FiniteDimAlgebra, comps: &[Vec<Q>]) -> Result<Vec<(VertexId, Vec<Q>)>> {
        if comps.len() != self.summands.len() {
            return Err(Error::Input(format!("expected {} components", self.summands.len())));
        }
        let mut parts: Vec<Vec<Q>> = self.module.dims.iter().map(|&d| vec![Q::zero(); d]).collect();
        for (k, x) in comps.iter().enumerate() {
            for (j, c) in x.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let &p = self.position.get(&(k, j)).ok_or_else(|| {
                    Error::Input(format!(
                        "component {k} has a term outside e_{} H",
                        a.quiver().vertex_name(self.summands[k])
                    ))
                })?;
                parts[a.basis_target(j)][p] = c.clone();
            }
        }
        Ok(parts.into_iter().enumerate().filter(|(_, v)| v.iter().any(|c| !c.is_zero())).collect())
    }

    /// The element of the direct sum given by a vector of `P e_w`.
    pub fn to_components(&self, a: &FiniteDimAlgebra, w: VertexId, v: &[Q]) -> Vec<Vec<Q>> {
        let mut out = vec![a.zero(); self.summands.len()];
        for (c, &(k, j)) in v.iter().zip(&self.index[w]) {
            out[k][j] = c.clone();
        }
        out
    }

    /// Whether a vector of `P e_w` lies in `rad P`.
    fn in_radical(&self, a: &FiniteDimAlgebra, w: VertexId, v: &[Q]) -> bool {
        v.iter().zip(&self.index[w]).all(|(c, &(_, j))| c.is_zero() || !a.basis_path(j).is_stationary())
    }
}

pub fn simple_module(a: &FiniteDimAlgebra, v: VertexId) -> RightModule {
    let q = a.quiver();
    let mut dims = vec![0; q.num_vertices()];
    dims[v] = 1;
    let actions = (0..q.num_arrows()).map(|x| Matrix::zeros(dims[q.source(x)], dims[q.target(x)])).collect();
    RightModule { dims, actions }
}

pub fn projective_module(a: &FiniteDimAlgebra, v: VertexId) -> RightModule {
    ProjectiveSum::new(a, &[v]).module
}

/// `N / N'` where `N` and `N'` are the submodules of `e_{v_1} H + ... + e_{v_r} H`
/// generated by the given elements (lists of components).
pub fn subquotient(
    a: &FiniteDimAlgebra,
    summands: &[VertexId],
    gens: &[Vec<Vec<Q>>],
    sub_gens: &[Vec<Vec<Q>>],
) -> Result<RightModule> {
    let p = ProjectiveSum::new(a, summands);
    let split = |gs: &[Vec<Vec<Q>>]| -> Result<Vec<(VertexId, Vec<Q>)>> {
        let mut out = Vec::new();
        for g in gs {
            out.extend(p.element(a, g)?);
        }
        Ok(out)
    };
    let n_spaces = p.module.generated(a, &split(gens)?);
    let (n, _) = p.module.submodule(a, &n_spaces)?;
    let sub = p.module.generated(a, &split(sub_gens)?);
    let mut inner = Vec::with_capacity(sub.len());
    for (w, (s, big)) in sub.iter().zip(&n_spaces).enumerate() {
        let mut e = Echelon::new(big.rank());
        for row in s.rows() {
            let c = big.coordinates(row).ok_or_else(|| {
                Error::Input(format!(
                    "the second submodule is not contained in the first at vertex {}",
                    a.quiver().vertex_name(w)
                ))
            })?;
            e.insert(&c);
        }
        inner.push(e);
    }
    Ok(n.quotient(a, &inner).0)
}

/// The submodule of `e_{v_1} H + ... + e_{v_r} H` generated by the given elements.
pub fn submodule(a: &FiniteDimAlgebra, summands: &[VertexId], gens: &[Vec<Vec<Q>>]) -> Result<RightModule> {
    subquotient(a, summands, gens, &[])
}

/// `x H` inside `e_s H`, for `x` in `e_s H`.
pub fn cyclic_module(a: &FiniteDimAlgebra, s: VertexId, x: &[Q]) -> Result<RightModule> {
    submodule(a, &[s], &[vec![x.to_vec()]])
}

/// `α H` inside `e_{s(α)} H`.
pub fn arrow_module(a: &FiniteDimAlgebra, alpha: ArrowId) -> Result<RightModule> {
    cyclic_module(a, a.quiver().source(alpha), &a.arrow_element(alpha))
}

/// `rad e_v H / soc e_v H`, zero when `e_v H` is simple.
pub fn middle_module(a: &FiniteDimAlgebra, v: VertexId) -> Result<RightModule> {
    if a.projective_indices(v).len() == 1 {
        return Ok(RightModule::zero(a));
    }
    let gens: Vec<Vec<Vec<Q>>> = a.quiver().out_arrows(v).into_iter().map(|x| vec![a.arrow_element(x)]).collect();
    let socle: Vec<Vec<Vec<Q>>> = a.socle_of_projective(v).into_iter().map(|s| vec![s]).collect();
    subquotient(a, &[v], &gens, &socle)
}

/// A minimal projective cover `P -> M` and its kernel `Ω(M)`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: ProjectiveSum,
    /// Image in `M e_{v_k}` of the idempotent of the `k`-th summand.
    pub generators: Vec<Vec<Q>>,
    pub surjection: ModuleMap,
    pub kernel: RightModule,
    pub inclusion: ModuleMap,
    /// For every vertex, a preimage in `P e_w` of each basis vector of `M e_w`.
    sections: Vec<Vec<Vec<Q>>>,
}

pub fn projective_cover(a: &FiniteDimAlgebra, m: &RightModule) -> Result<ProjectiveCover> {
    let q = a.quiver();
    let rad = m.radical(a);
    let mut summands = Vec::new();
    let mut generators = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for c in r.non_pivots() {
            summands.push(v);
            generators.push(unit(m.dims[v], c));
        }
    }
    let p = ProjectiveSum::new(a, &summands);
    let mats = m.basis_actions(a);
    let mut blocks = Vec::with_capacity(q.num_vertices());
    let mut kernel_spaces = Vec::with_capacity(q.num_vertices());
    let mut sections = Vec::with_capacity(q.num_vertices());
    for w in 0..q.num_vertices() {
        let rows: Vec<Vec<Q>> = p.index[w].iter().map(|&(k, j)| mats[j].apply(&generators[k])).collect();
        let pi = Matrix::from_rows(rows, m.dims[w]);
        let mut ker = Echelon::new(p.index[w].len());
        for k in pi.left_nullspace() {
            if !p.in_radical(a, w, &k) {
                return Err(Error::Construction("the projective cover is not minimal".into()));
            }
            ker.insert(&k);
        }
        let sec = (0..m.dims[w])
            .map(|i| {
                pi.solve_left(&unit(m.dims[w], i))
                    .ok_or_else(|| Error::Construction("the cover map is not surjective".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(pi);
        kernel_spaces.push(ker);
        sections.push(sec);
    }
    let (kernel, inclusion) = p.module.submodule(a, &kernel_spaces)?;
    Ok(ProjectiveCover { projective: p, generators, surjection: ModuleMap::new(blocks), kernel, inclusion, sections })
}

pub fn omega(a: &FiniteDimAlgebra, m: &RightModule) -> Result<RightModule> {
    Ok(projective_cover(a, m)?.kernel)
}

/// Basis of `Hom(M, N)`, computed from a projective presentation of `M`: a
/// map is a choice of images of the top generators killing `Ω(M)`.
pub fn hom_space(a: &FiniteDimAlgebra, m: &RightModule, n: &RightModule) -> Result<Vec<ModuleMap>> {
    Ok(hom_with_cover(a, &projective_cover(a, m)?, n))
}

fn hom_with_cover(a: &FiniteDimAlgebra, cover: &ProjectiveCover, n: &RightModule) -> Vec<ModuleMap> {
    let q = a.quiver();
    let p = &cover.projective;
    let mats = n.basis_actions(a);
    let mut offset = Vec::with_capacity(p.summands.len());
    let mut vars = 0;
    for &v in &p.summands {
        offset.push(vars);
        vars += n.dims[v];
    }
    // Image in N e_w of a vector of P e_w, as a matrix over the unknowns.
    let image = |w: VertexId, u: &[Q]| -> Matrix {
        let mut out = Matrix::zeros(vars, n.dims[w]);
        for (c, &(k, j)) in u.iter().zip(&p.index[w]) {
            if c.is_zero() {
                continue;
            }
            let mat = &mats[j];
            for i in 0..mat.rows() {
                for l in 0..mat.cols() {
                    let e = mat.get(i, l);
                    if !e.is_zero() {
                        let cur = out.get(offset[k] + i, l) + c * e;
                        out.set(offset[k] + i, l, cur);
                    }
                }
            }
        }
        out
    };
    let mut equations: Vec<Vec<Q>> = Vec::new();
    for w in 0..q.num_vertices() {
        for u in cover.inclusion.blocks[w].row_vecs() {
            let img = image(w, &u);
            equations.extend(img.transpose().row_vecs());
        }
    }
    let solutions = Matrix::from_rows(equations, vars).nullspace();
    let section_images: Vec<Vec<Matrix>> = (0..q.num_vertices())
        .map(|w| cover.sections[w].iter().map(|s| image(w, s)).collect())
        .collect();
    solutions
        .iter()
        .map(|sol| {
            let blocks = (0..q.num_vertices())
                .map(|w| {
                    let rows = section_images[w].iter().map(|img| img.apply(sol)).collect();
                    Matrix::from_rows(rows, n.dims[w])
                })
                .collect();
            ModuleMap::new(blocks)
        })
        .collect()
}

/// Why two modules are not isomorphic. Every reason except
/// `NoInvertibleSample` is a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsoReason {
    DimensionVectors,
    HomDimension { hom: usize, end: usize },
    /// `End(M)` is local with residue field `Q` and every composite
    /// `M -> N -> M` lies in its radical.
    RadicalComposites,
    NoInvertibleSample { samples: usize },
}

impl NonIsoReason {
    pub fn is_proof(&self) -> bool {
        !matches!(self, NonIsoReason::NoInvertibleSample { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic { witness: ModuleMap },
    NotIsomorphic { reason: NonIsoReason },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }
}

/// Deterministic small integer coefficients for the `s`-th sample.
fn sample_coeffs(k: usize, s: usize) -> Vec<Q> {
    (0..k).map(|j| Q::from_integer(BigInt::from(((s * 7 + 3) * (j * 13 + 5) + s * j) % 17) - BigInt::from(8))).collect()
}

const ISO_SAMPLES: usize = 24;

/// The endomorphism ring of a module and the radical of its trace form,
/// which is the Jacobson radical in characteristic zero.
struct Endomorphisms {
    basis: Vec<ModuleMap>,
    gram_rank: usize,
}

impl Endomorphisms {
    fn new(a: &FiniteDimAlgebra, m: &RightModule) -> Result<Self> {
        let basis = hom_space(a, m, m)?;
        let k = basis.len();
        let rows: Vec<Vec<Q>> =
            (0..k).map(|i| (0..k).map(|j| basis[i].compose(&basis[j]).trace()).collect()).collect();
        let gram_rank = Matrix::from_rows(rows, k).rank();
        Ok(Endomorphisms { basis, gram_rank })
    }

    fn in_radical(&self, x: &ModuleMap) -> bool {
        self.basis.iter().all(|e| x.compose(e).trace().is_zero())
    }
}

pub fn iso_test(a: &FiniteDimAlgebra, m: &RightModule, n: &RightModule) -> Result<IsoVerdict> {
    if m.dims != n.dims {
        return Ok(IsoVerdict::NotIsomorphic { reason: NonIsoReason::DimensionVectors });
    }
    let hom = hom_space(a, m, n)?;
    let end = Endomorphisms::new(a, m)?;
    if hom.len() != end.basis.len() {
        return Ok(IsoVerdict::NotIsomorphic {
            reason: NonIsoReason::HomDimension { hom: hom.len(), end: end.basis.len() },
        });
    }
    if m.dim() == 0 {
        return Ok(IsoVerdict::Isomorphic { witness: ModuleMap::identity(m) });
    }
    for h in &hom {
        if h.is_invertible() {
            return Ok(IsoVerdict::Isomorphic { witness: h.clone() });
        }
    }
    for s in 0..ISO_SAMPLES {
        let h = ModuleMap::combination(&hom, &sample_coeffs(hom.len(), s));
        if h.is_invertible() {
            return Ok(IsoVerdict::Isomorphic { witness: h });
        }
    }
    if end.gram_rank == 1 {
        let back = hom_space(a, n, m)?;
        for h in &hom {
            for g in &back {
                let c = h.compose(g);
                if !end.in_radical(&c) {
                    // h g is invertible in the local ring End(M), so h is injective.
                    debug_assert!(h.is_invertible());
                    return Ok(IsoVerdict::Isomorphic { witness: h.clone() });
                }
            }
        }
        return Ok(IsoVerdict::NotIsomorphic { reason: NonIsoReason::RadicalComposites });
    }
    Ok(IsoVerdict::NotIsomorphic { reason: NonIsoReason::NoInvertibleSample { samples: hom.len() + ISO_SAMPLES } })
}

#[derive(Clone, Debug)]
pub struct OmegaOrbit {
    /// `M, Ω(M), Ω²(M), ...` as far as computed.
    pub modules: Vec<RightModule>,
    /// Least `p` with `Ω^p(M) ≅ M`, if found within the bound.
    pub period: Option<usize>,
    pub witness: Option<ModuleMap>,
    /// False when a step was ruled out only by sampling.
    pub exact: bool,
}

pub fn omega_orbit(a: &FiniteDimAlgebra, m: &RightModule, max_steps: usize) -> Result<OmegaOrbit> {
    if max_steps == 0 {
        return Err(Error::Input("the step bound must be at least 1".into()));
    }
    let mut modules = vec![m.clone()];
    let mut exact = true;
    for p in 1..=max_steps {
        let next = omega(a, modules.last().expect("nonempty"))?;
        let done = next.dim() == 0;
        let verdict = if done { None } else { Some(iso_test(a, &next, m)?) };
        modules.push(next);
        match verdict {
            None => break,
            Some(IsoVerdict::Isomorphic { witness }) => {
                return Ok(OmegaOrbit { modules, period: Some(p), witness: Some(witness), exact });
            }
            Some(IsoVerdict::NotIsomorphic { reason }) => exact &= reason.is_proof(),
        }
    }
    Ok(OmegaOrbit { modules, period: None, witness: None, exact })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Zero,
    /// `End(M)` modulo its radical is one-dimensional.
    Indecomposable,
    /// An endomorphism with a nontrivial Fitting decomposition `M = K + I`;
    /// the dimension vectors of `K` and `I`.
    Decomposable { parts: [Vec<usize>; 2] },
    /// `End(M)` is not split local and no splitting endomorphism was found.
    Undetermined,
}

pub fn decomposition(a: &FiniteDimAlgebra, m: &RightModule) -> Result<Decomposition> {
    if m.dim() == 0 {
        return Ok(Decomposition::Zero);
    }
    let end = Endomorphisms::new(a, m)?;
    if end.gram_rank == 1 {
        return Ok(Decomposition::Indecomposable);
    }
    let k = end.basis.len();
    let mut candidates: Vec<ModuleMap> = end.basis.clone();
    for i in 0..k {
        for j in i + 1..k {
            candidates.push(ModuleMap::combination(&[end.basis[i].clone(), end.basis[j].clone()], &[Q::one(), Q::one()]));
        }
    }
    let power = m.dims.iter().copied().max().unwrap_or(0).max(1);
    for phi in &candidates {
        for lambda in rational_eigenvalues(phi) {
            let shifted: Vec<Matrix> = phi
                .blocks
                .iter()
                .map(|b| {
                    let mut s = b.clone();
                    s.add_scaled(&Matrix::identity(b.rows()), &-lambda.clone());
                    let mut acc = Matrix::identity(b.rows());
                    for _ in 0..power {
                        acc = acc.mul(&s);
                    }
                    acc
                })
                .collect();
            let image: Vec<usize> = shifted.iter().map(Matrix::rank).collect();
            let total: usize = image.iter().sum();
            if total > 0 && total < m.dim() {
                let kernel = m.dims.iter().zip(&image).map(|(d, r)| d - r).collect();
                return Ok(Decomposition::Decomposable { parts: [kernel, image] });
            }
        }
    }
    Ok(Decomposition::Undetermined)
}

/// Coefficients of the characteristic polynomial, lowest degree first
/// (Faddeev-LeVerrier, exact in characteristic zero).
fn char_poly(x: &Matrix) -> Vec<Q> {
    let n = x.rows();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = x.mul(&mk);
        next.add_scaled(&Matrix::identity(n), &c[n + 1 - k]);
        mk = next;
        let am = x.mul(&mk);
        let tr: Q = (0..n).map(|i| am.get(i, i).clone()).fold(Q::zero(), |s, t| s + t);
        c[n - k] = -tr / Q::from_integer(BigInt::from(k));
    }
    c
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n > 0 && n <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational eigenvalues of a module endomorphism, by the rational root test
/// on the characteristic polynomial of each block.
fn rational_eigenvalues(phi: &ModuleMap) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for b in &phi.blocks {
        if b.rows() == 0 {
            continue;
        }
        let c = char_poly(b);
        let lcm = c.iter().fold(BigInt::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
        let low = ints.iter().position(|x| !x.is_zero()).expect("monic polynomial");
        if low > 0 && !out.contains(&Q::zero()) {
            out.push(Q::zero());
        }
        let (Some(ps), Some(qs)) = (divisors(&ints[low]), divisors(&ints[ints.len() - 1])) else {
            continue;
        };
        for &p in &ps {
            for &d in &qs {
                for sign in [1i64, -1] {
                    let r = Q::new(BigInt::from(p) * sign, BigInt::from(d));
                    if out.contains(&r) {
                        continue;
                    }
                    let mut val = Q::zero();
                    for coeff in c.iter().rev() {
                        val = val * &r + coeff;
                    }
                    if val.is_zero() {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// `dim Hom(W, M)` minus the dimension of the maps factoring through a projective.
pub fn stable_hom_dim(a: &FiniteDimAlgebra, w: &RightModule, m: &RightModule) -> Result<usize> {
    let cover = projective_cover(a, m)?;
    let wcover = projective_cover(a, w)?;
    let all = hom_with_cover(a, &wcover, m);
    let through = hom_with_cover(a, &wcover, cover.projective.module());
    let mut span = Echelon::new(w.dims().iter().zip(m.dims()).map(|(x, y)| x * y).sum());
    for h in &through {
        span.insert(&h.compose(&cover.surjection).flatten());
    }
    Ok(all.len() - span.rank())
}

/// `dim Ext¹(U, V)`: the cokernel of `Hom(P, V) -> Hom(Ω(U), V)` for the projective cover `P` of `U`.
pub fn ext1_dim(a: &FiniteDimAlgebra, u: &RightModule, v: &RightModule) -> Result<usize> {
    let cover = projective_cover(a, u)?;
    let on_kernel = hom_space(a, &cover.kernel, v)?;
    let from_p = hom_space(a, cover.projective.module(), v)?;
    let mut span = Echelon::new(cover.kernel.dims().iter().zip(v.dims()).map(|(x, y)| x * y).sum());
    for h in &from_p {
        span.insert(&cover.inclusion.compose(h).flatten());
    }
    Ok(on_kernel.len() - span.rank())
}

/// A module given on the command line: `simple:i`, `projective:i`,
/// `arrow:a`, `middle:i`, or `i: x, y, ...` for the submodule of `e_i H`
/// generated by the listed elements.
pub fn parse_module_spec(a: &FiniteDimAlgebra, text: &str) -> Result<RightModule> {
    let q = a.quiver();
    let vertex = |name: &str| {
        q.vertex_id(name.trim())
            .filter(|v| a.vertices().contains(v))
            .ok_or_else(|| Error::Input(format!("unknown vertex {:?}", name.trim())))
    };
    let (head, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Input(format!("module spec {text:?} has no ':'")))?;
    match head.trim() {
        "simple" => Ok(simple_module(a, vertex(rest)?)),
        "projective" => Ok(projective_module(a, vertex(rest)?)),
        "middle" => middle_module(a, vertex(rest)?),
        "arrow" => {
            let x = q.arrow_id(rest.trim()).ok_or_else(|| Error::Input(format!("unknown arrow {:?}", rest.trim())))?;
            arrow_module(a, x)
        }
        v => {
            let v = vertex(v)?;
            let mut gens = Vec::new();
            for part in rest.split(',') {
                let l = LinComb::parse(q, part.trim())?;
                if l.terms().any(|(p, _)| p.source != v) {
                    return Err(Error::Input(format!("{} does not start at {}", part.trim(), q.vertex_name(v))));
                }
                gens.push(vec![a.element(&l)]);
            }
            submodule(a, &[v], &gens)
        }
    }
}

/// Arrows outside the triangle set that are neither border loops nor
/// virtual loops with `m n = 1`; for these `Ω(βH) ≅ f(β)H`.
pub fn periodic_arrows(data: &BiserialQuiverData) -> Vec<ArrowId> {
    let cls = data.classify_arrows();
    (0..data.quiver().num_arrows())
        .filter(|&x| !data.in_t(x) && !data.is_border(x) && cls.virtual_kind[x] != Some(VirtualKind::Biserial))
        .collect()
}

/// The end terms of the sequence `0 -> V -> M_i -> U -> 0` at a hybrid
/// vertex `i`, where `α` is the arrow at `i` in the triangle set:
/// `U = αH / αf(α)H` and `V = ᾱH / soc`.
pub fn hybrid_end_terms(data: &BiserialQuiverData, a: &FiniteDimAlgebra, i: VertexId) -> Result<(RightModule, RightModule)> {
    let q = data.quiver();
    let out = q.out_arrows(i);
    let inside: Vec<ArrowId> = out.iter().copied().filter(|&x| data.in_t(x)).collect();
    if out.len() != 2 || inside.len() != 1 {
        return Err(Error::Input(format!("vertex {} is not a hybrid vertex", q.vertex_name(i))));
    }
    let alpha = inside[0];
    let product = a.mul(&a.arrow_element(alpha), &a.arrow_element(data.f().apply(alpha)));
    let u = subquotient(a, &[i], &[vec![a.arrow_element(alpha)]], &[vec![product]])?;
    let bar = arrow_module(a, data.bar(alpha))?;
    let soc = bar.socle(a);
    Ok((u, bar.quotient(a, &soc).0))
}
