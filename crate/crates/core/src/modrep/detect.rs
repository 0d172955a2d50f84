//! Detecting modules of Ω-period at most 2: the cyclic modules `θH` with
//! `θ = p + x q`, and for a component of the separated quiver the modules
//! `S_x H` and `T_x H` given by two `r × r` matrices over the algebra.

use super::{iso_test, omega, subquotient, RightModule};
use crate::algebra::{is_zero_vec, FiniteDimAlgebra};
use crate::data::BiserialQuiverData;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::path::Path;
use crate::quiver::{ArrowId, VertexId};
use crate::scalar::Q;
use num_traits::{One, Zero};

/// `θ = p + x q` and `ψ = c_α p̂ − x⁻¹ c_ᾱ q̂` where `B_α = p p̂` and `B_ᾱ = q q̂`.
#[derive(Clone, Debug)]
pub struct CyclicDetector {
    pub vertex: VertexId,
    pub target: VertexId,
    pub p: Path,
    pub q: Path,
    pub p_hat: Path,
    pub q_hat: Path,
    pub x: Q,
    pub theta: Vec<Q>,
    pub psi: Vec<Q>,
    /// Hypotheses that do not hold: the four zero products, the two
    /// dimension counts, and the arrow types.
    pub failures: Vec<String>,
    pub products_vanish: bool,
}

impl CyclicDetector {
    pub fn hypotheses_hold(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn theta_module(&self, a: &FiniteDimAlgebra) -> Result<RightModule> {
        super::cyclic_module(a, self.vertex, &self.theta)
    }

    pub fn psi_module(&self, a: &FiniteDimAlgebra) -> Result<RightModule> {
        super::cyclic_module(a, self.target, &self.psi)
    }
}

fn initial_arrow(data: &BiserialQuiverData, p: &Path, what: &str) -> Result<ArrowId> {
    let first = *p.arrows.first().ok_or_else(|| Error::Input(format!("{what} is stationary")))?;
    let b = data.b_path(first);
    if p.len() >= b.len() || b.prefix(p.len()) != *p {
        return Err(Error::Input(format!(
            "{} is not an initial submonomial of A_{}",
            p.display(data.quiver()),
            data.quiver().arrow_name(first)
        )));
    }
    Ok(first)
}

pub fn build_cyclic_detector(
    data: &BiserialQuiverData,
    a: &FiniteDimAlgebra,
    p: &Path,
    q: &Path,
    x: &Q,
) -> Result<CyclicDetector> {
    let quiver = data.quiver();
    if x.is_zero() {
        return Err(Error::Input("the parameter x must be nonzero".into()));
    }
    let alpha = initial_arrow(data, p, "p")?;
    let alpha_bar = initial_arrow(data, q, "q")?;
    if data.bar(alpha) != alpha_bar {
        return Err(Error::Input("p and q must start with the two arrows at one vertex".into()));
    }
    let (i, j) = (p.source, p.target(quiver));
    if q.target(quiver) != j {
        return Err(Error::Input("p and q must end at the same vertex".into()));
    }
    let (bp, bq) = (data.b_path(alpha), data.b_path(alpha_bar));
    let p_hat = bp.suffix(bp.len() - p.len(), quiver);
    let q_hat = bq.suffix(bq.len() - q.len(), quiver);

    let el = |path: &Path| a.path_element(path);
    let mut theta = el(p);
    crate::algebra::add_scaled(&mut theta, &el(q), x);
    let mut psi = el(&p_hat);
    for c in psi.iter_mut() {
        *c *= data.c(alpha);
    }
    crate::algebra::add_scaled(&mut psi, &el(&q_hat), &-(data.c(alpha_bar) / x));

    let mut failures = Vec::new();
    let cls = data.classify_arrows();
    for arrow in [alpha, alpha_bar] {
        if cls.is_virtual(arrow) || cls.is_critical(arrow) {
            failures.push(format!("{} is virtual or critical", quiver.arrow_name(arrow)));
        }
    }
    for (l, r, name) in [(p, &q_hat, "p q^"), (q, &p_hat, "q p^"), (&p_hat, q, "p^ q"), (&q_hat, p, "q^ p")] {
        if !is_zero_vec(&a.mul(&el(l), &el(r))) {
            failures.push(format!("{name} is nonzero"));
        }
    }
    let detector = CyclicDetector {
        vertex: i,
        target: j,
        p: p.clone(),
        q: q.clone(),
        p_hat,
        q_hat,
        x: x.clone(),
        products_vanish: is_zero_vec(&a.mul(&theta, &psi)) && is_zero_vec(&a.mul(&psi, &theta)),
        theta,
        psi,
        failures,
    };
    let (dt, dp) = (detector.theta_module(a)?.dim(), detector.psi_module(a)?.dim());
    let mut detector = detector;
    if dt != detector.p_hat.len() + detector.q_hat.len() {
        detector.failures.push(format!("dim θH = {dt}, expected |p^| + |q^|"));
    }
    if dp != detector.p.len() + detector.q.len() {
        detector.failures.push(format!("dim ψH = {dp}, expected |p| + |q|"));
    }
    Ok(detector)
}

/// Pairs `(p, q)` of proper initial submonomials of `A_α` and `A_ᾱ` ending at
/// a common vertex, for the arrows `α < ᾱ` starting at `i`.
pub fn cyclic_candidates(data: &BiserialQuiverData, i: VertexId) -> Vec<(Path, Path)> {
    let q = data.quiver();
    let cls = data.classify_arrows();
    let out = q.out_arrows(i);
    let [alpha, alpha_bar] = out[..] else {
        return Vec::new();
    };
    if [alpha, alpha_bar].iter().any(|&x| cls.is_virtual(x) || cls.is_critical(x)) {
        return Vec::new();
    }
    let (ap, aq) = (data.a_path(alpha), data.a_path(alpha_bar));
    let mut pairs = Vec::new();
    for lp in 1..ap.len() {
        for lq in 1..aq.len() {
            let (p, r) = (ap.prefix(lp), aq.prefix(lq));
            if p.target(q) == r.target(q) {
                pairs.push((p, r));
            }
        }
    }
    pairs
}

/// `i_1 -α_1-> j_1 <-β_1- i_2 -α_2-> j_2 ... j_r <-β_r- i_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedComponent {
    pub sources: Vec<VertexId>,
    pub targets: Vec<VertexId>,
    pub alphas: Vec<ArrowId>,
    pub betas: Vec<ArrowId>,
}

impl SeparatedComponent {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn display(&self, a: &FiniteDimAlgebra) -> String {
        let q = a.quiver();
        let mut s = String::new();
        for k in 0..self.len() {
            s += &format!(
                "{} -{}-> {} <-{}- ",
                q.vertex_name(self.sources[k]),
                q.arrow_name(self.alphas[k]),
                q.vertex_name(self.targets[k]),
                q.arrow_name(self.betas[k])
            );
        }
        s + q.vertex_name(self.sources[0])
    }
}

/// Components of the separated quiver of the Gabriel quiver, which must be 2-regular.
pub fn separated_components(a: &FiniteDimAlgebra) -> Result<Vec<SeparatedComponent>> {
    let q = a.quiver();
    let arrows = a.gabriel_arrows();
    let out_of = |v: VertexId| arrows.iter().copied().filter(|&x| q.source(x) == v).collect::<Vec<_>>();
    let into = |v: VertexId| arrows.iter().copied().filter(|&x| q.target(x) == v).collect::<Vec<_>>();
    for &v in a.vertices() {
        if out_of(v).len() != 2 || into(v).len() != 2 {
            return Err(Error::Input(format!("the Gabriel quiver is not 2-regular at {}", q.vertex_name(v))));
        }
    }
    let other = |pair: Vec<ArrowId>, x: ArrowId| if pair[0] == x { pair[1] } else { pair[0] };
    let mut used = vec![false; q.num_arrows()];
    let mut comps = Vec::new();
    for &start in &arrows {
        if used[start] {
            continue;
        }
        let mut c = SeparatedComponent { sources: vec![], targets: vec![], alphas: vec![], betas: vec![] };
        let mut alpha = start;
        loop {
            let j = q.target(alpha);
            let beta = other(into(j), alpha);
            used[alpha] = true;
            used[beta] = true;
            c.sources.push(q.source(alpha));
            c.targets.push(j);
            c.alphas.push(alpha);
            c.betas.push(beta);
            alpha = other(out_of(q.source(beta)), beta);
            if alpha == start {
                break;
            }
        }
        comps.push(c);
    }
    Ok(comps)
}

/// The matrices `S_x` (columns `z_ν`, entries `S[ν][μ]` in `e_{i_ν} H e_{j_μ}`)
/// and `T_x` (columns `v_ν`, entries `T[ν][μ]` in `e_{j_ν} H e_{i_μ}`). For a
/// component with `r = 1` they are the 1 × 1 matrices `θ = α_1 - x β_1` and
/// `ψ` of the cyclic detector with `p = α_1`, `q = β_1` and parameter `-x`.
#[derive(Clone, Debug)]
pub struct DetectorPair {
    pub component: SeparatedComponent,
    pub x: Q,
    pub s: Vec<Vec<Vec<Q>>>,
    pub t: Vec<Vec<Vec<Q>>>,
    pub cyclic: Option<CyclicDetector>,
    pub st_zero: bool,
    pub ts_zero: bool,
}

fn mat_mul(a: &FiniteDimAlgebra, x: &[Vec<Vec<Q>>], y: &[Vec<Vec<Q>>]) -> Vec<Vec<Vec<Q>>> {
    let r = x.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|k| {
                    let mut acc = a.zero();
                    for j in 0..r {
                        crate::algebra::add_assign(&mut acc, &a.mul(&x[i][j], &y[j][k]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn all_zero(m: &[Vec<Vec<Q>>]) -> bool {
    m.iter().flatten().all(|x| is_zero_vec(x))
}

pub fn build_detecting_pair(
    data: &BiserialQuiverData,
    a: &FiniteDimAlgebra,
    component: &SeparatedComponent,
    x: &Q,
) -> Result<DetectorPair> {
    if x.is_zero() {
        return Err(Error::Input("the parameter x must be nonzero".into()));
    }
    let q = data.quiver();
    let r = component.len();
    if r == 1 {
        let p = Path::arrow(q, component.alphas[0]);
        let qq = Path::arrow(q, component.betas[0]);
        let cyc = build_cyclic_detector(data, a, &p, &qq, &-x.clone())?;
        let s = vec![vec![cyc.theta.clone()]];
        let t = vec![vec![cyc.psi.clone()]];
        return Ok(DetectorPair {
            component: component.clone(),
            x: x.clone(),
            st_zero: all_zero(&mat_mul(a, &s, &t)),
            ts_zero: all_zero(&mat_mul(a, &t, &s)),
            s,
            t,
            cyclic: Some(cyc),
        });
    }
    let arrow = |y: ArrowId, c: Q| {
        let mut e = a.arrow_element(y);
        e.iter_mut().for_each(|v| *v *= &c);
        e
    };
    // c_y A_{g(y)} scaled by `k`.
    let tail = |y: ArrowId, k: Q| {
        let mut e = a.path_element(&data.a_path(data.g().apply(y)));
        let c = data.c(y) * k;
        e.iter_mut().for_each(|v| *v *= &c);
        e
    };
    let one = Q::one();
    let mut s = vec![vec![a.zero(); r]; r];
    let mut t = vec![vec![a.zero(); r]; r];
    for nu in 0..r {
        let next = (nu + 1) % r;
        s[nu][nu] = arrow(component.alphas[nu], one.clone());
        let beta_coeff = if nu == 0 { -x.clone() } else { -one.clone() };
        s[next][nu] = arrow(component.betas[nu], beta_coeff);
        t[nu][nu] = tail(component.alphas[nu], one.clone());
        let prev = (nu + r - 1) % r;
        let k = if nu == 1 { x.recip() } else { one.clone() };
        t[prev][nu] = tail(component.betas[prev], k);
    }
    Ok(DetectorPair {
        component: component.clone(),
        x: x.clone(),
        st_zero: all_zero(&mat_mul(a, &s, &t)),
        ts_zero: all_zero(&mat_mul(a, &t, &s)),
        s,
        t,
        cyclic: None,
    })
}

impl DetectorPair {
    pub fn products_vanish(&self) -> bool {
        self.st_zero && self.ts_zero
    }

    /// `W_x = S_x H` inside `e_{i_1} H + ... + e_{i_r} H`.
    pub fn w_module(&self, a: &FiniteDimAlgebra) -> Result<RightModule> {
        let gens: Vec<Vec<Vec<Q>>> =
            (0..self.s.len()).map(|col| self.s.iter().map(|row| row[col].clone()).collect()).collect();
        subquotient(a, &self.component.sources, &gens, &[])
    }

    /// `U_x = T_x H` inside `e_{j_1} H + ... + e_{j_r} H`.
    pub fn u_module(&self, a: &FiniteDimAlgebra) -> Result<RightModule> {
        let gens: Vec<Vec<Vec<Q>>> =
            (0..self.t.len()).map(|col| self.t.iter().map(|row| row[col].clone()).collect()).collect();
        subquotient(a, &self.component.targets, &gens, &[])
    }

    /// Whether `Ω(W_x) ≅ U_x` and `Ω(U_x) ≅ W_x`, with exact certificates.
    pub fn syzygies_swap(&self, a: &FiniteDimAlgebra) -> Result<(bool, bool)> {
        let (w, u) = (self.w_module(a)?, self.u_module(a)?);
        Ok((iso_test(a, &omega(a, &w)?, &u)?.is_isomorphic(), iso_test(a, &omega(a, &u)?, &w)?.is_isomorphic()))
    }
}

/// `U_x` written down directly: one copy of `K` at each vertex of the
/// component, every arrow of the component acting as the identity except
/// `α_1`, which acts by `x`.
pub fn string_module(a: &FiniteDimAlgebra, component: &SeparatedComponent, x: &Q) -> Result<RightModule> {
    let q = a.quiver();
    let r = component.len();
    let mut dims = vec![0; q.num_vertices()];
    // Positions of v_ν and w_ν in the spaces at their vertices.
    let mut vpos = Vec::with_capacity(r);
    let mut wpos = Vec::with_capacity(r);
    for nu in 0..r {
        vpos.push(dims[component.sources[nu]]);
        dims[component.sources[nu]] += 1;
    }
    for nu in 0..r {
        wpos.push(dims[component.targets[nu]]);
        dims[component.targets[nu]] += 1;
    }
    let mut actions: Vec<Matrix> =
        (0..q.num_arrows()).map(|y| Matrix::zeros(dims[q.source(y)], dims[q.target(y)])).collect();
    for nu in 0..r {
        let scale = if nu == 0 { x.clone() } else { Q::one() };
        actions[component.alphas[nu]].set(vpos[nu], wpos[nu], scale);
        actions[component.betas[nu]].set(vpos[(nu + 1) % r], wpos[nu], Q::one());
    }
    RightModule::new(a, dims, actions)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub annihilated_by_socle: bool,
    pub image_s_is_kernel_t: bool,
    pub image_t_is_kernel_s: bool,
    /// `Ker S_x` equals the socle of `M` at the vertices `i_ν`.
    pub kernel_s_is_socle: bool,
    /// `Ker T_x` equals the radical of `M` at the vertices `j_ν`.
    pub kernel_t_is_radical: bool,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.image_s_is_kernel_t && self.image_t_is_kernel_s
    }

    pub fn kernel_identities(&self) -> bool {
        self.kernel_s_is_socle && self.kernel_t_is_radical
    }
}

fn same_space(x: &Echelon, y: &Echelon) -> bool {
    x.rank() == y.rank() && x.rows().iter().all(|r| y.contains(r))
}

/// The block matrix of `m -> m X` from `⊕ M e_{from_ν}` to `⊕ M e_{to_μ}`.
fn block_map(a: &FiniteDimAlgebra, m: &RightModule, x: &[Vec<Vec<Q>>], from: &[VertexId], to: &[VertexId]) -> Matrix {
    let d = m.dims();
    let rows: usize = from.iter().map(|&v| d[v]).sum();
    let cols: usize = to.iter().map(|&v| d[v]).sum();
    let mut out = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (b, &s) in from.iter().enumerate() {
        let mut c0 = 0;
        for (c, &t) in to.iter().enumerate() {
            let blk = m.element_action(a, &x[b][c], s, t);
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    out.set(r0 + i, c0 + j, blk.get(i, j).clone());
                }
            }
            c0 += d[t];
        }
        r0 += d[s];
    }
    out
}

/// Places subspaces of `M e_{v_ν}` into `⊕ M e_{v_ν}`.
fn stacked(m: &RightModule, vertices: &[VertexId], parts: &[Echelon]) -> Echelon {
    let d = m.dims();
    let total: usize = vertices.iter().map(|&v| d[v]).sum();
    let mut out = Echelon::new(total);
    let mut off = 0;
    for &v in vertices {
        for row in parts[v].rows() {
            let mut full = vec![Q::zero(); total];
            full[off..off + d[v]].clone_from_slice(row);
            out.insert(&full);
        }
        off += d[v];
    }
    out
}

fn row_space(m: &Matrix) -> Echelon {
    let mut e = Echelon::new(m.cols());
    for r in m.row_vecs() {
        e.insert(&r);
    }
    e
}

fn left_kernel(m: &Matrix) -> Echelon {
    let mut e = Echelon::new(m.rows());
    for r in m.left_nullspace() {
        e.insert(&r);
    }
    e
}

pub fn check_detector_exactness(a: &FiniteDimAlgebra, pair: &DetectorPair, m: &RightModule) -> ExactnessReport {
    let (src, tgt) = (&pair.component.sources, &pair.component.targets);
    let s = block_map(a, m, &pair.s, src, tgt);
    let t = block_map(a, m, &pair.t, tgt, src);
    let (ker_s, ker_t) = (left_kernel(&s), left_kernel(&t));
    ExactnessReport {
        annihilated_by_socle: m.annihilated_by_socle(a),
        image_s_is_kernel_t: same_space(&row_space(&s), &ker_t),
        image_t_is_kernel_s: same_space(&row_space(&t), &ker_s),
        kernel_s_is_socle: same_space(&ker_s, &stacked(m, src, &m.socle(a))),
        kernel_t_is_radical: same_space(&ker_t, &stacked(m, tgt, &m.radical(a))),
    }
}
