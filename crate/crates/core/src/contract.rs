//! Idempotent algebras `e L e`, where `e` is the sum of the idempotents at a
//! vertex set `G` of the quiver of `L`.
//!
//! Each arrow `a` starting in `G` contracts to the shortest path along its
//! `g`-cycle that ends in `G`. The contracted `f` sends a contracted arrow
//! to the contraction of `f` of its last arrow; weights and parameters are
//! inherited, and the triangle set consists of the uncontracted triangle
//! arrows whose `f`-image is also uncontracted. Generators whose products
//! do not yet satisfy the hybrid relations are corrected by elements of
//! `rad^2(e L e)`, found by solving linear systems, and border scalars are
//! read off from the squares of the loops. The result is checked by building
//! the contracted hybrid algebra `H` and verifying that the induced map
//! `H -> e L e` kills every relation and sends a basis of `H` to a basis of
//! `e L e`.

use crate::algebra::{add_scaled, build_algebra, is_zero_vec, FiniteDimAlgebra};
use crate::data::{BiserialQuiverData, VertexClass, Weights};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::path::{LinComb, Path};
use crate::perm::Permutation;
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::relations::generate_relations;
use crate::scalar::Q;
use num_traits::{One, Zero};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    /// Relations of the contracted algebra that do not vanish in `e L e`.
    pub failed_relations: Vec<String>,
    /// `(vertex, dim e_i H, dim e_i (e L e))`.
    pub vertex_dims: Vec<(String, usize, usize)>,
    pub tilde_dim: usize,
    pub corner_dim: usize,
    /// Rank of the image of a basis of `H` in `e L e`.
    pub image_rank: usize,
}

impl ContractionReport {
    pub fn verified(&self) -> bool {
        self.failed_relations.is_empty()
            && self.tilde_dim == self.corner_dim
            && self.image_rank == self.corner_dim
            && self.vertex_dims.iter().all(|(_, a, b)| a == b)
    }
}

#[derive(Clone, Debug)]
pub struct ContractionResult {
    /// Kept vertices of `L`, in the order of the contracted quiver.
    pub keep: Vec<VertexId>,
    pub data: BiserialQuiverData,
    /// The `g`-path in `L` contracted to each arrow (indexed by contracted arrow id).
    pub paths: Vec<Path>,
    /// The image of each contracted arrow in `L`, after corrections.
    pub embedding: Vec<Vec<Q>>,
    pub corrected: Vec<bool>,
    pub report: ContractionReport,
}

impl ContractionResult {
    /// A contracted arrow with `m n = 1` is a loop at a biserial vertex.
    pub fn single_weight_arrows_are_biserial_loops(&self) -> bool {
        let d = &self.data;
        let q = d.quiver();
        let vc = d.classify_vertices();
        (0..q.num_arrows())
            .filter(|&a| d.mn(a) == 1)
            .all(|a| q.source(a) == q.target(a) && vc[q.source(a)] == VertexClass::Biserial)
    }

    /// Every connected component has an arrow outside the triangle set.
    pub fn every_component_leaves_triangles(&self) -> bool {
        let q = self.data.quiver();
        q.components(|_| true)
            .iter()
            .all(|comp| (0..q.num_arrows()).any(|a| comp.contains(&q.source(a)) && !self.data.in_t(a)))
    }
}

struct Images<'a> {
    lambda: &'a FiniteDimAlgebra,
    keep: &'a [VertexId],
    emb: Vec<Vec<Q>>,
}

impl Images<'_> {
    fn path(&self, p: &Path) -> Vec<Q> {
        let mut x = self.lambda.idempotent(self.keep[p.source]);
        for &a in &p.arrows {
            x = self.lambda.mul(&x, &self.emb[a]);
        }
        x
    }

    fn lincomb(&self, l: &LinComb) -> Vec<Q> {
        let mut out = self.lambda.zero();
        for (p, c) in l.terms() {
            add_scaled(&mut out, &self.path(p), c);
        }
        out
    }
}

/// `e_u rad^2 e_v` of the algebra generated by `emb`, for all kept `u, v`.
fn radical_square(images: &Images, tq: &Quiver) -> HashMap<(VertexId, VertexId), Vec<Vec<Q>>> {
    let lambda = images.lambda;
    let nv = tq.num_vertices();
    let mut layer: HashMap<(VertexId, VertexId), Vec<Vec<Q>>> = HashMap::new();
    for a in 0..tq.num_arrows() {
        layer.entry((tq.source(a), tq.target(a))).or_default().push(images.emb[a].clone());
    }
    let mut acc: HashMap<(VertexId, VertexId), Echelon> = HashMap::new();
    for _ in 0..=lambda.dim() {
        let mut next: HashMap<(VertexId, VertexId), Echelon> = HashMap::new();
        for ((u, w), xs) in &layer {
            for a in tq.out_arrows(*w) {
                let v = tq.target(a);
                let e = next.entry((*u, v)).or_insert_with(|| Echelon::new(lambda.dim()));
                for x in xs {
                    let y = lambda.mul(x, &images.emb[a]);
                    if !is_zero_vec(&y) {
                        e.insert(&y);
                    }
                }
            }
        }
        let mut any = false;
        layer.clear();
        for (key, e) in next {
            if e.rank() == 0 {
                continue;
            }
            any = true;
            let total = acc.entry(key).or_insert_with(|| Echelon::new(lambda.dim()));
            for r in e.rows() {
                total.insert(r);
            }
            layer.insert(key, e.rows().to_vec());
        }
        if !any {
            break;
        }
    }
    let mut out = HashMap::new();
    for u in 0..nv {
        for v in 0..nv {
            out.insert((u, v), acc.get(&(u, v)).map(|e| e.rows().to_vec()).unwrap_or_default());
        }
    }
    out
}

/// `a f(a)` minus the triangle term, if any; the border term is not included.
fn residual(data: &BiserialQuiverData, images: &Images, a: ArrowId) -> Vec<Q> {
    let lambda = images.lambda;
    let mut r = lambda.mul(&images.emb[a], &images.emb[data.f().apply(a)]);
    if data.in_t(a) {
        let bar = data.bar(a);
        add_scaled(&mut r, &images.path(&data.a_path(bar)), &-data.c(bar).clone());
    }
    r
}

/// A correction of `a` from `rad^2`, or failing that, one that also uses
/// the parallel arrows.
fn find_correction(
    rad2: &HashMap<(VertexId, VertexId), Vec<Vec<Q>>>,
    images: &Images,
    tq: &Quiver,
    a: ArrowId,
    conds: &[Condition],
) -> Option<Vec<Q>> {
    let lambda = images.lambda;
    let inner = complement(rad2[&(tq.source(a), tq.target(a))].clone(), images, a);
    solve_correction(lambda, &inner, conds).or_else(|| solve_correction(lambda, &correction_space(rad2, images, tq, a), conds))
}

/// A subset of `space` spanning a complement of the image of `a`, so that a
/// correction never rescales or cancels the arrow itself.
fn complement(space: Vec<Vec<Q>>, images: &Images, a: ArrowId) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(images.lambda.dim());
    e.insert(&images.emb[a]);
    space.into_iter().filter(|y| e.insert(y)).collect()
}

/// `e_u rad^2 e_v` together with the other arrows parallel to `a`.
fn correction_space(
    rad2: &HashMap<(VertexId, VertexId), Vec<Vec<Q>>>,
    images: &Images,
    tq: &Quiver,
    a: ArrowId,
) -> Vec<Vec<Q>> {
    let (u, v) = (tq.source(a), tq.target(a));
    let mut space = rad2[&(u, v)].clone();
    space.extend((0..tq.num_arrows()).filter(|&z| z != a && tq.source(z) == u && tq.target(z) == v).map(|z| images.emb[z].clone()));
    complement(space, images, a)
}

/// Refits the parameters so that `c_a B_a = c_abar B_abar` holds at every
/// vertex. Orbits through triangle arrows keep their parameters; in each
/// remaining component the first orbit does. Changing generators by a
/// parallel arrow rescales the socle ratios, which is what this absorbs.
fn fit_parameters(data: &BiserialQuiverData, images: &Images) -> Result<BiserialQuiverData> {
    let q = data.quiver();
    let g = data.g();
    let reps: Vec<ArrowId> = g.cycles().iter().map(|c| c[0]).collect();
    let rep_index = |a: ArrowId| reps.iter().position(|&r| r == g.orbit_rep(a)).expect("orbit");
    let mut value: Vec<Option<Q>> = reps
        .iter()
        .map(|&r| g.orbit(r).iter().any(|&a| data.in_t(a)).then(|| data.c(r).clone()))
        .collect();
    // Edges: c[x] * ratio = c[bar x], where B_x = ratio * B_bar(x).
    let mut edges: Vec<(usize, usize, Q)> = Vec::new();
    for v in 0..q.num_vertices() {
        let out = q.out_arrows(v);
        let (x, y) = (out[0], out[1]);
        let (bx, by) = (images.path(&data.b_path(x)), images.path(&data.b_path(y)));
        let Some(k) = (0..by.len()).find(|&i| !by[i].is_zero()) else { return Ok(data.clone()) };
        let ratio = bx[k].clone() / by[k].clone();
        let mut check = bx.clone();
        add_scaled(&mut check, &by, &-ratio.clone());
        if !is_zero_vec(&check) || ratio.is_zero() {
            return Ok(data.clone());
        }
        edges.push((rep_index(x), rep_index(y), ratio));
    }
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for (x, y, r) in &edges {
                match (value[*x].clone(), value[*y].clone()) {
                    (Some(cx), None) => {
                        value[*y] = Some(cx * r.clone());
                        progress = true;
                    }
                    (None, Some(cy)) => {
                        value[*x] = Some(cy / r.clone());
                        progress = true;
                    }
                    (Some(cx), Some(cy)) if &cx * r != cy => return Ok(data.clone()),
                    _ => {}
                }
            }
        }
        match value.iter().position(Option::is_none) {
            Some(i) => value[i] = Some(data.c(reps[i]).clone()),
            None => break,
        }
    }
    let mut weights = data.weights();
    weights.c.clear();
    for (r, c) in reps.iter().zip(value) {
        weights.c.insert(*r, c.expect("assigned"));
    }
    BiserialQuiverData::new(q.clone(), data.f().clone(), weights, &data.triangles())
}

/// A condition `left * y * right = rhs` on a correction `y`.
struct Condition {
    left: Option<Vec<Q>>,
    right: Option<Vec<Q>>,
    rhs: Vec<Q>,
}

fn solve_correction(lambda: &FiniteDimAlgebra, space: &[Vec<Q>], conds: &[Condition]) -> Option<Vec<Q>> {
    if space.is_empty() {
        return None;
    }
    let n = lambda.dim();
    let rows: Vec<Vec<Q>> = space
        .iter()
        .map(|c| {
            conds
                .iter()
                .flat_map(|k| {
                    let mut x = c.clone();
                    if let Some(l) = &k.left {
                        x = lambda.mul(l, &x);
                    }
                    if let Some(r) = &k.right {
                        x = lambda.mul(&x, r);
                    }
                    x
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Q> = conds.iter().flat_map(|k| k.rhs.iter().cloned()).collect();
    let t = Matrix::from_rows(rows, conds.len() * n).solve_left(&rhs)?;
    let mut y = lambda.zero();
    for (tk, c) in t.iter().zip(space) {
        add_scaled(&mut y, c, tk);
    }
    Some(y)
}

/// Contracted data without border scalars, and the `g`-path of `L` behind
/// each contracted arrow.
fn tilde_combinatorics(data: &BiserialQuiverData, keep: &[VertexId]) -> Result<(BiserialQuiverData, Vec<Path>)> {
    let q = data.quiver();
    let (f, g) = (data.f(), data.g());
    let inside = |v: VertexId| keep.contains(&v);
    let mut paths: Vec<(String, Path)> = Vec::new();
    for a in 0..q.num_arrows() {
        if !inside(q.source(a)) {
            continue;
        }
        let mut arrows = vec![a];
        while !inside(q.target(*arrows.last().expect("nonempty"))) {
            arrows.push(g.apply(*arrows.last().expect("nonempty")));
        }
        let name = if arrows.len() == 1 { q.arrow_name(a).to_string() } else { format!("{}~", q.arrow_name(a)) };
        paths.push((name, Path { source: q.source(a), arrows }));
    }
    let vertices: Vec<String> = keep.iter().map(|&v| q.vertex_name(v).to_string()).collect();
    let tq = Quiver::new(
        vertices,
        paths
            .iter()
            .map(|(n, p)| (n.clone(), q.vertex_name(p.source).to_string(), q.vertex_name(p.target(q)).to_string()))
            .collect(),
    )?;
    // Quiver::new sorts arrows by name; reorder the paths to match.
    let mut by_id: Vec<Path> = vec![Path::stationary(0); tq.num_arrows()];
    let mut first_arrow: HashMap<ArrowId, ArrowId> = HashMap::new();
    for (n, p) in &paths {
        let id = tq.arrow_id(n).expect("tilde arrow");
        first_arrow.insert(p.arrows[0], id);
        by_id[id] = p.clone();
    }
    let images: Vec<ArrowId> = by_id.iter().map(|p| first_arrow[&f.apply(*p.arrows.last().expect("nonempty"))]).collect();
    let tf = Permutation::from_images(images)?;
    let mut weights = Weights::default();
    for (id, p) in by_id.iter().enumerate() {
        weights.m.insert(id, data.m(p.arrows[0]));
        weights.c.insert(id, data.c(p.arrows[0]).clone());
    }
    let triangles: Vec<ArrowId> = (0..tq.num_arrows())
        .filter(|&id| {
            let p = &by_id[id];
            p.arrows.len() == 1 && data.in_t(p.arrows[0]) && by_id[tf.apply(id)].arrows.len() == 1
        })
        .collect();
    let tilde = BiserialQuiverData::new(tq, tf, weights, &triangles)
        .map_err(|e| Error::Construction(format!("contracted data is not biserial: {e}")))?;
    Ok((tilde, by_id))
}

pub fn contract(data: &BiserialQuiverData, lambda: &FiniteDimAlgebra, keep: &[VertexId]) -> Result<ContractionResult> {
    let q = data.quiver();
    if keep.is_empty() {
        return Err(Error::Input("the vertex set is empty".into()));
    }
    if keep.iter().any(|&v| v >= q.num_vertices()) {
        return Err(Error::Input("the vertex set is not a subset of the quiver".into()));
    }
    let mut keep: Vec<VertexId> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();

    let (combinatorial, paths) = tilde_combinatorics(data, &keep)?;
    let tq = combinatorial.quiver().clone();
    let emb: Vec<Vec<Q>> = paths.iter().map(|p| lambda.path_element(p)).collect();
    let mut images = Images { lambda, keep: &keep, emb };
    let rad2 = radical_square(&images, &tq);
    let tf = combinatorial.f().clone();
    let tf_inv = tf.inverse();
    let mut corrected = vec![false; tq.num_arrows()];
    let mut border = vec![Q::zero(); tq.num_arrows()];

    for _ in 0..=3 * tq.num_arrows() {
        let mut changed = false;
        for a in 0..tq.num_arrows() {
            let d = tf.apply(a);
            if d == a {
                continue;
            }
            let r = residual(&combinatorial, &images, a);
            if is_zero_vec(&r) {
                continue;
            }
            // Correct the f-image d so that a * d vanishes, keeping the
            // relation starting with d unless d closes a 2-cycle.
            let mut conds = vec![Condition { left: Some(images.emb[a].clone()), right: None, rhs: r.clone() }];
            let dd = tf.apply(d);
            if dd != d && dd != a {
                conds.push(Condition { left: None, right: Some(images.emb[dd].clone()), rhs: residual(&combinatorial, &images, d) });
            }
            if let Some(y) = find_correction(&rad2, &images, &tq, d, &conds) {
                add_scaled(&mut images.emb[d], &y, &-Q::one());
                corrected[d] = true;
                changed = true;
                continue;
            }
            // Otherwise correct a itself from the right.
            let p = tf_inv.apply(a);
            let mut conds = vec![Condition { left: None, right: Some(images.emb[d].clone()), rhs: r }];
            if p != a && p != d {
                conds.push(Condition { left: Some(images.emb[p].clone()), right: None, rhs: residual(&combinatorial, &images, p) });
            }
            if let Some(y) = find_correction(&rad2, &images, &tq, a, &conds) {
                add_scaled(&mut images.emb[a], &y, &-Q::one());
                corrected[a] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let combinatorial = fit_parameters(&combinatorial, &images)?;
    // Border scalars: a^2 - (triangle term) = b * B_bar(a).
    for a in 0..tq.num_arrows() {
        if tf.apply(a) != a {
            continue;
        }
        let r = residual(&combinatorial, &images, a);
        if is_zero_vec(&r) {
            continue;
        }
        let socle = images.path(&combinatorial.b_path(combinatorial.bar(a)));
        if let Some(k) = (0..r.len()).find(|&i| !socle[i].is_zero()) {
            let b = r[k].clone() / socle[k].clone();
            let mut check = r.clone();
            add_scaled(&mut check, &socle, &-b.clone());
            if is_zero_vec(&check) {
                border[a] = b;
            }
        }
    }

    let mut weights = combinatorial.weights();
    for (a, b) in border.iter().enumerate() {
        if !b.is_zero() {
            weights.b.insert(a, b.clone());
        }
    }
    let tilde = BiserialQuiverData::new(tq.clone(), tf.clone(), weights, &combinatorial.triangles())?;
    let report = verify(&tilde, lambda, &keep, &images)?;
    let embedding = images.emb;
    Ok(ContractionResult { keep, data: tilde, paths, embedding, corrected, report })
}

fn verify(tilde: &BiserialQuiverData, lambda: &FiniteDimAlgebra, keep: &[VertexId], images: &Images) -> Result<ContractionReport> {
    let tq = tilde.quiver();
    let rels = generate_relations(tilde, &tilde.classify_arrows());
    let failed_relations: Vec<String> = rels
        .relations
        .iter()
        .filter(|r| !is_zero_vec(&images.lincomb(&r.generator)))
        .map(|r| r.generator.display(tq))
        .collect();
    let h = build_algebra(tilde, &rels)?;
    let mut image = Echelon::new(lambda.dim());
    for p in h.basis() {
        image.insert(&images.path(&p));
    }
    let corner = |i: VertexId| keep.iter().map(|&j| lambda.corner(i, j).len()).sum::<usize>();
    let vertex_dims: Vec<(String, usize, usize)> = h
        .dimension_vector()
        .into_iter()
        .map(|(v, d)| (tq.vertex_name(v).to_string(), d, corner(keep[v])))
        .collect();
    Ok(ContractionReport {
        failed_relations,
        corner_dim: keep.iter().map(|&i| corner(i)).sum(),
        tilde_dim: h.dim(),
        image_rank: image.rank(),
        vertex_dims,
    })
}
