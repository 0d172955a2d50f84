//! Recovering a hybrid algebra `H` from the weighted surface algebra of its
//! star construction: `H` is isomorphic to `e L e` where `L` is built from
//! the star data and `e` is the sum of the idempotents at the vertices of `H`.
//!
//! The check contracts `L` onto those vertices and maps the contracted
//! algebra to `H` by sending the contraction of `a' a''` to `a` and every
//! other arrow to itself. The map is an isomorphism when every contracted
//! relation vanishes in `H` and the dimensions agree vertex by vertex.

use crate::algebra::{add_scaled, build_algebra, is_zero_vec, FiniteDimAlgebra};
use crate::contract::{contract, ContractionResult};
use crate::data::BiserialQuiverData;
use crate::error::{Error, Result};
use crate::path::{LinComb, Path};
use crate::quiver::{ArrowId, VertexId};
use crate::relations::generate_relations;
use crate::scalar::Q;
use crate::star::{star, StarResult};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub star_dim: usize,
    pub hybrid_dim: usize,
    pub corner_dim: usize,
    /// `(vertex, dim e_i H, dim e_i (e L e))`.
    pub vertex_dims: Vec<(String, usize, usize)>,
    pub contraction_verified: bool,
    /// Contracted relations whose image in `H` is nonzero.
    pub failed_relations: Vec<String>,
}

impl RoundTripReport {
    pub fn isomorphic(&self) -> bool {
        self.contraction_verified
            && self.failed_relations.is_empty()
            && self.hybrid_dim == self.corner_dim
            && self.vertex_dims.iter().all(|(_, a, b)| a == b)
    }
}

#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub star: StarResult,
    pub contraction: ContractionResult,
    /// Arrow of `H` for each contracted arrow.
    pub arrow_map: Vec<ArrowId>,
    pub report: RoundTripReport,
}

fn image_in(h: &FiniteDimAlgebra, arrow_map: &[ArrowId], vertex_map: &[VertexId], l: &LinComb) -> Vec<Q> {
    let mut out = h.zero();
    for (p, c) in l.terms() {
        let mapped = Path { source: vertex_map[p.source], arrows: p.arrows.iter().map(|&a| arrow_map[a]).collect() };
        add_scaled(&mut out, &h.path_element(&mapped), c);
    }
    out
}

pub fn roundtrip(data: &BiserialQuiverData, h: &FiniteDimAlgebra) -> Result<RoundTrip> {
    let q = data.quiver();
    let st = star(data)?;
    let rels = generate_relations(&st.data, &st.data.classify_arrows());
    let lambda = build_algebra(&st.data, &rels)?;
    let sq = st.data.quiver();
    let keep: Vec<VertexId> =
        q.vertex_names().iter().map(|v| sq.vertex_id(v).expect("original vertex survives the star construction")).collect();
    let contraction = contract(&st.data, &lambda, &keep)?;

    let tq = contraction.data.quiver();
    let mut arrow_map = Vec::with_capacity(tq.num_arrows());
    for a in 0..tq.num_arrows() {
        let name = tq.arrow_name(a);
        let base = name.strip_suffix('~').unwrap_or(name);
        let original = st
            .origin(base)
            .and_then(|o| q.arrow_id(o))
            .ok_or_else(|| Error::Construction(format!("the contracted arrow {name} has no original arrow")))?;
        arrow_map.push(original);
    }
    let vertex_map: Vec<VertexId> =
        (0..tq.num_vertices()).map(|v| q.vertex_id(tq.vertex_name(v)).expect("kept vertex")).collect();

    let tilde_rels = generate_relations(&contraction.data, &contraction.data.classify_arrows());
    let failed_relations = tilde_rels
        .relations
        .iter()
        .filter(|r| !is_zero_vec(&image_in(h, &arrow_map, &vertex_map, &r.generator)))
        .map(|r| r.generator.display(tq))
        .collect();
    let vertex_dims: Vec<(String, usize, usize)> = contraction
        .report
        .vertex_dims
        .iter()
        .enumerate()
        .map(|(v, (name, _, corner))| (name.clone(), h.projective_indices(vertex_map[v]).len(), *corner))
        .collect();
    let report = RoundTripReport {
        star_dim: lambda.dim(),
        hybrid_dim: h.dim(),
        corner_dim: contraction.report.corner_dim,
        vertex_dims,
        contraction_verified: contraction.report.verified(),
        failed_relations,
    };
    Ok(RoundTrip { star: st, contraction, arrow_map, report })
}
