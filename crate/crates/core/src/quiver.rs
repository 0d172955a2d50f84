//! Finite quivers with named vertices and arrows.

use crate::error::{Error, Result};
use std::collections::HashMap;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// Vertices keep their input order; arrows are sorted by name so that arrow
/// ids follow the canonical name order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    /// `arrows` are `(name, source, target)` triples over vertex names.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate vertex name {v:?}")));
            }
        }
        let mut list = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let lookup = |v: &str| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Input(format!("arrow {name:?} uses unknown vertex {v:?}")))
            };
            let source = lookup(&s)?;
            let target = lookup(&t)?;
            list.push(Arrow { name, source, target });
        }
        list.sort_by(|a, b| a.name.cmp(&b.name));
        let mut arrow_index = HashMap::new();
        for (i, a) in list.iter().enumerate() {
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate arrow name {:?}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows: list, vertex_index, arrow_index })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a].target
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn out_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn in_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn is_two_regular(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.out_arrows(v).len() == 2 && self.in_arrows(v).len() == 2)
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        self.components(|_| true).len() <= 1
    }

    /// Connected components of the undirected graph on all vertices using
    /// only the arrows accepted by `keep`. Each component is sorted.
    pub fn components(&self, keep: impl Fn(ArrowId) -> bool) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if keep(i) {
                let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut groups: Vec<Vec<VertexId>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            let k = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(v);
        }
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn arrows_sorted_by_name() {
        let q = Quiver::new(
            vec![s("1"), s("2")],
            vec![(s("b"), s("1"), s("2")), (s("a"), s("1"), s("1")), (s("c"), s("2"), s("1")), (s("d"), s("2"), s("2"))],
        )
        .unwrap();
        assert_eq!(q.arrow_name(0), "a");
        assert_eq!(q.arrow_id("d"), Some(3));
        assert!(q.is_two_regular());
        assert!(q.is_connected());
        assert!(Quiver::new(vec![s("1")], vec![(s("a"), s("1"), s("2"))]).is_err());
        assert!(Quiver::new(vec![s("1")], vec![(s("a"), s("1"), s("1")), (s("a"), s("1"), s("1"))]).is_err());
    }
}
