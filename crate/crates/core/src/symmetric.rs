//! Existence of a nondegenerate symmetric associative form.
//!
//! For a basic algebra `H` with one-dimensional simples, a symmetric
//! functional `phi` (one vanishing on `[H, H]`) gives a nondegenerate form
//! exactly when `phi` is nonzero on every `soc(H_H) e_j`, and the algebra can
//! only be symmetric when each `soc(H_H) e_j` is one-dimensional. Both
//! conditions are decided by exact linear algebra, so every verdict carries a
//! checkable certificate.

use crate::algebra::{is_zero_vec, FiniteDimAlgebra};
use crate::linalg::{intersect_spaces, Echelon, Matrix};
use crate::quiver::{ArrowId, VertexId};
use crate::scalar::Q;
use num_traits::Zero;

/// A generator `g` used in a commutator `[b_i, g]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorGenerator {
    Arrow(ArrowId),
    Idempotent(VertexId),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// A nonzero socle element that is a sum of commutators, so every
    /// symmetric functional kills the one-dimensional ideal it spans:
    /// `element = sum coeff * [basis[i], generator]`.
    CommutatorInSocle { element: Vec<Q>, terms: Vec<(Q, usize, CommutatorGenerator)> },
    /// `soc(H_H) e_v` does not have dimension one, so `H` is not Frobenius.
    SocleNotSimple { vertex: VertexId, basis: Vec<Vec<Q>> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymmetricVerdict {
    /// `functional[i] = phi(basis[i])`.
    Symmetric { functional: Vec<Q> },
    NotSymmetric(Certificate),
}

impl SymmetricVerdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetricVerdict::Symmetric { .. })
    }
}

fn commutator(a: &FiniteDimAlgebra, i: usize, g: CommutatorGenerator) -> Vec<Q> {
    let x = a.unit_vector(i);
    let (xg, gx) = match g {
        CommutatorGenerator::Arrow(b) => (a.mul_arrow(&x, b), a.arrow_mul(b, &x)),
        CommutatorGenerator::Idempotent(v) => {
            let e = a.idempotent(v);
            (a.mul(&x, &e), a.mul(&e, &x))
        }
    };
    xg.into_iter().zip(gx).map(|(p, q)| p - q).collect()
}

/// All `[b_i, g]` for basis elements `b_i` and generators `g`; they span
/// `[H, H]` because `[x, yz] = [xy, z] + [zx, y]`.
fn commutators(a: &FiniteDimAlgebra) -> Vec<((usize, CommutatorGenerator), Vec<Q>)> {
    let mut gens: Vec<CommutatorGenerator> = a.vertices().iter().map(|&v| CommutatorGenerator::Idempotent(v)).collect();
    gens.extend(a.arrows().into_iter().map(CommutatorGenerator::Arrow));
    let mut out = Vec::new();
    for i in 0..a.dim() {
        for &g in &gens {
            let c = commutator(a, i, g);
            if !is_zero_vec(&c) {
                out.push(((i, g), c));
            }
        }
    }
    out
}

/// `soc(H_H) e_v`: combinations of basis paths ending at `v` killed by every arrow.
pub fn right_socle_at(a: &FiniteDimAlgebra, v: VertexId) -> Vec<Vec<Q>> {
    let idx: Vec<usize> = (0..a.dim()).filter(|&k| a.basis_target(k) == v).collect();
    let arrows = a.arrows();
    let rows: Vec<Vec<Q>> = idx
        .iter()
        .map(|&k| {
            let e = a.unit_vector(k);
            arrows.iter().flat_map(|&b| a.mul_arrow(&e, b)).collect()
        })
        .collect();
    Matrix::from_rows(rows, arrows.len() * a.dim())
        .left_nullspace()
        .into_iter()
        .map(|coeffs| {
            let mut x = a.zero();
            for (t, &k) in idx.iter().enumerate() {
                x[k] = coeffs[t].clone();
            }
            x
        })
        .collect()
}

fn dot(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

pub fn symmetric_form_exists(a: &FiniteDimAlgebra) -> SymmetricVerdict {
    let n = a.dim();
    let comms = commutators(a);
    let mut comm_span = Echelon::new(n);
    for (_, c) in &comms {
        comm_span.insert(c);
    }
    let comm_basis = comm_span.rows().to_vec();

    let mut socle_gens = Vec::new();
    for &v in a.vertices() {
        let s = right_socle_at(a, v);
        let bad = intersect_spaces(&s, &comm_basis, n);
        if let Some(z) = bad.into_iter().next() {
            let m = Matrix::from_rows(comms.iter().map(|(_, c)| c.clone()).collect(), n);
            let coeffs = m.solve_left(&z).expect("element lies in the commutator span");
            let terms = coeffs
                .into_iter()
                .zip(&comms)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, ((i, g), _))| (c, *i, *g))
                .collect();
            return SymmetricVerdict::NotSymmetric(Certificate::CommutatorInSocle { element: z, terms });
        }
        if s.len() != 1 {
            return SymmetricVerdict::NotSymmetric(Certificate::SocleNotSimple { vertex: v, basis: s });
        }
        socle_gens.push(s.into_iter().next().expect("one socle generator"));
    }

    // Symmetric functionals: the annihilator of the commutator span.
    let sym = if comm_basis.is_empty() {
        (0..n).map(|i| a.unit_vector(i)).collect()
    } else {
        Matrix::from_rows(comm_basis, n).nullspace()
    };
    // phi = sum s^k sym[k]; phi(socle_gen) is a nonzero polynomial in s of
    // degree below sym.len(), so some s in this range avoids all roots.
    let bound = socle_gens.len() * sym.len() + 1;
    for s in 0..=bound {
        let mut phi = vec![Q::zero(); n];
        let mut pow = Q::from_integer(1.into());
        let step = Q::from_integer((s as i64).into());
        for basis_fn in &sym {
            for (p, b) in phi.iter_mut().zip(basis_fn) {
                *p += b * &pow;
            }
            pow *= &step;
        }
        if socle_gens.iter().all(|z| !dot(&phi, z).is_zero()) {
            return SymmetricVerdict::Symmetric { functional: phi };
        }
    }
    unreachable!("a polynomial of bounded degree cannot vanish on more points than its degree")
}

/// Gram matrix `(phi(b_i b_j))`.
pub fn gram_matrix(a: &FiniteDimAlgebra, functional: &[Q]) -> Matrix {
    let n = a.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, dot(functional, &a.structure_constant(i, j)));
        }
    }
    m
}

/// Independent check of a verdict: a functional must vanish on commutators and
/// have an invertible Gram matrix; a certificate must multiply out as claimed.
pub fn verify_verdict(a: &FiniteDimAlgebra, verdict: &SymmetricVerdict) -> bool {
    match verdict {
        SymmetricVerdict::Symmetric { functional } => {
            let g = gram_matrix(a, functional);
            g == g.transpose() && g.is_invertible()
        }
        SymmetricVerdict::NotSymmetric(Certificate::CommutatorInSocle { element, terms }) => {
            let mut sum = a.zero();
            for (c, i, g) in terms {
                for (s, x) in sum.iter_mut().zip(commutator(a, *i, *g)) {
                    *s += x * c;
                }
            }
            !is_zero_vec(element) && sum == *element && a.arrows().iter().all(|&b| is_zero_vec(&a.mul_arrow(element, b)))
        }
        SymmetricVerdict::NotSymmetric(Certificate::SocleNotSimple { vertex, basis }) => {
            basis.len() != 1 && right_socle_at(a, *vertex).len() == basis.len()
        }
    }
}
