//! Paths in a quiver and finite linear combinations of paths.

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::scalar::{fmt_coeff, parse_q, Q};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// A path, read left to right: `arrows[0]` is traversed first.
/// An empty arrow list is the stationary path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Ord for Path {
    /// Length first, then source vertex, then arrow ids (which follow arrow names).
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then(self.source.cmp(&other.source))
            .then_with(|| self.arrows.cmp(&other.arrows))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn stationary(v: VertexId) -> Self {
        Path { source: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        Path { source: q.source(a), arrows: vec![a] }
    }

    /// A nonempty composable sequence of arrows.
    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Composition("empty arrow sequence has no source".into()));
        };
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return Err(Error::Composition(format!(
                    "{} does not compose with {}",
                    q.arrow_name(w[0]),
                    q.arrow_name(w[1])
                )));
            }
        }
        Ok(Path { source: q.source(first), arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> VertexId {
        self.arrows.last().map_or(self.source, |&a| q.target(a))
    }

    /// `self` followed by `other`, or `None` when they do not compose.
    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, arrows })
    }

    /// Initial subpath of length `k`.
    pub fn prefix(&self, k: usize) -> Path {
        Path { source: self.source, arrows: self.arrows[..k].to_vec() }
    }

    /// Final subpath of length `k`.
    pub fn suffix(&self, k: usize, q: &Quiver) -> Path {
        let n = self.arrows.len();
        if k == 0 {
            return Path::stationary(self.target(q));
        }
        Path { source: q.source(self.arrows[n - k]), arrows: self.arrows[n - k..].to_vec() }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_name(self.source))
        } else {
            self.arrows.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(".")
        }
    }
}

/// Finite rational combination of paths; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinComb {
    terms: BTreeMap<Path, Q>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn monomial(p: Path) -> Self {
        Self::term(p, Q::one())
    }

    pub fn term(p: Path, c: Q) -> Self {
        let mut l = LinComb::zero();
        l.add_term(p, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, p: Path, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> LinComb {
        if s.is_zero() {
            return LinComb::zero();
        }
        LinComb { terms: self.terms.iter().map(|(p, c)| (p.clone(), c * s)).collect() }
    }

    /// Product in the path algebra: non-composable pairs multiply to zero.
    pub fn mul(&self, other: &LinComb, q: &Quiver) -> LinComb {
        let mut out = LinComb::zero();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.concat(r, q) {
                    out.add_term(pr, a * b);
                }
            }
        }
        out
    }

    /// Common `(source, target)` of all terms, if the combination is homogeneous.
    pub fn endpoints(&self, q: &Quiver) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys().map(|p| (p.source, p.target(q)));
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    /// Terms from the largest path downwards.
    pub fn leading(&self) -> Option<(&Path, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = fmt_coeff(&mag);
            if !coeff.is_empty() {
                s.push_str(&coeff);
                s.push('*');
            }
            s.push_str(&p.display(q));
        }
        s
    }

    /// Parses expressions such as `a.b - 2/3*c.d + e_1`. Binary `+`/`-` must be
    /// surrounded by spaces; `e_v` is the stationary path at vertex `v`.
    pub fn parse(q: &Quiver, text: &str) -> Result<LinComb> {
        let mut out = LinComb::zero();
        let mut sign = Q::one();
        let mut expect_term = true;
        for tok in text.split_whitespace() {
            match tok {
                "+" | "-" if !expect_term => {
                    sign = if tok == "-" { -Q::one() } else { Q::one() };
                    expect_term = true;
                }
                _ if expect_term => {
                    let (coeff, path) = parse_term(q, tok)?;
                    out.add_term(path, coeff * &sign);
                    expect_term = false;
                }
                _ => return Err(Error::Input(format!("unexpected token {tok:?} in {text:?}"))),
            }
        }
        if expect_term {
            return Err(Error::Input(format!("incomplete expression {text:?}")));
        }
        Ok(out)
    }
}

fn parse_term(q: &Quiver, tok: &str) -> Result<(Q, Path)> {
    let (mut coeff, body) = match tok.rsplit_once('*') {
        Some((c, body)) => {
            let c = parse_q(c).ok_or_else(|| Error::Input(format!("bad coefficient in {tok:?}")))?;
            (c, body)
        }
        None => (Q::one(), tok),
    };
    let body = match body.strip_prefix('-') {
        Some(rest) if q.arrow_id(body).is_none() => {
            coeff = -coeff;
            rest
        }
        _ => body,
    };
    if let Some(v) = body.strip_prefix("e_") {
        if q.arrow_id(body).is_none() {
            let v = q.vertex_id(v).ok_or_else(|| Error::Input(format!("unknown vertex in {tok:?}")))?;
            return Ok((coeff, Path::stationary(v)));
        }
    }
    let arrows = body
        .split('.')
        .map(|n| q.arrow_id(n).ok_or_else(|| Error::Input(format!("unknown arrow {n:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((coeff, Path::from_arrows(q, arrows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn quiver() -> Quiver {
        let s = |x: &str| x.to_string();
        Quiver::new(
            vec![s("1"), s("2")],
            vec![(s("a"), s("1"), s("1")), (s("b"), s("1"), s("2")), (s("c"), s("2"), s("1")), (s("d"), s("2"), s("2"))],
        )
        .unwrap()
    }

    #[test]
    fn parse_display_roundtrip() {
        let qv = quiver();
        let l = LinComb::parse(&qv, "b.c - 2/3*a + e_1").unwrap();
        assert_eq!(l.num_terms(), 3);
        assert_eq!(l.coeff(&Path::from_arrows(&qv, vec![0]).unwrap()), qf(-2, 3));
        let back = LinComb::parse(&qv, &l.display(&qv)).unwrap();
        assert_eq!(back, l);
        assert!(LinComb::parse(&qv, "b.b").is_err());
        assert!(LinComb::parse(&qv, "a +").is_err());
        assert_eq!(l.endpoints(&qv), Some((0, 0)));
    }

    #[test]
    fn products_and_cancellation() {
        let qv = quiver();
        let b = LinComb::parse(&qv, "b").unwrap();
        let c = LinComb::parse(&qv, "c").unwrap();
        assert_eq!(b.mul(&c, &qv).display(&qv), "b.c");
        assert!(c.mul(&c, &qv).is_zero());
        let x = LinComb::parse(&qv, "a - a").unwrap();
        assert!(x.is_zero());
        assert_eq!(b.scale(&q(0)), LinComb::zero());
    }
}
