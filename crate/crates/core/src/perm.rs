//! Permutations of a finite set `0..n`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Wraps an image table, checking that it is a bijection.
    pub fn from_images(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || seen[x] {
                return Err(Error::Input("image table is not a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x >= n {
                    return Err(Error::Input(format!("cycle entry {x} out of range")));
                }
                if seen[x] {
                    return Err(Error::Input("cycles are not disjoint".into()));
                }
                seen[x] = true;
                map[x] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn pow(&self, i: usize, k: usize) -> usize {
        (0..k).fold(i, |x, _| self.map[x])
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    /// `self` after `other`: `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation { map: other.map.iter().map(|&x| self.map[x]).collect() }
    }

    /// Disjoint cycles, each starting at its least element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.map[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle through `i`, starting at `i`.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut x = self.map[i];
        while x != i {
            out.push(x);
            x = self.map[x];
        }
        out
    }

    pub fn orbit_len(&self, i: usize) -> usize {
        self.orbit(i).len()
    }

    /// Least element of the cycle through `i`.
    pub fn orbit_rep(&self, i: usize) -> usize {
        *self.orbit(i).iter().min().expect("orbit is nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_are_canonical() {
        let p = Permutation::from_cycles(5, &[vec![3, 1, 4]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0], vec![1, 4, 3], vec![2]]);
        assert_eq!(p.orbit_rep(4), 1);
        assert_eq!(p.inverse().apply(1), 3);
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    proptest! {
        #[test]
        fn orbit_lengths_partition(seed in proptest::collection::vec(0usize..1000, 1..12)) {
            let n = seed.len();
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by_key(|&i| (seed[i], i));
            let p = Permutation::from_images(idx).unwrap();
            let total: usize = p.cycles().iter().map(Vec::len).sum();
            prop_assert_eq!(total, n);
            prop_assert_eq!(p.compose(&p.inverse()), Permutation::identity(n));
        }
    }
}
