//! Quotients of a finite set, represented as canonical block labelings.
//!
//! Order convention: `p1 <= p2` when `p1` is coarser than `p2` (it factors
//! through `p2`). The one-block partition is the bottom, the discrete
//! partition the top.

use std::collections::HashMap;
use std::hash::Hash;

use rand::Rng;

use crate::{Error, Result};

/// A partition of `{0, .., len-1}`. Block labels are numbered in order of
/// first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Canonicalizes arbitrary labels; equal labels mean the same block.
    pub fn from_labels<T: Eq + Hash>(labels: impl IntoIterator<Item = T>) -> Self {
        let mut ids: HashMap<T, usize> = HashMap::new();
        let block_of: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Self {
            blocks: ids.len(),
            block_of,
        }
    }

    pub fn one_block(len: usize) -> Self {
        Self::from_labels(std::iter::repeat_n(0, len))
    }

    /// The discrete partition into singletons.
    pub fn identity(len: usize) -> Self {
        Self::from_labels(0..len)
    }

    /// Components of the equivalence relation generated by `pairs`.
    pub fn from_relation(len: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut sets = DisjointSets::new(len);
        for (a, b) in pairs {
            sets.union(a, b);
        }
        sets.into_partition()
    }

    /// A uniformly labeled random partition with a random number of labels.
    pub fn random<R: Rng>(len: usize, rng: &mut R) -> Self {
        if len == 0 {
            return Self::identity(0);
        }
        let k = rng.random_range(1..=len);
        Self::from_labels((0..len).map(|_| rng.random_range(0..k)))
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    /// Blocks as sorted member lists, indexed by label.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn is_one_block(&self) -> bool {
        self.blocks <= 1
    }

    pub fn is_identity(&self) -> bool {
        self.blocks == self.block_of.len()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "partitions of sets of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// `self <= other`: every block of `other` lies inside a block of `self`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        let mut image = vec![usize::MAX; other.blocks];
        for (x, &b) in other.block_of.iter().enumerate() {
            let mine = self.block_of[x];
            if image[b] == usize::MAX {
                image[b] = mine;
            } else if image[b] != mine {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Finest common coarsening: transitive closure of block overlap.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut sets = DisjointSets::new(self.len());
        let mut first_a = vec![usize::MAX; self.blocks];
        let mut first_b = vec![usize::MAX; other.blocks];
        for x in 0..self.len() {
            for (first, b) in [
                (&mut first_a, self.block_of[x]),
                (&mut first_b, other.block_of[x]),
            ] {
                if first[b] == usize::MAX {
                    first[b] = x;
                } else {
                    sets.union(first[b], x);
                }
            }
        }
        Ok(sets.into_partition())
    }

    /// Common refinement: pairwise block intersections.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self::from_labels(
            self.block_of.iter().zip(&other.block_of).map(|(a, b)| (*a, *b)),
        ))
    }

    /// Canonical ordering key: block count, then labels.
    pub fn canonical_key(&self) -> (usize, &[usize]) {
        (self.blocks, &self.block_of)
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns whether two distinct sets were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(labels: &[usize]) -> Partition {
        Partition::from_labels(labels.iter().copied())
    }

    #[test]
    fn canonical_labels() {
        let a = p(&[7, 7, 3, 9, 3]);
        assert_eq!(a.labels(), &[0, 0, 1, 2, 1]);
        assert_eq!(a.block_count(), 3);
        assert_eq!(a, p(&[1, 1, 0, 5, 0]));
    }

    #[test]
    fn order_extremes() {
        let x = p(&[0, 1, 0, 2]);
        assert!(Partition::one_block(4).leq(&x).unwrap());
        assert!(x.leq(&Partition::identity(4)).unwrap());
    }

    #[test]
    fn order_on_three_points() {
        let merged = p(&[0, 0, 1]);
        let discrete = Partition::identity(3);
        assert!(merged.leq(&discrete).unwrap());
        assert!(!discrete.leq(&merged).unwrap());
    }

    #[test]
    fn meet_and_join() {
        let a = p(&[0, 0, 1]);
        let b = p(&[0, 1, 1]);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.meet(&b).unwrap(), Partition::one_block(3));
        assert_eq!(a.join(&b).unwrap(), Partition::identity(3));
    }

    #[test]
    fn size_mismatch() {
        let a = Partition::identity(3);
        let b = Partition::identity(4);
        assert!(matches!(a.leq(&b), Err(Error::Domain(_))));
        assert!(matches!(a.meet(&b), Err(Error::Domain(_))));
        assert!(matches!(a.join(&b), Err(Error::Domain(_))));
    }

    fn arb_pair() -> impl Strategy<Value = (Partition, Partition)> {
        (1usize..12).prop_flat_map(|n| {
            (
                proptest::collection::vec(0usize..n, n),
                proptest::collection::vec(0usize..n, n),
            )
                .prop_map(|(a, b)| (Partition::from_labels(a), Partition::from_labels(b)))
        })
    }

    proptest! {
        #[test]
        fn meet_join_are_bounds((a, b) in arb_pair()) {
            let m = a.meet(&b).unwrap();
            let j = a.join(&b).unwrap();
            prop_assert!(m.leq(&a).unwrap() && m.leq(&b).unwrap());
            prop_assert!(a.leq(&j).unwrap() && b.leq(&j).unwrap());
            prop_assert_eq!(a.leq(&b).unwrap(), a.join(&b).unwrap() == b);
            prop_assert_eq!(a.leq(&b).unwrap(), a.meet(&b).unwrap() == a);
        }
    }
}
