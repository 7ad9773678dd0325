//! Sets of point indices.
//!
//! Small universes use a dense bitset; universes above [`DENSE_LIMIT`] (the reduced
//! spaces and PG(3, 11^4) have trillions of points) store a sorted index vector.

use std::fmt;

/// Largest universe stored as a dense bitset.
pub const DENSE_LIMIT: u64 = 1 << 24;

#[derive(Clone)]
enum Repr {
    Dense { words: Vec<u64>, card: usize },
    Sparse(Vec<u64>),
}

#[derive(Clone)]
pub struct PointSet {
    universe: u64,
    repr: Repr,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet[{}/{}]", self.len(), self.universe)?;
        if self.len() <= 32 {
            f.debug_list().entries(self.iter()).finish()?;
        }
        Ok(())
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.len() == other.len() && self.iter().eq(other.iter())
    }
}

impl Eq for PointSet {}

impl PointSet {
    pub fn new(universe: u64) -> Self {
        let repr = if universe <= DENSE_LIMIT {
            Repr::Dense { words: vec![0; (universe as usize).div_ceil(64)], card: 0 }
        } else {
            Repr::Sparse(Vec::new())
        };
        PointSet { universe, repr }
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(universe: u64, indices: I) -> Self {
        let mut s = PointSet::new(universe);
        match &mut s.repr {
            Repr::Dense { .. } => {
                for i in indices {
                    s.insert(i);
                }
            }
            Repr::Sparse(v) => {
                v.extend(indices);
                assert!(v.iter().all(|&i| i < universe), "point index out of range");
                v.sort_unstable();
                v.dedup();
            }
        }
        s
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Dense { card, .. } => *card,
            Repr::Sparse(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn contains(&self, i: u64) -> bool {
        if i >= self.universe {
            return false;
        }
        match &self.repr {
            Repr::Dense { words, .. } => words[(i / 64) as usize] >> (i % 64) & 1 == 1,
            Repr::Sparse(v) => v.binary_search(&i).is_ok(),
        }
    }

    /// Returns true if the point was not already present.
    pub fn insert(&mut self, i: u64) -> bool {
        assert!(i < self.universe, "point index {i} out of range");
        match &mut self.repr {
            Repr::Dense { words, card } => {
                let w = &mut words[(i / 64) as usize];
                let bit = 1u64 << (i % 64);
                if *w & bit != 0 {
                    return false;
                }
                *w |= bit;
                *card += 1;
                true
            }
            Repr::Sparse(v) => match v.binary_search(&i) {
                Ok(_) => false,
                Err(pos) => {
                    v.insert(pos, i);
                    true
                }
            },
        }
    }

    pub fn remove(&mut self, i: u64) -> bool {
        if i >= self.universe {
            return false;
        }
        match &mut self.repr {
            Repr::Dense { words, card } => {
                let w = &mut words[(i / 64) as usize];
                let bit = 1u64 << (i % 64);
                if *w & bit == 0 {
                    return false;
                }
                *w &= !bit;
                *card -= 1;
                true
            }
            Repr::Sparse(v) => match v.binary_search(&i) {
                Ok(pos) => {
                    v.remove(pos);
                    true
                }
                Err(_) => false,
            },
        }
    }

    /// Ascending iteration.
    pub fn iter(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match &self.repr {
            Repr::Dense { words, .. } => Box::new(words.iter().enumerate().flat_map(|(wi, &w)| {
                let mut w = w;
                std::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let b = w.trailing_zeros() as u64;
                    w &= w - 1;
                    Some(wi as u64 * 64 + b)
                })
            })),
            Repr::Sparse(v) => Box::new(v.iter().copied()),
        }
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<u64> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.universe, other.universe);
        PointSet::from_indices(self.universe, self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.universe, other.universe);
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        PointSet::from_indices(self.universe, small.iter().filter(|&i| big.contains(i)))
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.universe, other.universe);
        PointSet::from_indices(self.universe, self.iter().filter(|&i| !other.contains(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dense_and_sparse_basics() {
        for universe in [100, DENSE_LIMIT + 1] {
            let mut s = PointSet::new(universe);
            assert!(s.insert(5));
            assert!(!s.insert(5));
            assert!(s.insert(64));
            assert_eq!(s.len(), 2);
            assert!(s.contains(64));
            assert!(!s.contains(63));
            assert!(s.remove(5));
            assert!(!s.remove(5));
            assert_eq!(s.to_vec(), vec![64]);
        }
    }

    proptest! {
        #[test]
        fn card_matches_popcount(idx in proptest::collection::vec(0u64..500, 0..60)) {
            let dense = PointSet::from_indices(500, idx.clone());
            let sparse = PointSet::from_indices(DENSE_LIMIT + 7, idx.clone());
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(dense.len(), sorted.len());
            prop_assert_eq!(dense.to_vec(), sorted.clone());
            prop_assert_eq!(sparse.to_vec(), sorted);
        }
    }
}
