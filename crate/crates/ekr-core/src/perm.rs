//! Permutations of `{0, …, n-1}` stored as image arrays.
//!
//! The composition convention throughout the crate is the right action,
//! applied left to right: `i^(pq) = (i^p)^q`. Everything downstream
//! (group tables, coset arithmetic, adjacency) inherits it.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image array of length {0} is not a bijection")]
    NotABijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A permutation of the points `0..n`; entry `i` holds the image `i^g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection on `{0, …, n-1}`.
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The image `point^g`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Right-action composition: the result applies `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = self.images.iter().map(|&i| other.images[i]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Points `i` with `i^g = i`. The count is the permutation character value.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i != x)
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    /// Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Permutation, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(PermError::NotABijection(degree));
                }
                images[from] = to;
            }
        }
        Permutation::new(images)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_composes_trivially() {
        let id = Permutation::identity(5);
        let g = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
    }

    #[test]
    fn compose_is_left_to_right() {
        // p = (0 1), q = (1 2): 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1.
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let r = p.compose(&q).unwrap();
        assert_eq!(r.images(), &[2, 0, 1]);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let g = Permutation::new(vec![3, 0, 2, 4, 1]).unwrap();
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().compose(&g).unwrap().is_identity());
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(Permutation::identity(4).fixed_points(), vec![0, 1, 2, 3]);
        let five_cycle = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert!(five_cycle.fixed_points().is_empty());
        assert!(five_cycle.is_derangement());
        let g = Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(g.fixed_points(), vec![4]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::new(vec![1, 1, 2]),
            Err(PermError::NotABijection(3))
        );
        assert_eq!(
            Permutation::new(vec![0, 3]),
            Err(PermError::NotABijection(2))
        );
    }

    #[test]
    fn rejects_degree_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(p.compose(&q), Err(PermError::DegreeMismatch(3, 4)));
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(g in arb_perm(8)) {
            prop_assert_eq!(g.inverse().inverse(), g.clone());
            prop_assert!(g.compose(&g.inverse()).unwrap().is_identity());
        }

        #[test]
        fn composition_is_associative(
            a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)
        ) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn fixed_points_of_inverse_agree(g in arb_perm(9)) {
            prop_assert_eq!(g.fixed_points(), g.inverse().fixed_points());
        }
    }
}
