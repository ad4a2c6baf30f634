//! Fixed-width bitsets over element indices.

/// Membership bitset over `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    blocks: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut b = Bitset::new(len);
        for &i in indices {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i >> 6] & (1u64 << (i & 63)) != 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.blocks[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.blocks[i >> 6] &= !(1u64 << (i & 63));
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count());
        for (w, &block) in self.blocks.iter().enumerate() {
            let mut bits = block;
            while bits != 0 {
                let tz = bits.trailing_zeros() as usize;
                out.push((w << 6) + tz);
                bits &= bits - 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let b = Bitset::from_indices(130, &[0, 63, 64, 129]);
        assert!(b.contains(0) && b.contains(63) && b.contains(64) && b.contains(129));
        assert!(!b.contains(1) && !b.contains(128));
        assert_eq!(b.indices(), vec![0, 63, 64, 129]);
        assert_eq!(b.count(), 4);
    }

    #[test]
    fn remove_clears() {
        let mut b = Bitset::from_indices(10, &[3, 7]);
        b.remove(3);
        assert!(!b.contains(3) && b.contains(7));
        assert_eq!(b.count(), 1);
    }
}
