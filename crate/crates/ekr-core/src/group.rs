//! Fully enumerated small permutation groups.
//!
//! A [`GroupTable`] is built by breadth-first closure from a generator list,
//! so element indices are reproducible across runs: element 0 is the
//! identity, and elements appear in BFS discovery order with generators
//! applied in the order given.

use std::collections::HashMap;

use thiserror::Error;

use crate::bitset::Bitset;
use crate::perm::{PermError, Permutation};

/// Default ceiling for closure enumeration.
pub const DEFAULT_GENERATE_CAP: usize = 20_000;

/// A full multiplication table is cached only below this order.
pub const MUL_TABLE_LIMIT: usize = 4_096;

/// Normal-subgroup search enumerates class unions only up to this many classes.
pub const NORMAL_SEARCH_CLASS_LIMIT: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator degree {found} does not match group degree {expected}")]
    GeneratorDegree { expected: usize, found: usize },
    #[error("normal subgroup search not attempted: {classes} conjugacy classes exceeds limit {limit}")]
    NormalSearchNotAttempted { classes: usize, limit: usize },
    #[error("group is not transitive")]
    NotTransitive,
}

/// Element lookup, keyed on packed nibbles when the degree allows it.
enum ElementIndex {
    /// degree <= 16: image arrays packed 4 bits per point into a u64.
    Packed(HashMap<u64, u32>),
    General(HashMap<Vec<usize>, u32>),
}

#[inline]
fn pack(images: &[usize]) -> u64 {
    let mut code = 0u64;
    for (i, &x) in images.iter().enumerate() {
        code |= (x as u64) << (4 * i);
    }
    code
}

impl ElementIndex {
    fn new(degree: usize) -> Self {
        if degree <= 16 {
            ElementIndex::Packed(HashMap::new())
        } else {
            ElementIndex::General(HashMap::new())
        }
    }

    fn get(&self, p: &Permutation) -> Option<u32> {
        match self {
            ElementIndex::Packed(m) => m.get(&pack(p.images())).copied(),
            ElementIndex::General(m) => m.get(p.images()).copied(),
        }
    }

    fn insert(&mut self, p: &Permutation, idx: u32) {
        match self {
            ElementIndex::Packed(m) => {
                m.insert(pack(p.images()), idx);
            }
            ElementIndex::General(m) => {
                m.insert(p.images().to_vec(), idx);
            }
        }
    }
}

/// A fully enumerated permutation group with index arithmetic.
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: ElementIndex,
    generators: Vec<usize>,
    inverses: Vec<u32>,
    mul_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}


impl GroupTable {
    /// Closes `gens` under composition, breadth-first from the identity.
    pub fn generate(
        degree: usize,
        gens: &[Permutation],
        cap: usize,
    ) -> Result<GroupTable, GroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::GeneratorDegree {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index = ElementIndex::new(degree);
        index.insert(&elements[0], 0);

        let mut head = 0;
        while head < elements.len() {
            for g in gens {
                let next = elements[head].compose(g)?;
                if index.get(&next).is_none() {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(&next, elements.len() as u32);
                    elements.push(next);
                }
            }
            head += 1;
        }

        let generators = gens
            .iter()
            .map(|g| index.get(g).expect("generator in closure") as usize)
            .collect();

        let order = elements.len();
        let mut inverses = vec![0u32; order];
        for (i, e) in elements.iter().enumerate() {
            inverses[i] = index.get(&e.inverse()).expect("inverse in closure");
        }

        let mut table = GroupTable {
            degree,
            elements,
            index,
            generators,
            inverses,
            mul_table: None,
        };
        if order <= MUL_TABLE_LIMIT {
            let mut mul = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    mul[a * order + b] = table.mul_slow(a, b) as u32;
                }
            }
            table.mul_table = Some(mul);
        }
        Ok(table)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|i| i as usize)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        match &self.index {
            ElementIndex::Packed(m) => {
                let pa = self.elements[a].images();
                let pb = self.elements[b].images();
                let mut code = 0u64;
                for (i, &x) in pa.iter().enumerate() {
                    code |= (pb[x] as u64) << (4 * i);
                }
                m[&code] as usize
            }
            ElementIndex::General(_) => {
                let p = self.elements[a].compose(&self.elements[b]).unwrap();
                self.index_of(&p).expect("closed under composition")
            }
        }
    }

    /// Index of the product: apply element `a` first, then `b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    /// `g^-1 * a * g` as an index.
    #[inline]
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut ord = 1;
        while x != 0 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// Orbit of a point under the group generators.
    pub fn point_orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![x];
        seen[x] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for &g in &self.generators {
                let q = self.elements[g].apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.point_orbit(0).len() == self.degree
    }

    /// Transitivity on ordered distinct pairs: the orbit of one pair must
    /// have size n(n-1). Degenerate degrees < 2 report false.
    pub fn is_two_transitive(&self) -> bool {
        let n = self.degree;
        if n < 2 {
            return false;
        }
        let mut seen = vec![false; n * n];
        let mut orbit = vec![(0usize, 1usize)];
        seen[1] = true;
        let mut head = 0;
        while head < orbit.len() {
            let (a, b) = orbit[head];
            head += 1;
            for &g in &self.generators {
                let p = (self.elements[g].apply(a), self.elements[g].apply(b));
                if !seen[p.0 * n + p.1] {
                    seen[p.0 * n + p.1] = true;
                    orbit.push(p);
                }
            }
        }
        orbit.len() == n * (n - 1)
    }

    /// Elements fixing the point `x`, as sorted indices.
    pub fn point_stabilizer(&self, x: usize) -> Vec<usize> {
        assert!(x < self.degree, "point out of range");
        (0..self.order())
            .filter(|&i| self.elements[i].apply(x) == x)
            .collect()
    }

    /// Elements fixing both `x` and `y`.
    pub fn two_point_stabilizer(&self, x: usize, y: usize) -> Vec<usize> {
        assert!(x < self.degree && y < self.degree, "point out of range");
        (0..self.order())
            .filter(|&i| self.elements[i].apply(x) == x && self.elements[i].apply(y) == y)
            .collect()
    }

    /// Closure of `seed` (plus the identity) under composition, as sorted indices.
    pub fn subgroup_generated(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = Bitset::new(self.order());
        member.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &s in seed {
                let b = self.mul(a, s);
                if !member.contains(b) {
                    member.insert(b);
                    queue.push(b);
                }
            }
        }
        member.indices()
    }

    /// True when `set` (given sorted or not) is closed under composition and
    /// nonempty; in a finite group this makes it a subgroup.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let member = Bitset::from_indices(self.order(), set);
        if !member.contains(0) {
            return false;
        }
        set.iter()
            .all(|&a| set.iter().all(|&b| member.contains(self.mul(a, b))))
    }

    /// `g^-1 S g` as a sorted index vector.
    pub fn conjugate_set(&self, set: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&s| self.conjugate(s, g)).collect();
        out.sort_unstable();
        out
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let order = self.order();
        const UNASSIGNED: u32 = u32::MAX;
        let mut class_of = vec![UNASSIGNED; order];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..order {
            if class_of[start] != UNASSIGNED {
                continue;
            }
            let class_idx = representatives.len() as u32;
            representatives.push(start);
            class_of[start] = class_idx;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let a = orbit[head];
                head += 1;
                for &g in &self.generators {
                    let b = self.conjugate(a, g);
                    if class_of[b] == UNASSIGNED {
                        class_of[b] = class_idx;
                        orbit.push(b);
                    }
                }
            }
            sizes.push(orbit.len());
        }
        let inverse_class = representatives
            .iter()
            .map(|&r| class_of[self.inv(r)])
            .collect();
        ConjugacyClasses {
            class_of,
            representatives,
            sizes,
            inverse_class,
        }
    }

    /// All normal subgroups of order `degree` acting regularly, found by
    /// enumerating unions of derangement classes with the identity.
    ///
    /// Groups with more than [`NORMAL_SEARCH_CLASS_LIMIT`] classes are not
    /// attempted; the subset enumeration is exponential in the class count.
    pub fn regular_normal_subgroups(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        let classes = self.conjugacy_classes();
        let k = classes.count();
        if k > NORMAL_SEARCH_CLASS_LIMIT {
            return Err(GroupError::NormalSearchNotAttempted {
                classes: k,
                limit: NORMAL_SEARCH_CLASS_LIMIT,
            });
        }
        if self.degree < 1 {
            return Ok(Vec::new());
        }
        // Non-identity elements of a regular subgroup are fixed-point free,
        // so only all-derangement classes can contribute.
        let candidates: Vec<u32> = (1..k as u32)
            .filter(|&c| {
                self.elements[classes.representatives[c as usize]].is_derangement()
            })
            .collect();
        let target = self.degree - 1;
        let mut found = Vec::new();
        let mut chosen: Vec<u32> = Vec::new();
        self.normal_subset_search(&classes, &candidates, 0, target, &mut chosen, &mut found);
        Ok(found)
    }

    fn normal_subset_search(
        &self,
        classes: &ConjugacyClasses,
        candidates: &[u32],
        from: usize,
        remaining: usize,
        chosen: &mut Vec<u32>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            if let Some(set) = self.check_class_union_subgroup(classes, chosen) {
                found.push(set);
            }
            return;
        }
        for pos in from..candidates.len() {
            let c = candidates[pos];
            let size = classes.sizes[c as usize];
            if size > remaining {
                continue;
            }
            chosen.push(c);
            self.normal_subset_search(classes, candidates, pos + 1, remaining - size, chosen, found);
            chosen.pop();
        }
    }

    fn check_class_union_subgroup(
        &self,
        classes: &ConjugacyClasses,
        chosen: &[u32],
    ) -> Option<Vec<usize>> {
        // Union must be inverse-closed as a class set before the closure test.
        for &c in chosen {
            if !chosen.contains(&classes.inverse_class[c as usize]) {
                return None;
            }
        }
        let mut members = vec![0usize];
        for i in 1..self.order() {
            if chosen.contains(&classes.class_of[i]) {
                members.push(i);
            }
        }
        if self.is_subgroup(&members) {
            Some(members)
        } else {
            None
        }
    }
}

/// Partition of a group into conjugacy classes, in order of least representative.
pub struct ConjugacyClasses {
    /// Element index -> class index.
    pub class_of: Vec<u32>,
    /// Least element index in each class.
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Class index of the class of inverses.
    pub inverse_class: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}
