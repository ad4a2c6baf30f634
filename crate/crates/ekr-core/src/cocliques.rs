//! Canonical cocliques, exact maximum-coclique search, and canonicity
//! classification.
//!
//! The search is a branch-and-bound over a clique cover of the vertex set:
//! cosets of a regular normal subgroup when one exists (each is a clique of
//! size n), else cosets of a cyclic group generated by a derangement whose
//! whole cyclic group is fixed-point free, else greedy cliques. A coclique
//! meets each cover cell at most once, so `#cells` bounds the coclique
//! number and `chosen + live cells < target` prunes subtrees exactly.

use std::collections::HashSet;

use thiserror::Error;

use crate::group::GroupTable;
use crate::spectra::DerangementSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CocliqueError {
    #[error("elements {0} and {1} are adjacent; not a coclique")]
    NotACoclique(usize, usize),
    #[error("coclique has size {found}, expected {expected}")]
    WrongSize { found: usize, expected: usize },
    #[error("result limit must be positive")]
    LimitZero,
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("group is not 2-transitive")]
    NotTwoTransitive,
}

/// A verified pairwise-intersecting set of element indices, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coclique {
    members: Vec<usize>,
}

impl Coclique {
    /// Sorts and re-verifies the pairwise intersecting property.
    pub fn verified(
        g: &GroupTable,
        ders: &DerangementSet,
        mut members: Vec<usize>,
    ) -> Result<Coclique, CocliqueError> {
        members.sort_unstable();
        members.dedup();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if ders.contains(g.mul(a, g.inv(b))) {
                    return Err(CocliqueError::NotACoclique(a, b));
                }
            }
        }
        Ok(Coclique { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All n^2 canonical sets `S_{i,j} = {g : i^g = j}`, in (i, j) lexicographic
/// order, each re-verified as a coclique of size |G|/n.
pub fn canonical_cocliques(g: &GroupTable, ders: &DerangementSet) -> Vec<Coclique> {
    let n = g.degree();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let members: Vec<usize> = (0..g.order())
                .filter(|&e| g.element(e).apply(i) == j)
                .collect();
            let c = Coclique::verified(g, ders, members).expect("canonical set is a coclique");
            debug_assert_eq!(c.size() * n, g.order());
            out.push(c);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Clique covers

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverKind {
    /// Cosets of a regular normal subgroup: |G|/n cliques of size n.
    RegularNormalCosets,
    /// Cosets of `<sigma>` for a derangement sigma whose nonidentity powers
    /// are all derangements.
    CyclicCosets { element_order: usize },
    /// Greedy maximal cliques over remaining vertices.
    Greedy,
}

pub struct CliqueCover {
    pub cells: Vec<Vec<usize>>,
    pub kind: CoverKind,
}

/// Deterministic clique cover of the vertex set.
pub fn clique_cover(g: &GroupTable, ders: &DerangementSet) -> CliqueCover {
    if let Ok(normals) = g.regular_normal_subgroups() {
        if let Some(n_set) = normals.first() {
            let mut assigned = vec![false; g.order()];
            let mut cells = Vec::with_capacity(g.order() / n_set.len());
            for v in 0..g.order() {
                if assigned[v] {
                    continue;
                }
                let mut cell: Vec<usize> = n_set.iter().map(|&u| g.mul(u, v)).collect();
                cell.sort_unstable();
                for &x in &cell {
                    assigned[x] = true;
                }
                cells.push(cell);
            }
            return CliqueCover {
                cells,
                kind: CoverKind::RegularNormalCosets,
            };
        }
    }
    if let Some(sigma) = best_cyclic_derangement(g, ders) {
        let mut powers = vec![sigma];
        let mut x = g.mul(sigma, sigma);
        while x != 0 {
            powers.push(x);
            x = g.mul(x, sigma);
        }
        let ord = powers.len() + 1;
        let mut assigned = vec![false; g.order()];
        let mut cells = Vec::with_capacity(g.order() / ord);
        for v in 0..g.order() {
            if assigned[v] {
                continue;
            }
            let mut cell = vec![v];
            cell.extend(powers.iter().map(|&p| g.mul(v, p)));
            cell.sort_unstable();
            for &x in &cell {
                assigned[x] = true;
            }
            cells.push(cell);
        }
        return CliqueCover {
            cells,
            kind: CoverKind::CyclicCosets { element_order: ord },
        };
    }
    // Greedy fallback: extend each unassigned vertex to a maximal clique.
    let mut assigned = vec![false; g.order()];
    let mut cells = Vec::new();
    for v in 0..g.order() {
        if assigned[v] {
            continue;
        }
        let mut cell = vec![v];
        assigned[v] = true;
        for u in v + 1..g.order() {
            if assigned[u] {
                continue;
            }
            if cell.iter().all(|&c| ders.contains(g.mul(u, g.inv(c)))) {
                cell.push(u);
                assigned[u] = true;
            }
        }
        cells.push(cell);
    }
    CliqueCover {
        cells,
        kind: CoverKind::Greedy,
    }
}

/// The derangement of greatest order whose whole cyclic group is fixed-point
/// free away from the identity; least index breaks ties.
fn best_cyclic_derangement(g: &GroupTable, ders: &DerangementSet) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None; // (order, index)
    for &d in ders.indices() {
        let mut ok = true;
        let mut ord = 1;
        let mut x = d;
        while x != 0 {
            if !ders.contains(x) {
                ok = false;
                break;
            }
            x = g.mul(x, d);
            ord += 1;
        }
        if ok {
            let better = match best {
                None => true,
                Some((bord, _)) => ord > bord,
            };
            if better {
                best = Some((ord, d));
            }
        }
    }
    best.map(|(_, d)| d)
}

// ---------------------------------------------------------------------------
// Branch and bound

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sampling,
    /// Exhaustive was requested but the feasibility gate forced sampling.
    GatedSampling,
}

pub struct CensusOptions {
    pub limit: usize,
    pub exhaustive: bool,
    pub node_budget: u64,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            limit: 100,
            exhaustive: false,
            node_budget: 20_000_000,
            seed: 0,
        }
    }
}

#[derive(Debug)]
pub struct CocliqueCensus {
    /// |G|/n, the common size of all maximum cocliques.
    pub target: usize,
    /// Stored results, lexicographically sorted, possibly truncated.
    pub found: Vec<Coclique>,
    /// Count of every maximum coclique enumerated, stored or not.
    pub total_found: usize,
    pub canonical_count: usize,
    pub noncanonical_count: usize,
    /// True when the whole search tree was exhausted.
    pub complete: bool,
    pub truncated_at: Option<usize>,
    pub mode: CensusMode,
    pub nodes: u64,
}

struct Searcher<'a> {
    g: &'a GroupTable,
    ders: &'a DerangementSet,
    cells: &'a [Vec<usize>],
    cell_open: Vec<bool>,
    alive: Vec<bool>,
    alive_in_cell: Vec<usize>,
    cell_of: Vec<u32>,
    chosen: Vec<usize>,
    target: usize,
    nodes: u64,
    budget: u64,
    rotate: u64,
}

enum Stop {
    Budget,
    LimitReached,
}

impl<'a> Searcher<'a> {
    fn new(
        g: &'a GroupTable,
        ders: &'a DerangementSet,
        cells: &'a [Vec<usize>],
        target: usize,
        budget: u64,
        rotate: u64,
    ) -> Self {
        let mut cell_of = vec![0u32; g.order()];
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci as u32;
            }
        }
        Searcher {
            g,
            ders,
            cells,
            cell_open: vec![true; cells.len()],
            alive: vec![true; g.order()],
            alive_in_cell: cells.iter().map(|c| c.len()).collect(),
            cell_of,
            chosen: Vec::with_capacity(target),
            target,
            nodes: 0,
            budget,
            rotate,
        }
    }

    #[inline]
    fn compatible(&self, u: usize, v: usize) -> bool {
        !self.ders.contains(self.g.mul(u, self.g.inv(v)))
    }

    /// Kills every live vertex incompatible with `v`; returns the undo list.
    fn commit(&mut self, v: usize) -> Vec<usize> {
        let mut killed = Vec::new();
        for (ci, cell) in self.cells.iter().enumerate() {
            if !self.cell_open[ci] {
                continue;
            }
            for &u in cell {
                if self.alive[u] && !self.compatible(u, v) {
                    self.alive[u] = false;
                    self.alive_in_cell[ci] -= 1;
                    killed.push(u);
                }
            }
        }
        killed
    }

    fn undo(&mut self, killed: Vec<usize>) {
        for u in killed {
            self.alive[u] = true;
            self.alive_in_cell[self.cell_of[u] as usize] += 1;
        }
    }

    fn dfs(&mut self, visit: &mut impl FnMut(&[usize]) -> bool) -> Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Stop::Budget);
        }
        if self.chosen.len() == self.target {
            if visit(&self.chosen) {
                return Ok(());
            }
            return Err(Stop::LimitReached);
        }
        // Fail-first: branch on the open cell with the fewest live vertices.
        let mut pick: Option<(usize, usize)> = None; // (count, cell)
        let mut open_live = 0usize;
        for ci in 0..self.cells.len() {
            if self.cell_open[ci] && self.alive_in_cell[ci] > 0 {
                open_live += 1;
                let count = self.alive_in_cell[ci];
                let better = match pick {
                    None => true,
                    Some((bc, _)) => count < bc,
                };
                if better {
                    pick = Some((count, ci));
                }
            }
        }
        if self.chosen.len() + open_live < self.target {
            return Ok(());
        }
        let (_, ci) = pick.expect("open_live > 0 since bound passed");

        let members: Vec<usize> = self.cells[ci]
            .iter()
            .copied()
            .filter(|&v| self.alive[v])
            .collect();
        let offset = if self.rotate == 0 {
            0
        } else {
            (splitmix(self.rotate ^ ci as u64) % members.len() as u64) as usize
        };
        self.cell_open[ci] = false;
        for k in 0..members.len() {
            let v = members[(k + offset) % members.len()];
            let killed = self.commit(v);
            self.chosen.push(v);
            let r = self.dfs(visit);
            self.chosen.pop();
            self.undo(killed);
            r?;
        }
        // Skip this cell entirely.
        let r = self.dfs(visit);
        self.cell_open[ci] = true;
        r
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Searches for any coclique of exactly `size` elements. `Ok(None)` is a
/// certificate that none exists (the cover bound or an exhausted tree).
pub fn find_coclique_of_size(
    g: &GroupTable,
    ders: &DerangementSet,
    size: usize,
    node_budget: u64,
) -> Result<Option<Coclique>, CocliqueError> {
    if size == 0 {
        return Ok(Some(Coclique { members: vec![] }));
    }
    let cover = clique_cover(g, ders);
    if cover.cells.len() < size {
        return Ok(None);
    }
    let mut searcher = Searcher::new(g, ders, &cover.cells, size, node_budget, 0);
    let mut found: Option<Coclique> = None;
    let outcome = searcher.dfs(&mut |members| {
        found = Some(
            Coclique::verified(g, ders, members.to_vec()).expect("search emits cocliques"),
        );
        false // stop at first
    });
    match (outcome, found) {
        (_, Some(c)) => Ok(Some(c)),
        (Ok(()), None) => Ok(None),
        (Err(Stop::Budget), None) => Err(CocliqueError::BudgetExceeded {
            budget: node_budget,
        }),
        (Err(Stop::LimitReached), None) => unreachable!("limit only trips after a find"),
    }
}

/// Whether exhaustive enumeration is within the desk-scale gate.
pub fn exhaustive_feasible(g: &GroupTable, cells: usize) -> bool {
    (cells <= 48 && g.degree() <= 16) || g.order() <= 400
}

/// Enumerates maximum cocliques (size exactly |G|/n).
pub fn max_cocliques(
    g: &GroupTable,
    ders: &DerangementSet,
    opts: &CensusOptions,
) -> Result<CocliqueCensus, CocliqueError> {
    if opts.limit == 0 {
        return Err(CocliqueError::LimitZero);
    }
    if !g.is_two_transitive() {
        return Err(CocliqueError::NotTwoTransitive);
    }
    let target = g.order() / g.degree();
    let cover = clique_cover(g, ders);
    let mode = if opts.exhaustive {
        if exhaustive_feasible(g, cover.cells.len()) {
            CensusMode::Exhaustive
        } else {
            CensusMode::GatedSampling
        }
    } else {
        CensusMode::Sampling
    };
    let exhaust = mode == CensusMode::Exhaustive;

    let canonical_sets: HashSet<Vec<usize>> = canonical_cocliques(g, ders)
        .into_iter()
        .map(|c| c.members)
        .collect();

    let rotate = if exhaust { 0 } else { opts.seed };
    let mut searcher = Searcher::new(g, ders, &cover.cells, target, opts.node_budget, rotate);
    let mut found: Vec<Coclique> = Vec::new();
    let mut total = 0usize;
    let mut canonical_count = 0usize;
    let limit = opts.limit;
    let outcome = searcher.dfs(&mut |members| {
        total += 1;
        let sorted = {
            let mut m = members.to_vec();
            m.sort_unstable();
            m
        };
        if canonical_sets.contains(&sorted) {
            canonical_count += 1;
        }
        if found.len() < limit {
            found.push(
                Coclique::verified(g, ders, sorted).expect("search emits cocliques"),
            );
        }
        // Sampling stops at the storage limit; exhaustive keeps counting.
        exhaust || total < limit
    });
    let complete = outcome.is_ok();
    found.sort();
    let truncated_at = if total > found.len() { Some(limit) } else { None };
    Ok(CocliqueCensus {
        target,
        total_found: total,
        canonical_count,
        noncanonical_count: total - canonical_count,
        found,
        complete,
        truncated_at,
        mode,
        nodes: searcher.nodes,
    })
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// `Some((i, j))` when the set is exactly `S_{i,j}`.
    pub canonical: Option<(usize, usize)>,
    pub is_subgroup: bool,
    pub is_coset_of_subgroup: bool,
}

/// Set comparison against the canonical sets plus subgroup/coset tests.
pub fn classify(g: &GroupTable, s: &Coclique) -> Classification {
    let members = s.members();
    let canonical = (0..g.degree()).find_map(|i| {
        let j = g.element(members[0]).apply(i);
        if members.iter().all(|&m| g.element(m).apply(i) == j)
            && members.len() * g.degree() == g.order()
        {
            Some((i, j))
        } else {
            None
        }
    });
    let is_subgroup = g.is_subgroup(members);
    let translated: Vec<usize> = members
        .iter()
        .map(|&m| g.mul(m, g.inv(members[0])))
        .collect();
    let is_coset_of_subgroup = g.is_subgroup(&translated);
    Classification {
        canonical,
        is_subgroup,
        is_coset_of_subgroup,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::spectra::derangements;

    #[test]
    fn canonical_counts_and_sizes() {
        let g = Family::Sym(3).build().unwrap();
        let ders = derangements(&g);
        let cs = canonical_cocliques(&g, &ders);
        assert_eq!(cs.len(), 9);
        assert!(cs.iter().all(|c| c.size() == 2));

        let a5 = Family::Alt(5).build().unwrap();
        let ders5 = derangements(&a5);
        let cs5 = canonical_cocliques(&a5, &ders5);
        assert_eq!(cs5.len(), 25);
        assert!(cs5.iter().all(|c| c.size() == 12));
        // All distinct.
        let mut sets: Vec<_> = cs5.iter().map(|c| c.members().to_vec()).collect();
        sets.sort();
        sets.dedup();
        assert_eq!(sets.len(), 25);
    }

    #[test]
    fn stabilizer_is_the_diagonal_canonical_set() {
        let g = Family::Alt(5).build().unwrap();
        let ders = derangements(&g);
        let cs = canonical_cocliques(&g, &ders);
        for i in 0..5 {
            assert_eq!(cs[i * 5 + i].members(), g.point_stabilizer(i));
        }
    }

    #[test]
    fn cover_kinds() {
        let agl = Family::Agl1(5).build().unwrap();
        let cover = clique_cover(&agl, &derangements(&agl));
        assert_eq!(cover.kind, CoverKind::RegularNormalCosets);
        assert_eq!(cover.cells.len(), 4);
        assert!(cover.cells.iter().all(|c| c.len() == 5));

        let a5 = Family::Alt(5).build().unwrap();
        let cover5 = clique_cover(&a5, &derangements(&a5));
        assert_eq!(cover5.kind, CoverKind::CyclicCosets { element_order: 5 });
        assert_eq!(cover5.cells.len(), 12);
    }

    #[test]
    fn cover_cells_are_cliques_and_partition() {
        for tag in ["sym:5", "alt:6", "psl2:7", "asl2:4"] {
            let g = Family::parse(tag).unwrap().build().unwrap();
            let ders = derangements(&g);
            let cover = clique_cover(&g, &ders);
            let mut seen = vec![false; g.order()];
            for cell in &cover.cells {
                for (i, &a) in cell.iter().enumerate() {
                    assert!(!seen[a]);
                    seen[a] = true;
                    for &b in &cell[i + 1..] {
                        assert!(
                            ders.contains(g.mul(a, g.inv(b))),
                            "{tag}: cell not a clique"
                        );
                    }
                }
            }
            assert!(seen.iter().all(|&s| s), "{tag}: cover misses vertices");
        }
    }

    #[test]
    fn no_oversized_coclique_in_small_groups() {
        for tag in ["sym:3", "sym:4", "alt:4", "alt:5", "agl1:5", "psl2:5"] {
            let g = Family::parse(tag).unwrap().build().unwrap();
            let ders = derangements(&g);
            let target = g.order() / g.degree();
            let hit = find_coclique_of_size(&g, &ders, target + 1, 10_000_000).unwrap();
            assert!(hit.is_none(), "{tag}: found an oversized coclique");
            let ok = find_coclique_of_size(&g, &ders, target, 10_000_000).unwrap();
            assert!(ok.is_some(), "{tag}: no maximum coclique found");
        }
    }

    #[test]
    fn agl1_5_exhaustive_census() {
        let g = Family::Agl1(5).build().unwrap();
        let ders = derangements(&g);
        let opts = CensusOptions {
            limit: 1000,
            exhaustive: true,
            ..CensusOptions::default()
        };
        let census = max_cocliques(&g, &ders, &opts).unwrap();
        assert_eq!(census.total_found, 625);
        assert_eq!(census.canonical_count, 25);
        assert_eq!(census.noncanonical_count, 600);
        assert!(census.complete);
        assert_eq!(census.mode, CensusMode::Exhaustive);
        assert_eq!(census.found.len(), 625);
    }

    #[test]
    fn sym3_exhaustive_census_all_canonical() {
        let g = Family::Sym(3).build().unwrap();
        let ders = derangements(&g);
        let opts = CensusOptions {
            limit: 100,
            exhaustive: true,
            ..CensusOptions::default()
        };
        let census = max_cocliques(&g, &ders, &opts).unwrap();
        assert_eq!(census.total_found, 9);
        assert_eq!(census.canonical_count, 9);
        assert!(census.complete);
    }

    #[test]
    fn census_truncation_keeps_full_counts() {
        let g = Family::Agl1(5).build().unwrap();
        let ders = derangements(&g);
        let opts = CensusOptions {
            limit: 10,
            exhaustive: true,
            ..CensusOptions::default()
        };
        let census = max_cocliques(&g, &ders, &opts).unwrap();
        assert_eq!(census.total_found, 625);
        assert_eq!(census.found.len(), 10);
        assert_eq!(census.truncated_at, Some(10));
        assert!(census.complete);
    }

    #[test]
    fn sampling_finds_noncanonical_in_asl2_4() {
        let g = Family::Asl2(4).build().unwrap();
        let ders = derangements(&g);
        let opts = CensusOptions {
            limit: 10,
            exhaustive: false,
            ..CensusOptions::default()
        };
        let census = max_cocliques(&g, &ders, &opts).unwrap();
        assert_eq!(census.mode, CensusMode::Sampling);
        assert_eq!(census.found.len(), 10);
        assert!(!census.complete);
        assert!(census.found.iter().all(|c| c.size() == 60));
    }

    #[test]
    fn zero_limit_is_an_error() {
        let g = Family::Sym(3).build().unwrap();
        let ders = derangements(&g);
        let opts = CensusOptions {
            limit: 0,
            ..CensusOptions::default()
        };
        assert_eq!(
            max_cocliques(&g, &ders, &opts).unwrap_err(),
            CocliqueError::LimitZero
        );
    }

    #[test]
    fn classify_stabilizer_and_translates() {
        let g = Family::Agl1(5).build().unwrap();
        let ders = derangements(&g);
        let stab = Coclique::verified(&g, &ders, g.point_stabilizer(0)).unwrap();
        let c = classify(&g, &stab);
        assert_eq!(c.canonical, Some((0, 0)));
        assert!(c.is_subgroup);
        assert!(c.is_coset_of_subgroup);
    }

    #[test]
    fn classify_swapped_transversal_is_nothing() {
        // Take the stabilizer H of 0 in a sharply 1-point-stabilized affine
        // group, remove one h, insert h*u for a nonidentity translation u:
        // still a maximum coclique, but neither canonical, nor a subgroup,
        // nor a coset.
        let g = Family::Agl1(5).build().unwrap();
        let ders = derangements(&g);
        let n_set = g.regular_normal_subgroups().unwrap().remove(0);
        let stab = g.point_stabilizer(0);
        let h = *stab.iter().find(|&&x| x != 0).unwrap();
        let u = *n_set.iter().find(|&&x| x != 0).unwrap();
        let mut members: Vec<usize> = stab.iter().copied().filter(|&x| x != h).collect();
        members.push(g.mul(h, u));
        let s = Coclique::verified(&g, &ders, members).unwrap();
        assert_eq!(s.size(), 4);
        let c = classify(&g, &s);
        assert_eq!(c.canonical, None);
        assert!(!c.is_subgroup);
        assert!(!c.is_coset_of_subgroup);
    }

    #[test]
    fn every_census_coclique_reverifies() {
        let g = Family::Agl1(7).build().unwrap();
        let ders = derangements(&g);
        let opts = CensusOptions {
            limit: 50,
            exhaustive: false,
            ..CensusOptions::default()
        };
        let census = max_cocliques(&g, &ders, &opts).unwrap();
        for c in &census.found {
            assert!(Coclique::verified(&g, &ders, c.members().to_vec()).is_ok());
        }
    }
}
