//! Structure of the derangement graph: adjacency, connectivity, coset
//! cliques, and the equitable-partition check for maximum cocliques.
//!
//! The graph is never materialized; adjacency of `g` and `h` is the
//! derangement test on `g * h^-1`, and components come from subgroup
//! closure of the connection set rather than graph traversal.

use thiserror::Error;

use crate::bitset::Bitset;
use crate::group::GroupTable;
use crate::spectra::DerangementSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DergraphError {
    #[error("the given subgroup is not regular normal")]
    NotRegularNormal,
    #[error("group is not 2-transitive")]
    NotTwoTransitive,
    #[error("set is not a coclique (elements {0} and {1} are adjacent)")]
    NotACoclique(usize, usize),
    #[error("coclique has size {found}, expected |G|/n = {expected}")]
    WrongCocliqueSize { found: usize, expected: usize },
    #[error("degree {d} is not divisible by n-1 = {nm1}; eigenvalue integrality fails")]
    IndivisibleDegree { d: usize, nm1: usize },
}

/// Vertices `a`, `b` are adjacent iff `a * b^-1` is fixed-point free.
/// Symmetric and irreflexive.
#[inline]
pub fn adjacent(g: &GroupTable, ders: &DerangementSet, a: usize, b: usize) -> bool {
    ders.contains(g.mul(a, g.inv(b)))
}

/// Connected components of the derangement graph, as the index of the
/// subgroup the derangements generate.
pub struct ComponentStructure {
    /// `<Der>` as sorted element indices.
    pub generated: Vec<usize>,
    pub component_count: usize,
    pub is_connected: bool,
}

pub fn connectivity(g: &GroupTable, ders: &DerangementSet) -> ComponentStructure {
    let generated = g.subgroup_generated(ders.indices());
    let component_count = g.order() / generated.len();
    ComponentStructure {
        is_connected: component_count == 1,
        component_count,
        generated,
    }
}

/// Checks that `n_set` is a subgroup of order `degree`, normal under the
/// group generators, whose non-identity elements are all derangements.
pub fn is_regular_normal(g: &GroupTable, n_set: &[usize]) -> bool {
    if n_set.len() != g.degree() || !g.is_subgroup(n_set) {
        return false;
    }
    if n_set.iter().any(|&u| u != 0 && !g.element(u).is_derangement()) {
        return false;
    }
    let member = Bitset::from_indices(g.order(), n_set);
    g.generators()
        .iter()
        .all(|&gen| n_set.iter().all(|&u| member.contains(g.conjugate(u, gen))))
}

/// Per-coset derangement flags over coset representatives `h` in the
/// stabilizer of point 0, computed two independent ways.
pub struct CosetProfile {
    /// Coset representatives: the point stabilizer of 0, sorted.
    pub reps: Vec<usize>,
    /// Direct scan: coset `N*h` contains a fixed-point-free element.
    pub direct: Vec<bool>,
    /// Criterion: `h` centralizes a non-identity element of `N`.
    pub centralizer: Vec<bool>,
    pub agree: bool,
}

pub fn coset_derangement_profile(
    g: &GroupTable,
    n_set: &[usize],
) -> Result<CosetProfile, DergraphError> {
    if !is_regular_normal(g, n_set) {
        return Err(DergraphError::NotRegularNormal);
    }
    let reps = g.point_stabilizer(0);
    let mut direct = Vec::with_capacity(reps.len());
    let mut centralizer = Vec::with_capacity(reps.len());
    for &h in &reps {
        direct.push(
            n_set
                .iter()
                .any(|&u| g.element(g.mul(u, h)).is_derangement()),
        );
        centralizer.push(
            n_set
                .iter()
                .any(|&u| u != 0 && g.mul(h, u) == g.mul(u, h)),
        );
    }
    let agree = direct == centralizer;
    Ok(CosetProfile {
        reps,
        direct,
        centralizer,
        agree,
    })
}

/// `<Der>` against `<N ∪ two-point stabilizers>`; the two subgroups are
/// expected to coincide for every 2-transitive group with regular normal `N`.
pub struct TwoPointGeneration {
    pub der_generated: Vec<usize>,
    pub stab_generated: Vec<usize>,
    pub equal: bool,
}

pub fn two_point_stabilizer_generation(
    g: &GroupTable,
    ders: &DerangementSet,
    n_set: &[usize],
) -> Result<TwoPointGeneration, DergraphError> {
    if !is_regular_normal(g, n_set) {
        return Err(DergraphError::NotRegularNormal);
    }
    if !g.is_two_transitive() {
        return Err(DergraphError::NotTwoTransitive);
    }
    let der_generated = g.subgroup_generated(ders.indices());
    let mut seed: Vec<usize> = n_set.to_vec();
    for y in 1..g.degree() {
        seed.extend(g.two_point_stabilizer(0, y));
    }
    let stab_generated = g.subgroup_generated(&seed);
    let equal = der_generated == stab_generated;
    Ok(TwoPointGeneration {
        der_generated,
        stab_generated,
        equal,
    })
}

/// True iff `Der ∪ {1}` is a subgroup; the graph is then the disjoint
/// union of complete graphs on its cosets.
pub fn is_disjoint_clique_union(g: &GroupTable, ders: &DerangementSet) -> bool {
    g.subgroup_generated(ders.indices()).len() == ders.count() + 1
}

/// Every vertex outside a maximum coclique must see exactly `d/(n-1)`
/// neighbors inside it.
pub fn equitable_check(
    g: &GroupTable,
    ders: &DerangementSet,
    members: &[usize],
) -> Result<bool, DergraphError> {
    if !g.is_two_transitive() {
        return Err(DergraphError::NotTwoTransitive);
    }
    let expected_size = g.order() / g.degree();
    if members.len() != expected_size {
        return Err(DergraphError::WrongCocliqueSize {
            found: members.len(),
            expected: expected_size,
        });
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if adjacent(g, ders, a, b) {
                return Err(DergraphError::NotACoclique(a, b));
            }
        }
    }
    let d = ders.count();
    let nm1 = g.degree() - 1;
    if d % nm1 != 0 {
        return Err(DergraphError::IndivisibleDegree { d, nm1 });
    }
    let quota = d / nm1;
    let inside = Bitset::from_indices(g.order(), members);
    for y in 0..g.order() {
        if inside.contains(y) {
            continue;
        }
        let count = members.iter().filter(|&&s| adjacent(g, ders, y, s)).count();
        if count != quota {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::spectra::derangements;

    #[test]
    fn adjacency_basics() {
        let g = Family::Sym(3).build().unwrap();
        let ders = derangements(&g);
        for i in 0..6 {
            assert!(!adjacent(&g, &ders, i, i));
        }
        // identity vs a 3-cycle
        let three_cycle = (0..6).find(|&i| g.element_order(i) == 3).unwrap();
        assert!(adjacent(&g, &ders, 0, three_cycle));
        // two transpositions compose to a 3-cycle
        let transpositions: Vec<usize> =
            (0..6).filter(|&i| g.element_order(i) == 2).collect();
        assert!(adjacent(&g, &ders, transpositions[0], transpositions[1]));
        // symmetry on all pairs
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(adjacent(&g, &ders, a, b), adjacent(&g, &ders, b, a));
            }
        }
    }

    #[test]
    fn sym3_has_two_components() {
        let g = Family::Sym(3).build().unwrap();
        let c = connectivity(&g, &derangements(&g));
        assert_eq!(c.component_count, 2);
        assert!(!c.is_connected);
        assert_eq!(c.generated.len(), 3);
    }

    #[test]
    fn alt5_is_connected() {
        let g = Family::Alt(5).build().unwrap();
        let c = connectivity(&g, &derangements(&g));
        assert!(c.is_connected);
        assert_eq!(c.generated.len(), 60);
    }

    #[test]
    fn agammal1_9_is_disconnected() {
        let g = Family::AGammaL1 { p: 3, e: 2 }.build().unwrap();
        let c = connectivity(&g, &derangements(&g));
        assert!(!c.is_connected);
        assert_eq!(c.component_count * c.generated.len(), g.order());
    }

    #[test]
    fn regular_normal_validation() {
        let g = Family::Agl1(5).build().unwrap();
        let n = &g.regular_normal_subgroups().unwrap()[0];
        assert!(is_regular_normal(&g, n));
        assert!(!is_regular_normal(&g, &g.point_stabilizer(0)));
    }

    #[test]
    fn frobenius_profile_flags_only_identity() {
        let g = Family::Agl1(5).build().unwrap();
        let n = &g.regular_normal_subgroups().unwrap()[0];
        let profile = coset_derangement_profile(&g, n).unwrap();
        assert!(profile.agree);
        for (idx, &h) in profile.reps.iter().enumerate() {
            assert_eq!(profile.direct[idx], h == 0, "rep {h}");
        }
    }

    #[test]
    fn agammal1_9_profile_agrees_coset_by_coset() {
        let g = Family::AGammaL1 { p: 3, e: 2 }.build().unwrap();
        let n = &g.regular_normal_subgroups().unwrap()[0];
        let profile = coset_derangement_profile(&g, n).unwrap();
        assert!(profile.agree);
        assert!(profile.direct[0]);
        assert!(profile.direct.iter().any(|&f| !f));
    }

    #[test]
    fn two_point_generation_matches_der_closure() {
        for tag in ["agl1:5", "agammal1:3,2", "asl2:4"] {
            let g = Family::parse(tag).unwrap().build().unwrap();
            let ders = derangements(&g);
            let n = &g.regular_normal_subgroups().unwrap()[0];
            let r = two_point_stabilizer_generation(&g, &ders, n).unwrap();
            assert!(r.equal, "{tag}");
        }
    }

    #[test]
    fn agl1_5_generation_is_just_n() {
        let g = Family::Agl1(5).build().unwrap();
        let ders = derangements(&g);
        let n = g.regular_normal_subgroups().unwrap().remove(0);
        let r = two_point_stabilizer_generation(&g, &ders, &n).unwrap();
        assert_eq!(r.der_generated, n);
    }

    #[test]
    fn disjoint_clique_union_cases() {
        let agl15 = Family::Agl1(5).build().unwrap();
        assert!(is_disjoint_clique_union(&agl15, &derangements(&agl15)));
        let alt5 = Family::Alt(5).build().unwrap();
        assert!(!is_disjoint_clique_union(&alt5, &derangements(&alt5)));
        let trivial = GroupTable::generate(1, &[], 10).unwrap();
        assert!(is_disjoint_clique_union(&trivial, &derangements(&trivial)));
    }

    #[test]
    fn equitable_on_point_stabilizers() {
        for tag in ["sym:3", "alt:5", "asl2:4"] {
            let g = Family::parse(tag).unwrap().build().unwrap();
            let ders = derangements(&g);
            let stab = g.point_stabilizer(0);
            assert_eq!(equitable_check(&g, &ders, &stab), Ok(true), "{tag}");
        }
    }

    #[test]
    fn equitable_rejects_bad_input() {
        let g = Family::Sym(3).build().unwrap();
        let ders = derangements(&g);
        assert!(matches!(
            equitable_check(&g, &ders, &[0]),
            Err(DergraphError::WrongCocliqueSize { .. })
        ));
        let three_cycle = (0..6).find(|&i| g.element_order(i) == 3).unwrap();
        assert!(matches!(
            equitable_check(&g, &ders, &[0, three_cycle]),
            Err(DergraphError::NotACoclique(..))
        ));
    }

    use crate::group::GroupTable;

    #[test]
    fn degree_regularity_spot_check() {
        let g = Family::Psl2(7).build().unwrap();
        let ders = derangements(&g);
        let d = ders.count();
        for v in [0usize, 1, 17, 83, 121] {
            let neighbors = (0..g.order())
                .filter(|&u| adjacent(&g, &ders, v, u))
                .count();
            assert_eq!(neighbors, d);
        }
    }
}
