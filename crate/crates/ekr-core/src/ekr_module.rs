//! The module property and distribution identities for maximum cocliques.
//!
//! For a 2-transitive action the permutation character splits as
//! `1 + psi` with `psi` irreducible of degree n-1, and `psi(g) =
//! fix(g) - 1` is integer valued. That makes the projection identity
//! `E_psi v_S = v_S - (1/n) 1` decidable in exact integer arithmetic:
//! entry by entry it reduces to `n(n-1) * sum_{s in S} psi(s y^-1) =
//! |G| (n [y in S] - 1)`.

use num_rational::Ratio;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::cocliques::Coclique;
use crate::group::{ConjugacyClasses, GroupTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EkrError {
    #[error("coclique has size {found}, expected |G|/n = {expected}")]
    WrongSize { found: usize, expected: usize },
    #[error("set is empty")]
    EmptySet,
    #[error("group is not 2-transitive")]
    NotTwoTransitive,
}

/// Values of `psi = fix - 1` per conjugacy class.
pub struct PsiValues {
    pub by_class: Vec<i64>,
    /// psi(1) = n - 1.
    pub degree: i64,
}

pub fn psi_values(g: &GroupTable, classes: &ConjugacyClasses) -> PsiValues {
    let by_class: Vec<i64> = classes
        .representatives
        .iter()
        .map(|&r| g.element(r).fixed_points().len() as i64 - 1)
        .collect();
    PsiValues {
        degree: g.degree() as i64 - 1,
        by_class,
    }
}

/// `sum_{s in S} psi(s * y^-1)`, exact.
pub fn coefficient_sum(
    g: &GroupTable,
    classes: &ConjugacyClasses,
    psi: &PsiValues,
    members: &[usize],
    y: usize,
) -> i64 {
    let y_inv = g.inv(y);
    members
        .iter()
        .map(|&s| psi.by_class[classes.class_of[g.mul(s, y_inv)] as usize])
        .sum()
}

#[derive(Debug, PartialEq, Eq)]
pub struct ModuleCheck {
    pub holds: bool,
    /// First element index whose projection entry is wrong, when any.
    pub witness: Option<usize>,
}

/// Exact test of `E_psi v_S = v_S - (1/n) 1`.
///
/// A scalar pre-check (`v_S^T E_chi v_S = |S|`, the projector norm
/// condition) screens the full entrywise scan; since `E_chi` is an
/// orthogonal projector the scalar equality already implies the entrywise
/// one, and the full scan serves as the definitive cross-check or, on a
/// pre-check failure, locates the witness.
pub fn module_check(
    g: &GroupTable,
    classes: &ConjugacyClasses,
    s: &Coclique,
) -> Result<ModuleCheck, EkrError> {
    let n = g.degree() as i64;
    let order = g.order() as i64;
    let expected = g.order() / g.degree();
    if s.size() != expected {
        return Err(EkrError::WrongSize {
            found: s.size(),
            expected,
        });
    }
    let psi = psi_values(g, classes);
    let members = s.members();
    let size = members.len() as i64;

    let sum_inside: i64 = members
        .iter()
        .map(|&y| coefficient_sum(g, classes, &psi, members, y))
        .sum();
    let precheck = size * order + n * (n - 1) * sum_inside == n * size * order;

    if precheck {
        let inside = Bitset::from_indices(g.order(), members);
        for y in 0..g.order() {
            let coeff = coefficient_sum(g, classes, &psi, members, y);
            let indicator = i64::from(inside.contains(y));
            if n * (n - 1) * coeff != order * (n * indicator - 1) {
                return Ok(ModuleCheck {
                    holds: false,
                    witness: Some(y),
                });
            }
        }
        Ok(ModuleCheck {
            holds: true,
            witness: None,
        })
    } else {
        let inside = Bitset::from_indices(g.order(), members);
        let witness = (0..g.order()).find(|&y| {
            let coeff = coefficient_sum(g, classes, &psi, members, y);
            let indicator = i64::from(inside.contains(y));
            n * (n - 1) * coeff != order * (n * indicator - 1)
        });
        Ok(ModuleCheck {
            holds: false,
            witness,
        })
    }
}

/// Class-indexed pair statistics `(#{(g,h) in SxS : h g^-1 in c}) / |S|`.
#[derive(Debug, PartialEq, Eq)]
pub struct InnerDistribution {
    pub per_class: Vec<Ratio<i64>>,
}

pub fn inner_distribution(
    g: &GroupTable,
    classes: &ConjugacyClasses,
    members: &[usize],
) -> Result<InnerDistribution, EkrError> {
    if members.is_empty() {
        return Err(EkrError::EmptySet);
    }
    let mut counts = vec![0i64; classes.count()];
    for &a in members {
        let a_inv = g.inv(a);
        for &b in members {
            counts[classes.class_of[g.mul(b, a_inv)] as usize] += 1;
        }
    }
    let size = members.len() as i64;
    Ok(InnerDistribution {
        per_class: counts.into_iter().map(|c| Ratio::new(c, size)).collect(),
    })
}

/// Exact comparison of the inner distribution of a maximum coclique with
/// that of the stabilizer of point 0.
pub fn inner_matches_stabilizer(
    g: &GroupTable,
    classes: &ConjugacyClasses,
    s: &Coclique,
) -> Result<bool, EkrError> {
    if !g.is_two_transitive() {
        return Err(EkrError::NotTwoTransitive);
    }
    let expected = g.order() / g.degree();
    if s.size() != expected {
        return Err(EkrError::WrongSize {
            found: s.size(),
            expected,
        });
    }
    let of_s = inner_distribution(g, classes, s.members())?;
    let of_stab = inner_distribution(g, classes, &g.point_stabilizer(0))?;
    Ok(of_s.per_class == of_stab.per_class)
}
