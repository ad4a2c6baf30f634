//! Exact spectral analysis of the derangement graph via the action of the
//! derangement class sum on the center of the group algebra.
//!
//! The class-sum matrix `M` has entry `(i, j) = #{d in Der : d^-1 * rep(i)
//! in class j}`. Its spectrum, one eigenvalue per irreducible central
//! character, is the spectrum of the derangement graph without
//! multiplicities. Because the derangement set is inverse-closed,
//! `M[i][j] * size(i) = M[j][i] * size(j)`, so conjugating by
//! `diag(sqrt(size))` yields a symmetric matrix and the numeric scan can
//! use a plain Jacobi eigensolver. Multiplicity certification never touches
//! floating point: it is an exact integer kernel rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::catalog::{CatalogError, Family};
use crate::group::{ConjugacyClasses, GroupTable};
use crate::linalg;

/// Numeric scan is refused above this class count.
pub const SPECTRUM_CLASS_CAP: usize = 200;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("group is not 2-transitive")]
    NotTwoTransitive,
    #[error("degree bound requires n >= 5, got {0}")]
    DegreeTooSmall(usize),
    #[error("class count {0} exceeds numeric scan cap {SPECTRUM_CLASS_CAP}")]
    TooManyClasses(usize),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// The fixed-point-free elements of a group, with O(1) membership.
pub struct DerangementSet {
    indices: Vec<usize>,
    member: Bitset,
}

impl DerangementSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn count(&self) -> usize {
        self.indices.len()
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.member.contains(i)
    }
}

pub fn derangements(g: &GroupTable) -> DerangementSet {
    let indices: Vec<usize> = (0..g.order())
        .filter(|&i| g.element(i).is_derangement())
        .collect();
    let member = Bitset::from_indices(g.order(), &indices);
    DerangementSet { indices, member }
}

/// Integer matrix of the derangement class sum acting on the center.
pub struct ClassSumMatrix {
    pub k: usize,
    /// Row-major k*k entries.
    pub entries: Vec<i64>,
    pub class_sizes: Vec<usize>,
}

impl ClassSumMatrix {
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.k + j]
    }

    pub fn trace(&self) -> i64 {
        (0..self.k).map(|i| self.entry(i, i)).sum()
    }
}

pub fn class_sum_matrix(
    g: &GroupTable,
    classes: &ConjugacyClasses,
    ders: &DerangementSet,
) -> ClassSumMatrix {
    let k = classes.count();
    let mut entries = vec![0i64; k * k];
    for (i, &rep) in classes.representatives.iter().enumerate() {
        for &d in ders.indices() {
            let j = classes.class_of[g.mul(g.inv(d), rep)] as usize;
            entries[i * k + j] += 1;
        }
    }
    ClassSumMatrix {
        k,
        entries,
        class_sizes: classes.sizes.clone(),
    }
}

/// Number of irreducible characters affording `lambda`, as the exact
/// rational kernel dimension of `(M - lambda*I)`.
pub fn certify_rational_eigenvalue(m: &ClassSumMatrix, lambda: &BigRational) -> usize {
    linalg::kernel_dim_shifted(&m.entries, m.k, lambda)
}

/// Numeric spectrum of the class-sum matrix, sorted ascending. Exact
/// symmetrization by `diag(sqrt(size))` keeps the scan well conditioned.
pub fn numeric_spectrum(m: &ClassSumMatrix) -> Result<Vec<f64>, SpectraError> {
    if m.k > SPECTRUM_CLASS_CAP {
        return Err(SpectraError::TooManyClasses(m.k));
    }
    let sqrt_sizes: Vec<f64> = m.class_sizes.iter().map(|&s| (s as f64).sqrt()).collect();
    let mut sym = vec![vec![0.0f64; m.k]; m.k];
    for i in 0..m.k {
        for j in 0..m.k {
            sym[i][j] = m.entry(i, j) as f64 * sqrt_sizes[i] / sqrt_sizes[j];
        }
    }
    Ok(linalg::jacobi_eigenvalues(sym))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CertifiedUnique,
    CertifiedNonunique,
    NotLeast,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::CertifiedUnique => "CERTIFIED_UNIQUE",
            Verdict::CertifiedNonunique => "CERTIFIED_NONUNIQUE",
            Verdict::NotLeast => "NOT_LEAST",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

pub struct LeastEigenvalueReport {
    pub degree_d: usize,
    /// The claimed least eigenvalue `-d/(n-1)`, exact.
    pub lambda_star: BigRational,
    /// Numeric spectrum of the class-sum matrix, ascending.
    pub spectrum: Vec<f64>,
    /// Exact count of irreducibles affording `lambda_star`.
    pub multiplicity: usize,
    pub verdict: Verdict,
}

/// Scans the spectrum numerically and certifies the multiplicity of
/// `-d/(n-1)` exactly.
///
/// A numeric eigenvalue below `lambda* - tol` gives `NotLeast`; numeric
/// values within tolerance that the exact certification cannot account for
/// give `Inconclusive` (the true eigenvalue may be irrational and close).
pub fn least_eigenvalue_report(g: &GroupTable) -> Result<LeastEigenvalueReport, SpectraError> {
    if !g.is_two_transitive() {
        return Err(SpectraError::NotTwoTransitive);
    }
    let classes = g.conjugacy_classes();
    let ders = derangements(g);
    let m = class_sum_matrix(g, &classes, &ders);
    let d = ders.count();
    let lambda_star = BigRational::new(
        BigInt::from(-(d as i64)),
        BigInt::from(g.degree() as i64 - 1),
    );
    let spectrum = numeric_spectrum(&m)?;
    let multiplicity = certify_rational_eigenvalue(&m, &lambda_star);

    let lam = lambda_star.to_f64().expect("small rational");
    let tol = 1e-6 * (1.0 + lam.abs());
    let below = spectrum.iter().any(|&x| x < lam - tol);
    let near = spectrum.iter().filter(|&&x| (x - lam).abs() <= tol).count();
    let verdict = if below {
        Verdict::NotLeast
    } else if multiplicity == 1 && near == 1 {
        Verdict::CertifiedUnique
    } else if multiplicity >= 2 && near == multiplicity {
        Verdict::CertifiedNonunique
    } else {
        Verdict::Inconclusive
    };
    Ok(LeastEigenvalueReport {
        degree_d: d,
        lambda_star,
        spectrum,
        multiplicity,
        verdict,
    })
}

pub struct AltBoundReport {
    pub n: usize,
    pub derangement_count: u64,
    /// n!/6, the analytic lower bound on the count.
    pub lower_bound: u64,
    pub holds: bool,
    /// Degree threshold n-1 implied by the bound.
    pub threshold: usize,
}

/// Verifies `d_Alt(n) >= n!/6` against the exact derangement count and
/// reports the implied character-degree threshold `n-1`.
pub fn alt_degree_bound(n: usize) -> Result<AltBoundReport, SpectraError> {
    if n < 5 {
        return Err(SpectraError::DegreeTooSmall(n));
    }
    let g = Family::Alt(n).build()?;
    let d = derangements(&g).count() as u64;
    let factorial: u64 = (1..=n as u64).product();
    let lower_bound = factorial / 6;
    Ok(AltBoundReport {
        n,
        derangement_count: d,
        lower_bound,
        holds: d >= lower_bound,
        threshold: n - 1,
    })
}

/// The clique-coclique bound `floor(|G| / omega)`.
pub fn clique_coclique_bound(group_order: usize, clique_size: usize) -> usize {
    assert!(clique_size >= 1, "clique size must be positive");
    group_order / clique_size
}
