//! Constructors for the concrete 2-transitive families under study, plus
//! ingestion of user-supplied generator files.
//!
//! Point numbering conventions, fixed so element indices are reproducible:
//! affine families number points by field-element code, vectors in row-major
//! code order (`(v0, v1) -> v0*q + v1`); the projective line puts `[1:0]`
//! first, then `[x:1]` by code of `x`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{gf, FieldError, FiniteField};
use crate::group::{GroupError, GroupTable, DEFAULT_GENERATE_CAP};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown family tag {0:?}")]
    UnknownFamily(String),
    #[error("bad parameters for {family}: {reason}")]
    BadParameters { family: String, reason: String },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("malformed group spec: {0}")]
    Malformed(String),
}

/// A named group family with parameters, e.g. `psl2:7` or `agammal1:3,2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Sym(usize),
    Alt(usize),
    Psl2(u32),
    Pgl2(u32),
    Agl1(u32),
    AGammaL1 { p: u32, e: u32 },
    Asl2(u32),
    Agl3_2,
    M11,
}

impl Family {
    /// Parses CLI-style tags: `sym:5`, `agammal1:3,2`, `agl3_2`, `m11`.
    pub fn parse(s: &str) -> Result<Family, CatalogError> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, p),
            None => (s, ""),
        };
        let nums: Result<Vec<u32>, _> = if params.is_empty() {
            Ok(Vec::new())
        } else {
            params.split(',').map(|t| t.trim().parse::<u32>()).collect()
        };
        let nums = nums.map_err(|_| CatalogError::UnknownFamily(s.to_string()))?;
        let arity_err = |family: &str, want: &str| CatalogError::BadParameters {
            family: family.to_string(),
            reason: format!("expected {want}"),
        };
        match (name, nums.as_slice()) {
            ("sym", [n]) => Ok(Family::Sym(*n as usize)),
            ("alt", [n]) => Ok(Family::Alt(*n as usize)),
            ("psl2", [q]) => Ok(Family::Psl2(*q)),
            ("pgl2", [q]) => Ok(Family::Pgl2(*q)),
            ("agl1", [q]) => Ok(Family::Agl1(*q)),
            ("agammal1", [p, e]) => Ok(Family::AGammaL1 { p: *p, e: *e }),
            ("asl2", [q]) => Ok(Family::Asl2(*q)),
            ("agl3_2", []) => Ok(Family::Agl3_2),
            ("m11", []) => Ok(Family::M11),
            ("sym" | "alt" | "psl2" | "pgl2" | "agl1" | "asl2", _) => {
                Err(arity_err(name, "one parameter"))
            }
            ("agammal1", _) => Err(arity_err(name, "two parameters p,e")),
            ("agl3_2" | "m11", _) => Err(arity_err(name, "no parameters")),
            _ => Err(CatalogError::UnknownFamily(s.to_string())),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Family::Sym(n) => format!("sym:{n}"),
            Family::Alt(n) => format!("alt:{n}"),
            Family::Psl2(q) => format!("psl2:{q}"),
            Family::Pgl2(q) => format!("pgl2:{q}"),
            Family::Agl1(q) => format!("agl1:{q}"),
            Family::AGammaL1 { p, e } => format!("agammal1:{p},{e}"),
            Family::Asl2(q) => format!("asl2:{q}"),
            Family::Agl3_2 => "agl3_2".to_string(),
            Family::M11 => "m11".to_string(),
        }
    }

    pub fn build(&self) -> Result<GroupTable, CatalogError> {
        self.build_capped(DEFAULT_GENERATE_CAP)
    }

    pub fn build_capped(&self, cap: usize) -> Result<GroupTable, CatalogError> {
        match *self {
            Family::Sym(n) => sym(n, cap),
            Family::Alt(n) => alt(n, cap),
            Family::Psl2(q) => psl2(q, cap),
            Family::Pgl2(q) => pgl2(q, cap),
            Family::Agl1(q) => agl1(q, cap),
            Family::AGammaL1 { p, e } => agammal1(p, e, cap),
            Family::Asl2(q) => asl2(q, cap),
            Family::Agl3_2 => agl3_2(cap),
            Family::M11 => m11(cap),
        }
    }
}

fn bad(family: &str, reason: impl Into<String>) -> CatalogError {
    CatalogError::BadParameters {
        family: family.to_string(),
        reason: reason.into(),
    }
}

/// Splits a prime power into (p, e).
pub fn prime_power(q: u32) -> Result<(u32, u32), CatalogError> {
    if q < 2 {
        return Err(CatalogError::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Ok((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest == 1 {
        Ok((p, e))
    } else {
        Err(CatalogError::NotPrimePower(q))
    }
}

fn sym(n: usize, cap: usize) -> Result<GroupTable, CatalogError> {
    if n < 1 {
        return Err(bad("sym", "degree must be at least 1"));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
        let long: Vec<usize> = (0..n).collect();
        gens.push(Permutation::from_cycles(n, &[&long])?);
    }
    Ok(GroupTable::generate(n, &gens, cap)?)
}

fn alt(n: usize, cap: usize) -> Result<GroupTable, CatalogError> {
    if n < 1 {
        return Err(bad("alt", "degree must be at least 1"));
    }
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1, 2]])?);
        if n >= 4 {
            let long: Vec<usize> = if n % 2 == 1 {
                (0..n).collect()
            } else {
                (1..n).collect()
            };
            gens.push(Permutation::from_cycles(n, &[&long])?);
        }
    }
    Ok(GroupTable::generate(n, &gens, cap)?)
}

// ---------------------------------------------------------------------------
// Projective line actions

/// Point index on the projective line: `[1:0]` is 0, `[x:1]` is `1 + x`.
fn moebius_perm(f: &FiniteField, m: [u32; 4]) -> Result<Permutation, PermError> {
    let [a, b, c, d] = m;
    let q = f.q as usize;
    let mut images = vec![0usize; q + 1];
    // infinity = [1:0] -> [a:c]
    images[0] = if c == 0 {
        0
    } else {
        1 + f.mul(a, f.inv(c)) as usize
    };
    for x in 0..f.q {
        // [x:1] -> [ax+b : cx+d]
        let num = f.add(f.mul(a, x), b);
        let den = f.add(f.mul(c, x), d);
        images[1 + x as usize] = if den == 0 {
            0
        } else {
            1 + f.mul(num, f.inv(den)) as usize
        };
    }
    Permutation::new(images)
}

fn sl2_matrices(f: &FiniteField) -> Vec<[u32; 4]> {
    // Upper transvections for every nonzero c, plus the Weyl element.
    let mut ms: Vec<[u32; 4]> = (1..f.q).map(|c| [1, c, 0, 1]).collect();
    ms.push([0, 1, f.neg(1), 0]);
    ms
}

fn psl2(q: u32, cap: usize) -> Result<GroupTable, CatalogError> {
    let (p, e) = prime_power(q)?;
    if q < 4 {
        return Err(bad("psl2", "q must be at least 4 for a 2-transitive simple action"));
    }
    let f = gf(p, e)?;
    let gens: Vec<Permutation> = sl2_matrices(&f)
        .into_iter()
        .map(|m| moebius_perm(&f, m))
        .collect::<Result<_, _>>()?;
    Ok(GroupTable::generate(f.q as usize + 1, &gens, cap)?)
}

fn pgl2(q: u32, cap: usize) -> Result<GroupTable, CatalogError> {
    let (p, e) = prime_power(q)?;
    if q < 3 {
        return Err(bad("pgl2", "q must be at least 3"));
    }
    let f = gf(p, e)?;
    let mut ms = sl2_matrices(&f);
    ms.push([f.generator, 0, 0, 1]);
    let gens: Vec<Permutation> = ms
        .into_iter()
        .map(|m| moebius_perm(&f, m))
        .collect::<Result<_, _>>()?;
    Ok(GroupTable::generate(f.q as usize + 1, &gens, cap)?)
}

// ---------------------------------------------------------------------------
// Affine actions

/// Row-major code of a coordinate vector over GF(q).
pub fn vector_code(f: &FiniteField, coords: &[u32]) -> usize {
    coords
        .iter()
        .fold(0usize, |acc, &c| acc * f.q as usize + c as usize)
}

/// Inverse of [`vector_code`].
pub fn code_vector(f: &FiniteField, code: usize, dim: usize) -> Vec<u32> {
    let q = f.q as usize;
    let mut coords = vec![0u32; dim];
    let mut rest = code;
    for i in (0..dim).rev() {
        coords[i] = (rest % q) as u32;
        rest /= q;
    }
    coords
}

/// Permutation of the affine space GF(q)^dim realized by `x -> Ax + v`;
/// `a` is row-major dim x dim.
pub fn affine_perm(
    f: &FiniteField,
    dim: usize,
    a: &[u32],
    v: &[u32],
) -> Result<Permutation, PermError> {
    assert_eq!(a.len(), dim * dim);
    assert_eq!(v.len(), dim);
    let points = (f.q as usize).pow(dim as u32);
    let mut images = vec![0usize; points];
    for (code, image) in images.iter_mut().enumerate() {
        let x = code_vector(f, code, dim);
        let mut y = v.to_vec();
        for (r, yr) in y.iter_mut().enumerate() {
            for (c, &xc) in x.iter().enumerate() {
                *yr = f.add(*yr, f.mul(a[r * dim + c], xc));
            }
        }
        *image = vector_code(f, &y);
    }
    Permutation::new(images)
}

fn agl1(q: u32, cap: usize) -> Result<GroupTable, CatalogError> {
    let (p, e) = prime_power(q)?;
    let f = gf(p, e)?;
    let translate = affine_perm(&f, 1, &[1], &[1])?;
    let scale = affine_perm(&f, 1, &[f.generator], &[0])?;
    Ok(GroupTable::generate(q as usize, &[translate, scale], cap)?)
}

/// Semilinear map `x -> a * x^(p^i) + b` as a permutation of GF(p^e).
fn semilinear_perm(
    f: &FiniteField,
    a: u32,
    i: u32,
    b: u32,
) -> Result<Permutation, PermError> {
    let mut images = vec![0usize; f.q as usize];
    for (x, image) in images.iter_mut().enumerate() {
        let mut t = x as u32;
        for _ in 0..i {
            t = f.frobenius(t);
        }
        *image = f.add(f.mul(a, t), b) as usize;
    }
    Permutation::new(images)
}

fn agammal1(p: u32, e: u32, cap: usize) -> Result<GroupTable, CatalogError> {
    if e < 1 {
        return Err(bad("agammal1", "extension degree must be at least 1"));
    }
    let f = gf(p, e)?;
    let gens = vec![
        semilinear_perm(&f, 1, 0, 1)?,
        semilinear_perm(&f, f.generator, 0, 0)?,
        semilinear_perm(&f, 1, 1, 0)?,
    ];
    Ok(GroupTable::generate(f.q as usize, &gens, cap)?)
}

fn asl2(q: u32, cap: usize) -> Result<GroupTable, CatalogError> {
    let (p, e) = prime_power(q)?;
    if p != 2 {
        return Err(bad("asl2", "q must be even"));
    }
    let f = gf(p, e)?;
    let mut gens = Vec::new();
    for m in sl2_matrices(&f) {
        gens.push(affine_perm(&f, 2, &m, &[0, 0])?);
    }
    gens.push(affine_perm(&f, 2, &[1, 0, 0, 1], &[1, 0])?);
    Ok(GroupTable::generate((q * q) as usize, &gens, cap)?)
}

fn agl3_2(cap: usize) -> Result<GroupTable, CatalogError> {
    let f = gf(2, 1)?;
    // A transvection and an order-7 cycle generate GL(3,2); one translation
    // brings in the full translation group by conjugation.
    let gens = vec![
        affine_perm(&f, 3, &[1, 1, 0, 0, 1, 0, 0, 0, 1], &[0, 0, 0])?,
        affine_perm(&f, 3, &[0, 0, 1, 1, 0, 1, 0, 1, 0], &[0, 0, 0])?,
        affine_perm(&f, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1], &[1, 0, 0])?,
    ];
    Ok(GroupTable::generate(8, &gens, cap)?)
}

fn m11(cap: usize) -> Result<GroupTable, CatalogError> {
    // Standard two-generator presentation on 11 points; validated by order
    // and 2-transitivity in the test suite rather than trusted.
    let gens = vec![
        Permutation::new(vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0])?,
        Permutation::new(vec![0, 1, 6, 9, 5, 3, 10, 2, 8, 4, 7])?,
    ];
    Ok(GroupTable::generate(11, &gens, cap)?)
}

// ---------------------------------------------------------------------------
// Group spec files

/// A user-supplied group: degree plus generator image arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpecFile {
    pub name: Option<String>,
    pub degree: usize,
    /// Always stored 0-based.
    pub generators: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawGroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    degree: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    one_based: bool,
    generators: Vec<Vec<usize>>,
}

/// Parses and validates a group spec document (JSON).
pub fn parse_group_spec(text: &str) -> Result<GroupSpecFile, CatalogError> {
    let raw: RawGroupSpec =
        serde_json::from_str(text).map_err(|e| CatalogError::Malformed(e.to_string()))?;
    if raw.degree < 1 {
        return Err(CatalogError::Malformed("degree must be at least 1".into()));
    }
    let mut generators = Vec::with_capacity(raw.generators.len());
    for (gi, images) in raw.generators.into_iter().enumerate() {
        let images = if raw.one_based {
            let mut shifted = Vec::with_capacity(images.len());
            for x in images {
                if x == 0 {
                    return Err(CatalogError::Malformed(format!(
                        "generator {gi}: image 0 in a one-based file"
                    )));
                }
                shifted.push(x - 1);
            }
            shifted
        } else {
            images
        };
        if images.len() != raw.degree {
            return Err(CatalogError::Malformed(format!(
                "generator {gi} has length {} but degree is {}",
                images.len(),
                raw.degree
            )));
        }
        // Bijection check.
        Permutation::new(images.clone())
            .map_err(|e| CatalogError::Malformed(format!("generator {gi}: {e}")))?;
        generators.push(images);
    }
    Ok(GroupSpecFile {
        name: raw.name,
        degree: raw.degree,
        generators,
    })
}

/// Serializes a spec back to its 0-based JSON document.
pub fn emit_group_spec(spec: &GroupSpecFile) -> String {
    let raw = RawGroupSpec {
        name: spec.name.clone(),
        degree: spec.degree,
        one_based: false,
        generators: spec.generators.clone(),
    };
    serde_json::to_string_pretty(&raw).expect("spec serializes")
}

impl GroupSpecFile {
    pub fn to_group(&self, cap: usize) -> Result<GroupTable, CatalogError> {
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|im| Permutation::new(im.clone()))
            .collect::<Result<_, _>>()?;
        Ok(GroupTable::generate(self.degree, &gens, cap)?)
    }
}
