//! Complements to a regular normal subgroup and their coclique status.
//!
//! For a transitive action, an element is conjugate into a point stabilizer
//! exactly when it has a fixed point, so "K is a coclique" reduces to "K
//! contains no derangement". Complements are found by lifting a generating
//! set of the point stabilizer across translation substitutions, and
//! deduplicated up to conjugacy by exhaustive conjugation.

use std::collections::HashMap;

use thiserror::Error;

use crate::bitset::Bitset;
use crate::catalog::{affine_perm, Family};
use crate::dergraph::is_regular_normal;
use crate::field::{gf, FiniteField};
use crate::group::GroupTable;
use crate::linalg::rank_gf2;


#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplementError {
    #[error("the given set is not a subgroup")]
    NotASubgroup,
    #[error("the given subgroup is not regular normal")]
    NotRegularNormal,
    #[error("stabilizer needs {0} generators; lift search is capped at 3")]
    TooManyGenerators(usize),
}

#[derive(Debug, Clone)]
pub struct ComplementReport {
    /// Sorted element indices of K.
    pub subgroup: Vec<usize>,
    /// K ∩ N = 1 and |K| |N| = |G|.
    pub is_complement: bool,
    /// Conjugate to the stabilizer of a point.
    pub is_standard: bool,
    /// No element of K is fixed-point free.
    pub is_coclique: bool,
    pub derangement_witness: Option<usize>,
}

/// Classifies a subgroup K against a regular normal subgroup N.
pub fn complement_coclique_test(
    g: &GroupTable,
    n_set: &[usize],
    k_set: &[usize],
) -> Result<ComplementReport, ComplementError> {
    if !g.is_subgroup(k_set) {
        return Err(ComplementError::NotASubgroup);
    }
    if !is_regular_normal(g, n_set) {
        return Err(ComplementError::NotRegularNormal);
    }
    Ok(build_report(g, n_set, k_set, &g.point_stabilizer(0)))
}

fn build_report(
    g: &GroupTable,
    n_set: &[usize],
    k_set: &[usize],
    stabilizer: &[usize],
) -> ComplementReport {
    let n_member = Bitset::from_indices(g.order(), n_set);
    let trivial_intersection = k_set.iter().all(|&k| k == 0 || !n_member.contains(k));
    let is_complement = trivial_intersection && k_set.len() * n_set.len() == g.order();
    let derangement_witness = k_set
        .iter()
        .copied()
        .find(|&k| g.element(k).is_derangement());
    let mut sorted_k = k_set.to_vec();
    sorted_k.sort_unstable();
    let is_standard = (0..g.order()).any(|x| g.conjugate_set(&sorted_k, x) == stabilizer);
    ComplementReport {
        is_complement,
        is_standard,
        is_coclique: derangement_witness.is_none(),
        derangement_witness,
        subgroup: sorted_k,
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// True iff every element of K whose order is a power of `p` has a fixed
/// point. For complements to an elementary abelian p-group this single
/// condition already decides the coclique question.
pub fn p_element_shortcut_test(
    g: &GroupTable,
    k_set: &[usize],
    p: usize,
) -> Result<bool, ComplementError> {
    if !g.is_subgroup(k_set) {
        return Err(ComplementError::NotASubgroup);
    }
    Ok(k_set.iter().all(|&k| {
        let ord = g.element_order(k);
        !is_power_of(ord, p) || !g.element(k).is_derangement()
    }))
}

pub struct ComplementSearch {
    /// One report per conjugacy class of complements, standard class first.
    pub reports: Vec<ComplementReport>,
    pub complete: bool,
    pub tuples_tried: u64,
    pub closure_steps: u64,
}

/// Finds all complements to N up to conjugacy by generator lifting: every
/// complement is generated by `u_i h_i` for a fixed generating set `h_i` of
/// the stabilizer and some translations `u_i`, because complements map
/// isomorphically onto G/N.
pub fn find_complements(
    g: &GroupTable,
    n_set: &[usize],
    budget: u64,
) -> Result<ComplementSearch, ComplementError> {
    if !is_regular_normal(g, n_set) {
        return Err(ComplementError::NotRegularNormal);
    }
    let stabilizer = g.point_stabilizer(0);
    let gens = minimal_generators(g, &stabilizer);
    if gens.len() > 3 {
        return Err(ComplementError::TooManyGenerators(gens.len()));
    }
    let gen_orders: Vec<usize> = gens.iter().map(|&h| g.element_order(h)).collect();
    let h_size = stabilizer.len();
    let n_member = Bitset::from_indices(g.order(), n_set);

    let mut classes: HashMap<Vec<usize>, ComplementReport> = HashMap::new();
    let mut class_order: Vec<Vec<usize>> = Vec::new();
    let mut tuples_tried = 0u64;
    let mut closure_steps = 0u64;
    let mut complete = true;

    let tuple_count = n_set.len().pow(gens.len() as u32) as u64;
    'tuples: for code in 0..tuple_count {
        tuples_tried += 1;
        let mut rest = code;
        let mut lifted = Vec::with_capacity(gens.len());
        let mut viable = true;
        for (gi, &h) in gens.iter().enumerate() {
            let u = n_set[(rest % n_set.len() as u64) as usize];
            rest /= n_set.len() as u64;
            let candidate = g.mul(u, h);
            // A complement maps isomorphically onto G/N, so lifted
            // generators must keep their orders.
            if g.element_order(candidate) != gen_orders[gi] {
                viable = false;
                break;
            }
            lifted.push(candidate);
        }
        if !viable {
            continue;
        }
        // Close, aborting as soon as the subgroup outgrows a complement.
        let mut member = Bitset::new(g.order());
        member.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        let mut size = 1usize;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &s in &lifted {
                closure_steps += 1;
                if closure_steps > budget {
                    complete = false;
                    break 'tuples;
                }
                let b = g.mul(a, s);
                if !member.contains(b) {
                    if size == h_size {
                        size += 1; // overgrown
                        break;
                    }
                    member.insert(b);
                    size += 1;
                    queue.push(b);
                }
            }
            if size > h_size {
                break;
            }
        }
        if size != h_size {
            continue;
        }
        let k_set = member.indices();
        if !k_set.iter().all(|&k| k == 0 || !n_member.contains(k)) {
            continue;
        }
        let canon = conjugacy_canonical_form(g, &k_set);
        if !classes.contains_key(&canon) {
            let report = build_report(g, n_set, &k_set, &stabilizer);
            classes.insert(canon.clone(), report);
            class_order.push(canon);
        }
    }

    let mut reports: Vec<ComplementReport> = class_order
        .into_iter()
        .map(|c| classes.remove(&c).expect("inserted"))
        .collect();
    reports.sort_by_key(|r| (!r.is_standard, r.subgroup.clone()));
    Ok(ComplementSearch {
        reports,
        complete,
        tuples_tried,
        closure_steps,
    })
}

/// Greedy minimal generating sequence for a subgroup given as sorted indices.
fn minimal_generators(g: &GroupTable, subgroup: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = vec![0usize];
    for &candidate in subgroup {
        if candidate == 0 || closure.binary_search(&candidate).is_ok() {
            continue;
        }
        gens.push(candidate);
        closure = g.subgroup_generated(&gens);
        if closure.len() == subgroup.len() {
            break;
        }
    }
    gens
}

/// Lexicographically least conjugate of the set; equal exactly for
/// conjugate subgroups.
fn conjugacy_canonical_form(g: &GroupTable, set: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for x in 0..g.order() {
        let conj = g.conjugate_set(set, x);
        if best.as_ref().is_none_or(|b| conj < *b) {
            best = Some(conj);
        }
    }
    best.expect("nonempty group")
}

// ---------------------------------------------------------------------------
// Explicit matrix examples

fn mat_mul(f: &FiniteField, dim: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = 0u32;
            for k in 0..dim {
                acc = f.add(acc, f.mul(a[r * dim + k], b[k * dim + c]));
            }
            out[r * dim + c] = acc;
        }
    }
    out
}

fn mat_vec(f: &FiniteField, dim: usize, a: &[u32], v: &[u32]) -> Vec<u32> {
    (0..dim)
        .map(|r| {
            let mut acc = 0u32;
            for k in 0..dim {
                acc = f.add(acc, f.mul(a[r * dim + k], v[k]));
            }
            acc
        })
        .collect()
}

/// Affine map composition as block matrices: `(A1,v1) * (A2,v2)` applies
/// `(A2,v2)` first, matching matrix multiplication.
fn affine_product(
    f: &FiniteField,
    dim: usize,
    a1: &[u32],
    v1: &[u32],
    a2: &[u32],
    v2: &[u32],
) -> (Vec<u32>, Vec<u32>) {
    let a = mat_mul(f, dim, a1, a2);
    let mut v = mat_vec(f, dim, a1, v2);
    for (r, val) in v.iter_mut().enumerate() {
        *val = f.add(*val, v1[r]);
    }
    (a, v)
}

/// The explicit ASL2(4) complement pair: elements t, u, s of orders 2, 2, 5
/// built from 3x3 block matrices over GF(4); `<t, s>` is the stabilizer of
/// the zero vector and `<t*u, s>` is a nonstandard complement that is a
/// maximum coclique.
pub struct Asl2ComplementPair {
    pub group: GroupTable,
    pub t: usize,
    pub u: usize,
    pub s: usize,
    /// `<t, s>`, sorted indices.
    pub standard: Vec<usize>,
    /// `<t*u, s>`, sorted indices.
    pub nonstandard: Vec<usize>,
}

pub fn asl2_4_complement_pair() -> Asl2ComplementPair {
    let f = gf(2, 2).expect("GF(4)");
    let alpha = f.generator;
    let group = Family::Asl2(4).build().expect("ASL2(4)");

    let t_mat = [1, 0, 1, 1];
    let t_vec = [0, 0];
    let u_mat = [1, 0, 0, 1];
    let u_vec = [0, 1];
    let s_mat = [0, 1, 1, alpha];
    let s_vec = [0, 0];

    let to_index = |a: &[u32], v: &[u32]| {
        let p = affine_perm(&f, 2, a, v).expect("bijection");
        group.index_of(&p).expect("member of ASL2(4)")
    };
    let t = to_index(&t_mat, &t_vec);
    let u = to_index(&u_mat, &u_vec);
    let s = to_index(&s_mat, &s_vec);
    let (tu_mat, tu_vec) = affine_product(&f, 2, &t_mat, &t_vec, &u_mat, &u_vec);
    let tu = to_index(&tu_mat, &tu_vec);

    let standard = group.subgroup_generated(&[t, s]);
    let nonstandard = group.subgroup_generated(&[tu, s]);
    Asl2ComplementPair {
        group,
        t,
        u,
        s,
        standard,
        nonstandard,
    }
}

/// The explicit AGL3(2) example: elements a, u, s of orders 2, 2, 7 from
/// 4x4 matrices over GF(2). Here `<a*u, s>` is a nonstandard complement
/// that is *not* a coclique: `a*u` is a derangement, certified by the rank
/// gap between `a - 1` and `a*u - 1`.
pub struct Agl32ComplementExample {
    pub group: GroupTable,
    pub a: usize,
    pub u: usize,
    pub s: usize,
    /// `<a*u, s>`, sorted indices.
    pub complement: Vec<usize>,
    pub rank_a_minus_1: usize,
    pub rank_au_minus_1: usize,
}

pub fn agl3_2_complement_example() -> Agl32ComplementExample {
    let f = gf(2, 1).expect("GF(2)");
    let group = Family::Agl3_2.build().expect("AGL3(2)");

    let a_mat = [1, 1, 0, 0, 1, 0, 0, 0, 1];
    let a_vec = [0, 0, 0];
    let u_mat = [1, 0, 0, 0, 1, 0, 0, 0, 1];
    let u_vec = [1, 0, 1];
    let s_mat = [0, 0, 1, 1, 0, 1, 0, 1, 0];
    let s_vec = [0, 0, 0];

    let to_index = |m: &[u32], v: &[u32]| {
        let p = affine_perm(&f, 3, m, v).expect("bijection");
        group.index_of(&p).expect("member of AGL3(2)")
    };
    let a = to_index(&a_mat, &a_vec);
    let u = to_index(&u_mat, &u_vec);
    let s = to_index(&s_mat, &s_vec);
    let (au_mat, au_vec) = affine_product(&f, 3, &a_mat, &a_vec, &u_mat, &u_vec);
    let au = to_index(&au_mat, &au_vec);

    let complement = group.subgroup_generated(&[au, s]);
    let rank_a_minus_1 = affine_rank_minus_identity(&a_mat, &a_vec);
    let rank_au_minus_1 = affine_rank_minus_identity(&au_mat, &au_vec);
    Agl32ComplementExample {
        group,
        a,
        u,
        s,
        complement,
        rank_a_minus_1,
        rank_au_minus_1,
    }
}

/// GF(2) rank of the 4x4 block matrix `[[A, v], [0, 1]]` minus the identity.
fn affine_rank_minus_identity(a_mat: &[u32], v: &[u32]) -> usize {
    let dim = v.len();
    let mut rows = Vec::with_capacity(dim + 1);
    for r in 0..dim {
        let mut bits = 0u64;
        for c in 0..dim {
            let mut entry = a_mat[r * dim + c];
            if r == c {
                entry ^= 1;
            }
            bits |= (entry as u64 & 1) << c;
        }
        bits |= (v[r] as u64 & 1) << dim;
        rows.push(bits);
    }
    rows.push(0);
    rank_gf2(&rows)
}
