//! The verification corpus and the acceptance checklist run over it.
//!
//! Each criterion is exact: searches certify emptiness through clique-cover
//! bounds and exhausted branch-and-bound trees, identities hold in integer
//! or rational arithmetic, and the one numeric path (the eigenvalue scan)
//! is cross-checked against exact kernel ranks.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::catalog::Family;
use crate::cocliques::{
    canonical_cocliques, classify, find_coclique_of_size, max_cocliques, CensusOptions, Coclique,
};
use crate::complements::{
    agl3_2_complement_example, asl2_4_complement_pair, complement_coclique_test,
    p_element_shortcut_test,
};
use crate::dergraph::{
    connectivity, coset_derangement_profile, equitable_check, is_disjoint_clique_union,
    two_point_stabilizer_generation,
};
use crate::ekr_module::{
    coefficient_sum, inner_matches_stabilizer, module_check, psi_values,
};
use crate::group::{ConjugacyClasses, GroupTable};
use crate::linalg::jacobi_eigenvalues;
use crate::spectra::{
    alt_degree_bound, class_sum_matrix, derangements, least_eigenvalue_report, DerangementSet,
    Verdict,
};

/// Every group the acceptance checklist runs over.
pub const CORPUS: [&str; 19] = [
    "sym:3",
    "sym:4",
    "sym:5",
    "alt:4",
    "alt:5",
    "alt:6",
    "agl1:5",
    "agl1:7",
    "agl1:8",
    "agammal1:2,3",
    "agammal1:3,2",
    "psl2:5",
    "psl2:7",
    "psl2:8",
    "psl2:11",
    "pgl2:5",
    "asl2:4",
    "agl3_2",
    "m11",
];

pub const CRITERIA_COUNT: u32 = 12;

const SEARCH_BUDGET: u64 = 2_000_000_000;

pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    pub fn summary_line(&self) -> String {
        format!(
            "[A{}] {}: {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

struct GroupCtx {
    g: GroupTable,
    classes: ConjugacyClasses,
    ders: DerangementSet,
}

fn ctx(tag: &str) -> GroupCtx {
    let g = Family::parse(tag)
        .expect("corpus tag parses")
        .build()
        .expect("corpus group builds");
    let classes = g.conjugacy_classes();
    let ders = derangements(&g);
    GroupCtx { g, classes, ders }
}

fn affine_corpus() -> Vec<(&'static str, GroupCtx, Vec<usize>)> {
    CORPUS
        .iter()
        .filter_map(|&tag| {
            let c = ctx(tag);
            let normals = c.g.regular_normal_subgroups().ok()?;
            normals.into_iter().next().map(|n| (tag, c, n))
        })
        .collect()
}

struct Check {
    pass: bool,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            pass: true,
            details: Vec::new(),
        }
    }

    fn ok(&mut self, line: String) {
        self.details.push(line);
    }

    fn fail(&mut self, line: String) {
        self.pass = false;
        self.details.push(format!("FAIL {line}"));
    }

    fn assert(&mut self, cond: bool, ok_line: String, fail_line: String) {
        if cond {
            self.ok(ok_line);
        } else {
            self.fail(fail_line);
        }
    }

    fn into_result(self, id: u32, name: &'static str) -> CriterionResult {
        CriterionResult {
            id,
            name,
            pass: self.pass,
            details: self.details,
        }
    }
}

/// A1: no coclique of size |G|/n + 1 exists, and the n^2 canonical
/// cocliques of size |G|/n are all present and distinct.
pub fn a1_ekr_bound() -> CriterionResult {
    let mut check = Check::new();
    for &tag in &CORPUS {
        let c = ctx(tag);
        let target = c.g.order() / c.g.degree();
        match find_coclique_of_size(&c.g, &c.ders, target + 1, SEARCH_BUDGET) {
            Ok(None) => {}
            Ok(Some(s)) => {
                check.fail(format!(
                    "{tag}: coclique of size {} exists: {:?}",
                    target + 1,
                    s.members()
                ));
                continue;
            }
            Err(e) => {
                check.fail(format!("{tag}: oversize search inconclusive: {e}"));
                continue;
            }
        }
        let canon = canonical_cocliques(&c.g, &c.ders);
        let n = c.g.degree();
        let mut distinct: Vec<&[usize]> = canon.iter().map(|s| s.members()).collect();
        distinct.sort();
        distinct.dedup();
        let sizes_ok = canon.iter().all(|s| s.size() == target);
        check.assert(
            canon.len() == n * n && distinct.len() == n * n && sizes_ok,
            format!("{tag}: no size-{} coclique; {} canonical at {target}", target + 1, n * n),
            format!(
                "{tag}: canonical sets broken ({} built, {} distinct)",
                canon.len(),
                distinct.len()
            ),
        );
    }
    check.into_result(1, "ekr bound")
}

/// Maximum cocliques "produced in the run": every canonical set of every
/// corpus group, the exhaustive census results, and the explicit
/// nonstandard complement coclique.
fn produced_cocliques() -> Vec<(&'static str, GroupCtx, Vec<Coclique>)> {
    let mut out = Vec::new();
    for &tag in &CORPUS {
        let c = ctx(tag);
        let mut list = canonical_cocliques(&c.g, &c.ders);
        if tag == "agl1:5" || tag == "sym:3" {
            let census = max_cocliques(
                &c.g,
                &c.ders,
                &CensusOptions {
                    limit: 1000,
                    exhaustive: true,
                    ..CensusOptions::default()
                },
            )
            .expect("census runs");
            list.extend(census.found);
        }
        out.push((tag, c, list));
    }
    let pair = asl2_4_complement_pair();
    let c = ctx("asl2:4");
    let k = Coclique::verified(&c.g, &c.ders, pair.nonstandard).expect("coclique");
    out.push(("asl2:4 nonstandard complement", c, vec![k]));
    out
}

/// A2: the module property holds exactly for every produced coclique.
pub fn a2_module_property() -> CriterionResult {
    let mut check = Check::new();
    for (tag, c, cocliques) in produced_cocliques() {
        let mut holds = 0usize;
        let mut witness = None;
        for s in &cocliques {
            match module_check(&c.g, &c.classes, s) {
                Ok(r) if r.holds => holds += 1,
                Ok(r) => {
                    witness = Some(format!("witness element {:?}", r.witness));
                    break;
                }
                Err(e) => {
                    witness = Some(e.to_string());
                    break;
                }
            }
        }
        match witness {
            None => check.ok(format!("{tag}: module property on {holds} cocliques")),
            Some(w) => check.fail(format!("{tag}: module property violated ({w})")),
        }
    }
    check.into_result(2, "ekr-module property")
}

/// Independent oracle for the transversal censuses: enumerate one element
/// per coset of N directly and count the pairwise-intersecting selections.
fn transversal_oracle(g: &GroupTable, n_set: &[usize]) -> (usize, usize) {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; g.order()];
    for v in 0..g.order() {
        if assigned[v] {
            continue;
        }
        let coset: Vec<usize> = n_set.iter().map(|&u| g.mul(u, v)).collect();
        for &x in &coset {
            assigned[x] = true;
        }
        cosets.push(coset);
    }
    let mut total = 0usize;
    let mut canonical = 0usize;
    let mut pick = vec![0usize; cosets.len()];
    'outer: loop {
        let selection: Vec<usize> = pick.iter().zip(&cosets).map(|(&i, c)| c[i]).collect();
        let intersecting = selection.iter().enumerate().all(|(i, &a)| {
            selection[i + 1..]
                .iter()
                .all(|&b| !g.element(g.mul(a, g.inv(b))).is_derangement())
        });
        if intersecting {
            total += 1;
            let n = g.degree();
            let canonical_hit = (0..n).any(|i| {
                let j = g.element(selection[0]).apply(i);
                selection.iter().all(|&m| g.element(m).apply(i) == j)
            });
            if canonical_hit {
                canonical += 1;
            }
        }
        for slot in 0..pick.len() {
            pick[slot] += 1;
            if pick[slot] < cosets[slot].len() {
                continue 'outer;
            }
            pick[slot] = 0;
        }
        break;
    }
    (total, canonical)
}

/// A3: exhaustive censuses with frozen counts from the transversal oracle,
/// plus module and distribution checks per census coclique.
pub fn a3_strict_ekr_censuses() -> CriterionResult {
    let mut check = Check::new();
    let expected = [("agl1:5", 625usize, 25usize), ("sym:3", 9, 9)];
    for (tag, want_total, want_canonical) in expected {
        let c = ctx(tag);
        let n_set = c
            .g
            .regular_normal_subgroups()
            .expect("small class count")
            .remove(0);
        let (oracle_total, oracle_canon) = transversal_oracle(&c.g, &n_set);
        check.assert(
            (oracle_total, oracle_canon) == (want_total, want_canonical),
            format!("{tag}: oracle {oracle_total} transversal cocliques, {oracle_canon} canonical"),
            format!(
                "{tag}: oracle disagrees with frozen counts: ({oracle_total},{oracle_canon}) vs ({want_total},{want_canonical})"
            ),
        );
        let census = max_cocliques(
            &c.g,
            &c.ders,
            &CensusOptions {
                limit: 1000,
                exhaustive: true,
                ..CensusOptions::default()
            },
        )
        .expect("census");
        check.assert(
            census.complete
                && census.total_found == want_total
                && census.canonical_count == want_canonical,
            format!(
                "{tag}: census complete, {} found ({} canonical)",
                census.total_found, census.canonical_count
            ),
            format!(
                "{tag}: census mismatch: complete={} total={} canonical={}",
                census.complete, census.total_found, census.canonical_count
            ),
        );
        let mut all_ok = true;
        for s in &census.found {
            let m = module_check(&c.g, &c.classes, s).expect("sized");
            let d = inner_matches_stabilizer(&c.g, &c.classes, s).expect("sized");
            if !(m.holds && d) {
                all_ok = false;
                break;
            }
        }
        check.assert(
            all_ok,
            format!("{tag}: module + inner-distribution on all {} census cocliques", census.found.len()),
            format!("{tag}: a census coclique fails module/distribution checks"),
        );
    }
    check.into_result(3, "exhaustive strict-ekr censuses")
}

/// Brute-force spectrum of the 60-vertex derangement graph of alt:5,
/// independent of the class-sum route.
fn alt5_adjacency_spectrum_set() -> Vec<f64> {
    let c = ctx("alt:5");
    let order = c.g.order();
    let mut adj = vec![vec![0.0f64; order]; order];
    for a in 0..order {
        for b in 0..order {
            if a != b && c.ders.contains(c.g.mul(a, c.g.inv(b))) {
                adj[a][b] = 1.0;
            }
        }
    }
    cluster(&jacobi_eigenvalues(adj), 1e-6)
}

fn cluster(sorted: &[f64], tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &x in sorted {
        match out.last() {
            Some(&last) if (x - last).abs() <= tol => {}
            _ => out.push(x),
        }
    }
    out
}

/// A4: the least eigenvalue -d/(n-1) is certified unique where expected,
/// with the alt:5 spectrum checked against the raw adjacency matrix.
pub fn a4_spectral_certification() -> CriterionResult {
    let mut check = Check::new();
    let expect_unique = [
        "alt:5", "alt:6", "psl2:5", "psl2:7", "psl2:8", "psl2:11", "m11", "asl2:4", "agl3_2",
    ];
    for tag in expect_unique {
        let c = ctx(tag);
        let report = least_eigenvalue_report(&c.g).expect("2-transitive");
        check.assert(
            report.verdict == Verdict::CertifiedUnique,
            format!(
                "{tag}: d={} lambda*={} {}",
                report.degree_d, report.lambda_star, report.verdict
            ),
            format!(
                "{tag}: verdict {} (multiplicity {})",
                report.verdict, report.multiplicity
            ),
        );
        if tag == "alt:5" {
            let minus_six = BigRational::from(BigInt::from(-6));
            check.assert(
                report.degree_d == 24 && report.lambda_star == minus_six,
                "alt:5: d=24, lambda*=-6".to_string(),
                format!(
                    "alt:5: d={} lambda*={}, expected 24 and -6",
                    report.degree_d, report.lambda_star
                ),
            );
            let adjacency_set = alt5_adjacency_spectrum_set();
            let class_sum_set = cluster(&report.spectrum, 1e-6);
            let sets_match = adjacency_set.len() == class_sum_set.len()
                && adjacency_set
                    .iter()
                    .zip(&class_sum_set)
                    .all(|(a, b)| (a - b).abs() < 1e-5);
            check.assert(
                sets_match,
                format!("alt:5: adjacency spectrum set matches class-sum set {class_sum_set:?}"),
                format!("alt:5: spectrum sets differ: {adjacency_set:?} vs {class_sum_set:?}"),
            );
        }
    }
    check.into_result(4, "spectral certification")
}

/// A5: connectivity facts. Frobenius agl1:q graphs are |G_x| disjoint
/// complete graphs; the listed disconnected and connected groups check out.
pub fn a5_connectivity() -> CriterionResult {
    let mut check = Check::new();
    // Expected-disconnected list, as stated in the acceptance checklist.
    for tag in ["agammal1:3,2", "agammal1:2,3"] {
        let c = ctx(tag);
        let comp = connectivity(&c.g, &c.ders);
        check.assert(
            !comp.is_connected,
            format!("{tag}: disconnected ({} components)", comp.component_count),
            format!("{tag}: measured connected, expected disconnected"),
        );
    }
    for tag in ["agl1:5", "agl1:7", "agl1:8"] {
        let c = ctx(tag);
        let n = c.g.degree();
        let comp = connectivity(&c.g, &c.ders);
        let stab_order = c.g.order() / n;
        let n_set = c.g.regular_normal_subgroups().expect("small").remove(0);
        let der_is_kernel = c.ders.indices().to_vec()
            == n_set.iter().copied().filter(|&u| u != 0).collect::<Vec<_>>();
        let union_of_cliques = is_disjoint_clique_union(&c.g, &c.ders);
        let frobenius = (1..n).all(|y| c.g.two_point_stabilizer(0, y).len() == 1);
        check.assert(
            comp.component_count == stab_order
                && comp.generated == n_set
                && der_is_kernel
                && union_of_cliques
                && frobenius,
            format!("{tag}: {} disjoint complete graphs on {n} vertices", stab_order),
            format!(
                "{tag}: Frobenius structure broken (components={}, clique-union={union_of_cliques})",
                comp.component_count
            ),
        );
    }
    // Converse direction on a non-Frobenius affine group.
    {
        let c = ctx("asl2:4");
        let n_set = c.g.regular_normal_subgroups().expect("small").remove(0);
        let der_is_kernel = c.ders.count() == n_set.len() - 1;
        let union_of_cliques = is_disjoint_clique_union(&c.g, &c.ders);
        let frobenius = (1..c.g.degree()).all(|y| c.g.two_point_stabilizer(0, y).len() == 1);
        check.assert(
            !der_is_kernel && !union_of_cliques && !frobenius,
            "asl2:4: non-Frobenius, graph not a clique union".to_string(),
            "asl2:4: converse of the clique-union characterization failed".to_string(),
        );
    }
    for tag in [
        "alt:5", "alt:6", "psl2:5", "psl2:7", "psl2:8", "psl2:11", "m11", "asl2:4", "agl3_2",
    ] {
        let c = ctx(tag);
        let comp = connectivity(&c.g, &c.ders);
        check.assert(
            comp.is_connected,
            format!("{tag}: connected"),
            format!(
                "{tag}: measured {} components, expected connected",
                comp.component_count
            ),
        );
    }
    check.into_result(5, "connectivity")
}

/// A6: the per-coset derangement flags computed by direct scan and by the
/// centralizer criterion agree on every affine corpus group.
pub fn a6_coset_criterion_agreement() -> CriterionResult {
    let mut check = Check::new();
    for (tag, c, n_set) in affine_corpus() {
        match coset_derangement_profile(&c.g, &n_set) {
            Ok(profile) => check.assert(
                profile.agree,
                format!("{tag}: both criteria agree on {} cosets", profile.reps.len()),
                format!("{tag}: criteria disagree"),
            ),
            Err(e) => check.fail(format!("{tag}: {e}")),
        }
    }
    check.into_result(6, "coset derangement dual criterion")
}

/// A7: `<Der> = <N ∪ two-point stabilizers>` on every affine corpus group.
pub fn a7_two_point_generation() -> CriterionResult {
    let mut check = Check::new();
    for (tag, c, n_set) in affine_corpus() {
        match two_point_stabilizer_generation(&c.g, &c.ders, &n_set) {
            Ok(r) => check.assert(
                r.equal,
                format!("{tag}: both closures have order {}", r.der_generated.len()),
                format!(
                    "{tag}: orders differ: {} vs {}",
                    r.der_generated.len(),
                    r.stab_generated.len()
                ),
            ),
            Err(e) => check.fail(format!("{tag}: {e}")),
        }
    }
    check.into_result(7, "two-point stabilizer generation")
}

/// A8: the explicit complement examples behave exactly as constructed.
pub fn a8_explicit_examples() -> CriterionResult {
    let mut check = Check::new();
    {
        let pair = asl2_4_complement_pair();
        let g = &pair.group;
        let n_set = g.regular_normal_subgroups().expect("small").remove(0);
        let report = complement_coclique_test(g, &n_set, &pair.nonstandard).expect("subgroup");
        let ders = derangements(g);
        let classes = g.conjugacy_classes();
        let coclique = Coclique::verified(g, &ders, pair.nonstandard.clone());
        let orders_ok = g.element_order(pair.t) == 2
            && g.element_order(pair.u) == 2
            && g.element_order(pair.s) == 5;
        let mut ok = orders_ok
            && pair.nonstandard.len() == 60
            && report.is_complement
            && !report.is_standard
            && report.is_coclique;
        let mut note = String::new();
        match coclique {
            Ok(c) => {
                let cls = classify(g, &c);
                let module = module_check(g, &classes, &c).expect("sized").holds;
                let equitable = equitable_check(g, &ders, c.members()) == Ok(true);
                if cls.canonical.is_some() || !module || !equitable {
                    ok = false;
                    note = format!(
                        " (canonical={:?} module={module} equitable={equitable})",
                        cls.canonical
                    );
                }
            }
            Err(e) => {
                ok = false;
                note = format!(" ({e})");
            }
        }
        check.assert(
            ok,
            "asl2:4: nonstandard complement of order 60 is a non-canonical maximum coclique"
                .to_string(),
            format!("asl2:4: explicit example broken{note}"),
        );
        let shortcut = p_element_shortcut_test(g, &pair.nonstandard, 2).expect("subgroup");
        check.assert(
            shortcut,
            "asl2:4: 2-element shortcut agrees".to_string(),
            "asl2:4: 2-element shortcut disagrees with full test".to_string(),
        );
    }
    {
        let ex = agl3_2_complement_example();
        let g = &ex.group;
        let n_set = g.regular_normal_subgroups().expect("small").remove(0);
        let report = complement_coclique_test(g, &n_set, &ex.complement).expect("subgroup");
        let orders_ok = g.element_order(ex.a) == 2
            && g.element_order(ex.u) == 2
            && g.element_order(ex.s) == 7;
        let au_derangement = report.derangement_witness.is_some();
        check.assert(
            orders_ok
                && ex.rank_a_minus_1 == 1
                && ex.rank_au_minus_1 == 2
                && report.is_complement
                && !report.is_standard
                && !report.is_coclique
                && au_derangement,
            "agl3_2: rank(a-1)=1 != 2=rank(au-1); a*u is a derangement".to_string(),
            format!(
                "agl3_2: example broken (ranks {} {}, coclique={})",
                ex.rank_a_minus_1, ex.rank_au_minus_1, report.is_coclique
            ),
        );
        let shortcut = p_element_shortcut_test(g, &ex.complement, 2).expect("subgroup");
        check.assert(
            !shortcut,
            "agl3_2: 2-element shortcut rejects the complement".to_string(),
            "agl3_2: 2-element shortcut disagrees with full test".to_string(),
        );
    }
    check.into_result(8, "explicit complement examples")
}

/// A9: the coefficient sum takes exactly the two predicted values with the
/// membership pattern, for every produced coclique of every affine group.
pub fn a9_coefficient_two_value() -> CriterionResult {
    let mut check = Check::new();
    for (tag, c, n_set) in affine_corpus() {
        let _ = n_set;
        let stab_order = (c.g.order() / c.g.degree()) as i64;
        let nm1 = c.g.degree() as i64 - 1;
        if stab_order % nm1 != 0 {
            check.fail(format!(
                "{tag}: -|G_x|/(n-1) = -{stab_order}/{nm1} is not an integer"
            ));
            continue;
        }
        let outside_value = -stab_order / nm1;
        let psi = psi_values(&c.g, &c.classes);
        let mut cocliques = canonical_cocliques(&c.g, &c.ders);
        if tag == "agl1:5" {
            let census = max_cocliques(
                &c.g,
                &c.ders,
                &CensusOptions {
                    limit: 1000,
                    exhaustive: true,
                    ..CensusOptions::default()
                },
            )
            .expect("census");
            cocliques.extend(census.found);
        }
        let mut bad = None;
        'outer: for s in &cocliques {
            let members = s.members();
            let inside = crate::bitset::Bitset::from_indices(c.g.order(), members);
            for y in 0..c.g.order() {
                let got = coefficient_sum(&c.g, &c.classes, &psi, members, y);
                let want = if inside.contains(y) {
                    stab_order
                } else {
                    outside_value
                };
                if got != want {
                    bad = Some(format!("y={y}: got {got}, want {want}"));
                    break 'outer;
                }
            }
        }
        match bad {
            None => check.ok(format!(
                "{tag}: coefficient sums are {{{stab_order}, {outside_value}}} on {} cocliques",
                cocliques.len()
            )),
            Some(b) => check.fail(format!("{tag}: coefficient pattern broken at {b}")),
        }
    }
    check.into_result(9, "coefficient sum two-value pattern")
}

/// A10: every produced maximum coclique has the stabilizer's inner
/// distribution, exactly.
pub fn a10_inner_distributions() -> CriterionResult {
    let mut check = Check::new();
    for (tag, c, cocliques) in produced_cocliques() {
        let mut bad = false;
        for s in &cocliques {
            if !inner_matches_stabilizer(&c.g, &c.classes, s).expect("sized") {
                bad = true;
                break;
            }
        }
        check.assert(
            !bad,
            format!("{tag}: {} distributions match the stabilizer", cocliques.len()),
            format!("{tag}: an inner distribution differs from the stabilizer"),
        );
    }
    check.into_result(10, "inner distributions")
}

/// A11: alternating-group derangement counts meet n!/6 for n = 5, 6, 7,
/// cross-checked against the inclusion-exclusion formula.
pub fn a11_alt_bound() -> CriterionResult {
    let mut check = Check::new();
    for n in [5usize, 6, 7] {
        let r = alt_degree_bound(n).expect("n >= 5");
        let formula = even_derangements(n);
        check.assert(
            r.holds && r.derangement_count == formula && r.threshold == n - 1,
            format!(
                "alt:{n}: d = {} >= {} = n!/6, threshold {}",
                r.derangement_count, r.lower_bound, r.threshold
            ),
            format!(
                "alt:{n}: d = {} (formula {formula}), bound {}",
                r.derangement_count, r.lower_bound
            ),
        );
    }
    check.into_result(11, "alternating degree bound")
}

/// Even derangements by inclusion-exclusion:
/// (D(n) + (-1)^(n-1) (n-1)) / 2.
fn even_derangements(n: usize) -> u64 {
    let mut d: i64 = 1; // D(0)
    let mut prev: i64 = 1;
    for k in 1..=n as i64 {
        let next = if k == 1 { 0 } else { (k - 1) * (d + prev) };
        prev = d;
        d = next;
    }
    let sign = if n % 2 == 0 { -1i64 } else { 1 };
    ((d + sign * (n as i64 - 1)) / 2) as u64
}

/// A12: the standing type invariants hold on the whole corpus.
pub fn a12_property_suites() -> CriterionResult {
    let mut check = Check::new();
    for &tag in &CORPUS {
        let c = ctx(tag);
        let order = c.g.order();
        let mut problems: Vec<String> = Vec::new();

        // Bijection and inverse-law invariants.
        for i in 0..order {
            if c.g.element(i).images().len() != c.g.degree() {
                problems.push(format!("element {i} has wrong degree"));
                break;
            }
            if c.g.mul(i, c.g.inv(i)) != 0 || c.g.inv(c.g.inv(i)) != i {
                problems.push(format!("inverse law fails at {i}"));
                break;
            }
        }

        // Class equation.
        let class_sum: usize = c.classes.sizes.iter().sum();
        if class_sum != order {
            problems.push("class equation fails".to_string());
        }
        if c.classes.sizes.iter().any(|&s| order % s != 0) {
            problems.push("a class size does not divide |G|".to_string());
        }
        if c.classes.class_of[0] != 0 || c.classes.sizes[0] != 1 {
            problems.push("identity class malformed".to_string());
        }

        // Orbit-stabilizer for the transitive action.
        if c.g.point_stabilizer(0).len() * c.g.degree() != order {
            problems.push("orbit-stabilizer fails".to_string());
        }

        // Psi orthogonality.
        let psi = psi_values(&c.g, &c.classes);
        let first: i64 = (0..c.classes.count())
            .map(|cl| c.classes.sizes[cl] as i64 * psi.by_class[cl])
            .sum();
        let second: i64 = (0..c.classes.count())
            .map(|cl| c.classes.sizes[cl] as i64 * psi.by_class[cl] * psi.by_class[cl])
            .sum();
        if first != 0 || second != order as i64 {
            problems.push("psi orthogonality fails".to_string());
        }

        // Derangement set is an inverse-closed union of classes.
        for &d in c.ders.indices() {
            if !c.ders.contains(c.g.inv(d)) {
                problems.push("derangements not inverse-closed".to_string());
                break;
            }
        }

        // Class-sum matrix column identity.
        let m = class_sum_matrix(&c.g, &c.classes, &c.ders);
        let d_count = c.ders.count() as i64;
        for j in 0..m.k {
            let weighted: i64 = (0..m.k)
                .map(|i| m.entry(i, j) * m.class_sizes[i] as i64)
                .sum();
            if weighted != d_count * m.class_sizes[j] as i64 {
                problems.push(format!("class-sum column identity fails at {j}"));
                break;
            }
        }

        // Canonical sets re-verify as cocliques (pairwise test).
        let canon = canonical_cocliques(&c.g, &c.ders);
        if canon.len() != c.g.degree() * c.g.degree() {
            problems.push("canonical coclique count wrong".to_string());
        }

        if problems.is_empty() {
            check.ok(format!("{tag}: all invariants hold"));
        } else {
            check.fail(format!("{tag}: {}", problems.join("; ")));
        }
    }
    check.into_result(12, "type invariant suites")
}

pub fn run_criterion(id: u32) -> Option<CriterionResult> {
    match id {
        1 => Some(a1_ekr_bound()),
        2 => Some(a2_module_property()),
        3 => Some(a3_strict_ekr_censuses()),
        4 => Some(a4_spectral_certification()),
        5 => Some(a5_connectivity()),
        6 => Some(a6_coset_criterion_agreement()),
        7 => Some(a7_two_point_generation()),
        8 => Some(a8_explicit_examples()),
        9 => Some(a9_coefficient_two_value()),
        10 => Some(a10_inner_distributions()),
        11 => Some(a11_alt_bound()),
        12 => Some(a12_property_suites()),
        _ => None,
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA_COUNT)
        .map(|id| run_criterion(id).expect("valid id"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_tags_all_build() {
        for &tag in &CORPUS {
            let g = Family::parse(tag).unwrap().build().unwrap();
            assert!(g.order() >= 6, "{tag}");
            assert!(g.is_two_transitive(), "{tag}");
        }
    }

    #[test]
    fn even_derangement_formula() {
        assert_eq!(even_derangements(5), 24);
        assert_eq!(even_derangements(6), 130);
        assert_eq!(even_derangements(7), 930);
    }

    #[test]
    fn cluster_collapses_repeats() {
        let clustered = cluster(&[-6.0, -6.0 + 1e-9, 0.0, 4.0, 4.0, 24.0], 1e-6);
        assert_eq!(clustered, vec![-6.0, 0.0, 4.0, 24.0]);
    }
}
