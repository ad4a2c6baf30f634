//! Cross-module structural properties on corpus groups, beyond the
//! per-module unit tests.

use ekr_core::catalog::Family;
use ekr_core::cocliques::{canonical_cocliques, classify, Coclique};
use ekr_core::dergraph::{adjacent, connectivity, equitable_check};
use ekr_core::ekr_module::{inner_distribution, module_check};
use ekr_core::group::GroupTable;
use ekr_core::spectra::{class_sum_matrix, clique_coclique_bound, derangements};

fn build(tag: &str) -> GroupTable {
    Family::parse(tag).unwrap().build().unwrap()
}

/// Deterministic pseudo-random stream for spot checks.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut x = self.0;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
        x ^ (x >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

#[test]
fn adjacency_symmetric_irreflexive_on_sampled_pairs() {
    let mut rng = SplitMix(7);
    for tag in ["sym:5", "psl2:8", "asl2:4", "m11"] {
        let g = build(tag);
        let ders = derangements(&g);
        for _ in 0..1000 {
            let a = rng.below(g.order());
            let b = rng.below(g.order());
            assert_eq!(adjacent(&g, &ders, a, b), adjacent(&g, &ders, b, a));
            assert!(!adjacent(&g, &ders, a, a));
        }
    }
}

#[test]
fn vertex_degrees_equal_derangement_count() {
    let mut rng = SplitMix(99);
    for tag in ["sym:4", "psl2:7", "agammal1:3,2"] {
        let g = build(tag);
        let ders = derangements(&g);
        let d = ders.count();
        // The identity's neighborhood is the derangement set itself.
        let identity_neighbors: Vec<usize> =
            (0..g.order()).filter(|&u| adjacent(&g, &ders, 0, u)).collect();
        assert_eq!(identity_neighbors, ders.indices());
        for _ in 0..10 {
            let v = rng.below(g.order());
            let count = (0..g.order()).filter(|&u| adjacent(&g, &ders, v, u)).count();
            assert_eq!(count, d, "{tag} vertex {v}");
        }
    }
}

#[test]
fn canonical_cocliques_are_equitable() {
    for tag in ["sym:3", "alt:5", "agl1:7", "psl2:5"] {
        let g = build(tag);
        let ders = derangements(&g);
        for s in canonical_cocliques(&g, &ders) {
            assert_eq!(equitable_check(&g, &ders, s.members()), Ok(true), "{tag}");
        }
    }
}

#[test]
fn maximum_cocliques_are_transversals_of_the_kernel() {
    // With a regular normal subgroup, every maximum coclique meets every
    // coset of N exactly once (the clique-coclique equality case).
    use ekr_core::cocliques::{max_cocliques, CensusOptions};
    for tag in ["agl1:5", "agammal1:3,2", "asl2:4"] {
        let g = build(tag);
        let ders = derangements(&g);
        let n_set = g.regular_normal_subgroups().unwrap().remove(0);
        let bound = clique_coclique_bound(g.order(), n_set.len());
        assert_eq!(bound, g.order() / g.degree(), "{tag}");
        let mut cocliques = canonical_cocliques(&g, &ders);
        cocliques.truncate(8);
        let census = max_cocliques(
            &g,
            &ders,
            &CensusOptions {
                limit: 5,
                exhaustive: false,
                ..CensusOptions::default()
            },
        )
        .unwrap();
        cocliques.extend(census.found);
        for s in &cocliques {
            for v in 0..g.order() {
                let coset: Vec<usize> = n_set.iter().map(|&u| g.mul(u, v)).collect();
                let hits = s
                    .members()
                    .iter()
                    .filter(|&&m| coset.contains(&m))
                    .count();
                assert_eq!(hits, 1, "{tag}: coclique misses a coset of N");
            }
        }
    }
}

#[test]
fn module_check_translation_invariance_spot() {
    let mut rng = SplitMix(3);
    for tag in ["agl1:7", "psl2:5"] {
        let g = build(tag);
        let classes = g.conjugacy_classes();
        let ders = derangements(&g);
        let stab = g.point_stabilizer(0);
        for _ in 0..5 {
            let t = rng.below(g.order());
            let translated: Vec<usize> = stab.iter().map(|&s| g.mul(t, s)).collect();
            let c = Coclique::verified(&g, &ders, translated).unwrap();
            assert!(module_check(&g, &classes, &c).unwrap().holds, "{tag}");
        }
    }
}

#[test]
fn dual_distribution_scalars() {
    // v^T E_1 v / |S| = 1/n and v^T E_psi v / |S| = 1 - 1/n, which for the
    // inner distribution means: total pair mass |S|, none on derangement
    // classes.
    for tag in ["alt:5", "agl1:8", "pgl2:5"] {
        let g = build(tag);
        let classes = g.conjugacy_classes();
        let ders = derangements(&g);
        for s in canonical_cocliques(&g, &ders).iter().take(5) {
            let dist = inner_distribution(&g, &classes, s.members()).unwrap();
            let total: num_rational::Ratio<i64> = dist.per_class.iter().sum();
            assert_eq!(total, num_rational::Ratio::from(s.size() as i64));
            for (c, &v) in dist.per_class.iter().enumerate() {
                if ders.contains(classes.representatives[c]) {
                    assert_eq!(v, num_rational::Ratio::from(0), "{tag}");
                }
            }
        }
    }
}

#[test]
fn census_results_match_for_repeated_runs() {
    use ekr_core::cocliques::{max_cocliques, CensusOptions};
    let g = build("agl1:5");
    let ders = derangements(&g);
    let opts = CensusOptions {
        limit: 700,
        exhaustive: true,
        ..CensusOptions::default()
    };
    let first = max_cocliques(&g, &ders, &opts).unwrap();
    let second = max_cocliques(&g, &ders, &opts).unwrap();
    assert_eq!(first.found, second.found);
    assert_eq!(first.nodes, second.nodes);
}

#[test]
fn sampling_census_is_deterministic_per_seed() {
    use ekr_core::cocliques::{max_cocliques, CensusOptions};
    let g = build("asl2:4");
    let ders = derangements(&g);
    for seed in [0u64, 17] {
        let opts = CensusOptions {
            limit: 6,
            exhaustive: false,
            seed,
            ..CensusOptions::default()
        };
        let first = max_cocliques(&g, &ders, &opts).unwrap();
        let second = max_cocliques(&g, &ders, &opts).unwrap();
        assert_eq!(first.found, second.found, "seed {seed}");
        assert!(first.found.iter().all(|c| c.size() == 60));
    }
    // The exhaustive path ignores the seed entirely.
    let g5 = build("agl1:5");
    let d5 = derangements(&g5);
    let runs: Vec<_> = [0u64, 99]
        .iter()
        .map(|&seed| {
            let opts = CensusOptions {
                limit: 700,
                exhaustive: true,
                seed,
                ..CensusOptions::default()
            };
            max_cocliques(&g5, &d5, &opts).unwrap().found
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn classification_consistency_for_subgroup_cocliques() {
    // A coclique that is a subgroup is also a coset; canonical stabilizers
    // report their (i, i).
    for tag in ["sym:4", "alt:5"] {
        let g = build(tag);
        let ders = derangements(&g);
        for (i, s) in canonical_cocliques(&g, &ders).iter().enumerate() {
            let c = classify(&g, s);
            let (pi, pj) = (i / g.degree(), i % g.degree());
            assert_eq!(c.canonical, Some((pi, pj)), "{tag}");
            if pi == pj {
                assert!(c.is_subgroup);
            }
            assert!(c.is_coset_of_subgroup, "{tag}: S_ij is a stabilizer coset");
        }
    }
}

#[test]
fn class_sum_matrix_row_sums_and_symmetrization() {
    for tag in ["alt:6", "psl2:11", "agl3_2"] {
        let g = build(tag);
        let classes = g.conjugacy_classes();
        let ders = derangements(&g);
        let m = class_sum_matrix(&g, &classes, &ders);
        let d = ders.count() as i64;
        for i in 0..m.k {
            let sum: i64 = (0..m.k).map(|j| m.entry(i, j)).sum();
            assert_eq!(sum, d, "{tag} row {i}");
        }
        // The size-weighted symmetry that justifies the Jacobi scan.
        for i in 0..m.k {
            for j in 0..m.k {
                assert_eq!(
                    m.entry(i, j) * m.class_sizes[i] as i64,
                    m.entry(j, i) * m.class_sizes[j] as i64,
                    "{tag} ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn components_partition_into_generated_cosets() {
    for tag in ["sym:3", "agl1:7", "agammal1:3,2"] {
        let g = build(tag);
        let ders = derangements(&g);
        let c = connectivity(&g, &ders);
        assert_eq!(c.component_count * c.generated.len(), g.order(), "{tag}");
        assert_eq!(c.is_connected, c.component_count == 1);
    }
}

#[test]
fn psi_eigenvalue_is_always_afforded() {
    use ekr_core::spectra::certify_rational_eigenvalue;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    for tag in ekr_core::corpus::CORPUS {
        let g = build(tag);
        let classes = g.conjugacy_classes();
        let ders = derangements(&g);
        let m = class_sum_matrix(&g, &classes, &ders);
        let lambda = BigRational::new(
            BigInt::from(-(ders.count() as i64)),
            BigInt::from(g.degree() as i64 - 1),
        );
        assert!(
            certify_rational_eigenvalue(&m, &lambda) >= 1,
            "{tag}: -d/(n-1) must be an eigenvalue"
        );
        // The trivial character always affords the degree.
        let degree = BigRational::from(BigInt::from(ders.count() as i64));
        assert!(
            certify_rational_eigenvalue(&m, &degree) >= 1,
            "{tag}: d must be an eigenvalue"
        );
    }
}

#[test]
fn two_point_generation_properness_matches_connectivity() {
    use ekr_core::dergraph::two_point_stabilizer_generation;
    // Disconnected: both closures are proper; connected: both are all of G.
    let g9 = build("agammal1:3,2");
    let d9 = derangements(&g9);
    let n9 = g9.regular_normal_subgroups().unwrap().remove(0);
    let r9 = two_point_stabilizer_generation(&g9, &d9, &n9).unwrap();
    assert!(r9.equal);
    assert!(r9.der_generated.len() < g9.order());
    assert_eq!(r9.der_generated.len() * 2, g9.order());

    let g4 = build("asl2:4");
    let d4 = derangements(&g4);
    let n4 = g4.regular_normal_subgroups().unwrap().remove(0);
    let r4 = two_point_stabilizer_generation(&g4, &d4, &n4).unwrap();
    assert!(r4.equal);
    assert_eq!(r4.der_generated.len(), g4.order());
}

#[test]
fn fix_count_vanishes_on_derangements() {
    // Trivial by definition; a smoke test that derangement detection and
    // the permutation character agree.
    for tag in ["sym:5", "psl2:8", "m11"] {
        let g = build(tag);
        let ders = derangements(&g);
        let total: usize = ders
            .indices()
            .iter()
            .map(|&d| g.element(d).fixed_points().len())
            .sum();
        assert_eq!(total, 0, "{tag}");
    }
}

#[test]
fn frobenius_three_way_agreement_on_affine_corpus() {
    use ekr_core::dergraph::is_disjoint_clique_union;
    for tag in ekr_core::corpus::CORPUS {
        let g = build(tag);
        let normals = match g.regular_normal_subgroups() {
            Ok(n) => n,
            Err(_) => continue,
        };
        let Some(n_set) = normals.first() else { continue };
        let ders = derangements(&g);
        let der_is_kernel = ders.count() == n_set.len() - 1
            && n_set.iter().all(|&u| u == 0 || ders.contains(u));
        let clique_union = is_disjoint_clique_union(&g, &ders);
        let frobenius = (1..g.degree()).all(|y| g.two_point_stabilizer(0, y).len() == 1);
        assert_eq!(der_is_kernel, clique_union, "{tag}");
        assert_eq!(der_is_kernel, frobenius, "{tag}");
    }
}

#[test]
fn regular_normal_subgroups_validate_on_affine_corpus() {
    use ekr_core::dergraph::is_regular_normal;
    for tag in ekr_core::corpus::CORPUS {
        let g = build(tag);
        if let Ok(normals) = g.regular_normal_subgroups() {
            for n_set in &normals {
                assert!(is_regular_normal(&g, n_set), "{tag}");
            }
        }
    }
}

#[test]
fn complement_shortcut_agrees_on_every_affine_corpus_class() {
    use ekr_core::catalog::prime_power;
    use ekr_core::complements::{find_complements, p_element_shortcut_test};
    for tag in ekr_core::corpus::CORPUS {
        let g = build(tag);
        let normals = match g.regular_normal_subgroups() {
            Ok(n) => n,
            Err(_) => continue,
        };
        let Some(n_set) = normals.first() else { continue };
        let (p, _) = prime_power(n_set.len() as u32).expect("kernel is a p-group");
        let search = find_complements(&g, n_set, 100_000_000).unwrap();
        assert!(search.complete, "{tag}");
        for report in &search.reports {
            let full = report.is_coclique;
            let shortcut = p_element_shortcut_test(&g, &report.subgroup, p as usize).unwrap();
            assert_eq!(full, shortcut, "{tag}: shortcut disagrees with full test");
        }
    }
}
