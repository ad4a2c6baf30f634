//! ekr-lab: exact analysis of derangement graphs of 2-transitive groups.
//!
//! Exit codes: 0 for verified-true results, 2 for a verified-false finding
//! (a structural claim that fails its check), 1 for usage, input, or
//! budget errors.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ekr_core::catalog::{parse_group_spec, Family};
use ekr_core::cocliques::{
    canonical_cocliques, classify, find_coclique_of_size, max_cocliques, CensusMode,
    CensusOptions, Coclique,
};
use ekr_core::complements::find_complements;
use ekr_core::corpus;
use ekr_core::dergraph::{connectivity, is_disjoint_clique_union};
use ekr_core::ekr_module::{inner_distribution, inner_matches_stabilizer, module_check};
use ekr_core::group::{GroupTable, DEFAULT_GENERATE_CAP};
use ekr_core::perm::Permutation;
use ekr_core::spectra::{derangements, least_eigenvalue_report, Verdict};

use report::{
    counters, exact_int, exact_rational, float_scalar, fnv1a_hex, group_descriptor, Report,
};

#[derive(Parser)]
#[command(name = "ekr-lab", version, about = "Derangement graphs of 2-transitive groups: exact EKR verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    out: Output,
    /// Worker-thread hint; execution is deterministic regardless.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args)]
struct GroupArg {
    /// Family tag (e.g. `alt:5`, `agammal1:3,2`, `m11`) or `@file.json`.
    #[arg(long)]
    group: String,
}

#[derive(Subcommand)]
enum Command {
    /// Order, classes, transitivity and normal structure of a group.
    Info(GroupArg),
    /// Least-eigenvalue certification of the derangement graph.
    Spectrum(GroupArg),
    /// The derangement set and its conjugacy-class decomposition.
    Derangements(GroupArg),
    /// Connected components and the disjoint-clique characterization.
    Connectivity(GroupArg),
    /// Maximum-coclique census, oversize search, module and canonicity checks.
    EkrCheck {
        #[command(flatten)]
        group: GroupArg,
        /// Maximum number of cocliques to keep in the report.
        #[arg(long, default_value_t = 100)]
        limit: usize,
        /// Enumerate every maximum coclique (subject to the feasibility gate).
        #[arg(long)]
        exhaustive: bool,
        /// Search node budget.
        #[arg(long, default_value_t = 200_000_000)]
        budget: u64,
        /// Branch rotation seed (sampling mode only).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the module identity for a coclique given as image arrays.
    ModuleCheck {
        #[command(flatten)]
        group: GroupArg,
        /// JSON file: a list of element image arrays.
        #[arg(long)]
        coclique: PathBuf,
    },
    /// Inner distribution of a set, compared with the point stabilizer.
    InnerDist {
        #[command(flatten)]
        group: GroupArg,
        /// JSON file: a list of element image arrays; stabilizer of 0 if omitted.
        #[arg(long)]
        coclique: Option<PathBuf>,
    },
    /// Complements to the regular normal subgroup, up to conjugacy.
    Complements {
        #[command(flatten)]
        group: GroupArg,
        /// Closure-step budget for the lift search.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Run the acceptance checklist over the whole corpus.
    Corpus,
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

struct ResolvedGroup {
    descriptor: String,
    source: String,
    table: GroupTable,
}

fn resolve_group(spec: &str) -> Result<ResolvedGroup, CliError> {
    if let Some(path) = spec.strip_prefix('@') {
        let bytes = fs::read(path).map_err(|e| CliError(format!("{path}: {e}")))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| CliError(format!("{path}: not UTF-8")))?;
        let parsed = parse_group_spec(&text)?;
        let table = parsed.to_group(DEFAULT_GENERATE_CAP)?;
        let name = parsed.name.unwrap_or_else(|| path.to_string());
        Ok(ResolvedGroup {
            descriptor: name,
            source: format!("file:{}", fnv1a_hex(&bytes)),
            table,
        })
    } else {
        let family = Family::parse(spec)?;
        let table = family.build()?;
        Ok(ResolvedGroup {
            descriptor: family.tag(),
            source: "family".to_string(),
            table,
        })
    }
}

fn read_coclique_file(g: &GroupTable, path: &PathBuf) -> Result<Vec<usize>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let arrays: Vec<Vec<usize>> =
        serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let mut indices = Vec::with_capacity(arrays.len());
    for (i, images) in arrays.into_iter().enumerate() {
        let p = Permutation::new(images).map_err(|e| CliError(format!("entry {i}: {e}")))?;
        let idx = g
            .index_of(&p)
            .ok_or_else(|| CliError(format!("entry {i} is not an element of the group")))?;
        indices.push(idx);
    }
    Ok(indices)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers == 0 {
        eprintln!("error: --workers must be at least 1");
        return ExitCode::from(1);
    }
    match dispatch(&cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.out == Output::Json));
            ExitCode::from(report.exit_code)
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Info(g) => cmd_info(g),
        Command::Spectrum(g) => cmd_spectrum(g),
        Command::Derangements(g) => cmd_derangements(g),
        Command::Connectivity(g) => cmd_connectivity(g),
        Command::EkrCheck {
            group,
            limit,
            exhaustive,
            budget,
            seed,
        } => cmd_ekr_check(group, *limit, *exhaustive, *budget, *seed),
        Command::ModuleCheck { group, coclique } => cmd_module_check(group, coclique),
        Command::InnerDist { group, coclique } => cmd_inner_dist(group, coclique.as_ref()),
        Command::Complements { group, budget } => cmd_complements(group, *budget),
        Command::Corpus => cmd_corpus(),
    }
}

fn descriptor_block(r: &ResolvedGroup) -> Value {
    group_descriptor(&r.descriptor, &r.source, r.table.degree(), r.table.order())
}

fn cmd_info(arg: &GroupArg) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let g = &r.table;
    let classes = g.conjugacy_classes();
    let normals = match g.regular_normal_subgroups() {
        Ok(list) => json!(list.iter().map(|n| n.len()).collect::<Vec<_>>()),
        Err(_) => json!("not_attempted"),
    };
    let payload = json!({
        "two_transitive": g.is_two_transitive(),
        "transitive": g.is_transitive(),
        "class_count": classes.count(),
        "class_sizes": classes.sizes,
        "generators": g.generators().iter().map(|&i| g.element(i).images().to_vec()).collect::<Vec<_>>(),
        "regular_normal_subgroup_orders": normals,
        "point_stabilizer_order": g.point_stabilizer(0).len(),
    });
    let text = vec![
        format!("group {} (source {})", r.descriptor, r.source),
        format!("degree {}, order {}", g.degree(), g.order()),
        format!(
            "2-transitive: {}, conjugacy classes: {}",
            g.is_two_transitive(),
            classes.count()
        ),
    ];
    Ok(Report {
        command: "info",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[]),
        verdicts: json!({}),
        text,
        exit_code: 0,
    })
}

fn cmd_spectrum(arg: &GroupArg) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let rep = least_eigenvalue_report(&r.table)?;
    let verdict = rep.verdict.to_string();
    let exit_code = match rep.verdict {
        Verdict::CertifiedUnique | Verdict::CertifiedNonunique => 0,
        Verdict::NotLeast => 2,
        Verdict::Inconclusive => 1,
    };
    let payload = json!({
        "derangement_count": exact_int(rep.degree_d as i64),
        "lambda_star": exact_rational(&rep.lambda_star),
        "multiplicity": exact_int(rep.multiplicity as i64),
        "spectrum": rep.spectrum.iter().map(|&x| float_scalar(x)).collect::<Vec<_>>(),
    });
    let text = vec![
        format!("group {}: d = {}", r.descriptor, rep.degree_d),
        format!(
            "lambda* = -d/(n-1) = {}",
            report::rational_str(&rep.lambda_star)
        ),
        format!(
            "numeric spectrum minimum = {:.6}",
            rep.spectrum.first().copied().unwrap_or(0.0)
        ),
        format!("verdict: {verdict} (multiplicity {})", rep.multiplicity),
    ];
    Ok(Report {
        command: "spectrum",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[]),
        verdicts: json!({ "least_eigenvalue": verdict }),
        text,
        exit_code,
    })
}

fn cmd_derangements(arg: &GroupArg) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let g = &r.table;
    let classes = g.conjugacy_classes();
    let ders = derangements(g);
    let mut class_breakdown = Vec::new();
    for c in 0..classes.count() {
        let rep = classes.representatives[c];
        if ders.contains(rep) {
            class_breakdown.push(json!({
                "size": classes.sizes[c],
                "element_order": g.element_order(rep),
            }));
        }
    }
    let payload = json!({
        "derangement_count": exact_int(ders.count() as i64),
        "derangement_classes": class_breakdown,
    });
    let text = vec![
        format!(
            "group {}: {} derangements in {} classes",
            r.descriptor,
            ders.count(),
            payload["derangement_classes"].as_array().map_or(0, |a| a.len())
        ),
    ];
    Ok(Report {
        command: "derangements",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[]),
        verdicts: json!({}),
        text,
        exit_code: 0,
    })
}

fn cmd_connectivity(arg: &GroupArg) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let g = &r.table;
    let ders = derangements(g);
    let comp = connectivity(g, &ders);
    let cliques = is_disjoint_clique_union(g, &ders);
    let payload = json!({
        "connected": comp.is_connected,
        "component_count": comp.component_count,
        "generated_order": comp.generated.len(),
        "disjoint_clique_union": cliques,
    });
    let text = vec![format!(
        "group {}: {} ({} components); disjoint clique union: {}",
        r.descriptor,
        if comp.is_connected { "connected" } else { "disconnected" },
        comp.component_count,
        cliques
    )];
    Ok(Report {
        command: "connectivity",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[]),
        verdicts: json!({ "connected": comp.is_connected }),
        text,
        exit_code: 0,
    })
}

fn cmd_ekr_check(
    arg: &GroupArg,
    limit: usize,
    exhaustive: bool,
    budget: u64,
    seed: u64,
) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let g = &r.table;
    let classes = g.conjugacy_classes();
    let ders = derangements(g);
    let target = g.order() / g.degree();

    let oversize = find_coclique_of_size(g, &ders, target + 1, budget)?;
    let census = max_cocliques(
        g,
        &ders,
        &CensusOptions {
            limit,
            exhaustive,
            node_budget: budget,
            seed,
        },
    )?;

    let mut module_failures = 0usize;
    let mut classifications = Vec::new();
    for s in &census.found {
        let m = module_check(g, &classes, s)?;
        if !m.holds {
            module_failures += 1;
        }
        let c = classify(g, s);
        classifications.push(json!({
            "canonical": c.canonical.map(|(i, j)| json!([i, j])).unwrap_or(Value::Null),
            "is_subgroup": c.is_subgroup,
            "is_coset_of_subgroup": c.is_coset_of_subgroup,
            "module_check": m.holds,
        }));
    }
    let canonical = canonical_cocliques(g, &ders);
    let canonical_ok = canonical.len() == g.degree() * g.degree();

    let bound_holds = oversize.is_none();
    let all_modules = module_failures == 0;
    let exit_code = if !bound_holds || !all_modules { 2 } else { 0 };
    let mode = match census.mode {
        CensusMode::Exhaustive => "exhaustive",
        CensusMode::Sampling => "sampling",
        CensusMode::GatedSampling => "gated-sampling",
    };
    let payload = json!({
        "target": exact_int(target as i64),
        "oversize_found": !bound_holds,
        "canonical_count_expected": g.degree() * g.degree(),
        "canonical_constructed": canonical.len(),
        "census": {
            "mode": mode,
            "total_found": census.total_found,
            "canonical": census.canonical_count,
            "noncanonical": census.noncanonical_count,
            "complete": census.complete,
            "truncated_at": census.truncated_at,
            "stored": census.found.len(),
        },
        "classifications": classifications,
        "module_failures": module_failures,
    });
    let text = vec![
        format!(
            "group {}: maximum intersecting sets have size {target}",
            r.descriptor
        ),
        format!(
            "oversize search (size {}): {}",
            target + 1,
            if bound_holds { "none exists" } else { "FOUND (bound violated)" }
        ),
        format!(
            "census [{mode}]: {} found ({} canonical, {} noncanonical), complete: {}",
            census.total_found, census.canonical_count, census.noncanonical_count, census.complete
        ),
        format!(
            "module identity: {}",
            if all_modules { "holds on every stored coclique" } else { "VIOLATED" }
        ),
    ];
    Ok(Report {
        command: "ekr-check",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[("search_nodes", census.nodes)]),
        verdicts: json!({
            "ekr_bound": if bound_holds { "HOLDS" } else { "VIOLATED" },
            "module_property": if all_modules { "HOLDS" } else { "VIOLATED" },
            "canonical_sets": if canonical_ok { "HOLDS" } else { "VIOLATED" },
        }),
        text,
        exit_code,
    })
}

fn cmd_module_check(arg: &GroupArg, path: &PathBuf) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let g = &r.table;
    let classes = g.conjugacy_classes();
    let ders = derangements(g);
    let indices = read_coclique_file(g, path)?;
    let coclique = Coclique::verified(g, &ders, indices)?;
    let result = module_check(g, &classes, &coclique)?;
    let payload = json!({
        "size": coclique.size(),
        "holds": result.holds,
        "witness": result.witness,
    });
    let text = vec![format!(
        "module identity on {} elements: {}",
        coclique.size(),
        if result.holds { "holds" } else { "VIOLATED" }
    )];
    Ok(Report {
        command: "module-check",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[]),
        verdicts: json!({ "module_property": if result.holds { "HOLDS" } else { "VIOLATED" } }),
        text,
        exit_code: if result.holds { 0 } else { 2 },
    })
}

fn cmd_inner_dist(arg: &GroupArg, path: Option<&PathBuf>) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let g = &r.table;
    let classes = g.conjugacy_classes();
    let ders = derangements(g);
    let members = match path {
        Some(p) => read_coclique_file(g, p)?,
        None => g.point_stabilizer(0),
    };
    let dist = inner_distribution(g, &classes, &members)?;
    let coclique = Coclique::verified(g, &ders, members.clone());
    let matches = match &coclique {
        Ok(c) if c.size() * g.degree() == g.order() => {
            Some(inner_matches_stabilizer(g, &classes, c)?)
        }
        _ => None,
    };
    let payload = json!({
        "size": members.len(),
        "distribution": dist
            .per_class
            .iter()
            .map(|v| json!({ "exact": format!("{}/{}", v.numer(), v.denom()) }))
            .collect::<Vec<_>>(),
        "class_sizes": classes.sizes,
        "matches_stabilizer": matches,
    });
    let text = vec![
        format!("inner distribution over {} classes", classes.count()),
        match matches {
            Some(true) => "matches the point-stabilizer distribution exactly".to_string(),
            Some(false) => "DIFFERS from the point-stabilizer distribution".to_string(),
            None => "not a maximum coclique; no stabilizer comparison".to_string(),
        },
    ];
    let exit_code = match matches {
        Some(false) => 2,
        _ => 0,
    };
    Ok(Report {
        command: "inner-dist",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[]),
        verdicts: json!({ "matches_stabilizer": matches }),
        text,
        exit_code,
    })
}

fn cmd_complements(arg: &GroupArg, budget: u64) -> Result<Report, CliError> {
    let r = resolve_group(&arg.group)?;
    let g = &r.table;
    let normals = g.regular_normal_subgroups()?;
    let n_set = normals
        .first()
        .ok_or_else(|| CliError("group has no regular normal subgroup".to_string()))?;
    let search = find_complements(g, n_set, budget)?;
    let classes: Vec<Value> = search
        .reports
        .iter()
        .map(|rep| {
            json!({
                "order": rep.subgroup.len(),
                "is_complement": rep.is_complement,
                "is_standard": rep.is_standard,
                "is_coclique": rep.is_coclique,
                "derangement_witness": rep.derangement_witness,
            })
        })
        .collect();
    let nonstandard_cocliques = search
        .reports
        .iter()
        .filter(|rep| !rep.is_standard && rep.is_coclique)
        .count();
    let payload = json!({
        "normal_subgroup_order": n_set.len(),
        "classes": classes,
        "complete": search.complete,
    });
    let mut text = vec![format!(
        "group {}: {} complement classes (search complete: {})",
        r.descriptor,
        search.reports.len(),
        search.complete
    )];
    for rep in &search.reports {
        text.push(format!(
            "  order {}: {}, {}",
            rep.subgroup.len(),
            if rep.is_standard { "standard" } else { "nonstandard" },
            if rep.is_coclique {
                "coclique".to_string()
            } else {
                format!("not a coclique (derangement at index {:?})", rep.derangement_witness)
            }
        ));
    }
    Ok(Report {
        command: "complements",
        group: descriptor_block(&r),
        payload,
        timings: counters(&[
            ("tuples_tried", search.tuples_tried),
            ("closure_steps", search.closure_steps),
        ]),
        verdicts: json!({ "nonstandard_coclique_classes": nonstandard_cocliques }),
        text,
        exit_code: if search.complete { 0 } else { 1 },
    })
}

fn cmd_corpus() -> Result<Report, CliError> {
    let results = corpus::run_all();
    let all_pass = results.iter().all(|r| r.pass);
    let mut text = Vec::new();
    let mut items = Vec::new();
    for r in &results {
        text.push(r.summary_line());
        for d in &r.details {
            text.push(format!("    {d}"));
        }
        items.push(json!({
            "id": r.id,
            "name": r.name,
            "pass": r.pass,
            "details": r.details,
        }));
    }
    text.push(format!(
        "corpus: {}/{} criteria pass",
        results.iter().filter(|r| r.pass).count(),
        results.len()
    ));
    Ok(Report {
        command: "corpus",
        group: json!({ "descriptor": "corpus", "source": "builtin" }),
        payload: json!({ "criteria": items }),
        timings: counters(&[]),
        verdicts: json!({ "all_pass": all_pass }),
        text,
        exit_code: if all_pass { 0 } else { 2 },
    })
}
