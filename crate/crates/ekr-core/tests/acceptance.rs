//! Acceptance suite: one test per checklist item, each printing a
//! PASS/FAIL line (visible with `--nocapture`) and asserting the verdict.
//!
//! Run with: `cargo test -p ekr-core --test acceptance -- --nocapture`

use ekr_core::corpus;

fn run(id: u32) {
    let result = corpus::run_criterion(id).expect("known criterion");
    println!("{}", result.summary_line());
    for line in &result.details {
        println!("    {line}");
    }
    assert!(
        result.pass,
        "{} failed:\n{}",
        result.summary_line(),
        result.details.join("\n")
    );
}

#[test]
fn a01_ekr_bound() {
    run(1);
}

#[test]
fn a02_module_property() {
    run(2);
}

#[test]
fn a03_strict_ekr_censuses() {
    run(3);
}

#[test]
fn a04_spectral_certification() {
    run(4);
}

#[test]
fn a05_connectivity() {
    run(5);
}

#[test]
fn a06_coset_criterion_agreement() {
    run(6);
}

#[test]
fn a07_two_point_generation() {
    run(7);
}

#[test]
fn a08_explicit_examples() {
    run(8);
}

#[test]
fn a09_coefficient_two_value() {
    run(9);
}

#[test]
fn a10_inner_distributions() {
    run(10);
}

#[test]
fn a11_alt_bound() {
    run(11);
}

#[test]
fn a12_property_suites() {
    run(12);
}
