//! Acceptance criteria 1-9 at the default policy (seed 7, 25 samples,
//! dimensions up to 4). Prints one line per criterion.

use std::time::Instant;

use derivator::cli::{run_command, run_suite, Command, Format, Workspace};
use derivator::repder::Policy;

#[test]
fn acceptance_criteria() {
    let policy = Policy::default();
    let start = Instant::now();
    let report = run_suite(&policy);
    let elapsed = start.elapsed();
    for c in &report.criteria {
        println!(
            "criterion {} ({}): {}",
            c.id,
            c.title,
            if c.passed { "pass" } else { "FAIL" }
        );
        for k in c.checks.iter().filter(|k| !k.passed) {
            println!("    failed: {}: {}", k.name, k.detail);
        }
    }
    println!("suite time: {:.1}s", elapsed.as_secs_f64());
    assert_eq!(report.criteria.len(), 9);
    let failed: Vec<u8> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn corpus_command_is_byte_identical_across_runs() {
    let policy = Policy { seed: 7, samples: 3, max_dim: 2 };
    let ws = Workspace::new();
    let a = run_command(&ws, &Command::Corpus, &policy).unwrap();
    let b = run_command(&ws, &Command::Corpus, &policy).unwrap();
    for f in [Format::Text, Format::Json] {
        assert_eq!(a.render(f), b.render(f));
    }
    assert!(a.render(Format::Text).contains("seed: 7"));
}
