//! The suite harness: determinism, report shape, and the replay of
//! counterexample dumps.

use hopull_cli::format::parse_instance_str;
use hopull_cli::gen::GenConfig;
use hopull_cli::suite::{replay, run_suite, run_trial, SuiteName};

fn cfg(seed: u64, trials: usize) -> GenConfig {
    GenConfig::default_with(seed, trials)
}

#[test]
fn reports_are_ordered_and_seeded_by_xor() {
    let reports = run_suite(SuiteName::Sigma, &cfg(10, 5), false).unwrap();
    assert_eq!(reports.len(), 5);
    for (k, r) in reports.iter().enumerate() {
        assert_eq!(r.trial, k);
        assert_eq!(r.seed, 10 ^ k as u64);
        assert_eq!(r.suite, "sigma");
        assert!(r.pass);
    }
}

#[test]
fn identical_config_gives_identical_reports() {
    let a = run_suite(SuiteName::Fibersq, &cfg(3, 4), true).unwrap();
    let b = run_suite(SuiteName::Fibersq, &cfg(3, 4), true).unwrap();
    let ser = |rs: &[hopull_cli::suite::TrialReport]| -> Vec<String> {
        rs.iter()
            .map(|r| serde_json::to_string(r).unwrap())
            .collect()
    };
    assert_eq!(ser(&a), ser(&b));
}

#[test]
fn every_dump_replays_to_its_recorded_verdict() {
    for suite in SuiteName::ALL {
        let trial = run_trial(suite, &cfg(21, 3), 2).unwrap();
        let replayed = replay(suite, &trial.dump, &trial.meta).unwrap();
        assert_eq!(replayed, trial.pass, "suite {}", suite.as_str());
        // dumps survive a serialization round-trip and still reproduce
        let bytes = serde_json::to_string(&trial.dump).unwrap();
        let reparsed = parse_instance_str(&bytes).unwrap();
        assert_eq!(replay(suite, &reparsed, &trial.meta).unwrap(), trial.pass);
    }
}

#[test]
fn doctored_dump_reproduces_the_failure() {
    // take a passing fibersq trial and flip its label: the replay must
    // now report the failure
    let trial = run_trial(SuiteName::Fibersq, &cfg(5, 1), 0).unwrap();
    assert!(trial.pass);
    let mut meta = trial.meta.clone();
    let label = meta["label"].as_bool().unwrap();
    meta["label"] = serde_json::Value::Bool(!label);
    assert!(!replay(SuiteName::Fibersq, &trial.dump, &meta).unwrap());
}

#[test]
fn failing_trials_embed_their_instance() {
    // reports embed the instance exactly when the trial fails or dump_all
    let with_dumps = run_suite(SuiteName::Pastlem, &cfg(2, 2), true).unwrap();
    assert!(with_dumps
        .iter()
        .all(|r| r.details.get("instance").is_some()));
    let without = run_suite(SuiteName::Pastlem, &cfg(2, 2), false).unwrap();
    assert!(without
        .iter()
        .all(|r| r.details.get("instance").is_none() == r.pass));
}
