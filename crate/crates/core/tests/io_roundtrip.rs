use prp_core::generate::{build_small_instance, build_tiny_instance};
use prp_core::io::{load_instance, load_solution, save_instance, save_solution};
use prp_core::{LocationId, ModelError, Solution, Workspace};
use std::fs;
use std::path::Path;
use std::sync::Arc;

#[test]
fn golden_minimal_instance_loads() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/minimal.json");
    let instance = load_instance(&path).unwrap();
    assert_eq!(instance.layout().num_locations(), 1);
    assert_eq!(instance.pods().len(), 1);
    assert_eq!(instance.horizon(), 2);
    assert_eq!(instance.departure_iterations(), &[1]);
}

#[test]
fn instance_round_trip_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("small.json");
    let instance = build_small_instance(42);
    save_instance(&instance, &path).unwrap();
    let reloaded = load_instance(&path).unwrap();
    assert_eq!(instance, reloaded);
}

#[test]
fn save_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let instance = build_small_instance(7);
    save_instance(&instance, &a).unwrap();
    save_instance(&build_small_instance(7), &b).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn truncated_file_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let full = dir.path().join("full.json");
    save_instance(&build_tiny_instance(3, 2, 6, 0).unwrap(), &full).unwrap();
    let text = fs::read_to_string(&full).unwrap();
    fs::write(&path, &text[..text.len() / 2]).unwrap();
    match load_instance(&path) {
        Err(ModelError::Schema { .. }) => {}
        other => panic!("expected schema error, got {other:?}"),
    }
}

#[test]
fn wrong_schema_version_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v9.json");
    let full = dir.path().join("full.json");
    save_instance(&build_tiny_instance(3, 2, 6, 0).unwrap(), &full).unwrap();
    let text = fs::read_to_string(&full)
        .unwrap()
        .replace("\"schema_version\":1", "\"schema_version\":9");
    fs::write(&path, text).unwrap();
    match load_instance(&path) {
        Err(ModelError::SchemaVersion { found: 9, expected: 1 }) => {}
        other => panic!("expected schema version error, got {other:?}"),
    }
}

#[test]
fn solution_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.json");
    let instance = Arc::new(build_tiny_instance(4, 3, 10, 5).unwrap());
    let mut ws = Workspace::empty(Arc::clone(&instance));
    let pending: Vec<usize> = ws.pending().collect();
    for t in pending {
        let (options, _) = ws.feasible_locations(t).unwrap();
        ws.commit(t, options[0]);
    }
    let total = ws.total_cost();
    let solution = ws.into_solution();
    save_solution(&instance, &solution, total, &path).unwrap();
    let (reloaded, reloaded_total) = load_solution(&instance, &path).unwrap();
    assert_eq!(reloaded, solution);
    assert_eq!(reloaded_total, total);
}

#[test]
fn solution_with_tampered_total_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.json");
    let instance = build_tiny_instance(2, 1, 4, 1).unwrap();
    let t = instance.departure_iterations()[0];
    let mut assignments = vec![None; instance.horizon()];
    assignments[t] = Some(LocationId(0));
    for &t in &instance.departure_iterations()[1..] {
        assignments[t] = Some(LocationId(0));
    }
    let solution = Solution::from_assignments(&instance, assignments).unwrap();
    save_solution(&instance, &solution, solution.cached_total() + 1, &path).unwrap();
    assert!(matches!(
        load_solution(&instance, &path),
        Err(ModelError::Schema { .. })
    ));
}
