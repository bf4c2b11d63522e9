//! Round-trip of the THETA_LAB_CACHE disk memoization. Runs as its own
//! binary because the environment variable is process-global.

use theta_core::{harmonic_space, isotypic_decomposition, SpaceKind};

#[test]
fn cached_rerun_reproduces_the_same_decomposition() {
    let dir = std::env::temp_dir().join(format!("theta-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::env::set_var("THETA_LAB_CACHE", &dir);

    let cold = harmonic_space(4, 2, 4).unwrap();
    let entries = std::fs::read_dir(&dir).map(|d| d.count()).unwrap_or(0);
    assert!(entries > 0, "no cache entries written");
    let warm = harmonic_space(4, 2, 4).unwrap();
    assert_eq!(cold.dimension(), warm.dimension());
    for (a, b) in cold.basis().iter().zip(warm.basis()) {
        assert_eq!(a, b);
    }

    let report_cold = isotypic_decomposition(4, 2, 4, SpaceKind::Harmonic).unwrap();
    let report_warm = isotypic_decomposition(4, 2, 4, SpaceKind::Harmonic).unwrap();
    assert_eq!(
        serde_json::to_string(&report_cold).unwrap(),
        serde_json::to_string(&report_warm).unwrap()
    );

    // a corrupt entry must fall back to recomputation, not poison results
    for entry in std::fs::read_dir(&dir).unwrap() {
        std::fs::write(entry.unwrap().path(), b"not json").unwrap();
    }
    let repaired = harmonic_space(4, 2, 4).unwrap();
    assert_eq!(repaired.dimension(), warm.dimension());
    for (a, b) in repaired.basis().iter().zip(warm.basis()) {
        assert_eq!(a, b);
    }

    std::env::remove_var("THETA_LAB_CACHE");
    let _ = std::fs::remove_dir_all(&dir);
}
