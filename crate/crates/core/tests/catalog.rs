use ballmaps_core::catalog::{entries, verify};

#[test]
fn every_entry_passes() {
    for e in entries() {
        let r = verify(&e.id, 0).unwrap();
        let failed: Vec<String> = r.checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
        assert!(r.passed(), "{}: {failed:?}", e.id);
    }
}

#[test]
fn reports_are_deterministic() {
    for id in ["tensor-powers-plane", "quadratic-top-split", "invariant-top-split-3"] {
        assert_eq!(verify(id, 5).unwrap(), verify(id, 5).unwrap());
    }
}
