mod common;

use common::*;
use hyperising::oracle::exact_coefficients;
use hyperising::random::ActivityKind;

#[test]
fn dp_matches_oracle_ising() {
    let mut worst = 0.0f64;
    for g in instances(11, 60, &SMALL, ActivityKind::IsingInRange) {
        let (_, e) = series(&g, g.n());
        let c = exact_coefficients(&g, 24).unwrap();
        let err = coefficient_error(&e, c.as_slice());
        worst = worst.max(err);
        assert!(err <= 1e-9, "n = {}: relative error {err:e}", g.n());
    }
    eprintln!("worst ising coefficient error {worst:e}");
}

#[test]
fn dp_matches_oracle_tables() {
    for kind in [ActivityKind::SuzukiFisherTable, ActivityKind::SymmetricTable] {
        let mut worst = 0.0f64;
        for g in instances(12, 40, &SMALL, kind) {
            let (_, e) = series(&g, g.n());
            let c = exact_coefficients(&g, 24).unwrap();
            let err = coefficient_error(&e, c.as_slice());
            worst = worst.max(err);
            assert!(err <= 1e-9, "{kind:?} n = {}: relative error {err:e}", g.n());
        }
        eprintln!("worst {kind:?} coefficient error {worst:e}");
    }
}
