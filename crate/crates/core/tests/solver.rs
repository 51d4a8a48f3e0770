use chardeg_core::catalog::GroupSpec;
use chardeg_core::solver::{
    g_value, kanold_scan, lower_bound, scan_theorem_a, scan_theorem_b, verify_minimal, SolveOptions,
    Status, DEFAULT_ORACLE_CAP,
};
use chardeg_core::enumerator::DEFAULT_BUDGET;

fn naive_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn naive_prime_power(n: u64) -> bool {
    let Some(p) = (2..=n).find(|d| n % d == 0) else {
        return false;
    };
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// Least prime power `= 1 (mod k)`, by walking `1 + k, 1 + 2k, ...`.
fn naive_least_prime_power(k: u64) -> u64 {
    (1..).map(|j| 1 + j * k).find(|&v| naive_prime_power(v)).unwrap()
}

/// Theorem-level g(p) and g(p^2) recomputed without the library.
fn naive_g_prime(p: u64) -> u64 {
    let frob = p * naive_least_prime_power(p);
    if p >= 5 {
        frob.min(p * (p * p - 1) / 2)
    } else {
        frob
    }
}

fn naive_g_prime_squared(p: u64) -> u64 {
    let frob = p * p * naive_least_prime_power(p * p);
    let product = naive_g_prime(p).pow(2);
    frob.min(product).min(p.pow(5))
}

#[test]
fn small_g_values() {
    let opts = SolveOptions::default();
    for (n, g) in [(2, 6), (3, 12), (4, 20), (5, 55), (7, 56), (9, 144)] {
        let r = g_value(n, &opts).unwrap();
        assert_eq!(r.min_order, g, "n = {n}");
        assert!(r.verified, "n = {n}: {:?}", r.verification_note);
    }
    for (n, g) in [(6, 42), (8, 72)] {
        let r = g_value(n, &opts).unwrap();
        assert_eq!(r.min_order, g);
        assert_eq!(r.case_label, "catalog");
        assert!(r.verified);
    }
}

#[test]
fn order_72_report_lists_both_witnesses() {
    let r = g_value(8, &SolveOptions::default()).unwrap();
    assert_eq!(r.witness_specs.len(), 2);
    assert_eq!(r.refuted_witnesses, vec!["named:G72D".parse::<GroupSpec>().unwrap()]);
    assert!(r.verification_note.unwrap().contains("named:G72D"));
}

#[test]
fn theorem_a_scan_matches_naive() {
    let scan = scan_theorem_a(4000).unwrap();
    assert_eq!(scan.case_a, vec![19]);
    assert!(scan.ties.is_empty());
    for row in scan.rows.iter().filter(|r| r.p <= 400) {
        assert_eq!(row.min_order, naive_g_prime(row.p), "p = {}", row.p);
    }
    let expected: Vec<u64> = (2..=4000).filter(|&p| naive_prime(p)).collect();
    assert_eq!(scan.rows.iter().map(|r| r.p).collect::<Vec<_>>(), expected);
}

#[test]
fn theorem_b_scan_matches_naive() {
    let scan = scan_theorem_b(71).unwrap();
    assert_eq!(scan.case_a, vec![19]);
    for row in &scan.rows {
        assert_eq!(row.min_order, naive_g_prime_squared(row.p), "p = {}", row.p);
    }
    let at = |p| scan.rows.iter().find(|r| r.p == p).unwrap();
    assert_eq!((at(5).min_order, at(5).case_label.as_str()), (2525, "b"));
    assert_eq!((at(7).min_order, at(7).case_label.as_str()), (3136, "c"));
}

#[test]
fn kanold_range() {
    let rows = kanold_scan(4000).unwrap();
    assert!(rows.iter().all(|r| r.holds));
    for r in rows.iter().take(60) {
        let q = (1..).map(|k| 1 + k * r.p).find(|&v| naive_prime(v)).unwrap();
        assert_eq!(r.q, q);
    }
}

#[test]
fn minimality_statuses() {
    for (n, w) in [(2, 6), (3, 12), (4, 20), (6, 42), (7, 56), (8, 72)] {
        let s = verify_minimal(n, w, DEFAULT_ORACLE_CAP, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.status, Status::Exhaustive, "n = {n}");
        assert!(s.residual_orders.is_empty());
        assert_eq!(lower_bound(n), n * n + n);
    }
    let s = verify_minimal(5, 55, DEFAULT_ORACLE_CAP, DEFAULT_BUDGET).unwrap();
    assert_eq!(s.status, Status::WitnessOnly);
    assert_eq!(s.residual_orders, vec![30, 40, 45, 50]);
    assert_eq!(s.pruned_orders, vec![35]);
}

#[test]
fn oracle_refutes_a_too_large_witness() {
    // Claiming 18 for degree 2 leaves the even orders 6..16 to the
    // enumerator, and each has a dihedral group with a degree-2 character.
    let s = verify_minimal(2, 18, DEFAULT_ORACLE_CAP, DEFAULT_BUDGET).unwrap();
    assert_eq!(s.residual_orders, vec![6, 8, 10, 12, 14, 16]);
    assert_eq!(s.refuting_orders, vec![6, 8, 10, 12, 14, 16]);
    assert_eq!(s.status, Status::WitnessOnly);
}
