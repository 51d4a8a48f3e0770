//! g(p) and g(p^2): candidate construction and comparison, witness
//! verification, range scans, and minimality evidence.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    is_cyclic_number, is_prime, least_prime_1mod, least_prime_power_1mod, prime_power_decompose,
    primes_up_to, psl2_order,
};
use crate::catalog::{realize_with_cap, witnesses_for_degree, GroupSpec};
use crate::chardeg::{character_degrees_with_caps, DegreeMultiset, DEFAULT_CLASS_CAP};
use crate::enumerator::{enumerate_groups_with_stats, table_to_realization};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateLabel {
    Psl2,
    Frobenius,
    Pgroup5,
    Product,
    Catalog,
}

impl CandidateLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateLabel::Psl2 => "psl2",
            CandidateLabel::Frobenius => "frobenius",
            CandidateLabel::Pgroup5 => "pgroup5",
            CandidateLabel::Product => "product",
            CandidateLabel::Catalog => "catalog",
        }
    }

    /// Case letter of the corresponding alternative.
    fn case(self) -> &'static str {
        match self {
            CandidateLabel::Psl2 | CandidateLabel::Pgroup5 => "a",
            CandidateLabel::Frobenius => "b",
            CandidateLabel::Product => "c",
            CandidateLabel::Catalog => "catalog",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub label: CandidateLabel,
    pub order: u64,
    pub spec: GroupSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub n: u64,
    pub candidates: Vec<Candidate>,
    pub min_order: u64,
    pub case_label: String,
    pub witness_specs: Vec<GroupSpec>,
    /// True when at least one witness realizes `min_order` with a degree-`n`
    /// character.
    pub verified: bool,
    /// Why verification was skipped or failed, if it was.
    pub verification_note: Option<String>,
    /// Witnesses whose realization lacks the claimed order or degree.
    pub refuted_witnesses: Vec<GroupSpec>,
    /// Set when the winning construction conflicts with the expected shape.
    pub anomaly: Option<String>,
}

/// Whether and how far witnesses get realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub verify: bool,
    pub element_cap: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            verify: true,
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }
}

impl SolveOptions {
    pub fn arithmetic_only() -> Self {
        SolveOptions {
            verify: false,
            ..Self::default()
        }
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!("{p} is not prime")))
    }
}

/// `(C_q)^m ⋊ C_pk` over the least prime power `q^m = 1 (mod pk)`.
fn frobenius_candidate(pk: u64) -> Result<Candidate> {
    let pp = least_prime_power_1mod(pk)?;
    Ok(Candidate {
        label: CandidateLabel::Frobenius,
        order: pk.checked_mul(pp.value).ok_or(Error::Overflow("Frobenius candidate order"))?,
        spec: GroupSpec::Frob { q: pp.q, m: pp.m, pk },
    })
}

fn assemble(n: u64, candidates: Vec<Candidate>, opts: &SolveOptions) -> Result<CandidateReport> {
    let min_order = candidates.iter().map(|c| c.order).min().expect("at least one candidate");
    let winners: Vec<&Candidate> = candidates.iter().filter(|c| c.order == min_order).collect();
    let case_label = if winners.len() > 1 {
        "tie".to_string()
    } else {
        winners[0].label.case().to_string()
    };
    let witness_specs: Vec<GroupSpec> = winners.iter().map(|c| c.spec.clone()).collect();
    let mut report = CandidateReport {
        n,
        candidates,
        min_order,
        case_label,
        witness_specs,
        verified: false,
        verification_note: None,
        refuted_witnesses: Vec::new(),
        anomaly: None,
    };
    if opts.verify {
        verify_report(&mut report, opts)?;
    } else {
        report.verification_note = Some("not requested".into());
    }
    Ok(report)
}

fn verify_report(report: &mut CandidateReport, opts: &SolveOptions) -> Result<()> {
    if report.min_order > opts.element_cap {
        report.verification_note = Some(format!(
            "witness order {} exceeds the element cap {}; not realized",
            report.min_order, opts.element_cap
        ));
        return Ok(());
    }
    let mut notes = Vec::new();
    for w in &report.witness_specs {
        let check = check_witness(w, report.n, opts.element_cap)?;
        if !check.passed() {
            notes.push(format!(
                "witness {w} failed: order {} (predicted {}), degrees {}",
                check.order,
                check.predicted_order.map_or("none".to_string(), |o| o.to_string()),
                check.degrees.compact()
            ));
            report.refuted_witnesses.push(w.clone());
        }
    }
    report.verified = report.refuted_witnesses.len() < report.witness_specs.len();
    if !notes.is_empty() {
        report.verification_note = Some(notes.join("; "));
    }
    Ok(())
}

/// Least order of a group with an irreducible character of prime degree `p`.
pub fn g_prime(p: u64, opts: &SolveOptions) -> Result<CandidateReport> {
    require_prime(p)?;
    let mut candidates = Vec::new();
    if p >= 5 {
        candidates.push(Candidate {
            label: CandidateLabel::Psl2,
            order: psl2_order(p)?,
            spec: GroupSpec::Psl2(p),
        });
    }
    candidates.push(frobenius_candidate(p)?);
    assemble(p, candidates, opts)
}

/// Least order of a group with an irreducible character of degree `p^2`.
pub fn g_prime_squared(p: u64, opts: &SolveOptions) -> Result<CandidateReport> {
    require_prime(p)?;
    let n = p.checked_mul(p).ok_or(Error::Overflow("p^2"))?;
    let base = g_prime(p, &SolveOptions::arithmetic_only())?;
    let factor_spec = base.witness_specs[0].clone();
    let candidates = vec![
        Candidate {
            label: CandidateLabel::Pgroup5,
            order: p.checked_pow(5).ok_or(Error::Overflow("p^5"))?,
            spec: GroupSpec::Xsp { p, n: 2 },
        },
        frobenius_candidate(n)?,
        Candidate {
            label: CandidateLabel::Product,
            order: base
                .min_order
                .checked_mul(base.min_order)
                .ok_or(Error::Overflow("product candidate order"))?,
            spec: GroupSpec::prod(factor_spec.clone(), factor_spec.clone()),
        },
    ];
    let mut report = assemble(n, candidates, opts)?;
    let product_wins = report
        .candidates
        .iter()
        .any(|c| c.label == CandidateLabel::Product && c.order == report.min_order);
    if product_wins && matches!(factor_spec, GroupSpec::Psl2(_)) {
        report.anomaly = Some(format!(
            "product candidate wins but its factor {factor_spec} is not a Frobenius group"
        ));
    }
    Ok(report)
}

/// Report built from the cataloged witnesses of degree `n` (used for 6, 8).
pub fn catalog_report(n: u64, opts: &SolveOptions) -> Result<CandidateReport> {
    let witnesses = witnesses_for_degree(n);
    if witnesses.is_empty() {
        return Err(Error::InvalidParam(format!("no cataloged witness for degree {n}")));
    }
    let candidates: Vec<Candidate> = witnesses
        .into_iter()
        .map(|w| Candidate {
            label: CandidateLabel::Catalog,
            order: w.expected_order,
            spec: w.spec,
        })
        .collect();
    let mut report = assemble(n, candidates, opts)?;
    report.case_label = "catalog".into();
    Ok(report)
}

/// Dispatches on the shape of `n`: prime, prime squared, or cataloged.
pub fn g_value(n: u64, opts: &SolveOptions) -> Result<CandidateReport> {
    if is_prime(n) {
        return g_prime(n, opts);
    }
    if let Some(pp) = prime_power_decompose(n) {
        if pp.m == 2 {
            return g_prime_squared(pp.q, opts);
        }
    }
    if !witnesses_for_degree(n).is_empty() {
        return catalog_report(n, opts);
    }
    Err(Error::InvalidParam(format!(
        "degree {n} is neither a prime, a prime square, nor cataloged"
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: u64,
    pub case_label: String,
    pub min_order: u64,
    /// Orders of every candidate, in candidate order.
    pub candidate_orders: Vec<(CandidateLabel, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scan {
    pub max_p: u64,
    pub rows: Vec<ScanRow>,
    /// Primes where alternative (a) is the strict minimum.
    pub case_a: Vec<u64>,
    /// Primes where two candidates tie for the minimum.
    pub ties: Vec<u64>,
}

fn scan(max_p: u64, f: impl Fn(u64) -> Result<CandidateReport> + Sync) -> Result<Scan> {
    if max_p < 2 {
        return Err(Error::InvalidParam(format!("scan bound must be at least 2, got {max_p}")));
    }
    let rows = primes_up_to(max_p)
        .into_par_iter()
        .map(|p| {
            let r = f(p)?;
            Ok(ScanRow {
                p,
                case_label: r.case_label,
                min_order: r.min_order,
                candidate_orders: r.candidates.iter().map(|c| (c.label, c.order)).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let case_a = rows.iter().filter(|r| r.case_label == "a").map(|r| r.p).collect();
    let ties = rows.iter().filter(|r| r.case_label == "tie").map(|r| r.p).collect();
    Ok(Scan {
        max_p,
        rows,
        case_a,
        ties,
    })
}

/// g(p) for every prime `p <= max_p`, by formulas only.
pub fn scan_theorem_a(max_p: u64) -> Result<Scan> {
    scan(max_p, |p| g_prime(p, &SolveOptions::arithmetic_only()))
}

/// g(p^2) for every prime `p <= max_p`, by formulas only.
pub fn scan_theorem_b(max_p: u64) -> Result<Scan> {
    scan(max_p, |p| g_prime_squared(p, &SolveOptions::arithmetic_only()))
}

/// Least multiple of `n` exceeding `n^2`: a group with a degree-`n`
/// character has order divisible by `n` and larger than `n^2`.
pub fn lower_bound(n: u64) -> u64 {
    n * n + n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Exhaustive,
    OracleVerified,
    WitnessOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityStatus {
    pub n: u64,
    pub witness_order: u64,
    pub lower_bound: u64,
    pub residual_orders: Vec<u64>,
    /// Orders removed because every group of that order is cyclic.
    pub pruned_orders: Vec<u64>,
    /// Residual orders enumerated completely with no degree-`n` group found.
    pub cleared_orders: Vec<u64>,
    /// Residual orders not enumerated (above the oracle cap or over budget).
    pub unchecked_orders: Vec<u64>,
    /// Residual orders where some group does have a degree-`n` character.
    pub refuting_orders: Vec<u64>,
    pub status: Status,
}

pub const DEFAULT_ORACLE_CAP: u32 = crate::enumerator::DEFAULT_ORDER_CAP;

/// Evidence that no group of order below `witness_order` has a degree-`n`
/// character.
pub fn verify_minimal(n: u64, witness_order: u64, oracle_cap: u32, budget: u64) -> Result<MinimalityStatus> {
    if n < 2 || witness_order % n != 0 {
        return Err(Error::InvalidParam(format!(
            "need n >= 2 dividing the witness order, got n = {n}, order = {witness_order}"
        )));
    }
    let candidates: Vec<u64> = (n + 1..)
        .map(|k| k * n)
        .take_while(|&m| m < witness_order)
        .collect();
    let (pruned_orders, residual_orders): (Vec<u64>, Vec<u64>) =
        candidates.into_iter().partition(|&m| is_cyclic_number(m));
    for &m in pruned_orders.iter().filter(|&&m| m <= oracle_cap as u64) {
        let e = enumerate_groups_with_stats(m as u32, budget, oracle_cap)?;
        if e.tables.len() != 1 || !e.tables[0].is_abelian() {
            return Err(Error::InvalidParam(format!(
                "cyclic-number pruning contradicted by enumeration at order {m}"
            )));
        }
    }
    let mut cleared_orders = Vec::new();
    let mut unchecked_orders = Vec::new();
    let mut refuting_orders = Vec::new();
    for &m in &residual_orders {
        if m > oracle_cap as u64 {
            unchecked_orders.push(m);
            continue;
        }
        match enumerate_groups_with_stats(m as u32, budget, oracle_cap) {
            Ok(e) => {
                let mut refuted = false;
                for t in &e.tables {
                    let g = FiniteGroup::new(table_to_realization(t));
                    if character_degrees_with_caps(&g, DEFAULT_ELEMENT_CAP, DEFAULT_CLASS_CAP)?.contains(n) {
                        refuted = true;
                    }
                }
                if refuted {
                    refuting_orders.push(m);
                } else {
                    cleared_orders.push(m);
                }
            }
            Err(Error::BudgetExceeded { .. }) => unchecked_orders.push(m),
            Err(e) => return Err(e),
        }
    }
    let status = if residual_orders.is_empty() {
        Status::Exhaustive
    } else if unchecked_orders.is_empty() && refuting_orders.is_empty() {
        Status::OracleVerified
    } else {
        Status::WitnessOnly
    };
    Ok(MinimalityStatus {
        n,
        witness_order,
        lower_bound: lower_bound(n),
        residual_orders,
        pruned_orders,
        cleared_orders,
        unchecked_orders,
        refuting_orders,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KanoldRow {
    pub p: u64,
    pub q: u64,
    /// `q < p^2`
    pub holds: bool,
    /// `(p^2 - 1) / gcd(2, p - 1)`
    pub companion_bound: u64,
    /// `q < companion_bound`
    pub below_companion: bool,
}

/// Least prime `q = 1 (mod p)` against `p^2` for every prime `p <= max_p`.
/// A clean result verifies the inequality only on this range.
pub fn kanold_scan(max_p: u64) -> Result<Vec<KanoldRow>> {
    if max_p < 2 {
        return Err(Error::InvalidParam(format!("scan bound must be at least 2, got {max_p}")));
    }
    primes_up_to(max_p)
        .into_par_iter()
        .map(|p| {
            let q = least_prime_1mod(p)?;
            let sq = p.checked_mul(p).ok_or(Error::Overflow("p^2"))?;
            let companion_bound = (sq - 1) / 2u64.gcd(&(p - 1));
            Ok(KanoldRow {
                p,
                q,
                holds: q < sq,
                companion_bound,
                below_companion: q < companion_bound,
            })
        })
        .collect()
}

/// Outcome of realizing a witness and computing its degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub spec: GroupSpec,
    pub n: u64,
    pub order: u64,
    pub predicted_order: Option<u64>,
    pub degrees: DegreeMultiset,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.predicted_order.is_none_or(|o| o == self.order) && self.degrees.contains(self.n)
    }
}

pub fn check_witness(spec: &GroupSpec, n: u64, cap: u64) -> Result<WitnessCheck> {
    let g = realize_with_cap(spec, cap)?;
    let order = g.order(cap)?;
    let degrees = character_degrees_with_caps(&g, cap, DEFAULT_CLASS_CAP)?;
    Ok(WitnessCheck {
        spec: spec.clone(),
        n,
        order,
        predicted_order: spec.predicted_order()?,
        degrees,
    })
}

/// True iff the realized group has its predicted order and a degree-`n`
/// irreducible character.
pub fn verify_witness(spec: &GroupSpec, n: u64) -> Result<bool> {
    Ok(check_witness(spec, n, DEFAULT_ELEMENT_CAP)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arith(p: u64) -> CandidateReport {
        g_prime(p, &SolveOptions::arithmetic_only()).unwrap()
    }

    fn arith_sq(p: u64) -> CandidateReport {
        g_prime_squared(p, &SolveOptions::arithmetic_only()).unwrap()
    }

    #[test]
    fn theorem_a_examples() {
        let r = arith(2);
        assert_eq!((r.min_order, r.case_label.as_str()), (6, "b"));
        assert_eq!(r.witness_specs, vec![GroupSpec::Frob { q: 3, m: 1, pk: 2 }]);
        let r = arith(5);
        assert_eq!(r.min_order, 55);
        assert_eq!(r.candidates.iter().map(|c| c.order).collect::<Vec<_>>(), vec![60, 55]);
        let r = arith(19);
        assert_eq!((r.min_order, r.case_label.as_str()), (3420, "a"));
        assert_eq!(r.candidates[1].order, 19 * 191);
    }

    #[test]
    fn theorem_b_examples() {
        let orders = |r: &CandidateReport| r.candidates.iter().map(|c| c.order).collect::<Vec<_>>();
        let r = arith_sq(2);
        assert_eq!((r.min_order, r.case_label.as_str(), orders(&r)), (20, "b", vec![32, 20, 36]));
        let r = arith_sq(3);
        assert_eq!((r.min_order, r.case_label.as_str(), orders(&r)), (144, "c", vec![243, 171, 144]));
        let r = arith_sq(5);
        assert_eq!((r.min_order, r.case_label.as_str(), orders(&r)), (2525, "b", vec![3125, 2525, 3025]));
        let r = arith_sq(7);
        assert_eq!((r.min_order, r.case_label.as_str(), orders(&r)), (3136, "c", vec![16807, 9653, 3136]));
        let r = arith_sq(19);
        assert_eq!((r.min_order, r.case_label.as_str()), (2_476_099, "a"));
        assert!(r.anomaly.is_none());
    }

    #[test]
    fn scans() {
        assert!(scan_theorem_a(18).unwrap().case_a.is_empty());
        let two = scan_theorem_a(2).unwrap();
        assert_eq!(two.rows.len(), 1);
        assert_eq!(two.rows[0].case_label, "b");
        let b = scan_theorem_b(7).unwrap();
        let labels: Vec<&str> = b.rows.iter().map(|r| r.case_label.as_str()).collect();
        assert_eq!(labels, vec!["b", "c", "b", "c"]);
        assert!(scan_theorem_a(1).is_err());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(2), 6);
        assert_eq!(lower_bound(6), 42);
        assert_eq!(lower_bound(5), 30);
    }

    #[test]
    fn minimality_statuses() {
        let s = verify_minimal(4, 20, 16, 1_000_000_000).unwrap();
        assert_eq!((s.status, s.residual_orders.len()), (Status::Exhaustive, 0));
        let s = verify_minimal(7, 56, 16, 1_000_000_000).unwrap();
        assert_eq!(s.status, Status::Exhaustive);
        let s = verify_minimal(5, 55, 16, 1_000_000_000).unwrap();
        assert_eq!(s.residual_orders, vec![30, 40, 45, 50]);
        assert_eq!(s.pruned_orders, vec![35]);
        assert_eq!(s.status, Status::WitnessOnly);
    }

    #[test]
    fn minimality_with_oracle() {
        // Pretend the degree-3 witness had order 24. Multiples of 3 in (9, 24)
        // are 12, 15, 18, 21; 15 is a cyclic number. At cap 12 the oracle
        // reaches order 12 only, where A4 has a degree-3 character.
        let s = verify_minimal(3, 24, 12, 1_000_000_000).unwrap();
        assert_eq!(s.residual_orders, vec![12, 18, 21]);
        assert_eq!(s.refuting_orders, vec![12]);
        assert_eq!(s.status, Status::WitnessOnly);
    }

    #[test]
    fn kanold_rows() {
        let rows = kanold_scan(19).unwrap();
        let last = rows.last().unwrap();
        assert_eq!((last.p, last.q, last.holds), (19, 191, true));
        assert_eq!((rows[0].p, rows[0].q, rows[0].holds), (2, 3, true));
        assert_eq!(rows[0].companion_bound, 3);
    }

    #[test]
    fn witness_checks() {
        assert_eq!(verify_witness(&"frob:11^1:5".parse().unwrap(), 5), Ok(true));
        assert_eq!(verify_witness(&GroupSpec::Cyclic(6), 2), Ok(false));
    }
}
