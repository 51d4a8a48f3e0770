use std::io::Write;

use chardeg_core::catalog::{realize_with_cap, GroupSpec};
use chardeg_core::chardeg::{analyze, character_degrees_with_caps, DegreeMultiset, DEFAULT_CLASS_CAP};
use chardeg_core::enumerator::{enumerate_groups_with_stats, table_to_realization};
use chardeg_core::group::FiniteGroup;
use chardeg_core::solver::{
    check_witness, g_value, kanold_scan, scan_theorem_a, scan_theorem_b, verify_minimal, CandidateLabel,
    CandidateReport, Scan, SolveOptions,
};
use log::{debug, info};
use serde::Serialize;
use serde_json::{json, to_value};

use crate::cache::{Cache, CacheEntry, Loaded, ENGINE_VERSION};
use crate::config::Settings;
use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_OK};
use crate::output::{joined, Rendered};

pub type Outcome = Result<(Rendered, i32), CliError>;

fn ok(r: Rendered) -> Outcome {
    Ok((r, EXIT_OK))
}

pub fn gvalue(n: u64, verify: bool, s: &Settings) -> Outcome {
    let opts = SolveOptions {
        verify,
        element_cap: s.element_cap,
    };
    let r = g_value(n, &opts)?;
    let failed = verify && !r.verified && !r.refuted_witnesses.is_empty();
    let rows = r
        .candidates
        .iter()
        .map(|c| {
            vec![
                r.n.to_string(),
                c.label.as_str().to_string(),
                c.order.to_string(),
                c.spec.to_string(),
                (c.order == r.min_order).to_string(),
                r.refuted_witnesses.contains(&c.spec).to_string(),
            ]
        })
        .collect();
    let mut pretty = vec![format!(
        "g({}) = {}  case {}  {}",
        r.n,
        r.min_order,
        r.case_label,
        if r.verified { "verified" } else { "unverified" }
    )];
    for c in &r.candidates {
        let mark = if r.refuted_witnesses.contains(&c.spec) {
            "  refuted"
        } else if c.order == r.min_order {
            "  <- min"
        } else {
            ""
        };
        pretty.push(format!("  {:<10} {:>12}  {}{mark}", c.label.as_str(), c.order, c.spec));
    }
    pretty.extend(r.verification_note.iter().map(|n| format!("  note: {n}")));
    pretty.extend(r.anomaly.iter().map(|a| format!("  anomaly: {a}")));
    let rendered = Rendered::new(to_value(&r)?)
        .csv(vec!["n", "label", "order", "spec", "minimal", "refuted"], rows)
        .pretty(pretty);
    Ok((rendered, if failed { EXIT_CHECK_FAILED } else { EXIT_OK }))
}

fn scan_rendered(scan: &Scan, labels: &[CandidateLabel]) -> Result<Rendered, CliError> {
    let mut header = vec!["p", "case", "min_order"];
    header.extend(labels.iter().map(|l| l.as_str()));
    let order_of = |row: &chardeg_core::solver::ScanRow, l: CandidateLabel| {
        row.candidate_orders
            .iter()
            .find(|(label, _)| *label == l)
            .map(|(_, o)| o.to_string())
            .unwrap_or_default()
    };
    let rows = scan
        .rows
        .iter()
        .map(|row| {
            let mut cells = vec![row.p.to_string(), row.case_label.clone(), row.min_order.to_string()];
            cells.extend(labels.iter().map(|&l| order_of(row, l)));
            cells
        })
        .collect();
    let mut pretty = vec![format!("{:>6}  {:<4} {:>16}", "p", "case", "min order")];
    pretty.extend(
        scan.rows
            .iter()
            .map(|r| format!("{:>6}  {:<4} {:>16}", r.p, r.case_label, r.min_order)),
    );
    pretty.push(format!(
        "{} primes up to {}; case (a) at {:?}; ties at {:?}",
        scan.rows.len(),
        scan.max_p,
        scan.case_a,
        scan.ties
    ));
    Ok(Rendered::new(to_value(scan)?).csv(header, rows).pretty(pretty))
}

pub fn scan_a(max_p: u64) -> Outcome {
    let scan = scan_theorem_a(max_p)?;
    ok(scan_rendered(&scan, &[CandidateLabel::Psl2, CandidateLabel::Frobenius])?)
}

pub fn scan_b(max_p: u64) -> Outcome {
    let scan = scan_theorem_b(max_p)?;
    ok(scan_rendered(
        &scan,
        &[CandidateLabel::Pgroup5, CandidateLabel::Frobenius, CandidateLabel::Product],
    )?)
}

pub fn kanold(max_p: u64) -> Outcome {
    let rows = kanold_scan(max_p)?;
    let all_hold = rows.iter().all(|r| r.holds);
    let json = json!({
        "max_p": max_p,
        "primes": rows.len(),
        "all_hold": all_hold,
        "scope": "verified on this range only",
        "rows": rows,
    });
    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.q.to_string(),
                (r.p * r.p).to_string(),
                r.holds.to_string(),
                r.companion_bound.to_string(),
                r.below_companion.to_string(),
            ]
        })
        .collect();
    let mut pretty: Vec<String> = rows
        .iter()
        .filter(|r| !r.holds)
        .map(|r| format!("  fails at p = {}: q = {}", r.p, r.q))
        .collect();
    pretty.insert(
        0,
        format!(
            "q < p^2 {} for all {} primes p <= {max_p} (range-verified, not a proof)",
            if all_hold { "holds" } else { "does NOT hold" },
            rows.len()
        ),
    );
    let rendered = Rendered::new(json)
        .csv(vec!["p", "q", "p_squared", "holds", "companion_bound", "below_companion"], csv_rows)
        .pretty(pretty);
    Ok((rendered, if all_hold { EXIT_OK } else { EXIT_CHECK_FAILED }))
}

fn warn_corrupt(loaded: &Loaded, cache: &Cache, err: &mut dyn Write) {
    if let Loaded::Corrupt(why) = loaded {
        let _ = writeln!(err, "warning: ignoring corrupt cache {} ({why})", cache.path().display());
    }
}

/// Degrees of `spec`, through the cache when enabled.
fn degrees_for(spec: &GroupSpec, s: &Settings, err: &mut dyn Write) -> Result<DegreeMultiset, CliError> {
    let cache = s.use_cache.then(|| Cache::new(&s.cache_dir));
    if let Some(cache) = &cache {
        let (hit, loaded) = cache.lookup(spec)?;
        warn_corrupt(&loaded, cache, err);
        if let Some(e) = hit {
            info!("cache hit for {spec}");
            return Ok(DegreeMultiset::new(e.degrees, e.order));
        }
    }
    let g = realize_with_cap(spec, s.element_cap)?;
    let d = character_degrees_with_caps(&g, s.element_cap, DEFAULT_CLASS_CAP)?;
    if let Some(cache) = &cache {
        let stored = cache.store(CacheEntry {
            spec_text: spec.to_string(),
            order: d.group_order,
            degrees: d.degrees.clone(),
            engine_version: ENGINE_VERSION.into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        })?;
        debug!("cache store for {spec}: {stored}");
    }
    Ok(d)
}

#[derive(Serialize)]
struct DegreesReport<'a> {
    spec: String,
    degrees: &'a [u64],
    group_order: u64,
}

pub fn degrees(text: &str, s: &Settings, err: &mut dyn Write) -> Outcome {
    let spec: GroupSpec = text.parse()?;
    let d = degrees_for(&spec, s, err)?;
    let report = DegreesReport {
        spec: spec.to_string(),
        degrees: &d.degrees,
        group_order: d.group_order,
    };
    let rows = d
        .grouped()
        .into_iter()
        .map(|(deg, mult)| vec![deg.to_string(), mult.to_string()])
        .collect();
    let pretty = vec![
        format!("{spec}  order {}", d.group_order),
        format!("  degrees {}", d.compact()),
    ];
    ok(Rendered::new(to_value(&report)?)
        .csv(vec!["degree", "multiplicity"], rows)
        .pretty(pretty))
}

#[derive(Serialize)]
struct WitnessInfo {
    spec: GroupSpec,
    order: u64,
    generators: Vec<String>,
    degrees: Vec<u64>,
    passed: bool,
}

pub fn witness(n: u64, s: &Settings) -> Outcome {
    let report: CandidateReport = g_value(n, &SolveOptions::arithmetic_only())?;
    let mut infos = Vec::new();
    for spec in &report.witness_specs {
        let check = check_witness(spec, n, s.element_cap)?;
        let g = realize_with_cap(spec, s.element_cap)?;
        let real = g.realization();
        infos.push(WitnessInfo {
            spec: spec.clone(),
            order: check.order,
            generators: g.generators().iter().map(|e| real.format_element(e)).collect(),
            degrees: check.degrees.degrees.clone(),
            passed: check.passed(),
        });
    }
    let any_passed = infos.iter().any(|w| w.passed);
    let json = json!({ "n": n, "min_order": report.min_order, "witnesses": infos });
    let mut rows = Vec::new();
    let mut pretty = vec![format!("degree {n}: witness order {}", report.min_order)];
    for w in &infos {
        pretty.push(format!(
            "  {}  order {}  degree {n} {}",
            w.spec,
            w.order,
            if w.passed { "present" } else { "ABSENT" }
        ));
        for (i, g) in w.generators.iter().enumerate() {
            pretty.push(format!("    g{} = {g}", i + 1));
            rows.push(vec![w.spec.to_string(), w.order.to_string(), w.passed.to_string(), i.to_string(), g.clone()]);
        }
    }
    let rendered = Rendered::new(json)
        .csv(vec!["spec", "order", "passed", "generator", "element"], rows)
        .pretty(pretty);
    Ok((rendered, if any_passed { EXIT_OK } else { EXIT_CHECK_FAILED }))
}

pub fn verify(n: u64, s: &Settings) -> Outcome {
    let report = g_value(n, &SolveOptions::arithmetic_only())?;
    let m = verify_minimal(n, report.min_order, s.oracle_cap, s.budget)?;
    let mut rows = Vec::new();
    for (list, disposition) in [
        (&m.pruned_orders, "pruned"),
        (&m.cleared_orders, "cleared"),
        (&m.unchecked_orders, "unchecked"),
        (&m.refuting_orders, "refuting"),
    ] {
        rows.extend(list.iter().map(|o| vec![o.to_string(), disposition.to_string()]));
    }
    rows.sort_by_key(|r| r[0].parse::<u64>().unwrap_or(0));
    let pretty = vec![
        format!("degree {n}: witness order {}  status {:?}", m.witness_order, m.status),
        format!("  lower bound {}", m.lower_bound),
        format!("  residual  {:?}", m.residual_orders),
        format!("  pruned    {:?}", m.pruned_orders),
        format!("  cleared   {:?}", m.cleared_orders),
        format!("  unchecked {:?}", m.unchecked_orders),
        format!("  refuting  {:?}", m.refuting_orders),
    ];
    let code = if m.refuting_orders.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED };
    let rendered = Rendered::new(to_value(&m)?)
        .csv(vec!["order", "disposition"], rows)
        .pretty(pretty);
    Ok((rendered, code))
}

#[derive(Serialize)]
struct ClassInfo {
    index: usize,
    abelian: bool,
    order_profile: Vec<u32>,
    class_sizes: Vec<u32>,
    degrees: Vec<u64>,
    table: Vec<Vec<u32>>,
}

pub fn enumerate(n: u32, order_cap: u32, s: &Settings) -> Outcome {
    let e = enumerate_groups_with_stats(n, s.budget, order_cap)?;
    let mut classes = Vec::new();
    for (index, t) in e.tables.iter().enumerate() {
        let g = FiniteGroup::new(table_to_realization(t));
        let a = analyze(&g, s.element_cap, DEFAULT_CLASS_CAP)?;
        classes.push(ClassInfo {
            index,
            abelian: t.is_abelian(),
            order_profile: t.order_profile(),
            class_sizes: t.class_sizes(),
            degrees: a.degrees.degrees,
            table: t.table.chunks(n as usize).map(<[u32]>::to_vec).collect(),
        });
    }
    let json = json!({
        "order": e.order,
        "classes": classes.len(),
        "nodes": e.nodes,
        "raw_tables": e.raw_tables,
        "groups": classes,
    });
    let rows = classes
        .iter()
        .map(|c| {
            vec![
                c.index.to_string(),
                c.abelian.to_string(),
                c.class_sizes.len().to_string(),
                joined(&c.order_profile),
                joined(&c.degrees),
            ]
        })
        .collect();
    let mut pretty = vec![format!(
        "order {n}: {} groups ({} tables before dedup, {} search nodes)",
        classes.len(),
        e.raw_tables,
        e.nodes
    )];
    for c in &classes {
        pretty.push(format!(
            "  #{} {}  degrees {}  element orders {}",
            c.index,
            if c.abelian { "abelian    " } else { "non-abelian" },
            DegreeMultiset::new(c.degrees.clone(), n as u64).compact(),
            joined(&c.order_profile)
        ));
    }
    ok(Rendered::new(json)
        .csv(vec!["index", "abelian", "classes", "order_profile", "degrees"], rows)
        .pretty(pretty))
}

pub fn cache(clear: bool, s: &Settings, err: &mut dyn Write) -> Outcome {
    let cache = Cache::new(&s.cache_dir);
    if clear {
        let removed = cache.clear()?;
        let path = cache.path().display().to_string();
        let json = json!({ "path": path, "cleared": removed });
        return ok(Rendered::new(json)
            .csv(vec!["path", "cleared"], vec![vec![path.clone(), removed.to_string()]])
            .pretty(vec![if removed {
                format!("removed {path}")
            } else {
                format!("no cache at {path}")
            }]));
    }
    let st = cache.stats()?;
    if let Some(why) = &st.corrupt {
        let _ = writeln!(err, "warning: ignoring corrupt cache {} ({why})", st.path);
    }
    let row = vec![
        st.path.clone(),
        st.entries.to_string(),
        st.current_version_entries.to_string(),
        st.bytes.to_string(),
        st.corrupt.is_some().to_string(),
    ];
    let pretty = vec![
        format!("cache {}", st.path),
        format!("  {} entries ({} for {ENGINE_VERSION}), {} bytes", st.entries, st.current_version_entries, st.bytes),
    ];
    ok(Rendered::new(to_value(&st)?)
        .csv(vec!["path", "entries", "current_version_entries", "bytes", "corrupt"], vec![row])
        .pretty(pretty))
}
