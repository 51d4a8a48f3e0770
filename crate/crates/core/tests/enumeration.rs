use chardeg_core::catalog::{parse_spec, realize};
use chardeg_core::enumerator::{
    cayley_table_of, enumerate_groups, enumerate_groups_with_stats, is_isomorphic, CayleyTable,
    DEFAULT_BUDGET,
};
use chardeg_core::group::DEFAULT_ELEMENT_CAP;
use chardeg_core::Error;
use proptest::prelude::*;

const CLASS_COUNTS: [usize; 16] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

fn table_of(text: &str) -> CayleyTable {
    let g = realize(&parse_spec(text).unwrap()).unwrap();
    cayley_table_of(&g, DEFAULT_ELEMENT_CAP).unwrap()
}

fn relabel(t: &CayleyTable, perm: &[u32]) -> CayleyTable {
    let n = t.n as usize;
    let mut table = vec![0; n * n];
    for a in 0..t.n {
        for b in 0..t.n {
            table[perm[a as usize] as usize * n + perm[b as usize] as usize] = perm[t.mul(a, b) as usize];
        }
    }
    CayleyTable::new(t.n, table).unwrap()
}

/// Brute force over every bijection fixing the identity.
fn isomorphic_by_brute_force(t1: &CayleyTable, t2: &CayleyTable) -> bool {
    fn extend(t1: &CayleyTable, t2: &CayleyTable, map: &mut Vec<u32>, used: &mut Vec<bool>) -> bool {
        let k = map.len() as u32;
        if k == t1.n {
            return (0..t1.n).all(|a| (0..t1.n).all(|b| map[t1.mul(a, b) as usize] == t2.mul(map[a as usize], map[b as usize])));
        }
        for v in 0..t2.n {
            if !used[v as usize] {
                used[v as usize] = true;
                map.push(v);
                let found = extend(t1, t2, map, used);
                map.pop();
                used[v as usize] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    let mut used = vec![false; t2.n as usize];
    used[0] = true;
    t1.n == t2.n && extend(t1, t2, &mut vec![0], &mut used)
}

#[test]
fn class_counts_up_to_16() {
    for n in 1..=16u32 {
        let tables = enumerate_groups(n, DEFAULT_BUDGET).unwrap();
        assert_eq!(tables.len(), CLASS_COUNTS[n as usize - 1], "order {n}");
        for t in &tables {
            assert!(t.is_valid(), "order {n}");
        }
    }
}

#[test]
fn classes_are_pairwise_distinct() {
    for n in 1..=12u32 {
        let tables = enumerate_groups(n, DEFAULT_BUDGET).unwrap();
        for (i, a) in tables.iter().enumerate() {
            for b in &tables[i + 1..] {
                assert!(!is_isomorphic(a, b), "order {n}");
                if n <= 8 {
                    assert!(!isomorphic_by_brute_force(a, b), "order {n}");
                } else {
                    // The classes up to order 12 differ in element-order profile.
                    assert_ne!(a.order_profile(), b.order_profile(), "order {n}");
                }
            }
        }
    }
}

#[test]
fn catalog_groups_match_exactly_one_class() {
    let specs = [
        "cyclic:1",
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:6",
        "cyclic:8",
        "cyclic:9",
        "cyclic:12",
        "named:S3",
        "named:A4",
        "xsp:2:1",
        "psl2:2",
        "psl2:3",
        "frob:5^1:2",
        "frob:7^1:2",
        "prod(cyclic:2,cyclic:2)",
        "prod(cyclic:2,cyclic:4)",
        "prod(cyclic:2,prod(cyclic:2,cyclic:2))",
        "prod(cyclic:3,cyclic:3)",
        "prod(cyclic:2,named:S3)",
        "prod(cyclic:2,cyclic:6)",
        "prod(cyclic:2,xsp:2:1)",
    ];
    for text in specs {
        let t = table_of(text);
        let classes = enumerate_groups(t.n, DEFAULT_BUDGET).unwrap();
        let hits = classes.iter().filter(|c| is_isomorphic(c, &t)).count();
        assert_eq!(hits, 1, "{text}");
    }
}

#[test]
fn isomorphism_agrees_with_brute_force() {
    let tables: Vec<CayleyTable> = (1..=8).flat_map(|n| enumerate_groups(n, DEFAULT_BUDGET).unwrap()).collect();
    let extra = [table_of("named:S3"), table_of("xsp:2:1"), table_of("prod(cyclic:2,cyclic:4)")];
    for a in tables.iter().chain(&extra) {
        for b in tables.iter().chain(&extra) {
            assert_eq!(is_isomorphic(a, b), isomorphic_by_brute_force(a, b));
        }
    }
}

#[test]
fn budget_and_cap_are_reported() {
    assert_eq!(enumerate_groups(12, 10), Err(Error::BudgetExceeded { budget: 10 }));
    assert!(matches!(enumerate_groups(17, DEFAULT_BUDGET), Err(Error::BudgetExceeded { .. })));
    let e = enumerate_groups_with_stats(17, DEFAULT_BUDGET, 17).unwrap();
    assert_eq!(e.tables.len(), 1);
    assert!(e.raw_tables >= e.tables.len());
}

const SHUFFLE_CORPUS: [&str; 6] = [
    "named:S3",
    "named:A4",
    "xsp:2:1",
    "frob:5^1:2",
    "prod(cyclic:2,named:S3)",
    "prod(cyclic:3,cyclic:3)",
];

fn shuffled_labels() -> impl Strategy<Value = (CayleyTable, Vec<u32>)> {
    prop::sample::select(SHUFFLE_CORPUS.to_vec()).prop_flat_map(|text| {
        let t = table_of(text);
        let rest: Vec<u32> = (1..t.n).collect();
        (Just(t), Just(rest).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabeled_catalog_group_is_found((t, rest) in shuffled_labels()) {
        let perm: Vec<u32> = std::iter::once(0).chain(rest).collect();
        let shuffled = relabel(&t, &perm);
        prop_assert!(is_isomorphic(&t, &shuffled));
        let classes = enumerate_groups(t.n, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(classes.iter().filter(|c| is_isomorphic(c, &shuffled)).count(), 1);
    }
}
