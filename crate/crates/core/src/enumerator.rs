//! Exhaustive enumeration of the groups of a small order, up to
//! isomorphism, by Cayley-table backtracking.
//!
//! Element 0 is the identity, so row 0 and column 0 are prefilled. Every
//! group has an element `a` of some order `o > 1` and a labeling in which
//! `o*c + k` stands for `a^k b_c` for coset representatives `b_c` of `<a>`
//! (with `b_0 = 1`). In that labeling, row 1 (left multiplication by `a`)
//! is the fixed permutation `o*c + k -> o*c + (k+1) mod o`. The search runs
//! once per divisor `o` of `n` with row 1 prefilled this way, fills the
//! remaining cells row-major under the Latin constraint with incremental
//! associativity checks, and finishes with an exact isomorphism dedup.
//!
//! Two more restrictions keep at least one labeling of every group:
//!
//! * `a` may be taken of maximal order, so a completed row whose element has
//!   order above `o` is rejected.
//! * Row `o` (the row of `b_1`) contains every element. Cosets `c >= 2` are
//!   numbered by first occurrence along that row, counting column headers,
//!   and the first element seen of a new coset is its representative
//!   `b_c`. So a value from an unseen coset must be `o * (max seen + 1)`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Realization};

pub const DEFAULT_ORDER_CAP: u32 = 16;
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

const EMPTY: u32 = u32::MAX;

/// Multiplication table of a group on `0..n`, row-major, identity 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CayleyTable {
    pub n: u32,
    pub table: Vec<u32>,
}

impl CayleyTable {
    pub fn new(n: u32, table: Vec<u32>) -> Result<Self> {
        let t = CayleyTable { n, table };
        if t.table.len() != (n as usize).pow(2) || !t.is_valid() {
            return Err(Error::InvalidParam("not a group multiplication table with identity 0".into()));
        }
        Ok(t)
    }

    /// The table of Z/n.
    pub fn cyclic(n: u32) -> Self {
        let table = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
        CayleyTable { n, table }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.n + b) as usize]
    }

    pub fn is_latin(&self) -> bool {
        let n = self.n as usize;
        (0..n).all(|i| {
            let row: HashSet<u32> = (0..n).map(|j| self.table[i * n + j]).collect();
            let col: HashSet<u32> = (0..n).map(|j| self.table[j * n + i]).collect();
            row.len() == n && col.len() == n && row.iter().all(|&v| v < self.n)
        })
    }

    /// Checks all `n^3` triples.
    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n;
        self.table.iter().all(|&v| v < n)
            && (0..n).all(|i| self.mul(0, i) == i && self.mul(i, 0) == i)
            && self.is_latin()
            && self.is_associative()
    }

    pub fn inverse(&self, a: u32) -> u32 {
        (0..self.n).find(|&b| self.mul(a, b) == 0).expect("group element has an inverse")
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn order_profile(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (0..self.n).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn class_sizes(&self) -> Vec<u32> {
        let n = self.n;
        let mut seen = vec![false; n as usize];
        let mut sizes = Vec::new();
        for x in 0..n {
            if seen[x as usize] {
                continue;
            }
            let mut size = 0;
            for g in 0..n {
                let y = self.mul(self.mul(self.inverse(g), x), g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn closure(&self, gens: &[u32]) -> Vec<bool> {
        let mut inside = vec![false; self.n as usize];
        inside[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// A generating set chosen greedily, preferring elements of large order.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut by_order: Vec<u32> = (1..self.n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        for a in by_order {
            if !inside[a as usize] {
                gens.push(a);
                inside = self.closure(&gens);
            }
        }
        gens
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.table.chunks(self.n as usize) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A Cayley table viewed as a group realization; elements are `[index]`.
#[derive(Debug, Clone)]
pub struct TableGroup {
    table: CayleyTable,
    gens: Vec<u32>,
}

pub fn table_to_realization(t: &CayleyTable) -> TableGroup {
    let mut gens = t.generating_set();
    if gens.is_empty() {
        gens.push(0);
    }
    TableGroup { table: t.clone(), gens }
}

impl Realization for TableGroup {
    fn identity(&self) -> Element {
        Element(vec![0])
    }

    fn multiply(&self, a: &Element, b: &Element) -> Element {
        Element(vec![self.table.mul(a.0[0], b.0[0])])
    }

    fn inverse(&self, a: &Element) -> Element {
        Element(vec![self.table.inverse(a.0[0])])
    }

    fn generators(&self) -> Vec<Element> {
        self.gens.iter().map(|&g| Element(vec![g])).collect()
    }

    fn descriptor(&self) -> String {
        format!("Cayley table of order {}", self.table.n)
    }

    fn element_len(&self) -> usize {
        1
    }
}

/// The multiplication table of a concrete group, with its identity moved
/// to index 0 and the other elements in their sorted order.
pub fn cayley_table_of(g: &FiniteGroup, cap: u64) -> Result<CayleyTable> {
    let list = g.elements(cap)?;
    let n = list.len();
    if n > u32::MAX as usize {
        return Err(Error::CapExceeded { cap });
    }
    let id = list.position(&g.identity()).expect("the identity is an element");
    let label = |i: usize| -> u32 {
        match i {
            i if i == id => 0,
            i if i < id => i as u32 + 1,
            i => i as u32,
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| label(i));
    let mut table = Vec::with_capacity(n * n);
    for &a in &order {
        for &b in &order {
            let prod = g.multiply(&list.elements[a], &list.elements[b]);
            table.push(label(list.position(&prod).expect("closed under products")));
        }
    }
    CayleyTable::new(n as u32, table)
}

/// Exact isomorphism test: invariant prefilter, then a search for an image
/// of a generating set that extends to an isomorphism.
pub fn is_isomorphic(t1: &CayleyTable, t2: &CayleyTable) -> bool {
    if t1.n != t2.n
        || t1.order_profile() != t2.order_profile()
        || t1.class_sizes() != t2.class_sizes()
    {
        return false;
    }
    let gens = t1.generating_set();
    let orders2: Vec<u32> = (0..t2.n).map(|a| t2.element_order(a)).collect();
    let mut images = Vec::with_capacity(gens.len());
    extend_isomorphism(t1, t2, &gens, &orders2, &mut images)
}

fn extend_isomorphism(
    t1: &CayleyTable,
    t2: &CayleyTable,
    gens: &[u32],
    orders2: &[u32],
    images: &mut Vec<u32>,
) -> bool {
    if images.len() == gens.len() {
        return induced_map(t1, t2, gens, images).is_some();
    }
    let want = t1.element_order(gens[images.len()]);
    for cand in 0..t2.n {
        if orders2[cand as usize] != want || images.contains(&cand) {
            continue;
        }
        images.push(cand);
        if extend_isomorphism(t1, t2, gens, orders2, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Extends `gens[i] -> images[i]` along right multiplication; returns the
/// map if it is a well-defined bijective homomorphism.
fn induced_map(t1: &CayleyTable, t2: &CayleyTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = t1.n as usize;
    let mut phi = vec![EMPTY; n];
    phi[0] = 0;
    let mut queue = vec![0u32];
    while let Some(x) = queue.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = t1.mul(x, g);
            let img = t2.mul(phi[x as usize], h);
            match phi[y as usize] {
                EMPTY => {
                    phi[y as usize] = img;
                    queue.push(y);
                }
                prev if prev != img => return None,
                _ => {}
            }
        }
    }
    let distinct: HashSet<u32> = phi.iter().copied().collect();
    if distinct.len() != n || phi.contains(&EMPTY) {
        return None;
    }
    let hom = (0..t1.n).all(|a| {
        (0..t1.n).all(|b| phi[t1.mul(a, b) as usize] == t2.mul(phi[a as usize], phi[b as usize]))
    });
    hom.then_some(phi)
}

/// Backtracking state for one row-1 pattern.
///
/// Every assignment is propagated through associativity: whenever three of
/// the four products in `(ab)c = a(bc)` are known the fourth is filled in,
/// and any clash with the Latin property or an existing entry prunes.
struct Search {
    n: usize,
    pattern: usize,
    table: Vec<u32>,
    /// `pos[a * n + v]` = column `b` with `T[a][b] = v`.
    pos: Vec<u32>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    trail: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
    found: Vec<CayleyTable>,
}

impl Search {
    fn new(n: usize, pattern: u32, budget: u64) -> Self {
        Search {
            n,
            pattern: pattern as usize,
            table: vec![EMPTY; n * n],
            pos: vec![EMPTY; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            trail: Vec::new(),
            nodes: 0,
            budget,
            found: Vec::new(),
        }
    }

    /// Prefills row 0, column 0 and row 1; false if the pattern is
    /// already contradictory.
    fn seed(&mut self) -> bool {
        let (n, o) = (self.n, self.pattern);
        let mut ok = (0..n).all(|i| self.assign(0, i, i as u32) && self.assign(i, 0, i as u32));
        for x in 1..n {
            let (c, k) = (x / o, x % o);
            ok = ok && self.assign(1, x, (c * o + (k + 1) % o) as u32);
        }
        ok && self.propagate(0) && self.plausible()
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> u32 {
        self.table[a * self.n + b]
    }

    /// Fills an empty cell (recording it on the trail) or confirms a filled one.
    fn assign(&mut self, a: usize, b: usize, v: u32) -> bool {
        let cur = self.get(a, b);
        if cur != EMPTY {
            return cur == v;
        }
        if (self.row_used[a] | self.col_used[b]) & (1 << v) != 0 {
            return false;
        }
        self.table[a * self.n + b] = v;
        self.pos[a * self.n + v as usize] = b as u32;
        self.row_used[a] |= 1 << v;
        self.col_used[b] |= 1 << v;
        self.trail.push((a, b));
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let (a, b) = self.trail.pop().expect("trail is longer than len");
            let v = self.table[a * self.n + b];
            self.table[a * self.n + b] = EMPTY;
            self.pos[a * self.n + v as usize] = EMPTY;
            self.row_used[a] &= !(1 << v);
            self.col_used[b] &= !(1 << v);
        }
    }

    /// Forces `T[a1][b1] = T[a2][b2]`.
    fn equate(&mut self, (a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> bool {
        match (self.get(a1, b1), self.get(a2, b2)) {
            (EMPTY, EMPTY) => true,
            (EMPTY, q) => self.assign(a1, b1, q),
            (p, EMPTY) => self.assign(a2, b2, p),
            (p, q) => p == q,
        }
    }

    /// Runs the trail from `head` as a work queue until nothing new follows.
    fn propagate(&mut self, mut head: usize) -> bool {
        let n = self.n;
        while head < self.trail.len() {
            let (x, y) = self.trail[head];
            head += 1;
            let v = self.get(x, y) as usize;
            for z in 0..n {
                // (x y) z = x (y z)
                let yz = self.get(y, z);
                if yz != EMPTY && !self.equate((v, z), (x, yz as usize)) {
                    return false;
                }
                // (z x) y = z (x y)
                let zx = self.get(z, x);
                if zx != EMPTY && !self.equate((zx as usize, y), (z, v)) {
                    return false;
                }
                // x = z b: (z b) y = z (b y)
                let b = self.pos[z * n + x];
                if b != EMPTY {
                    let by = self.get(b as usize, y);
                    if by != EMPTY && !self.equate((x, y), (z, by as usize)) {
                        return false;
                    }
                }
                // y = z c: x (z c) = (x z) c
                let c = self.pos[z * n + y];
                if c != EMPTY {
                    let xz = self.get(x, z);
                    if xz != EMPTY && !self.equate((x, y), (xz as usize, c as usize)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The canonical-labeling rules that can be judged on a partial table.
    fn plausible(&self) -> bool {
        let (n, o) = (self.n, self.pattern);
        if o < n {
            let mut seen = 1;
            for y in 1..n {
                let v = self.get(o, y);
                if v == EMPTY {
                    break;
                }
                seen = seen.max(y / o);
                let c = v as usize / o;
                if c > seen {
                    if c != seen + 1 || v as usize % o != 0 {
                        return false;
                    }
                    seen = c;
                }
            }
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        (2..n).all(|x| self.row_used[x] != full || self.row_order(x) <= o)
    }

    fn run(&mut self, cursor: usize) -> Result<()> {
        let n = self.n;
        let Some(cell) = (cursor..n * n).find(|&i| self.table[i] == EMPTY) else {
            self.found.push(CayleyTable {
                n: n as u32,
                table: self.table.clone(),
            });
            return Ok(());
        };
        let (x, y) = (cell / n, cell % n);
        let used = self.row_used[x] | self.col_used[y];
        for v in 0..n as u32 {
            if used & (1 << v) != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            let mark = self.trail.len();
            if self.assign(x, y, v) && self.propagate(mark) && self.plausible() {
                self.run(cell + 1)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }

    /// Order of `x` once row `x` is complete: `x^k = T[x][x^(k-1)]`.
    fn row_order(&self, x: usize) -> usize {
        let mut p = x as u32;
        let mut k = 1;
        while p != 0 && k <= self.pattern {
            p = self.get(x, p as usize);
            k += 1;
        }
        if p == 0 {
            k
        } else {
            k + 1
        }
    }
}

/// Search statistics alongside the class representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub order: u32,
    pub tables: Vec<CayleyTable>,
    pub nodes: u64,
    pub raw_tables: usize,
}

/// One table per isomorphism class of groups of order `n`, each the
/// lex-least table found for its class, sorted.
pub fn enumerate_groups(n: u32, budget: u64) -> Result<Vec<CayleyTable>> {
    Ok(enumerate_groups_with_stats(n, budget, DEFAULT_ORDER_CAP)?.tables)
}

pub fn enumerate_groups_with_stats(n: u32, budget: u64, order_cap: u32) -> Result<Enumeration> {
    if n == 0 {
        return Err(Error::InvalidParam("group order must be positive".into()));
    }
    if n > order_cap || n > 32 {
        return Err(Error::BudgetExceeded { budget });
    }
    if n == 1 {
        return Ok(Enumeration {
            order: 1,
            tables: vec![CayleyTable { n: 1, table: vec![0] }],
            nodes: 0,
            raw_tables: 1,
        });
    }
    let mut nodes = 0u64;
    let mut raw: Vec<CayleyTable> = Vec::new();
    for pattern in (2..=n).filter(|o| n % o == 0) {
        let mut search = Search::new(n as usize, pattern, budget - nodes);
        if !search.seed() {
            continue;
        }
        let outcome = search.run(0);
        nodes += search.nodes;
        outcome.map_err(|_| Error::BudgetExceeded { budget })?;
        raw.extend(search.found);
    }
    raw.sort_unstable();
    raw.dedup();
    let raw_tables = raw.len();
    let mut reps: Vec<CayleyTable> = Vec::new();
    for t in raw {
        if !reps.iter().any(|r| is_isomorphic(r, &t)) {
            reps.push(t);
        }
    }
    Ok(Enumeration {
        order: n,
        tables: reps,
        nodes,
        raw_tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> CayleyTable {
        CayleyTable::new(4, vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0]).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_groups(1, DEFAULT_BUDGET).unwrap().len(), 1);
        assert_eq!(enumerate_groups(4, DEFAULT_BUDGET).unwrap().len(), 2);
        let six = enumerate_groups(6, DEFAULT_BUDGET).unwrap();
        assert_eq!(six.len(), 2);
        assert_eq!(six.iter().filter(|t| t.is_abelian()).count(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        let c4 = CayleyTable::cyclic(4);
        assert!(is_isomorphic(&c4, &c4));
        assert!(!is_isomorphic(&c4, &klein()));
        assert_eq!(c4.order_profile(), vec![1, 2, 4, 4]);
        assert_eq!(klein().order_profile(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn relabeled_tables_are_isomorphic() {
        let c6 = CayleyTable::cyclic(6);
        // Relabel by x -> 5x (an automorphism-free permutation fixing 0).
        let perm = [0u32, 5, 4, 3, 2, 1];
        let mut inv = [0u32; 6];
        for (i, &p) in perm.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        let table = (0..6u32)
            .flat_map(|a| {
                let inv = inv;
                let c6 = c6.clone();
                (0..6u32).map(move |b| perm[c6.mul(inv[a as usize], inv[b as usize]) as usize])
            })
            .collect();
        let relabeled = CayleyTable::new(6, table).unwrap();
        assert!(is_isomorphic(&c6, &relabeled));
    }

    #[test]
    fn budget_is_reported() {
        assert_eq!(enumerate_groups(8, 10), Err(Error::BudgetExceeded { budget: 10 }));
        assert_eq!(enumerate_groups(17, DEFAULT_BUDGET), Err(Error::BudgetExceeded { budget: DEFAULT_BUDGET }));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(CayleyTable::new(2, vec![0, 1, 1, 1]).is_err());
        assert!(CayleyTable::new(3, vec![0, 1, 2, 1, 0, 2, 2, 2, 0]).is_err());
    }
}
