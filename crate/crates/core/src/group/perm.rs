use num_integer::Integer;

use super::{Element, Realization};
use crate::error::{Error, Result};

/// Permutations of `0..degree`, stored as image tuples and composed left to
/// right: `(a * b)(x) = b(a(x))`.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Element>,
    label: String,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        Self::with_label(degree, gens, format!("permutation group of degree {degree}"))
    }

    pub fn with_label(degree: usize, gens: Vec<Vec<u32>>, label: String) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParam("permutation degree must be positive".into()));
        }
        for g in &gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x as usize >= degree) {
                return Err(Error::InvalidParam(format!("not a permutation of {degree} points")));
            }
            for &x in g {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidParam("repeated image in permutation".into()));
                }
            }
        }
        let mut gens: Vec<Element> = gens.into_iter().map(Element).collect();
        if gens.is_empty() {
            gens.push(Element((0..degree as u32).collect()));
        }
        Ok(PermGroup { degree, gens, label })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Disjoint-cycle notation on 0-based points; the identity prints as `()`.
pub fn cycle_notation(images: &[u32]) -> String {
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 0..images.len() {
        if seen[start] || images[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = images[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl Realization for PermGroup {
    fn identity(&self) -> Element {
        Element((0..self.degree as u32).collect())
    }

    fn multiply(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().map(|&x| b.0[x as usize]).collect())
    }

    fn inverse(&self, a: &Element) -> Element {
        let mut inv = vec![0u32; self.degree];
        for (i, &x) in a.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Element(inv)
    }

    fn generators(&self) -> Vec<Element> {
        self.gens.clone()
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }

    fn element_len(&self) -> usize {
        self.degree
    }

    fn element_order(&self, a: &Element) -> u64 {
        let mut seen = vec![false; self.degree];
        let mut order = 1u64;
        for start in 0..self.degree {
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = a.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                order = order.lcm(&len);
            }
        }
        order
    }

    fn format_element(&self, a: &Element) -> String {
        cycle_notation(&a.0)
    }
}

/// The cyclic group Z/n, elements `[k]` with `0 <= k < n`.
#[derive(Debug, Clone)]
pub struct CyclicGroup {
    n: u32,
}

impl CyclicGroup {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        CyclicGroup { n }
    }
}

impl Realization for CyclicGroup {
    fn identity(&self) -> Element {
        Element(vec![0])
    }

    fn multiply(&self, a: &Element, b: &Element) -> Element {
        Element(vec![((a.0[0] as u64 + b.0[0] as u64) % self.n as u64) as u32])
    }

    fn inverse(&self, a: &Element) -> Element {
        Element(vec![(self.n - a.0[0]) % self.n])
    }

    fn generators(&self) -> Vec<Element> {
        vec![Element(vec![1 % self.n])]
    }

    fn descriptor(&self) -> String {
        format!("C{}", self.n)
    }

    fn element_len(&self) -> usize {
        1
    }

    fn element_order(&self, a: &Element) -> u64 {
        self.n as u64 / (a.0[0] as u64).gcd(&(self.n as u64))
    }
}
