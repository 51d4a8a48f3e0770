//! Irreducible character degrees: conjugacy classes, class matrices, the
//! modular eigenspace method, and closed-form degree formulas used as
//! independent cross-checks.

mod classes;
mod dixon;
pub mod modlin;

pub use classes::{all_class_matrices, class_matrix, conjugacy_classes, ClassData, ClassMatrix};
pub use dixon::{central_characters, degree_from_omega, dixon_modulus, DixonContext};

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const DEFAULT_CLASS_CAP: usize = 500;

/// Sorted multiset of irreducible degrees together with the group order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeMultiset {
    pub degrees: Vec<u64>,
    pub group_order: u64,
}

impl DegreeMultiset {
    pub fn new(mut degrees: Vec<u64>, group_order: u64) -> Self {
        degrees.sort_unstable();
        DegreeMultiset { degrees, group_order }
    }

    pub fn contains(&self, d: u64) -> bool {
        self.degrees.binary_search(&d).is_ok()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.degrees.iter().map(|d| d * d).sum()
    }

    pub fn linear_count(&self) -> usize {
        self.degrees.iter().take_while(|&&d| d == 1).count()
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `(degree, multiplicity)` pairs in ascending degree.
    pub fn grouped(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &d in &self.degrees {
            match out.last_mut() {
                Some((e, c)) if *e == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    /// Compact form such as `1^9 3^6 9`.
    pub fn compact(&self) -> String {
        self.grouped()
            .iter()
            .map(|&(d, c)| if c == 1 { d.to_string() } else { format!("{d}^{c}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Everything the modular method produces for one group.
#[derive(Debug, Clone)]
pub struct CharacterAnalysis {
    pub classes: ClassData,
    pub context: DixonContext,
    pub degrees: DegreeMultiset,
}

pub fn analyze(g: &FiniteGroup, cap: u64, class_cap: usize) -> Result<CharacterAnalysis> {
    let classes = conjugacy_classes(g, cap)?;
    if classes.len() > class_cap {
        return Err(Error::CapExceeded { cap: class_cap as u64 });
    }
    let exponent = g.exponent(cap)?;
    let (context, degrees) = dixon::compute_degrees(g, &classes, exponent)?;
    let degrees = DegreeMultiset::new(degrees, classes.group_order());
    let sum = degrees.sum_of_squares();
    if sum != degrees.group_order {
        return Err(Error::SumOfSquaresMismatch {
            sum,
            order: degrees.group_order,
        });
    }
    Ok(CharacterAnalysis {
        classes,
        context,
        degrees,
    })
}

/// Degree multiset of `g` by the modular method, with default caps.
pub fn character_degrees(g: &FiniteGroup) -> Result<DegreeMultiset> {
    character_degrees_with_caps(g, crate::group::DEFAULT_ELEMENT_CAP, DEFAULT_CLASS_CAP)
}

pub fn character_degrees_with_caps(
    g: &FiniteGroup,
    cap: u64,
    class_cap: usize,
) -> Result<DegreeMultiset> {
    Ok(analyze(g, cap, class_cap)?.degrees)
}

/// Degrees of `(C_q)^m ⋊ C_pk` with the complement acting by field
/// multiplication: `pk` linear characters and `(q^m - 1)/pk` of degree `pk`.
pub fn frobenius_degrees_closed_form(q: u64, m: u32, pk: u64) -> Result<DegreeMultiset> {
    let qm = q.checked_pow(m).ok_or(Error::Overflow("q^m"))?;
    if pk < 2 || (qm - 1) % pk != 0 {
        return Err(Error::OrderNotDividing {
            d: pk,
            group_order: qm - 1,
        });
    }
    let order = qm.checked_mul(pk).ok_or(Error::Overflow("Frobenius group order"))?;
    let mut degrees = vec![1u64; pk as usize];
    degrees.extend(std::iter::repeat(pk).take(((qm - 1) / pk) as usize));
    Ok(DegreeMultiset::new(degrees, order))
}

/// Degrees of an extraspecial group of order `p^(2n+1)`: `p^(2n)` linear
/// characters and `p - 1` of degree `p^n`.
pub fn extraspecial_degrees_closed_form(p: u64, n: u32) -> Result<DegreeMultiset> {
    if !is_prime(p) || n == 0 {
        return Err(Error::InvalidParam(format!("extraspecial needs p prime and n >= 1, got ({p}, {n})")));
    }
    let linear = p.checked_pow(2 * n).ok_or(Error::Overflow("p^(2n)"))?;
    let order = linear.checked_mul(p).ok_or(Error::Overflow("p^(2n+1)"))?;
    let top = p.pow(n);
    let mut degrees = vec![1u64; linear as usize];
    degrees.extend(std::iter::repeat(top).take((p - 1) as usize));
    Ok(DegreeMultiset::new(degrees, order))
}

/// Degrees of a direct product: all pairwise products.
pub fn product_degrees(d1: &DegreeMultiset, d2: &DegreeMultiset) -> DegreeMultiset {
    let degrees = d1
        .degrees
        .iter()
        .flat_map(|a| d2.degrees.iter().map(move |b| a * b))
        .collect();
    DegreeMultiset::new(degrees, d1.group_order * d2.group_order)
}
