//! Dixon's modular method, restricted to degrees: split F_l^r into common
//! eigenspaces of the class matrices, read off central characters, and
//! recover each degree from `sum_i w_i w_i' / |C_i| = |G| / d^2`.

use num_integer::Roots;

use super::classes::{all_class_matrices, ClassData, ClassMatrix};
use super::modlin::{self, Matrix};
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Prime modulus and the central-character vectors found modulo it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DixonContext {
    pub modulus: u64,
    /// One vector per irreducible character, normalized so entry 0 is 1.
    pub omega_vectors: Vec<Vec<u64>>,
}

/// Least prime `l = 1 (mod exponent)` with `l > order`.
pub fn dixon_modulus(exponent: u64, order: u64) -> u64 {
    let mut l = (order / exponent) * exponent + 1;
    if l <= order {
        l += exponent;
    }
    while !is_prime(l) {
        l += exponent;
    }
    l
}

/// Restriction of `M` to the invariant subspace spanned by `basis` (RREF
/// rows with the given pivot columns), in coordinates of that basis.
fn restrict(m: &Matrix, basis: &[Vec<u64>], pivots: &[usize], l: u64) -> Matrix {
    let d = basis.len();
    let images: Vec<Vec<u64>> = basis.iter().map(|b| modlin::mat_vec(m, b, l)).collect();
    (0..d)
        .map(|t| (0..d).map(|s| images[s][pivots[t]]).collect())
        .collect()
}

struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(mut basis: Vec<Vec<u64>>, l: u64) -> Self {
        let pivots = modlin::rref(&mut basis, l);
        Subspace { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn split(space: Subspace, m: &Matrix, l: u64, out: &mut Vec<Subspace>) -> Result<()> {
    let d = space.dim();
    let c = restrict(m, &space.basis, &space.pivots, l);
    if modlin::is_scalar(&c) {
        out.push(space);
        return Ok(());
    }
    let roots = modlin::roots_by_evaluation(&modlin::charpoly(&c, l), l);
    let mut found = 0;
    for lambda in roots {
        let shifted: Matrix = (0..d)
            .map(|t| {
                (0..d)
                    .map(|s| if s == t { (c[t][s] + l - lambda) % l } else { c[t][s] })
                    .collect()
            })
            .collect();
        let vectors: Vec<Vec<u64>> = modlin::kernel(&shifted, l)
            .into_iter()
            .map(|coords| {
                let mut v = vec![0u64; space.basis[0].len()];
                for (cs, b) in coords.iter().zip(&space.basis) {
                    for (vi, &bi) in v.iter_mut().zip(b) {
                        *vi = (*vi + cs * bi) % l;
                    }
                }
                v
            })
            .collect();
        found += vectors.len();
        out.push(Subspace::new(vectors, l));
    }
    if found != d {
        return Err(Error::Splitting(format!(
            "eigenspaces of dimension {found} found in a space of dimension {d}"
        )));
    }
    Ok(())
}

/// Central characters modulo `l`, one per class.
pub fn central_characters(
    cd: &ClassData,
    matrices: &[ClassMatrix],
    l: u64,
) -> Result<DixonContext> {
    let r = cd.len();
    let reduced: Vec<Matrix> = matrices
        .iter()
        .map(|cm| cm.a.iter().map(|row| row.iter().map(|&v| v % l).collect()).collect())
        .collect();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![Subspace::new(identity, l)];
    for m in reduced.iter().skip(1) {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(r);
        for space in spaces {
            if space.dim() == 1 {
                next.push(space);
            } else {
                split(space, m, l, &mut next)?;
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.dim() != 1) {
        return Err(Error::Splitting(format!(
            "a common eigenspace of dimension {} survived all class matrices",
            s.dim()
        )));
    }
    let mut omega_vectors = Vec::with_capacity(r);
    for s in spaces {
        let v = &s.basis[0];
        if v[0] == 0 {
            return Err(Error::Splitting("eigenvector vanishes on the identity class".into()));
        }
        let scale = modlin::inv(v[0], l);
        omega_vectors.push(v.iter().map(|&x| x * scale % l).collect());
    }
    Ok(DixonContext {
        modulus: l,
        omega_vectors,
    })
}

/// Degree of the irreducible whose central character is `omega`.
pub fn degree_from_omega(cd: &ClassData, omega: &[u64], l: u64) -> Result<u64> {
    let order = cd.group_order();
    let t = (0..cd.len()).fold(0u64, |acc, i| {
        let term = omega[i] * omega[cd.inverse_class[i]] % l * modlin::inv(cd.sizes[i] % l, l) % l;
        (acc + term) % l
    });
    if t == 0 {
        return Err(Error::NotPerfectSquare(0));
    }
    let d2 = order % l * modlin::inv(t, l) % l;
    if d2 == 0 || d2 > order {
        return Err(Error::NotPerfectSquare(d2));
    }
    let d = d2.sqrt();
    if d * d != d2 {
        return Err(Error::NotPerfectSquare(d2));
    }
    Ok(d)
}

pub(crate) fn compute_degrees(
    g: &crate::group::FiniteGroup,
    cd: &ClassData,
    exponent: u64,
) -> Result<(DixonContext, Vec<u64>)> {
    let matrices = all_class_matrices(g, cd);
    let l = dixon_modulus(exponent, cd.group_order());
    let ctx = central_characters(cd, &matrices, l)?;
    let degrees = ctx
        .omega_vectors
        .iter()
        .map(|w| degree_from_omega(cd, w, l))
        .collect::<Result<Vec<u64>>>()?;
    Ok((ctx, degrees))
}
