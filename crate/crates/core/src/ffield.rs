//! Arithmetic in F_{q^m} over the power basis `1, x, ..., x^{m-1}`, and the
//! F_q-matrices of multiplication maps (Singer-cycle elements of GL_m(q)).
//!
//! Polynomials are coefficient vectors in ascending degree. Candidate
//! polynomials and field elements are scanned in the order of the integer
//! `c_0 + c_1 q + ... + c_{m-1} q^{m-1}`.

use std::fmt;

use crate::arith::{factor, is_prime};
use crate::error::{Error, Result};

/// An element of F_{q^m}: exactly `m` residues mod `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    pub coeffs: Vec<u64>,
}

impl FFElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Square matrix over F_q. Column `j` is the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatFq {
    pub q: u64,
    pub m: usize,
    /// Row-major entries.
    pub data: Vec<u64>,
}

impl MatFq {
    pub fn identity(q: u64, m: usize) -> Self {
        let mut data = vec![0; m * m];
        for i in 0..m {
            data[i * m + i] = 1 % q;
        }
        MatFq { q, m, data }
    }

    pub fn from_rows(q: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidParam("matrix must be square and nonempty".into()));
        }
        Ok(MatFq {
            q,
            m,
            data: rows.iter().flatten().map(|&v| v % q).collect(),
        })
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.data[row * self.m + col]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &MatFq) -> MatFq {
        let m = self.m;
        let mut data = vec![0; m * m];
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..m {
                    data[i * m + j] = (data[i * m + j] + a * other.get(k, j)) % self.q;
                }
            }
        }
        MatFq { q: self.q, m, data }
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.m)
            .map(|i| (0..self.m).fold(0, |acc, j| (acc + self.get(i, j) * v[j]) % self.q))
            .collect()
    }

    pub fn determinant(&self) -> u64 {
        let q = self.q;
        let m = self.m;
        let mut a = self.data.clone();
        let mut det = 1u64;
        for col in 0..m {
            let Some(pivot) = (col..m).find(|&r| a[r * m + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..m {
                    a.swap(pivot * m + j, col * m + j);
                }
                det = (q - det) % q;
            }
            let pv = a[col * m + col];
            det = det * pv % q;
            let inv = pow_small(pv, q - 2, q);
            for r in col + 1..m {
                let factor = a[r * m + col] * inv % q;
                if factor == 0 {
                    continue;
                }
                for j in col..m {
                    a[r * m + j] = (a[r * m + j] + q * q - factor * a[col * m + j]) % q;
                }
            }
        }
        det
    }
}

fn pow_small(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

// Polynomial helpers over F_q, ascending coefficients, no trailing zeros.

fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = pow_small(b[db], q - 2, q);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % q;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + q * q - c * bc % q) % q;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q;
        }
    }
    poly_rem(&prod, modulus, q)
}

fn poly_gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, q);
        a = b;
        b = r;
    }
    a
}

/// `x^(q^k) mod f`, by `k` successive q-th powers.
fn frobenius_power_of_x(f: &[u64], q: u64, k: u32) -> Vec<u64> {
    let mut cur = poly_rem(&[0, 1], f, q);
    for _ in 0..k {
        cur = poly_pow_mod(&cur, q, f, q);
    }
    cur
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], q: u64) -> Vec<u64> {
    let mut acc = poly_rem(&[1], modulus, q);
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, q);
        }
        b = poly_mulmod(&b, &b, modulus, q);
        e >>= 1;
    }
    acc
}

fn sub_x(p: &[u64], q: u64) -> Vec<u64> {
    let mut out = p.to_vec();
    if out.len() < 2 {
        out.resize(2, 0);
    }
    out[1] = (out[1] + q - 1) % q;
    trim(out)
}

/// Rabin's test: a monic `f` of degree `m` is irreducible over F_q iff
/// `x^(q^m) = x (mod f)` and `gcd(x^(q^(m/r)) - x, f) = 1` for each prime `r | m`.
pub fn is_irreducible(f: &[u64], q: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let m = (f.len() - 1) as u32;
    if m == 1 {
        return true;
    }
    let full = frobenius_power_of_x(&f, q, m);
    if !sub_x(&full, q).is_empty() {
        return false;
    }
    for (r, _) in factor(m as u64).factors {
        let h = sub_x(&frobenius_power_of_x(&f, q, m / r as u32), q);
        let g = poly_gcd(&f, &h, q);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn digits(mut k: u64, q: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(k % q);
        k /= q;
    }
    out
}

/// The least monic irreducible polynomial of degree `m` over F_q, returned
/// with its leading coefficient (length `m + 1`).
pub fn find_irreducible(q: u64, m: u32) -> Result<Vec<u64>> {
    validate_field(q, m)?;
    let m = m as usize;
    let total = q.pow(m as u32);
    for k in 0..total {
        let mut f = digits(k, q, m);
        f.push(1);
        if is_irreducible(&f, q) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn validate_field(q: u64, m: u32) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::InvalidParam(format!("field characteristic {q} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidParam("field degree must be at least 1".into()));
    }
    match q.checked_pow(m) {
        Some(v) if v <= 1 << 31 => Ok(()),
        _ => Err(Error::Overflow("field size q^m")),
    }
}

/// The field F_{q^m} with a fixed modulus and primitive element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    pub q: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
    pub primitive: FFElem,
}

impl FieldCtx {
    pub fn new(q: u64, m: u32) -> Result<Self> {
        let modulus = find_irreducible(q, m)?;
        let mut ctx = FieldCtx {
            q,
            m,
            modulus,
            primitive: FFElem { coeffs: vec![] },
        };
        ctx.primitive = ctx.find_primitive();
        Ok(ctx)
    }

    pub fn size(&self) -> u64 {
        self.q.pow(self.m)
    }

    pub fn zero(&self) -> FFElem {
        FFElem { coeffs: vec![0; self.m as usize] }
    }

    pub fn one(&self) -> FFElem {
        self.basis(0)
    }

    /// The basis vector `x^j`.
    pub fn basis(&self, j: usize) -> FFElem {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[j] = 1 % self.q;
        FFElem { coeffs }
    }

    /// Element with coordinates given by the base-`q` digits of `k`.
    pub fn from_index(&self, k: u64) -> FFElem {
        FFElem { coeffs: digits(k, self.q, self.m as usize) }
    }

    pub fn to_index(&self, a: &FFElem) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.q + c)
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FFElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % self.q)
                .collect(),
        }
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.pad(poly_mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.q))
    }

    pub fn pow(&self, a: &FFElem, e: u64) -> FFElem {
        self.pad(poly_pow_mod(&a.coeffs, e, &self.modulus, self.q))
    }

    fn pad(&self, mut p: Vec<u64>) -> FFElem {
        p.resize(self.m as usize, 0);
        FFElem { coeffs: p }
    }

    /// Multiplicative order of a nonzero element, via the prime factors of
    /// `q^m - 1`.
    pub fn order_of(&self, a: &FFElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = self.size() - 1;
        let one = self.one();
        let mut order = group;
        for (r, _) in factor(group).factors {
            while order % r == 0 && self.pow(a, order / r) == one {
                order /= r;
            }
        }
        Ok(order)
    }

    fn find_primitive(&self) -> FFElem {
        let group = self.size() - 1;
        (1..self.size())
            .map(|k| self.from_index(k))
            .find(|a| self.order_of(a).ok() == Some(group))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn primitive_element(&self) -> FFElem {
        self.primitive.clone()
    }

    /// `primitive^((q^m - 1)/d)`, an element of multiplicative order exactly `d`.
    pub fn element_of_order(&self, d: u64) -> Result<FFElem> {
        let group = self.size() - 1;
        if d == 0 || group % d != 0 {
            return Err(Error::OrderNotDividing { d, group_order: group });
        }
        Ok(self.pow(&self.primitive, group / d))
    }

    /// Matrix of `v -> a v` on the power basis.
    pub fn mult_matrix(&self, a: &FFElem) -> Result<MatFq> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let m = self.m as usize;
        let mut data = vec![0; m * m];
        for j in 0..m {
            let col = self.mul(a, &self.basis(j));
            for i in 0..m {
                data[i * m + j] = col.coeffs[i];
            }
        }
        Ok(MatFq { q: self.q, m, data })
    }
}
