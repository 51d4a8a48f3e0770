//! Exact 64-bit number theory: primality, factorization, multiplicative
//! orders and the least prime power congruent to 1 modulo `n`.

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical prime factorization, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out. Panics on overflow, which cannot
    /// happen for a factorization produced by [`factor`].
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Euler's totient of the factored integer.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
    }
}

/// A prime power `q^m` with `q` prime and `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub q: u64,
    pub m: u32,
    pub value: u64,
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, n: u64) -> Result<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    Ok(t0.rem_euclid(n as i128) as u64)
}

// These witnesses make Miller-Rabin deterministic below 3.3 * 10^24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_LIMIT: u64 = 1 << 16;

/// Canonical factorization; `factor(1)` is empty.
///
/// Trial division handles every factor below 2^16; any larger composite
/// cofactor is split with Brent's variant of Pollard rho.
pub fn factor(n: u64) -> Factorization {
    assert!(n >= 1, "factor: n must be positive");
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d < TRIAL_LIMIT && d * d <= rest {
        while rest % d == 0 {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization { factors }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = 2u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

pub fn totient(n: u64) -> u64 {
    factor(n).totient()
}

/// Least `k >= 1` with `a^k = 1 (mod n)`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "multiplicative order needs modulus >= 2, got {n}"
        )));
    }
    if a.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let phi = factor(n).totient();
    let mut order = phi;
    for (r, _) in factor(phi).factors {
        while order % r == 0 && pow_mod(a, order / r, n) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

/// Returns `(q, m)` when `v = q^m` for a prime `q`.
pub fn prime_power_decompose(v: u64) -> Option<PrimePower> {
    if v < 2 {
        return None;
    }
    let max_m = 63 - v.leading_zeros();
    for m in 1..=max_m.max(1) {
        let q = v.nth_root(m);
        if q < 2 {
            break;
        }
        if q.checked_pow(m) == Some(v) && is_prime(q) {
            return Some(PrimePower { q, m, value: v });
        }
    }
    None
}

pub fn is_prime_power(v: u64) -> bool {
    prime_power_decompose(v).is_some()
}

/// The prime power `q^m` of least value with `n | q^m - 1`.
///
/// Every candidate value `1 + kn` is visited in increasing order, so the
/// first prime power met is minimal by value.
pub fn least_prime_power_1mod(n: u64) -> Result<PrimePower> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "least prime power 1 mod n needs n >= 2, got {n}"
        )));
    }
    let mut v = n + 1;
    loop {
        if let Some(pp) = prime_power_decompose(v) {
            return Ok(pp);
        }
        v = match v.checked_add(n) {
            Some(next) if next < 1 << 63 => next,
            _ => return Err(Error::SearchExhausted(n)),
        };
    }
}

/// Least prime `q` with `q = 1 (mod p)`.
pub fn least_prime_1mod(p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::InvalidParam(format!("expected a prime, got {p}")));
    }
    let mut v = p + 1;
    loop {
        if is_prime(v) {
            return Ok(v);
        }
        v = match v.checked_add(p) {
            Some(next) if next < 1 << 63 => next,
            _ => return Err(Error::SearchExhausted(p)),
        };
    }
}

/// Whether the least prime `q = 1 (mod p)` satisfies `q < p^2`.
pub fn kanold_holds(p: u64) -> Result<bool> {
    let q = least_prime_1mod(p)?;
    Ok(match p.checked_mul(p) {
        Some(sq) => q < sq,
        None => true,
    })
}

/// `|PSL_2(p)| = p(p^2 - 1) / gcd(2, p - 1)`.
pub fn psl2_order(p: u64) -> Result<u64> {
    let full = p
        .checked_mul(p)
        .and_then(|sq| sq.checked_sub(1))
        .and_then(|v| v.checked_mul(p))
        .ok_or(Error::Overflow("psl2 order"))?;
    Ok(full / 2u64.gcd(&(p - 1)))
}

/// True iff `gcd(m, phi(m)) = 1`, i.e. every group of order `m` is cyclic.
pub fn is_cyclic_number(m: u64) -> bool {
    m.gcd(&totient(m)) == 1
}

/// Primes `<= max` by a simple sieve.
pub fn primes_up_to(max: u64) -> Vec<u64> {
    if max < 2 {
        return Vec::new();
    }
    let n = max as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}
