use crate::arith::{is_prime, multiplicative_order, psl2_order};
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, MatFq};
use crate::group::{CyclicGroup, Element, FiniteGroup, PermGroup, Realization};

use super::spec::GroupSpec;

/// Builds the group a spec describes, refusing anything whose order (or
/// permutation degree) exceeds `cap`.
pub fn realize_with_cap(spec: &GroupSpec, cap: u64) -> Result<FiniteGroup> {
    spec.validate()?;
    if let Some(order) = spec.predicted_order()? {
        if order > cap {
            return Err(Error::CapExceeded { cap });
        }
    }
    build(spec, cap)
}

pub fn realize(spec: &GroupSpec) -> Result<FiniteGroup> {
    realize_with_cap(spec, crate::group::DEFAULT_ELEMENT_CAP)
}

fn build(spec: &GroupSpec, cap: u64) -> Result<FiniteGroup> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => FiniteGroup::new(CyclicGroup::new(*n as u32)),
        GroupSpec::Frob { q, m, pk } => {
            let field = FieldCtx::new(*q, *m)?;
            let multiplier = field.mult_matrix(&field.element_of_order(*pk)?)?;
            FiniteGroup::new(affine_group(*q, *m, &[multiplier], spec.to_string(), cap)?)
        }
        GroupSpec::Affine { q, m, mats } => {
            let side = *m as usize;
            let mats = mats
                .iter()
                .map(|mat| {
                    let rows: Vec<Vec<u64>> = mat.chunks(side).map(|r| r.to_vec()).collect();
                    MatFq::from_rows(*q, &rows)
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::new(affine_group(*q, *m, &mats, spec.to_string(), cap)?)
        }
        GroupSpec::Psl2(p) => FiniteGroup::new(psl2_group(*p)?),
        GroupSpec::Xsp { p, n } => FiniteGroup::new(XspGroup::new(*p, *n)?),
        GroupSpec::Prod(a, b) => build(a, cap)?.direct_product(&build(b, cap)?),
        GroupSpec::Named(n) => build(&n.definition(), cap)?,
    })
}

/// The affine group generated by all translations of F_q^m and the given
/// matrices, as permutations of the `q^m` vectors. Vector `v` is point
/// `v_0 + v_1 q + ... + v_{m-1} q^{m-1}`.
pub fn affine_group(q: u64, m: u32, mats: &[MatFq], label: String, cap: u64) -> Result<PermGroup> {
    let size = q.checked_pow(m).ok_or(Error::Overflow("q^m"))?;
    if size > cap {
        return Err(Error::CapExceeded { cap });
    }
    let points: Vec<Vec<u64>> = (0..size)
        .map(|mut k| {
            (0..m)
                .map(|_| {
                    let c = k % q;
                    k /= q;
                    c
                })
                .collect()
        })
        .collect();
    let encode = |v: &[u64]| v.iter().rev().fold(0u64, |acc, &c| acc * q + c) as u32;
    let mut gens = Vec::new();
    for j in 0..m as usize {
        gens.push(
            points
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    w[j] = (w[j] + 1) % q;
                    encode(&w)
                })
                .collect(),
        );
    }
    for mat in mats {
        gens.push(points.iter().map(|v| encode(&mat.apply(v))).collect());
    }
    PermGroup::with_label(size as usize, gens, label)
}

fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| multiplicative_order(g, p).ok() == Some(p - 1))
        .expect("primes have primitive roots")
}

/// PSL_2(p) acting on the projective line `{0, ..., p-1, inf}`, with `inf`
/// as point `p`, generated by `z -> z+1`, `z -> -1/z` and `z -> u^2 z`.
pub fn psl2_group(p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidParam(format!("psl2 needs a prime, got {p}")));
    }
    let inf = p as u32;
    let u = least_primitive_root(p);
    let u2 = u * u % p;
    let translate: Vec<u32> = (0..=p)
        .map(|z| if z == p { inf } else { ((z + 1) % p) as u32 })
        .collect();
    let invert: Vec<u32> = (0..=p)
        .map(|z| match z {
            0 => inf,
            z if z == p => 0,
            z => {
                let zi = crate::arith::inv_mod(z, p).expect("nonzero mod p");
                ((p - zi) % p) as u32
            }
        })
        .collect();
    let scale: Vec<u32> = (0..=p)
        .map(|z| if z == p { inf } else { (z * u2 % p) as u32 })
        .collect();
    psl2_order(p)?;
    PermGroup::with_label(p as usize + 1, vec![translate, invert, scale], format!("PSL2({p})"))
}

/// The exponent-p extraspecial group of order `p^(2n+1)` as triples
/// `(a, b, c)` in `F_p^n x F_p^n x F_p` with
/// `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a.b')`.
#[derive(Debug, Clone)]
pub struct XspGroup {
    p: u32,
    n: usize,
}

impl XspGroup {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) || n == 0 || p > u32::MAX as u64 {
            return Err(Error::InvalidParam(format!("xsp needs p prime and n >= 1, got ({p}, {n})")));
        }
        Ok(XspGroup { p: p as u32, n: n as usize })
    }

    fn dot(&self, a: &[u32], b: &[u32]) -> u64 {
        a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % self.p as u64
    }
}

impl Realization for XspGroup {
    fn identity(&self) -> Element {
        Element(vec![0; 2 * self.n + 1])
    }

    fn multiply(&self, x: &Element, y: &Element) -> Element {
        let (n, p) = (self.n, self.p as u64);
        let mut out: Vec<u32> = x.0.iter().zip(&y.0).map(|(&s, &t)| ((s as u64 + t as u64) % p) as u32).collect();
        let cross = self.dot(&x.0[..n], &y.0[n..2 * n]);
        out[2 * n] = ((out[2 * n] as u64 + cross) % p) as u32;
        Element(out)
    }

    fn inverse(&self, x: &Element) -> Element {
        let (n, p) = (self.n, self.p as u64);
        let mut out: Vec<u32> = x.0.iter().map(|&s| ((p - s as u64) % p) as u32).collect();
        // (-a, -b, a.b - c)
        let ab = self.dot(&x.0[..n], &x.0[n..2 * n]);
        out[2 * n] = ((ab + p - x.0[2 * n] as u64) % p) as u32;
        Element(out)
    }

    fn generators(&self) -> Vec<Element> {
        (0..2 * self.n)
            .map(|i| {
                let mut v = vec![0; 2 * self.n + 1];
                v[i] = 1;
                Element(v)
            })
            .collect()
    }

    fn descriptor(&self) -> String {
        format!("xsp:{}:{}", self.p, self.n)
    }

    fn element_len(&self) -> usize {
        2 * self.n + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_spec;

    fn order_of(text: &str) -> u64 {
        realize(&parse_spec(text).unwrap()).unwrap().order(50_000).unwrap()
    }

    #[test]
    fn realized_orders() {
        assert_eq!(order_of("frob:5^1:4"), 20);
        assert_eq!(order_of("psl2:5"), 60);
        assert_eq!(order_of("psl2:2"), 6);
        assert_eq!(order_of("psl2:3"), 12);
        assert_eq!(order_of("psl2:19"), 3420);
        assert_eq!(order_of("named:S3"), 6);
        assert_eq!(order_of("cyclic:1"), 1);
        assert_eq!(order_of("xsp:3:2"), 243);
    }

    #[test]
    fn xsp_2_1_is_dihedral() {
        let g = realize(&parse_spec("xsp:2:1").unwrap()).unwrap();
        assert_eq!(g.order(100), Ok(8));
        assert_eq!(g.exponent(100), Ok(4));
        let x = Element(vec![1, 1, 0]);
        assert_eq!(g.multiply(&x, &x), Element(vec![0, 0, 1]));
        let orders: Vec<u64> = g
            .elements(100)
            .unwrap()
            .elements
            .iter()
            .map(|e| g.realization().element_order(e))
            .collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
    }

    #[test]
    fn xsp_inverse() {
        let g = XspGroup::new(5, 2).unwrap();
        let x = Element(vec![1, 2, 3, 4, 0]);
        assert_eq!(g.multiply(&x, &g.inverse(&x)), g.identity());
        assert_eq!(g.multiply(&g.inverse(&x), &x), g.identity());
    }

    #[test]
    fn cap_rejects_before_building() {
        let spec = parse_spec("xsp:5:2").unwrap();
        assert_eq!(realize_with_cap(&spec, 1000).err(), Some(Error::CapExceeded { cap: 1000 }));
        let big = parse_spec("xsp:11:2").unwrap();
        assert!(matches!(realize(&big), Err(Error::CapExceeded { .. })));
    }
}
