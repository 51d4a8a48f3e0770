//! The group-spec grammar.
//!
//! ```text
//! spec    := "cyclic:" NAT | "frob:" NAT "^" NAT ":" NAT | "psl2:" NAT
//!          | "xsp:" NAT ":" NAT | "prod(" spec "," spec ")" | "named:" NAME
//!          | "affine:" NAT "^" NAT ":" MATLIST
//! MATLIST := matrices in row-major order, entries separated by ",",
//!            matrices by ";"
//! ```
//!
//! Each affine matrix has exactly `m * m` entries, so a `,` following a
//! complete matrix ends the list; this keeps `prod(affine:...,spec)`
//! unambiguous.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, psl2_order};
use crate::error::{Error, Result};
use crate::ffield::MatFq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedGroup {
    S3,
    A4,
    C5C4,
    C11C5,
    C7C6,
    E8C7,
    G72D,
    G72Q,
    A4A4,
}

impl NamedGroup {
    pub const ALL: [NamedGroup; 9] = [
        NamedGroup::S3,
        NamedGroup::A4,
        NamedGroup::C5C4,
        NamedGroup::C11C5,
        NamedGroup::C7C6,
        NamedGroup::E8C7,
        NamedGroup::G72D,
        NamedGroup::G72Q,
        NamedGroup::A4A4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedGroup::S3 => "S3",
            NamedGroup::A4 => "A4",
            NamedGroup::C5C4 => "C5C4",
            NamedGroup::C11C5 => "C11C5",
            NamedGroup::C7C6 => "C7C6",
            NamedGroup::E8C7 => "E8C7",
            NamedGroup::G72D => "G72D",
            NamedGroup::G72Q => "G72Q",
            NamedGroup::A4A4 => "A4A4",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|n| n.name() == s)
    }

    /// The construction this name stands for.
    pub fn definition(self) -> GroupSpec {
        let text = match self {
            NamedGroup::S3 => "affine:3^1:2",
            NamedGroup::A4 => "frob:2^2:3",
            NamedGroup::C5C4 => "affine:5^1:2",
            NamedGroup::C11C5 => "affine:11^1:4",
            NamedGroup::C7C6 => "affine:7^1:3",
            NamedGroup::E8C7 => "frob:2^3:7",
            NamedGroup::G72D => "affine:3^2:0,2,1,0;1,0,0,2",
            NamedGroup::G72Q => "affine:3^2:0,2,1,0;1,1,1,2",
            NamedGroup::A4A4 => "prod(named:A4,named:A4)",
        };
        text.parse().expect("built-in definitions parse")
    }

    /// `(order, degree)` recorded for the witness.
    pub fn claim(self) -> (u64, u64) {
        match self {
            NamedGroup::S3 => (6, 2),
            NamedGroup::A4 => (12, 3),
            NamedGroup::C5C4 => (20, 4),
            NamedGroup::C11C5 => (55, 5),
            NamedGroup::C7C6 => (42, 6),
            NamedGroup::E8C7 => (56, 7),
            NamedGroup::G72D => (72, 8),
            NamedGroup::G72Q => (72, 8),
            NamedGroup::A4A4 => (144, 9),
        }
    }
}

/// A parsed group construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    Affine { q: u64, m: u32, mats: Vec<Vec<u64>> },
    Frob { q: u64, m: u32, pk: u64 },
    Psl2(u64),
    Xsp { p: u64, n: u32 },
    Prod(Box<GroupSpec>, Box<GroupSpec>),
    Named(NamedGroup),
}

impl GroupSpec {
    pub fn prod(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Prod(Box::new(a), Box::new(b))
    }

    /// Group order implied by the parameters, when it is known without
    /// enumeration (`None` for affine specs).
    pub fn predicted_order(&self) -> Result<Option<u64>> {
        Ok(match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Affine { .. } => None,
            GroupSpec::Frob { q, m, pk } => Some(
                q.checked_pow(*m)
                    .and_then(|v| v.checked_mul(*pk))
                    .ok_or(Error::Overflow("Frobenius group order"))?,
            ),
            GroupSpec::Psl2(p) => Some(psl2_order(*p)?),
            GroupSpec::Xsp { p, n } => Some(
                p.checked_pow(2 * n + 1)
                    .ok_or(Error::Overflow("extraspecial group order"))?,
            ),
            GroupSpec::Prod(a, b) => match (a.predicted_order()?, b.predicted_order()?) {
                (Some(x), Some(y)) => Some(x.checked_mul(y).ok_or(Error::Overflow("product order"))?),
                _ => None,
            },
            GroupSpec::Named(n) => Some(n.claim().0),
        })
    }

    /// Checks the per-variant parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidParam(msg));
        match self {
            GroupSpec::Cyclic(n) => {
                if *n == 0 || *n > u32::MAX as u64 {
                    return invalid(format!("cyclic order {n} out of range"));
                }
            }
            GroupSpec::Frob { q, m, pk } => {
                check_field(*q, *m)?;
                let qm1 = q.pow(*m) - 1;
                if *pk < 2 || qm1 % pk != 0 {
                    return invalid(format!("frob needs 2 <= pk and pk | q^m - 1 = {qm1}, got pk = {pk}"));
                }
            }
            GroupSpec::Psl2(p) => {
                if !is_prime(*p) {
                    return invalid(format!("psl2 needs a prime, got {p}"));
                }
                psl2_order(*p)?;
            }
            GroupSpec::Xsp { p, n } => {
                if !is_prime(*p) || *n == 0 {
                    return invalid(format!("xsp needs p prime and n >= 1, got ({p}, {n})"));
                }
                self.predicted_order()?;
            }
            GroupSpec::Affine { q, m, mats } => {
                check_field(*q, *m)?;
                if mats.is_empty() {
                    return invalid("affine needs at least one matrix".into());
                }
                let side = *m as usize;
                for mat in mats {
                    if mat.len() != side * side {
                        return invalid(format!("affine matrix needs {} entries", side * side));
                    }
                    if mat.iter().any(|&v| v >= *q) {
                        return invalid(format!("matrix entries must be residues mod {q}"));
                    }
                    let rows: Vec<Vec<u64>> = mat.chunks(side).map(|r| r.to_vec()).collect();
                    if MatFq::from_rows(*q, &rows)?.determinant() == 0 {
                        return invalid("affine matrix is singular".into());
                    }
                }
            }
            GroupSpec::Prod(a, b) => {
                a.validate()?;
                b.validate()?;
                self.predicted_order()?;
            }
            GroupSpec::Named(_) => {}
        }
        Ok(())
    }
}

fn check_field(q: u64, m: u32) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::InvalidParam(format!("{q} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidParam("exponent m must be at least 1".into()));
    }
    match q.checked_pow(m) {
        Some(v) if v <= 1 << 31 => Ok(()),
        _ => Err(Error::InvalidParam(format!("field size {q}^{m} too large"))),
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Affine { q, m, mats } => {
                let list: Vec<String> = mats
                    .iter()
                    .map(|mat| mat.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "affine:{q}^{m}:{}", list.join(";"))
            }
            GroupSpec::Frob { q, m, pk } => write!(f, "frob:{q}^{m}:{pk}"),
            GroupSpec::Psl2(p) => write!(f, "psl2:{p}"),
            GroupSpec::Xsp { p, n } => write!(f, "xsp:{p}:{n}"),
            GroupSpec::Prod(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::Named(n) => write!(f, "named:{}", n.name()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses and validates a spec.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let spec = p.spec()?;
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    spec.validate()?;
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "number out of range".into(),
        })
    }

    fn small(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.nat()?;
        u32::try_from(v).map_err(|_| Error::Syntax {
            offset: start,
            message: "exponent out of range".into(),
        })
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        if self.eat("cyclic:") {
            Ok(GroupSpec::Cyclic(self.nat()?))
        } else if self.eat("frob:") {
            let q = self.nat()?;
            self.expect("^")?;
            let m = self.small()?;
            self.expect(":")?;
            let pk = self.nat()?;
            Ok(GroupSpec::Frob { q, m, pk })
        } else if self.eat("psl2:") {
            Ok(GroupSpec::Psl2(self.nat()?))
        } else if self.eat("xsp:") {
            let p = self.nat()?;
            self.expect(":")?;
            Ok(GroupSpec::Xsp { p, n: self.small()? })
        } else if self.eat("prod(") {
            let a = self.spec()?;
            self.expect(",")?;
            let b = self.spec()?;
            self.expect(")")?;
            Ok(GroupSpec::prod(a, b))
        } else if self.eat("named:") {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
            NamedGroup::from_name(name).map(GroupSpec::Named).ok_or(Error::Syntax {
                offset: start,
                message: format!("unknown group name '{name}'"),
            })
        } else if self.eat("affine:") {
            let q = self.nat()?;
            self.expect("^")?;
            let m = self.small()?;
            self.expect(":")?;
            let entries = (m as usize)
                .checked_mul(m as usize)
                .filter(|&e| e <= 1024)
                .ok_or_else(|| self.error("affine dimension too large"))?;
            let mut mats = Vec::new();
            loop {
                let mut mat = Vec::with_capacity(entries);
                for k in 0..entries {
                    if k > 0 {
                        self.expect(",")?;
                    }
                    mat.push(self.nat()?);
                }
                mats.push(mat);
                if !self.eat(";") {
                    break;
                }
            }
            Ok(GroupSpec::Affine { q, m, mats })
        } else {
            Err(self.error("expected one of cyclic:, frob:, psl2:, xsp:, prod(, named:, affine:"))
        }
    }
}
