//! Exact commutative rings: the integers, residue rings `Z/n`, dual numbers
//! `R[eps]/(eps^2)` and sparse multivariate polynomial rings over any of these.
//!
//! A [`Ring`] is a lightweight descriptor; ring elements are plain payloads
//! ([`Elem`]) that only make sense together with the ring that produced them.
//! Every payload is kept in canonical form (residues reduced, zero polynomial
//! terms dropped), so structural equality is ring equality.

mod descriptor;
pub mod ideal;
pub mod lattice;
mod parse;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use descriptor::RingDescriptor;
pub use ideal::Ideal;
pub use poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Modular(u64),
    Polynomial(Arc<PolynomialRing>),
    Dual(Arc<Ring>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialRing {
    pub base: Ring,
    pub vars: Vec<String>,
}

/// Canonical payload of a ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Residue(u64),
    Poly(Poly),
    /// `a + b*eps`
    Dual(Box<(Elem, Elem)>),
}

/// Shape of a ring viewed as a finitely generated abelian group: `Z^rank`,
/// or `(Z/modulus)^rank` when a modulus is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZModuleShape {
    pub rank: usize,
    pub modulus: Option<i128>,
}

impl Ring {
    pub fn integers() -> Ring {
        Ring::Integers
    }

    pub fn modular(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::PreconditionViolation(format!("modulus must be >= 2, got {n}")));
        }
        if n > (1u64 << 62) {
            return Err(Error::PreconditionViolation(format!("modulus {n} is too large")));
        }
        Ok(Ring::Modular(n))
    }

    pub fn polynomial<S: Into<String>>(base: Ring, vars: impl IntoIterator<Item = S>) -> Ring {
        Ring::Polynomial(Arc::new(PolynomialRing {
            base,
            vars: vars.into_iter().map(Into::into).collect(),
        }))
    }

    pub fn dual(base: Ring) -> Ring {
        Ring::Dual(Arc::new(base))
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Integers => Elem::Int(BigInt::zero()),
            Ring::Modular(_) => Elem::Residue(0),
            Ring::Polynomial(_) => Elem::Poly(Poly::zero()),
            Ring::Dual(b) => Elem::Dual(Box::new((b.zero(), b.zero()))),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> Elem {
        self.from_bigint(&BigInt::from(x))
    }

    pub fn from_bigint(&self, x: &BigInt) -> Elem {
        match self {
            Ring::Integers => Elem::Int(x.clone()),
            Ring::Modular(n) => {
                let r = x.mod_floor(&BigInt::from(*n));
                Elem::Residue(r.to_u64().expect("residue fits in u64"))
            }
            Ring::Polynomial(p) => Elem::Poly(Poly::constant(&p.base, p.vars.len(), p.base.from_bigint(x))),
            Ring::Dual(b) => Elem::Dual(Box::new((b.from_bigint(x), b.zero()))),
        }
    }

    /// The base ring of a polynomial or dual-number ring.
    pub fn base(&self) -> Option<&Ring> {
        match self {
            Ring::Polynomial(p) => Some(&p.base),
            Ring::Dual(b) => Some(b),
            _ => None,
        }
    }

    /// Image of a base-ring element under the canonical inclusion.
    pub fn embed_base(&self, x: &Elem) -> Elem {
        match self {
            Ring::Polynomial(p) => Elem::Poly(Poly::constant(&p.base, p.vars.len(), x.clone())),
            Ring::Dual(b) => Elem::Dual(Box::new((x.clone(), b.zero()))),
            _ => x.clone(),
        }
    }

    /// The dual unit `eps` of a dual-number ring.
    pub fn eps(&self) -> Option<Elem> {
        match self {
            Ring::Dual(b) => Some(Elem::Dual(Box::new((b.zero(), b.one())))),
            _ => None,
        }
    }

    /// The `i`-th variable of a polynomial ring.
    pub fn var(&self, i: usize) -> Option<Elem> {
        match self {
            Ring::Polynomial(p) if i < p.vars.len() => Some(Elem::Poly(Poly::variable(&p.base, p.vars.len(), i))),
            _ => None,
        }
    }

    pub fn var_named(&self, name: &str) -> Option<Elem> {
        match self {
            Ring::Polynomial(p) => match p.vars.iter().position(|v| v == name) {
                Some(i) => self.var(i),
                None => p.base.var_named(name).map(|x| self.embed_base(&x)),
            },
            Ring::Dual(b) => {
                if name == "eps" {
                    self.eps()
                } else {
                    b.var_named(name).map(|x| self.embed_base(&x))
                }
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(v) => v.is_zero(),
            Elem::Residue(v) => *v == 0,
            Elem::Poly(p) => p.is_zero(),
            Elem::Dual(d) => {
                let b = self.base().expect("dual payload in dual ring");
                b.is_zero(&d.0) && b.is_zero(&d.1)
            }
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Integers, Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Ring::Modular(n), Elem::Residue(a), Elem::Residue(b)) => {
                let s = a + b;
                Elem::Residue(if s >= *n { s - n } else { s })
            }
            (Ring::Polynomial(p), Elem::Poly(a), Elem::Poly(b)) => Elem::Poly(a.add(b, &p.base)),
            (Ring::Dual(base), Elem::Dual(a), Elem::Dual(b)) => {
                Elem::Dual(Box::new((base.add(&a.0, &b.0), base.add(&a.1, &b.1))))
            }
            _ => panic!("element does not belong to ring {self}"),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Ring::Integers, Elem::Int(a)) => Elem::Int(-a),
            (Ring::Modular(n), Elem::Residue(a)) => Elem::Residue(if *a == 0 { 0 } else { n - a }),
            (Ring::Polynomial(p), Elem::Poly(a)) => Elem::Poly(a.neg(&p.base)),
            (Ring::Dual(base), Elem::Dual(a)) => Elem::Dual(Box::new((base.neg(&a.0), base.neg(&a.1)))),
            _ => panic!("element does not belong to ring {self}"),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Integers, Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (Ring::Modular(n), Elem::Residue(a), Elem::Residue(b)) => {
                Elem::Residue(((*a as u128 * *b as u128) % *n as u128) as u64)
            }
            (Ring::Polynomial(p), Elem::Poly(a), Elem::Poly(b)) => Elem::Poly(a.mul(b, &p.base)),
            (Ring::Dual(base), Elem::Dual(a), Elem::Dual(b)) => {
                // (a0 + a1 eps)(b0 + b1 eps) = a0 b0 + (a0 b1 + a1 b0) eps
                let re = base.mul(&a.0, &b.0);
                let du = base.add(&base.mul(&a.0, &b.1), &base.mul(&a.1, &b.0));
                Elem::Dual(Box::new((re, du)))
            }
            _ => panic!("element does not belong to ring {self}"),
        }
    }

    pub fn mul_i64(&self, x: &Elem, k: i64) -> Elem {
        match k {
            0 => self.zero(),
            1 => x.clone(),
            -1 => self.neg(x),
            _ => self.mul(x, &self.from_i64(k)),
        }
    }

    pub fn pow(&self, x: &Elem, mut e: u32) -> Elem {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse, when `x` is a unit.
    pub fn inverse(&self, x: &Elem) -> Option<Elem> {
        match (self, x) {
            (Ring::Integers, Elem::Int(a)) => {
                if a.is_one() || (-a).is_one() {
                    Some(x.clone())
                } else {
                    None
                }
            }
            (Ring::Modular(n), Elem::Residue(a)) => {
                let e = BigInt::from(*a).extended_gcd(&BigInt::from(*n));
                if e.gcd.is_one() {
                    Some(self.from_bigint(&e.x))
                } else {
                    None
                }
            }
            (Ring::Dual(base), Elem::Dual(a)) => {
                // (a + b eps)^-1 = a^-1 - b a^-2 eps
                let inv = base.inverse(&a.0)?;
                let du = base.neg(&base.mul(&a.1, &base.mul(&inv, &inv)));
                Some(Elem::Dual(Box::new((inv, du))))
            }
            (Ring::Polynomial(p), Elem::Poly(a)) => {
                let c = a.constant_term_if_constant()?;
                p.base.inverse(&c).map(|i| self.embed_base(&i))
            }
            _ => None,
        }
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        self.inverse(x).is_some()
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    pub fn cardinality(&self) -> Option<u128> {
        match self {
            Ring::Modular(n) => Some(*n as u128),
            Ring::Dual(b) => b.cardinality().and_then(|c| c.checked_mul(c)),
            _ => None,
        }
    }

    /// True for `Z/p` with `p` prime.
    pub fn is_field(&self) -> bool {
        match self {
            Ring::Modular(n) => is_prime(*n),
            _ => false,
        }
    }

    /// Every element of a finite ring, each exactly once, in a fixed order.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        match self {
            Ring::Modular(n) => Ok((0..*n).map(Elem::Residue).collect()),
            Ring::Dual(b) => {
                let base = b.elements()?;
                let mut out = Vec::with_capacity(base.len() * base.len());
                for x in &base {
                    for y in &base {
                        out.push(Elem::Dual(Box::new((x.clone(), y.clone()))));
                    }
                }
                Ok(out)
            }
            _ => Err(Error::InfiniteRing(self.to_string())),
        }
    }

    /// Checks that a payload is well formed for this ring.
    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::Integers, Elem::Int(_)) => true,
            (Ring::Modular(n), Elem::Residue(a)) => a < n,
            (Ring::Polynomial(p), Elem::Poly(a)) => a.is_well_formed(&p.base, p.vars.len()),
            (Ring::Dual(b), Elem::Dual(d)) => b.contains(&d.0) && b.contains(&d.1),
            _ => false,
        }
    }

    pub fn check(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{x:?} is not an element of {self}")))
        }
    }

    /// Shape of the ring as an abelian group, for the rings whose module
    /// computations are supported.
    pub fn zmodule_shape(&self) -> Result<ZModuleShape> {
        match self {
            Ring::Integers => Ok(ZModuleShape { rank: 1, modulus: None }),
            Ring::Modular(n) => Ok(ZModuleShape { rank: 1, modulus: Some(*n as i128) }),
            Ring::Dual(b) => match b.as_ref() {
                Ring::Integers => Ok(ZModuleShape { rank: 2, modulus: None }),
                Ring::Modular(n) => Ok(ZModuleShape { rank: 2, modulus: Some(*n as i128) }),
                _ => Err(Error::UnsupportedRing(self.to_string())),
            },
            Ring::Polynomial(_) => Err(Error::UnsupportedRing(self.to_string())),
        }
    }

    /// Coordinates of `x` in the additive basis `zbasis()`.
    pub fn to_zcoords(&self, x: &Elem) -> Result<Vec<i128>> {
        fn int(v: &BigInt) -> Result<i128> {
            v.to_i128().ok_or(Error::Overflow("ring element coordinates"))
        }
        match (self, x) {
            (Ring::Integers, Elem::Int(a)) => Ok(vec![int(a)?]),
            (Ring::Modular(_), Elem::Residue(a)) => Ok(vec![*a as i128]),
            (Ring::Dual(b), Elem::Dual(d)) => {
                let mut v = b.to_zcoords(&d.0)?;
                v.extend(b.to_zcoords(&d.1)?);
                if v.len() != 2 {
                    return Err(Error::UnsupportedRing(self.to_string()));
                }
                Ok(v)
            }
            _ => Err(Error::UnsupportedRing(self.to_string())),
        }
    }

    pub fn from_zcoords(&self, v: &[i128]) -> Result<Elem> {
        match self {
            Ring::Integers | Ring::Modular(_) if v.len() == 1 => Ok(self.from_bigint(&BigInt::from(v[0]))),
            Ring::Dual(b) if v.len() == 2 => {
                Ok(Elem::Dual(Box::new((b.from_bigint(&BigInt::from(v[0])), b.from_bigint(&BigInt::from(v[1]))))))
            }
            _ => Err(Error::UnsupportedRing(self.to_string())),
        }
    }

    /// Additive generators of the ring (`1`, and `eps` for dual numbers).
    pub fn zbasis(&self) -> Result<Vec<Elem>> {
        let shape = self.zmodule_shape()?;
        Ok(match shape.rank {
            1 => vec![self.one()],
            _ => vec![self.one(), self.eps().expect("dual ring")],
        })
    }

    pub fn format(&self, x: &Elem) -> String {
        match (self, x) {
            (_, Elem::Int(a)) => a.to_string(),
            (_, Elem::Residue(a)) => a.to_string(),
            (Ring::Polynomial(p), Elem::Poly(a)) => a.format(&p.base, &p.vars),
            (Ring::Dual(b), Elem::Dual(d)) => {
                let re = b.format(&d.0);
                if b.is_zero(&d.1) {
                    re
                } else {
                    format!("({re})+({})*eps", b.format(&d.1))
                }
            }
            _ => format!("{x:?}"),
        }
    }

    /// Parses an arithmetic expression (integers, ring variables, `eps`,
    /// `+ - * ^` and parentheses) into a ring element.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        parse::parse_elem(self, s)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "int"),
            Ring::Modular(n) => write!(f, "mod:{n}"),
            Ring::Dual(b) => write!(f, "dual:{b}"),
            Ring::Polynomial(p) => write!(f, "poly:{}:{}", p.vars.join(","), p.base),
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;

    /// `int`, `mod:N`, `dual:<ring>`, `poly:<v1,v2,...>:<ring>`.
    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        if s == "int" {
            return Ok(Ring::Integers);
        }
        if let Some(rest) = s.strip_prefix("mod:") {
            let n: u64 = rest.parse().map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
            return Ring::modular(n);
        }
        if let Some(rest) = s.strip_prefix("dual:") {
            return Ok(Ring::dual(rest.parse()?));
        }
        if let Some(rest) = s.strip_prefix("poly:") {
            let (vars, base) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected poly:<vars>:<base>, got {s:?}")))?;
            let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
            if vars.iter().any(|v| v.is_empty() || v == "eps") {
                return Err(Error::Parse(format!("bad variable list in {s:?}")));
            }
            return Ok(Ring::polynomial(base.parse()?, vars));
        }
        Err(Error::Parse(format!("unknown ring {s:?}")))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Non-negative gcd of two big integers.
pub(crate) fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b).abs()
}
