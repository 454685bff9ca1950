use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::lattice::Lattice;
use super::{gcd_big, Elem, Ring};
use crate::error::{Error, Result};

/// A finitely generated ideal.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub ring: Ring,
    pub gens: Vec<Elem>,
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Elem>) -> Result<Ideal> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Ideal { ring, gens })
    }

    pub fn principal(ring: &Ring, g: Elem) -> Ideal {
        Ideal { ring: ring.clone(), gens: vec![g] }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::principal(ring, ring.one())
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal { ring: ring.clone(), gens: vec![] }
    }

    pub fn from_i64(ring: &Ring, gens: &[i64]) -> Ideal {
        Ideal { ring: ring.clone(), gens: gens.iter().map(|&g| ring.from_i64(g)).collect() }
    }

    /// Nonzero generators.
    pub fn nonzero_gens(&self) -> Vec<Elem> {
        self.gens.iter().filter(|g| !self.ring.is_zero(g)).cloned().collect()
    }

    /// For `Z` and `Z/n`: the non-negative generator `d` with `I = (d)`
    /// (for `Z/n`, `d` divides `n`; the zero ideal gives `n`).
    pub fn scalar_generator(&self) -> Option<BigInt> {
        match &self.ring {
            Ring::Integers => {
                let mut g = BigInt::zero();
                for x in &self.gens {
                    if let Elem::Int(v) = x {
                        g = gcd_big(&g, v);
                    }
                }
                Some(g)
            }
            Ring::Modular(n) => {
                let mut g = BigInt::from(*n);
                for x in &self.gens {
                    if let Elem::Residue(v) = x {
                        g = gcd_big(&g, &BigInt::from(*v));
                    }
                }
                Some(g)
            }
            _ => None,
        }
    }

    /// The ideal as an additive subgroup, in the coordinates of
    /// `Ring::to_zcoords`.
    pub fn as_lattice(&self) -> Result<Lattice> {
        let shape = self.ring.zmodule_shape()?;
        let basis = self.ring.zbasis()?;
        let mut l = Lattice::zero(shape.rank, shape.modulus);
        for g in &self.gens {
            for b in &basis {
                l.insert(self.ring.to_zcoords(&self.ring.mul(g, b))?)?;
            }
        }
        Ok(l)
    }

    pub fn contains(&self, x: &Elem) -> Result<bool> {
        self.ring.check(x)?;
        if self.ring.is_zero(x) {
            return Ok(true);
        }
        if let Some(d) = self.scalar_generator() {
            let v = match x {
                Elem::Int(v) => v.clone(),
                Elem::Residue(v) => BigInt::from(*v),
                _ => unreachable!(),
            };
            return Ok(if d.is_zero() { v.is_zero() } else { v.is_multiple_of(&d) });
        }
        match &self.ring {
            Ring::Dual(_) => self.as_lattice()?.contains(&self.ring.to_zcoords(x)?),
            Ring::Polynomial(_) => {
                let gens = self.nonzero_gens();
                if gens.is_empty() {
                    Ok(false)
                } else if gens.iter().any(|g| self.ring.is_unit(g)) {
                    Ok(true)
                } else {
                    Err(Error::UnsupportedRing(self.ring.to_string()))
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        self.contains(&self.ring.one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.nonzero_gens().is_empty()
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = self.ring.mul(a, b);
                if !self.ring.is_zero(&p) {
                    gens.push(p);
                }
            }
        }
        Ideal { ring: self.ring.clone(), gens }
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal { ring: self.ring.clone(), gens }
    }

    /// Every ideal of `Z/n`, one per divisor, ordered by generator.
    pub fn all_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
        match ring {
            Ring::Modular(n) => Ok((1..=*n)
                .filter(|d| n % d == 0)
                .map(|d| if d == *n { Ideal::zero(ring) } else { Ideal::from_i64(ring, &[d as i64]) })
                .collect()),
            _ => Err(Error::UnsupportedRing(ring.to_string())),
        }
    }

    /// The quotient map `R -> R/I` for the quotients this library represents.
    pub fn quotient(&self) -> Result<Quotient> {
        let unsupported = || Error::UnsupportedQuotient(format!("{} / {}", self.ring, self));
        match &self.ring {
            Ring::Integers | Ring::Modular(_) => {
                let d = self.scalar_generator().expect("scalar ring");
                let n = match &self.ring {
                    Ring::Modular(n) => Some(BigInt::from(*n)),
                    _ => None,
                };
                if d.is_zero() || Some(&d) == n.as_ref() {
                    return Ok(Quotient::identity(&self.ring));
                }
                if d == BigInt::from(1) {
                    return Err(unsupported());
                }
                let d = d.to_u64().ok_or_else(unsupported)?;
                Ok(Quotient { source: self.ring.clone(), target: Ring::modular(d)?, kind: QuotientKind::Scalar })
            }
            Ring::Dual(_) => {
                // coordinates (re, du); the real part of the ideal is the set of
                // a with a + 0 eps in I
                let lat = self.as_lattice()?;
                let base_ideal = self.real_part(&lat)?;
                let eps_in = lat.contains(&self.ring.to_zcoords(&self.ring.eps().expect("dual"))?)?;
                let base_q = base_ideal.quotient()?;
                if eps_in {
                    return Ok(Quotient {
                        source: self.ring.clone(),
                        target: base_q.target.clone(),
                        kind: QuotientKind::DropEps(Box::new(base_q)),
                    });
                }
                // generated by base elements: I = I0 + I0 eps
                let split = Ideal {
                    ring: self.ring.clone(),
                    gens: base_ideal.gens.iter().map(|g| self.ring.embed_base(g)).collect(),
                };
                if split.as_lattice()?.contains_lattice(&lat)? {
                    return Ok(Quotient {
                        source: self.ring.clone(),
                        target: Ring::dual(base_q.target.clone()),
                        kind: QuotientKind::Componentwise(Box::new(base_q)),
                    });
                }
                Err(unsupported())
            }
            Ring::Polynomial(_) => {
                if self.is_zero_ideal() {
                    Ok(Quotient::identity(&self.ring))
                } else {
                    Err(unsupported())
                }
            }
        }
    }

    /// `{a in base : a in I}` for an ideal of a dual-number ring.
    fn real_part(&self, lat: &Lattice) -> Result<Ideal> {
        let base = self.ring.base().expect("dual ring").clone();
        // swap coordinates to (du, re): rows with pivot in column 1 span the
        // elements with zero dual part
        let swapped = Lattice::from_generators(2, lat.modulus(), lat.basis().into_iter().map(|r| vec![r[1], r[0]]))?;
        let gens = swapped
            .basis()
            .into_iter()
            .filter(|r| r[0] == 0)
            .map(|r| base.from_bigint(&BigInt::from(r[1])))
            .collect();
        Ok(Ideal { ring: base, gens })
    }

    /// Image of the ideal under a ring map.
    pub fn map(&self, q: &Quotient) -> Ideal {
        Ideal { ring: q.target.clone(), gens: self.gens.iter().map(|g| q.apply(g)).collect() }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        if gens.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", gens.join(", "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub source: Ring,
    pub target: Ring,
    kind: QuotientKind,
}

#[derive(Clone, Debug)]
enum QuotientKind {
    Identity,
    /// `Z -> Z/d` or `Z/n -> Z/d` with `d | n`.
    Scalar,
    /// `R[eps] -> R/I0`, killing `eps`.
    DropEps(Box<Quotient>),
    /// `R[eps] -> (R/I0)[eps]`.
    Componentwise(Box<Quotient>),
}

impl Quotient {
    pub fn identity(ring: &Ring) -> Quotient {
        Quotient { source: ring.clone(), target: ring.clone(), kind: QuotientKind::Identity }
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        match &self.kind {
            QuotientKind::Identity => x.clone(),
            QuotientKind::Scalar => match x {
                Elem::Int(v) => self.target.from_bigint(v),
                Elem::Residue(v) => self.target.from_bigint(&BigInt::from(*v)),
                _ => panic!("scalar quotient applied to non-scalar element"),
            },
            QuotientKind::DropEps(b) => match x {
                Elem::Dual(d) => b.apply(&d.0),
                _ => panic!("dual quotient applied to non-dual element"),
            },
            QuotientKind::Componentwise(b) => match x {
                Elem::Dual(d) => Elem::Dual(Box::new((b.apply(&d.0), b.apply(&d.1)))),
                _ => panic!("dual quotient applied to non-dual element"),
            },
        }
    }
}

/// Convenience: does `x` lie in the ideal generated by `gens`?
pub fn ideal_contains(ring: &Ring, gens: &[Elem], x: &Elem) -> Result<bool> {
    Ideal::new(ring.clone(), gens.to_vec())?.contains(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn integer_ideal_membership_by_gcd() {
        let z = Ring::Integers;
        let i = Ideal::from_i64(&z, &[6, 10]);
        assert!(i.contains(&z.from_i64(2)).unwrap());
        assert!(i.contains(&z.from_i64(-14)).unwrap());
        assert!(!i.contains(&z.from_i64(3)).unwrap());
        assert!(Ideal::zero(&z).contains(&z.zero()).unwrap());
        assert!(!Ideal::zero(&z).contains(&z.one()).unwrap());
    }

    #[test]
    fn modular_ideals() {
        let z4 = Ring::modular(4).unwrap();
        let ids = Ideal::all_ideals(&z4).unwrap();
        assert_eq!(ids.len(), 3);
        let two = Ideal::from_i64(&z4, &[2]);
        assert!(two.contains(&z4.from_i64(2)).unwrap());
        assert!(!two.contains(&z4.from_i64(1)).unwrap());
        assert!(two.product(&two).is_zero_ideal());
        assert!(Ideal::from_i64(&z4, &[3]).is_unit_ideal().unwrap());
        // (6) in Z/4 is (2)
        assert!(Ideal::from_i64(&z4, &[6]).equals(&two).unwrap());
    }

    #[test]
    fn quotients() {
        let z = Ring::Integers;
        let q = Ideal::from_i64(&z, &[4, 6]).quotient().unwrap();
        assert_eq!(q.target, Ring::modular(2).unwrap());
        assert_eq!(q.apply(&z.from_i64(5)), Elem::Residue(1));

        let z12 = Ring::modular(12).unwrap();
        let q = Ideal::from_i64(&z12, &[8]).quotient().unwrap();
        assert_eq!(q.target, Ring::modular(4).unwrap());
        assert_eq!(q.apply(&z12.from_i64(7)), Elem::Residue(3));

        let d = Ring::dual(Ring::modular(4).unwrap());
        let eps = Ideal::principal(&d, d.eps().unwrap());
        let q = eps.quotient().unwrap();
        assert_eq!(q.target, Ring::modular(4).unwrap());
        assert_eq!(q.apply(&d.parse("3 + 2*eps").unwrap()), Elem::Residue(3));

        let two = Ideal::from_i64(&d, &[2]);
        let q = two.quotient().unwrap();
        assert_eq!(q.target, Ring::dual(Ring::modular(2).unwrap()));
        assert_eq!(q.apply(&d.parse("3 + 2*eps").unwrap()), q.target.parse("1").unwrap());

        let mixed = Ideal::principal(&d, d.parse("2 + eps").unwrap());
        assert!(matches!(mixed.quotient(), Err(Error::UnsupportedQuotient(_))));
        assert!(matches!(Ideal::unit(&z).quotient(), Err(Error::UnsupportedQuotient(_))));
    }

    #[test]
    fn dual_ideal_membership() {
        let d = Ring::dual(Ring::modular(4).unwrap());
        let i = Ideal::principal(&d, d.parse("2 + eps").unwrap());
        // (2+eps) * (2-eps) = 4 = 0, (2+eps)*eps = 2 eps, (2+eps)*2 = 4+2eps = 2eps
        assert!(i.contains(&d.parse("2*eps").unwrap()).unwrap());
        assert!(!i.contains(&d.parse("eps").unwrap()).unwrap());
        assert!(!i.contains(&d.parse("2").unwrap()).unwrap());
        assert!(i.contains(&d.parse("2 + 3*eps").unwrap()).unwrap());
        let p = Ring::polynomial(Ring::Integers, ["x"]);
        let ip = Ideal::principal(&p, p.parse("x").unwrap());
        assert!(matches!(ip.contains(&p.parse("x^2").unwrap()), Err(Error::UnsupportedRing(_))));
    }

    proptest! {
        #[test]
        fn dual_membership_matches_enumeration(
            n in prop::sample::select(vec![2u64, 3, 4, 6]),
            gens in prop::collection::vec((0u64..6, 0u64..6), 0..3),
        ) {
            let base = Ring::modular(n).unwrap();
            let d = Ring::dual(base.clone());
            let gens: Vec<Elem> = gens.iter().map(|(a, b)| Elem::Dual(Box::new((base.from_i64(*a as i64), base.from_i64(*b as i64))))).collect();
            let ideal = Ideal::new(d.clone(), gens.clone()).unwrap();
            let els = d.elements().unwrap();
            // brute-force ideal: all sums of r*g
            let mut members = std::collections::HashSet::new();
            members.insert(d.zero());
            loop {
                let mut next = members.clone();
                for m in &members {
                    for g in &gens {
                        for r in &els {
                            next.insert(d.add(m, &d.mul(r, g)));
                        }
                    }
                }
                if next.len() == members.len() { break; }
                members = next;
            }
            for x in &els {
                prop_assert_eq!(ideal.contains(x).unwrap(), members.contains(x));
            }
        }

        #[test]
        fn integer_membership_matches_gcd(a in -50i64..50, b in -50i64..50, x in -200i64..200) {
            let z = Ring::Integers;
            let i = Ideal::from_i64(&z, &[a, b]);
            let g = num_integer::gcd(a, b);
            let expect = if g == 0 { x == 0 } else { x % g == 0 };
            prop_assert_eq!(i.contains(&z.from_i64(x)).unwrap(), expect);
        }
    }
}
