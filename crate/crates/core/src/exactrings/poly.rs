use std::collections::BTreeMap;

use super::{Elem, Ring};

/// Sparse polynomial: exponent vector -> nonzero coefficient in the base ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    pub terms: BTreeMap<Vec<u32>, Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(base: &Ring, nvars: usize, c: Elem) -> Poly {
        let mut p = Poly::zero();
        if !base.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn variable(base: &Ring, nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero();
        p.terms.insert(e, base.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn is_well_formed(&self, base: &Ring, nvars: usize) -> bool {
        self.terms.iter().all(|(e, c)| e.len() == nvars && base.contains(c) && !base.is_zero(c))
    }

    pub fn constant_term_if_constant(&self) -> Option<Elem> {
        match self.terms.len() {
            0 => None,
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: Elem, base: &Ring) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !base.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = base.add(o.get(), &c);
                if base.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly, base: &Ring) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone(), base);
        }
        out
    }

    pub fn neg(&self, base: &Ring) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), base.neg(c))).collect() }
    }

    pub fn mul(&self, other: &Poly, base: &Ring) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, base.mul(c1, c2), base);
            }
        }
        out
    }

    /// Degree in variable `i` (0 for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Splits by powers of variable `i`: the `k`-th entry collects the terms
    /// whose exponent of variable `i` is `k`, with that exponent cleared.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0) as usize;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Substitutes `values[i]` (elements of `target`) for every variable;
    /// base coefficients are mapped through `embed`.
    pub fn evaluate(&self, target: &Ring, values: &[Elem], embed: impl Fn(&Elem) -> Elem) -> Elem {
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut t = embed(c);
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t = target.mul(&t, &target.pow(v, k));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    pub fn format(&self, base: &Ring, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        // highest degree terms first
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let coeff = base.format(c);
            let needs_parens = coeff.contains('+') || coeff[1..].contains('-');
            let coeff = if needs_parens { format!("({coeff})") } else { coeff };
            parts.push(if mono.is_empty() {
                coeff
            } else if base.is_one(c) {
                mono.join("*")
            } else {
                format!("{coeff}*{}", mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_arithmetic_matches_evaluation() {
        let r = Ring::polynomial(Ring::Integers, ["x", "y"]);
        let p = r.parse("(x + 2*y)^3 - x*y + 5").unwrap();
        let q = r.parse("x^2 - 3").unwrap();
        let pq = r.mul(&p, &q);
        let (Elem::Poly(p), Elem::Poly(q), Elem::Poly(pq)) = (p, q, pq) else { unreachable!() };
        for xv in -3i64..=3 {
            for yv in -3i64..=3 {
                let vals = [Ring::Integers.from_i64(xv), Ring::Integers.from_i64(yv)];
                let ev = |f: &Poly| f.evaluate(&Ring::Integers, &vals, |c| c.clone());
                assert_eq!(ev(&pq), Ring::Integers.mul(&ev(&p), &ev(&q)));
                let direct = (xv + 2 * yv).pow(3) - xv * yv + 5;
                assert_eq!(ev(&p), Ring::Integers.from_i64(direct));
            }
        }
    }

    #[test]
    fn coefficients_in_variable() {
        let r = Ring::polynomial(Ring::Integers, ["t", "x"]);
        let Elem::Poly(p) = r.parse("3 + x*t - 2*t^2*x^2").unwrap() else { unreachable!() };
        let cs = p.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(Elem::Poly(cs[0].clone()), r.parse("3").unwrap());
        assert_eq!(Elem::Poly(cs[1].clone()), r.parse("x").unwrap());
        assert_eq!(Elem::Poly(cs[2].clone()), r.parse("-2*x^2").unwrap());
    }

    #[test]
    fn modular_coefficients_cancel() {
        let r = Ring::polynomial(Ring::modular(3).unwrap(), ["x"]);
        let p = r.parse("(x+1)^3").unwrap();
        assert_eq!(p, r.parse("x^3 + 1").unwrap());
        assert!(r.is_zero(&r.parse("3*x").unwrap()));
    }
}
