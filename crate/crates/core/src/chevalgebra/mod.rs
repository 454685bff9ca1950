//! The Chevalley basis `{e_alpha} ∪ {h_i}` of the adjoint Lie algebra of a
//! simply-laced root system, its structure constants and the bracket over
//! any supported ring.
//!
//! Basis layout: `e_alpha` sits at index `alpha.0`, `h_i` at `n_roots + i`.

pub mod net;
pub mod subalgebra;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactrings::ideal::Quotient;
use crate::exactrings::{Elem, Ring, RingDescriptor};
use crate::rootsys::{RootId, RootSystem};

pub use net::Net;
pub use subalgebra::{in_l_parabolic, in_l_sigma, in_subalgebra, lemma_lprime_check, LPrime, LPrimeReport, SubalgebraDescriptor};

/// Sparse integer vector in the Chevalley basis.
pub type IntVec = BTreeMap<usize, i64>;

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    sys: Arc<RootSystem>,
    /// `N(alpha, beta)` row-major over root ids, 0 when `alpha+beta` is not a root.
    n: Vec<i8>,
}

/// `eps(alpha, beta)` for the bimultiplicative asymmetry function fixed by
/// the simple-root order.
fn asymmetry(sys: &RootSystem, a: RootId, b: RootId) -> i64 {
    let (ca, cb) = (sys.simple_coeffs(a), sys.simple_coeffs(b));
    let r = sys.rank();
    let mut parity = 0i64;
    for i in 0..r {
        if ca[i] == 0 {
            continue;
        }
        for j in 0..r {
            let e = i == j || (i < j && sys.pairing(sys.simple(i), sys.simple(j)) == -1);
            if e {
                parity += ca[i] * cb[j];
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl ChevalleyAlgebra {
    pub fn new(sys: Arc<RootSystem>) -> ChevalleyAlgebra {
        let nr = sys.n_roots();
        let sign = |a: RootId| if sys.is_positive(a) { 1 } else { -1 };
        let mut n = vec![0i8; nr * nr];
        for a in sys.ids() {
            for b in sys.ids() {
                if let Some(c) = sys.sum(a, b) {
                    n[a.0 * nr + b.0] = (sign(a) * sign(b) * sign(c) * asymmetry(&sys, a, b)) as i8;
                }
            }
        }
        ChevalleyAlgebra { sys, n }
    }

    pub fn from_label(label: &str) -> Result<ChevalleyAlgebra> {
        Ok(ChevalleyAlgebra::new(Arc::new(RootSystem::from_label(label)?)))
    }

    /// A deliberately broken copy with the sign of `N(a,b)` and `N(b,a)` flipped.
    pub fn with_sign_flip(&self, a: RootId, b: RootId) -> ChevalleyAlgebra {
        let mut c = self.clone();
        let nr = self.sys.n_roots();
        c.n[a.0 * nr + b.0] *= -1;
        c.n[b.0 * nr + a.0] *= -1;
        c
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn dim(&self) -> usize {
        self.sys.n_roots() + self.sys.rank()
    }

    pub fn e(&self, a: RootId) -> usize {
        a.0
    }

    pub fn h(&self, i: usize) -> usize {
        self.sys.n_roots() + i
    }

    /// The root of a basis index, or `None` for a toral index.
    pub fn root_of(&self, idx: usize) -> Option<RootId> {
        (idx < self.sys.n_roots()).then_some(RootId(idx))
    }

    pub fn basis_name(&self, idx: usize) -> String {
        match self.root_of(idx) {
            Some(a) => format!("e{}", self.sys.format_root(a)),
            None => format!("h{}", idx - self.sys.n_roots() + 1),
        }
    }

    pub fn n(&self, a: RootId, b: RootId) -> i64 {
        self.n[a.0 * self.sys.n_roots() + b.0] as i64
    }

    /// `[b_i, b_j]` as a sparse integer combination.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let s = &self.sys;
        match (self.root_of(i), self.root_of(j)) {
            (Some(a), Some(b)) => {
                if let Some(c) = s.sum(a, b) {
                    vec![(c.0, self.n(a, b))]
                } else if s.neg(a) == b {
                    // h_alpha expanded over the simple coroots
                    s.simple_coeffs(a)
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (self.h(k), c))
                        .collect()
                } else {
                    vec![]
                }
            }
            (None, Some(b)) => {
                let k = s.pairing(b, s.simple(i - s.n_roots()));
                if k == 0 {
                    vec![]
                } else {
                    vec![(b.0, k)]
                }
            }
            (Some(a), None) => {
                let k = s.pairing(a, s.simple(j - s.n_roots()));
                if k == 0 {
                    vec![]
                } else {
                    vec![(a.0, -k)]
                }
            }
            (None, None) => vec![],
        }
    }

    pub fn bracket_int(&self, u: &IntVec, v: &IntVec) -> IntVec {
        let mut out = IntVec::new();
        for (&i, &x) in u {
            for (&j, &y) in v {
                for (k, c) in self.basis_bracket(i, j) {
                    *out.entry(k).or_insert(0) += x * y * c;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn unit_int(idx: usize) -> IntVec {
        IntVec::from([(idx, 1)])
    }

    /// Jacobi identity on one basis triple.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let (a, b, c) = (Self::unit_int(i), Self::unit_int(j), Self::unit_int(k));
        let mut sum = IntVec::new();
        for (x, y, z) in [(&a, &b, &c), (&b, &c, &a), (&c, &a, &b)] {
            for (idx, v) in self.bracket_int(&self.bracket_int(x, y), z) {
                *sum.entry(idx).or_insert(0) += v;
            }
        }
        sum.values().all(|&v| v == 0)
    }

    /// Antisymmetry `[b_i,b_j] = -[b_j,b_i]`, including `[b_i,b_i] = 0`.
    pub fn antisymmetry_holds(&self, i: usize, j: usize) -> bool {
        let mut x: IntVec = self.basis_bracket(i, j).into_iter().collect();
        for (k, c) in self.basis_bracket(j, i) {
            *x.entry(k).or_insert(0) += c;
        }
        x.values().all(|&v| v == 0)
    }

    /// `|N(a,b)| = 1` exactly when `a+b` is a root.
    pub fn support_holds(&self, a: RootId, b: RootId) -> bool {
        let n = self.n(a, b);
        match self.sys.sum(a, b) {
            Some(_) => n == 1 || n == -1,
            None => n == 0,
        }
    }

    /// `N(a,b) = N(b,c) = N(c,a)` whenever `a+b+c = 0`.
    pub fn cyclic_condition_holds(&self) -> bool {
        let s = &self.sys;
        s.ids().all(|a| {
            s.ids().all(|b| match s.sum(a, b) {
                Some(ab) => {
                    let c = s.neg(ab);
                    self.n(a, b) == self.n(b, c) && self.n(b, c) == self.n(c, a)
                }
                None => true,
            })
        })
    }

    pub fn bracket(&self, u: &LieVector, v: &LieVector) -> Result<LieVector> {
        if u.ring != v.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", u.ring, v.ring)));
        }
        let r = &u.ring;
        let mut out = LieVector::zero(r, self.dim());
        let us = u.support();
        let vs = v.support();
        for &i in &us {
            for &j in &vs {
                let bb = self.basis_bracket(i, j);
                if bb.is_empty() {
                    continue;
                }
                let p = r.mul(&u.coeffs[i], &v.coeffs[j]);
                for (k, c) in bb {
                    out.coeffs[k] = r.add(&out.coeffs[k], &r.mul_i64(&p, c));
                }
            }
        }
        Ok(out)
    }

    /// `ad(b_i)` applied to a vector.
    pub fn ad_basis(&self, i: usize, v: &LieVector) -> LieVector {
        let r = &v.ring;
        let mut out = LieVector::zero(r, self.dim());
        for j in v.support() {
            for (k, c) in self.basis_bracket(i, j) {
                out.coeffs[k] = r.add(&out.coeffs[k], &r.mul_i64(&v.coeffs[j], c));
            }
        }
        out
    }

    /// Vector `x * b_idx`.
    pub fn basis_vector(&self, ring: &Ring, idx: usize, x: Elem) -> LieVector {
        let mut v = LieVector::zero(ring, self.dim());
        v.coeffs[idx] = x;
        v
    }

    pub fn e_vector(&self, ring: &Ring, a: RootId, x: Elem) -> LieVector {
        self.basis_vector(ring, a.0, x)
    }

    /// `h_alpha = [e_alpha, e_{-alpha}]` over the given ring.
    pub fn coroot_vector(&self, ring: &Ring, a: RootId) -> LieVector {
        let mut v = LieVector::zero(ring, self.dim());
        for (k, &c) in self.sys.simple_coeffs(a).iter().enumerate() {
            v.coeffs[self.h(k)] = ring.from_i64(c);
        }
        v
    }

    /// Sparse JSON: `{"ring":..,"coeffs":[{"basis":[..] or "h1","value":".."}]}`.
    pub fn vector_to_json(&self, v: &LieVector) -> Value {
        let coeffs: Vec<Value> = v
            .support()
            .into_iter()
            .map(|i| {
                let basis = match self.root_of(i) {
                    Some(a) => json!(self.sys.coords(a)),
                    None => json!(format!("h{}", i - self.sys.n_roots() + 1)),
                };
                json!({"basis": basis, "value": v.ring.format(&v.coeffs[i])})
            })
            .collect();
        json!({"ring": RingDescriptor::from(&v.ring), "coeffs": coeffs})
    }

    pub fn vector_from_json(&self, val: &Value) -> Result<LieVector> {
        let bad = |m: &str| Error::Parse(format!("Lie vector: {m}"));
        let rd: RingDescriptor = serde_json::from_value(val.get("ring").cloned().ok_or_else(|| bad("missing ring"))?)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let ring = rd.to_ring()?;
        let mut v = LieVector::zero(&ring, self.dim());
        for c in val.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing coeffs"))? {
            let idx = match c.get("basis") {
                Some(Value::String(s)) => {
                    let i: usize = s.strip_prefix('h').and_then(|t| t.parse().ok()).ok_or_else(|| bad(s))?;
                    if i == 0 || i > self.sys.rank() {
                        return Err(bad(s));
                    }
                    self.h(i - 1)
                }
                Some(Value::Array(_)) => {
                    let coords: Vec<i64> = serde_json::from_value(c["basis"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
                    self.sys.lookup(&coords)?.0
                }
                _ => return Err(bad("bad basis key")),
            };
            let s = c.get("value").and_then(Value::as_str).ok_or_else(|| bad("bad value"))?;
            v.coeffs[idx] = ring.add(&v.coeffs[idx], &ring.parse(s)?);
        }
        Ok(v)
    }
}

/// An element of `L(Phi, R)`, stored densely in the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieVector {
    ring: Ring,
    coeffs: Vec<Elem>,
}

impl LieVector {
    pub fn zero(ring: &Ring, dim: usize) -> LieVector {
        LieVector { ring: ring.clone(), coeffs: vec![ring.zero(); dim] }
    }

    pub fn from_coeffs(ring: &Ring, coeffs: Vec<Elem>) -> LieVector {
        LieVector { ring: ring.clone(), coeffs }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Elem {
        &self.coeffs[i]
    }

    /// `v^alpha`, the coefficient at `e_alpha`.
    pub fn root_coeff(&self, a: RootId) -> &Elem {
        &self.coeffs[a.0]
    }

    pub fn set(&mut self, i: usize, x: Elem) {
        self.coeffs[i] = x;
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.ring.is_zero(&self.coeffs[i])).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn add(&self, other: &LieVector) -> LieVector {
        let r = &self.ring;
        LieVector { ring: r.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| r.add(a, b)).collect() }
    }

    pub fn sub(&self, other: &LieVector) -> LieVector {
        let r = &self.ring;
        LieVector { ring: r.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| r.sub(a, b)).collect() }
    }

    pub fn scale(&self, x: &Elem) -> LieVector {
        let r = &self.ring;
        LieVector { ring: r.clone(), coeffs: self.coeffs.iter().map(|a| r.mul(x, a)).collect() }
    }

    /// Coefficient-wise image under a ring map.
    pub fn map(&self, q: &Quotient) -> LieVector {
        LieVector { ring: q.target.clone(), coeffs: self.coeffs.iter().map(|a| q.apply(a)).collect() }
    }

    /// Coefficient-wise image under an arbitrary function into another ring.
    pub fn map_with(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> LieVector {
        LieVector { ring: target.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Concatenated additive coordinates of all coefficients.
    pub fn to_zcoords(&self) -> Result<Vec<i128>> {
        let mut out = Vec::new();
        for c in &self.coeffs {
            out.extend(self.ring.to_zcoords(c)?);
        }
        Ok(out)
    }

    pub fn from_zcoords(ring: &Ring, dim: usize, v: &[i128]) -> Result<LieVector> {
        let k = ring.zmodule_shape()?.rank;
        let coeffs = (0..dim).map(|i| ring.from_zcoords(&v[i * k..(i + 1) * k])).collect::<Result<Vec<_>>>()?;
        Ok(LieVector { ring: ring.clone(), coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exhaustive_jacobi(alg: &ChevalleyAlgebra) -> bool {
        let d = alg.dim();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| alg.jacobi_holds(i, j, k))))
    }

    #[test]
    fn jacobi_antisymmetry_support_small() {
        for l in ["A2", "A3", "D4"] {
            let alg = ChevalleyAlgebra::from_label(l).unwrap();
            assert!(exhaustive_jacobi(&alg), "{l}");
            let d = alg.dim();
            assert!((0..d).all(|i| (0..d).all(|j| alg.antisymmetry_holds(i, j))));
            let s = alg.system().clone();
            assert!(s.ids().all(|a| s.ids().all(|b| alg.support_holds(a, b))));
            assert!(alg.cyclic_condition_holds());
        }
    }

    #[test]
    fn a2_sign_convention() {
        let alg = ChevalleyAlgebra::from_label("A2").unwrap();
        let s = alg.system();
        assert_eq!(alg.n(s.simple(0), s.simple(1)), -1);
        assert_eq!(alg.n(s.simple(1), s.simple(0)), 1);
    }

    #[test]
    fn flipped_sign_breaks_jacobi() {
        let alg = ChevalleyAlgebra::from_label("A2").unwrap();
        let s = alg.system().clone();
        let bad = alg.with_sign_flip(s.simple(0), s.simple(1));
        assert!(!exhaustive_jacobi(&bad));
        assert!(!bad.cyclic_condition_holds());
    }

    #[test]
    fn bracket_examples() {
        let alg = ChevalleyAlgebra::from_label("D4").unwrap();
        let s = alg.system().clone();
        let r = Ring::integers();
        for a in s.ids() {
            let ea = alg.e_vector(&r, a, r.one());
            let ena = alg.e_vector(&r, s.neg(a), r.one());
            assert!(alg.bracket(&ea, &ea).unwrap().is_zero());
            let inner = alg.bracket(&ea, &ena).unwrap();
            assert_eq!(inner, alg.coroot_vector(&r, a));
            let outer = alg.bracket(&ea, &inner).unwrap();
            assert_eq!(outer, ea.scale(&r.from_i64(-2)));
            assert_eq!(alg.bracket(&inner, &ea).unwrap(), ea.scale(&r.from_i64(2)));
        }
        let m3 = Ring::modular(3).unwrap();
        let x = alg.e_vector(&m3, s.simple(0), m3.one());
        assert!(alg.bracket(&x, &alg.e_vector(&r, s.simple(1), r.one())).is_err());
    }

    #[test]
    fn json_round_trip() {
        let alg = ChevalleyAlgebra::from_label("D4").unwrap();
        let r = Ring::dual(Ring::modular(4).unwrap());
        let mut v = alg.e_vector(&r, RootId(3), r.parse("1+2*eps").unwrap());
        v.set(alg.h(2), r.from_i64(3));
        let j = alg.vector_to_json(&v);
        assert!(j.to_string().contains("\"h3\""));
        assert_eq!(alg.vector_from_json(&j).unwrap(), v);
    }

    proptest! {
        #[test]
        fn jacobi_on_random_exceptional_triples(i in 0usize..248, j in 0usize..248, k in 0usize..248) {
            thread_local! {
                static E8: ChevalleyAlgebra = ChevalleyAlgebra::from_label("E8").unwrap();
            }
            E8.with(|alg| {
                prop_assert!(alg.jacobi_holds(i, j, k));
                Ok(())
            })?;
        }

        #[test]
        fn bracket_is_bilinear_and_antisymmetric_mod4(
            a in prop::collection::vec(0i64..4, 28),
            b in prop::collection::vec(0i64..4, 28),
            c in prop::collection::vec(0i64..4, 28),
            k in 0i64..4,
        ) {
            thread_local! {
                static D4: ChevalleyAlgebra = ChevalleyAlgebra::from_label("D4").unwrap();
            }
            let r = Ring::modular(4).unwrap();
            let mk = |v: &Vec<i64>| LieVector::from_coeffs(&r, v.iter().map(|&x| r.from_i64(x)).collect());
            let (u, v, w) = (mk(&a), mk(&b), mk(&c));
            D4.with(|alg| {
                let uv = alg.bracket(&u, &v).unwrap();
                let vu = alg.bracket(&v, &u).unwrap();
                prop_assert!(uv.add(&vu).is_zero());
                let lhs = alg.bracket(&u.scale(&r.from_i64(k)).add(&w), &v).unwrap();
                let rhs = uv.scale(&r.from_i64(k)).add(&alg.bracket(&w, &v).unwrap());
                prop_assert_eq!(lhs, rhs);
                Ok(())
            })?;
        }
    }
}
