//! Elements of the adjoint Chevalley group acting on `L(Phi, R)`.
//!
//! Every element carries its matrix, the matrix of its inverse and the word
//! of root elements it was built from. Products keep both matrices in step,
//! so `g * g^{-1} = 1` is a checkable witness of invertibility.

pub mod level;
pub mod reduction;

use std::sync::Arc;

use serde_json::{json, Value};

use crate::chevalgebra::{in_l_sigma, ChevalleyAlgebra, LieVector, Net};
use crate::error::{Error, Result};
use crate::exactrings::{Elem, Ideal, Ring, RingDescriptor};
use crate::rootsys::{RootId, RootSystem};
use crate::starcond::PairFunctional;

pub use level::{level_of_s, LevelReport, OrbitLevel};
pub use reduction::{reduction_witness, ReductionWitness};

/// One generator `x_root(xi)` of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub root: RootId,
    pub xi: Elem,
}

/// Replaces one entry of every `x_root(xi)` matrix by zero. Used only to
/// check that the verification sweeps notice a broken group law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryFault {
    pub root: RootId,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    ring: Ring,
    dim: usize,
    m: Vec<Elem>,
    inv: Vec<Elem>,
    word: Vec<Letter>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.m == other.m
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &Elem {
        &self.m[row * self.dim + col]
    }

    pub fn inverse_entry(&self, row: usize, col: usize) -> &Elem {
        &self.inv[row * self.dim + col]
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn inverse(&self) -> GroupElement {
        let r = &self.ring;
        GroupElement {
            ring: r.clone(),
            dim: self.dim,
            m: self.inv.clone(),
            inv: self.m.clone(),
            word: self.word.iter().rev().map(|l| Letter { root: l.root, xi: r.neg(&l.xi) }).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let r = &self.ring;
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let x = &self.m[i * self.dim + j];
                if i == j {
                    r.is_one(x)
                } else {
                    r.is_zero(x)
                }
            })
        })
    }

    /// `g * g^{-1} = 1` with the carried inverse.
    pub fn inverse_witness_holds(&self) -> bool {
        let p = mat_mul(&self.ring, self.dim, &self.m, &self.inv);
        let r = &self.ring;
        (0..self.dim).all(|i| (0..self.dim).all(|j| if i == j { r.is_one(&p[i * self.dim + j]) } else { r.is_zero(&p[i * self.dim + j]) }))
    }

    /// Column `j` of the matrix, i.e. the image of the `j`-th basis vector.
    /// The same matrices and word with every entry mapped into `target`.
    pub fn map_ring(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> GroupElement {
        GroupElement {
            ring: target.clone(),
            dim: self.dim,
            m: self.m.iter().map(&f).collect(),
            inv: self.inv.iter().map(&f).collect(),
            word: self.word.iter().map(|l| Letter { root: l.root, xi: f(&l.xi) }).collect(),
        }
    }

    pub fn column(&self, j: usize) -> LieVector {
        LieVector::from_coeffs(&self.ring, (0..self.dim).map(|i| self.m[i * self.dim + j].clone()).collect())
    }

    pub fn inverse_column(&self, j: usize) -> LieVector {
        LieVector::from_coeffs(&self.ring, (0..self.dim).map(|i| self.inv[i * self.dim + j].clone()).collect())
    }
}

fn mat_mul(r: &Ring, n: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![r.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if r.is_zero(x) {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !r.is_zero(y) {
                    out[i * n + j] = r.add(&out[i * n + j], &r.mul(x, y));
                }
            }
        }
    }
    out
}

fn mat_vec(r: &Ring, n: usize, a: &[Elem], v: &LieVector) -> LieVector {
    let supp = v.support();
    let coeffs = (0..n)
        .map(|i| {
            let mut acc = r.zero();
            for &k in &supp {
                let x = &a[i * n + k];
                if !r.is_zero(x) {
                    acc = r.add(&acc, &r.mul(x, v.coeff(k)));
                }
            }
            acc
        })
        .collect();
    LieVector::from_coeffs(r, coeffs)
}

/// Integer data of `x_alpha(xi) = 1 + xi A + xi^2 B` with `A = ad e_alpha`
/// and `B = A^2 / 2`, as sparse `(row, col, value)` lists.
#[derive(Clone, Debug)]
struct RootMatrices {
    a: Vec<(usize, usize, i64)>,
    b: Vec<(usize, usize, i64)>,
}

fn root_matrices(alg: &ChevalleyAlgebra, alpha: RootId) -> RootMatrices {
    let d = alg.dim();
    let ea = alg.e(alpha);
    let mut a = Vec::new();
    let mut cols: Vec<Vec<(usize, i64)>> = vec![vec![]; d];
    for j in 0..d {
        for (k, c) in alg.basis_bracket(ea, j) {
            a.push((k, j, c));
            cols[j].push((k, c));
        }
    }
    let mut b = Vec::new();
    for j in 0..d {
        let mut acc = std::collections::BTreeMap::new();
        for &(k, c) in &cols[j] {
            for &(k2, c2) in &cols[k] {
                *acc.entry(k2).or_insert(0i64) += c * c2;
            }
        }
        for (k, v) in acc {
            if v != 0 {
                assert!(v % 2 == 0, "ad(e_alpha)^2 must be even");
                b.push((k, j, v / 2));
            }
        }
    }
    RootMatrices { a, b }
}

/// The adjoint group over a fixed ring.
#[derive(Clone, Debug)]
pub struct AdjointGroup {
    alg: Arc<ChevalleyAlgebra>,
    ring: Ring,
    roots: Arc<Vec<RootMatrices>>,
    fault: Option<EntryFault>,
}

impl AdjointGroup {
    pub fn new(alg: Arc<ChevalleyAlgebra>, ring: &Ring) -> AdjointGroup {
        let roots = alg.system().ids().map(|a| root_matrices(&alg, a)).collect();
        AdjointGroup { alg, ring: ring.clone(), roots: Arc::new(roots), fault: None }
    }

    /// The same group over another ring, sharing the integer data.
    pub fn over(&self, ring: &Ring) -> AdjointGroup {
        AdjointGroup { alg: self.alg.clone(), ring: ring.clone(), roots: self.roots.clone(), fault: self.fault }
    }

    pub fn with_fault(&self, fault: EntryFault) -> AdjointGroup {
        AdjointGroup { fault: Some(fault), ..self.clone() }
    }

    pub fn algebra(&self) -> &Arc<ChevalleyAlgebra> {
        &self.alg
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.alg.system()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Positions `(row, col)` where `x_alpha(xi)` has an entry that is not
    /// identically zero as a polynomial in `xi`.
    pub fn generic_entries(&self, alpha: RootId) -> Vec<(usize, usize)> {
        let rm = &self.roots[alpha.0];
        let mut pos: Vec<(usize, usize)> = (0..self.dim()).map(|i| (i, i)).collect();
        pos.extend(rm.a.iter().map(|&(r, c, _)| (r, c)));
        pos.extend(rm.b.iter().map(|&(r, c, _)| (r, c)));
        pos.sort();
        pos.dedup();
        pos
    }

    /// `x_alpha(xi) - 1` as sparse entries, with the fault applied.
    fn delta(&self, alpha: RootId, xi: &Elem) -> Vec<(usize, usize, Elem)> {
        let r = &self.ring;
        let rm = &self.roots[alpha.0];
        let xi2 = r.mul(xi, xi);
        let mut out: Vec<(usize, usize, Elem)> = Vec::with_capacity(rm.a.len() + rm.b.len());
        for &(row, col, v) in &rm.a {
            out.push((row, col, r.mul_i64(xi, v)));
        }
        for &(row, col, v) in &rm.b {
            match out.iter_mut().find(|(r0, c0, _)| *r0 == row && *c0 == col) {
                Some(e) => e.2 = r.add(&e.2, &r.mul_i64(&xi2, v)),
                None => out.push((row, col, r.mul_i64(&xi2, v))),
            }
        }
        if let Some(f) = self.fault.filter(|f| f.root == alpha) {
            out.retain(|(r0, c0, _)| (*r0, *c0) != (f.row, f.col));
            if f.row == f.col {
                out.push((f.row, f.col, r.from_i64(-1)));
            }
        }
        out
    }

    pub fn identity(&self) -> GroupElement {
        let n = self.dim();
        let r = &self.ring;
        let mut m = vec![r.zero(); n * n];
        for i in 0..n {
            m[i * n + i] = r.one();
        }
        GroupElement { ring: r.clone(), dim: n, inv: m.clone(), m, word: vec![] }
    }

    /// `g * x_alpha(xi)`, by sparse right multiplication.
    pub fn mul_root(&self, g: &GroupElement, alpha: RootId, xi: &Elem) -> GroupElement {
        let r = &self.ring;
        let n = g.dim;
        let d = self.delta(alpha, xi);
        let dinv = self.delta(alpha, &r.neg(xi));
        let mut m = g.m.clone();
        for (row, col, v) in &d {
            for i in 0..n {
                let x = &g.m[i * n + row];
                if !r.is_zero(x) {
                    m[i * n + col] = r.add(&m[i * n + col], &r.mul(x, v));
                }
            }
        }
        let mut inv = g.inv.clone();
        for (row, col, v) in &dinv {
            for j in 0..n {
                let y = &g.inv[col * n + j];
                if !r.is_zero(y) {
                    inv[row * n + j] = r.add(&inv[row * n + j], &r.mul(v, y));
                }
            }
        }
        let mut word = g.word.clone();
        word.push(Letter { root: alpha, xi: xi.clone() });
        GroupElement { ring: r.clone(), dim: n, m, inv, word }
    }

    pub fn root_element(&self, alpha: RootId, xi: &Elem) -> GroupElement {
        self.mul_root(&self.identity(), alpha, xi)
    }

    pub fn from_word(&self, word: &[Letter]) -> GroupElement {
        word.iter().fold(self.identity(), |g, l| self.mul_root(&g, l.root, &l.xi))
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        // words always reproduce their element, and a few sparse steps beat a dense product
        if h.word.len() <= 12 {
            return h.word.iter().fold(g.clone(), |acc, l| self.mul_root(&acc, l.root, &l.xi));
        }
        let r = &self.ring;
        let mut word = g.word.clone();
        word.extend(h.word.iter().cloned());
        GroupElement { ring: r.clone(), dim: g.dim, m: mat_mul(r, g.dim, &g.m, &h.m), inv: mat_mul(r, g.dim, &h.inv, &g.inv), word }
    }

    /// `h g h^{-1}`.
    pub fn conj(&self, h: &GroupElement, g: &GroupElement) -> GroupElement {
        self.mul(&self.mul(h, g), &h.inverse())
    }

    /// `g h g^{-1} h^{-1}`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, h), &self.mul(&g.inverse(), &h.inverse()))
    }

    pub fn act(&self, g: &GroupElement, v: &LieVector) -> Result<LieVector> {
        if v.ring() != &g.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", v.ring(), g.ring)));
        }
        Ok(mat_vec(&g.ring, g.dim, &g.m, v))
    }

    pub fn act_inverse(&self, g: &GroupElement, v: &LieVector) -> Result<LieVector> {
        if v.ring() != &g.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", v.ring(), g.ring)));
        }
        Ok(mat_vec(&g.ring, g.dim, &g.inv, v))
    }

    /// `x_alpha(xi) v` computed letter by letter, without a matrix.
    pub fn act_root(&self, alpha: RootId, xi: &Elem, v: &LieVector) -> LieVector {
        let r = v.ring();
        let mut out = v.clone();
        for (row, col, val) in self.over(r).delta(alpha, xi) {
            let c = v.coeff(col);
            if !r.is_zero(c) {
                out.set(row, r.add(out.coeff(row), &r.mul(&val, c)));
            }
        }
        out
    }

    /// `w_alpha = x_alpha(1) x_{-alpha}(-1) x_alpha(1)`.
    pub fn weyl_lift(&self, alpha: RootId) -> GroupElement {
        let r = &self.ring;
        let s = self.system();
        let g = self.root_element(alpha, &r.one());
        let g = self.mul_root(&g, s.neg(alpha), &r.from_i64(-1));
        self.mul_root(&g, alpha, &r.one())
    }

    /// Entrywise image modulo an ideal, as an element of the group over `R/I`.
    pub fn reduce_element(&self, g: &GroupElement, ideal: &Ideal) -> Result<(AdjointGroup, GroupElement)> {
        let q = ideal.quotient()?;
        let target = self.over(&q.target);
        let m = g.m.iter().map(|x| q.apply(x)).collect();
        let inv = g.inv.iter().map(|x| q.apply(x)).collect();
        let word = g.word.iter().map(|l| Letter { root: l.root, xi: q.apply(&l.xi) }).collect();
        Ok((target, GroupElement { ring: q.target.clone(), dim: g.dim, m, inv, word }))
    }

    /// `g` lies in the principal congruence subgroup of level `I`.
    pub fn is_congruent(&self, g: &GroupElement, ideal: &Ideal) -> Result<bool> {
        Ok(self.reduce_element(g, ideal)?.1.is_identity())
    }

    /// `g in S(sigma)`: both `g` and `g^{-1}` send every `xi e_alpha`, `xi` an
    /// ideal generator of `sigma_alpha`, into `L(sigma)`.
    pub fn in_s_sigma(&self, g: &GroupElement, net: &Net) -> Result<bool> {
        if net.ring() != &g.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", net.ring(), g.ring)));
        }
        for a in self.system().ids() {
            let gens = net.ideal(a).nonzero_gens();
            if gens.is_empty() {
                continue;
            }
            let (col, icol) = (g.column(a.0), g.inverse_column(a.0));
            for xi in &gens {
                for v in [&col, &icol] {
                    let w = v.scale(xi);
                    if !in_l_sigma(&self.alg, &w, net)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `g in P_{alpha1,alpha2}`: `g` and `g^{-1}` stabilize
    /// `L_{alpha1,alpha2}`, tested on its generators.
    pub fn in_parabolic(&self, g: &GroupElement, f: &PairFunctional) -> bool {
        let s = self.system();
        let n = g.dim;
        let neg_rows: Vec<usize> = s.ids().filter(|&x| f.value(x) < 0).map(|x| x.0).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| self.alg.root_of(j).is_none_or(|x| f.value(x) >= 0)).collect();
        [&g.m, &g.inv].iter().all(|mat| cols.iter().all(|&j| neg_rows.iter().all(|&i| self.ring.is_zero(&mat[i * n + j]))))
    }

    /// Writes `g` as a product of `x_delta(c_delta)` over `Sigma_{alpha1,alpha2}`,
    /// or `None` when `g` is not in `U'`. Since `U'` is abelian, `c_delta` is
    /// read off a single entry: `g e_eps` has `e_{delta+eps}`-coefficient
    /// `N(delta, eps) c_delta` whenever `<delta, eps> = -1`.
    pub fn u_prime_factors(&self, g: &GroupElement, f: &PairFunctional) -> Option<Vec<(RootId, Elem)>> {
        let s = self.system();
        let r = &g.ring;
        let alg = &self.alg;
        let mut out = Vec::new();
        let mut prod = self.over(r).identity();
        for d in f.sigma() {
            let e = s.ids().find(|&e| s.pairing(d, e) == -1)?;
            let de = s.sum(d, e)?;
            let c = r.mul_i64(g.entry(alg.e(de), alg.e(e)), alg.n(d, e));
            prod = self.over(r).mul_root(&prod, d, &c);
            out.push((d, c));
        }
        (prod == *g).then_some(out)
    }

    /// `{"ring":..,"word":[["root",[coords],"xi"],..]}` plus the matrix on request.
    pub fn element_to_json(&self, g: &GroupElement, emit_matrix: bool) -> Value {
        let s = self.system();
        let r = &g.ring;
        let word: Vec<Value> = g.word.iter().map(|l| json!(["root", s.coords(l.root), r.format(&l.xi)])).collect();
        let mut out = json!({"ring": RingDescriptor::from(r), "word": word});
        if emit_matrix {
            let rows: Vec<Vec<String>> = (0..g.dim).map(|i| (0..g.dim).map(|j| r.format(g.entry(i, j))).collect()).collect();
            out["matrix"] = json!(rows);
        }
        out
    }

    /// Parses the word of an element and rebuilds it over this group's ring.
    pub fn word_from_json(&self, v: &Value) -> Result<Vec<Letter>> {
        let bad = |m: String| Error::Parse(format!("group element: {m}"));
        let items = v.get("word").and_then(Value::as_array).ok_or_else(|| bad("missing word".into()))?;
        let mut out = Vec::new();
        for it in items {
            let arr = it.as_array().filter(|a| a.len() == 3 && a[0] == "root").ok_or_else(|| bad(it.to_string()))?;
            let coords: Vec<i64> = serde_json::from_value(arr[1].clone()).map_err(|e| bad(e.to_string()))?;
            let xi = arr[2].as_str().ok_or_else(|| bad(it.to_string()))?;
            out.push(Letter { root: self.system().lookup(&coords)?, xi: self.ring.parse(xi)? });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Embedding;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn d4(ring: &str) -> AdjointGroup {
        let alg = Arc::new(ChevalleyAlgebra::from_label("D4").unwrap());
        AdjointGroup::new(alg, &ring.parse().unwrap())
    }

    #[test]
    fn root_element_examples() {
        let g = d4("int");
        let r = g.ring().clone();
        let s = g.system().clone();
        let alg = g.algebra().clone();
        for a in s.ids() {
            assert!(g.root_element(a, &r.zero()).is_identity());
            let x = g.root_element(a, &r.from_i64(5));
            let ea = alg.e_vector(&r, a, r.one());
            assert_eq!(g.act(&x, &ea).unwrap(), ea);
            // x_a(xi) e_{-a} = e_{-a} + xi h_a - xi^2 e_a
            let ena = alg.e_vector(&r, s.neg(a), r.one());
            let expect = ena.add(&alg.coroot_vector(&r, a).scale(&r.from_i64(5))).sub(&ea.scale(&r.from_i64(25)));
            assert_eq!(g.act(&x, &ena).unwrap(), expect);
            // x_a(1) h_a = h_a - 2 e_a
            let ha = alg.coroot_vector(&r, a);
            let x1 = g.root_element(a, &r.one());
            assert_eq!(g.act(&x1, &ha).unwrap(), ha.sub(&ea.scale(&r.from_i64(2))));
            assert!(x.inverse_witness_holds());
        }
    }

    #[test]
    fn one_parameter_law_exhaustive_z4() {
        let g = d4("mod:4");
        let r = g.ring().clone();
        let els = r.elements().unwrap();
        for a in g.system().ids() {
            for x in &els {
                for y in &els {
                    let lhs = g.mul(&g.root_element(a, x), &g.root_element(a, y));
                    assert_eq!(lhs, g.root_element(a, &r.add(x, y)));
                }
            }
        }
    }

    #[test]
    fn chevalley_commutator_formula_f3() {
        let g = d4("mod:3");
        let r = g.ring().clone();
        let s = g.system().clone();
        let alg = g.algebra().clone();
        let els = r.elements().unwrap();
        for a in s.ids() {
            for b in s.ids() {
                if a == b || s.neg(a) == b {
                    continue;
                }
                for x in &els {
                    for y in &els {
                        let c = g.commutator(&g.root_element(a, x), &g.root_element(b, y));
                        match (s.pairing(a, b), s.sum(a, b)) {
                            (0, None) => assert!(c.is_identity()),
                            (-1, Some(ab)) => {
                                let expect = g.root_element(ab, &r.mul_i64(&r.mul(x, y), alg.n(a, b)));
                                assert_eq!(c, expect);
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_lift_permutes_root_vectors() {
        let g = d4("int");
        let r = g.ring().clone();
        let s = g.system().clone();
        let alg = g.algebra().clone();
        for a in s.ids() {
            let w = g.weyl_lift(a);
            let w2 = g.mul(&w, &w);
            for b in s.ids() {
                let img = g.act(&w, &alg.e_vector(&r, b, r.one())).unwrap();
                let target = s.reflect(b, a);
                assert_eq!(img.support(), vec![target.0]);
                assert!(r.is_unit(img.coeff(target.0)));
                let sq = g.act(&w2, &alg.e_vector(&r, b, r.one())).unwrap();
                assert_eq!(sq.support(), vec![b.0]);
            }
            // on the torus w acts as the reflection
            for i in 0..s.rank() {
                let hi = alg.basis_vector(&r, alg.h(i), r.one());
                let img = g.act(&w, &hi).unwrap();
                let k = s.pairing(s.simple(i), a);
                let expect = hi.sub(&alg.coroot_vector(&r, a).scale(&r.from_i64(k)));
                assert_eq!(img, expect);
            }
        }
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let g = d4("mod:4");
        let r = g.ring().clone();
        let two = Ideal::from_i64(&r, &[2]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = g.system().n_roots();
        for _ in 0..20 {
            let word = |rng: &mut ChaCha8Rng| -> Vec<Letter> {
                (0..4).map(|_| Letter { root: RootId(rng.gen_range(0..n)), xi: r.from_i64(rng.gen_range(0..4)) }).collect()
            };
            let (x, y) = (g.from_word(&word(&mut rng)), g.from_word(&word(&mut rng)));
            let (q, rx) = g.reduce_element(&x, &two).unwrap();
            let (_, ry) = g.reduce_element(&y, &two).unwrap();
            let (_, rxy) = g.reduce_element(&g.mul(&x, &y), &two).unwrap();
            assert_eq!(q.mul(&rx, &ry), rxy);
        }
        let a = RootId(0);
        assert!(g.is_congruent(&g.root_element(a, &r.from_i64(2)), &two).unwrap());
        assert!(!g.is_congruent(&g.root_element(a, &r.one()), &two).unwrap());
    }

    #[test]
    fn s_sigma_and_parabolic_examples() {
        let emb = Arc::new(Embedding::from_preset("D4:4A1", None).unwrap());
        let alg = Arc::new(ChevalleyAlgebra::new(emb.sys.clone()));
        let f2 = Ring::modular(2).unwrap();
        let g = AdjointGroup::new(alg, &f2);
        let net = Net::uniform(emb.clone(), &f2, Ideal::zero(&f2)).unwrap();
        let s = emb.sys.clone();
        assert!(g.in_s_sigma(&g.identity(), &net).unwrap());
        for a in s.ids() {
            let x = g.root_element(a, &f2.one());
            assert_eq!(g.in_s_sigma(&x, &net).unwrap(), emb.sub.contains(a));
        }
        let f3 = Ring::modular(3).unwrap();
        let g3 = g.over(&f3);
        let (a1, a2) = (s.lookup(&[2, -2, 0, 0]).unwrap(), s.lookup(&[2, 2, 0, 0]).unwrap());
        let f = PairFunctional::new(&s, a1, a2).unwrap();
        for c in s.ids() {
            let x = g3.root_element(c, &f3.one());
            assert_eq!(g3.in_parabolic(&x, &f), f.value(c) >= 0, "{}", s.format_root(c));
            if f.value(c) == 0 {
                assert!(g3.in_parabolic(&g3.weyl_lift(c), &f));
            }
        }
    }

    fn orthogonal_pairs(s: &RootSystem) -> Vec<(RootId, RootId)> {
        s.ids().flat_map(|a| s.ids().map(move |b| (a, b))).filter(|&(a, b)| a < b && s.pairing(a, b) == 0 && s.sum(a, b).is_none()).collect()
    }

    #[test]
    fn u_prime_is_abelian_f3() {
        let g = d4("mod:3");
        let r = g.ring().clone();
        let s = g.system().clone();
        for (a1, a2) in orthogonal_pairs(&s).into_iter().step_by(7) {
            let sigma = PairFunctional::new(&s, a1, a2).unwrap().sigma();
            for &c in &sigma {
                for &d in &sigma {
                    for x in r.elements().unwrap() {
                        let y = r.from_i64(2);
                        assert!(g.commutator(&g.root_element(c, &x), &g.root_element(d, &y)).is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_levi_normalizes_u_prime() {
        let g = d4("mod:3");
        let r = g.ring().clone();
        let s = g.system().clone();
        for (a1, a2) in orthogonal_pairs(&s).into_iter().step_by(5) {
            let f = PairFunctional::new(&s, a1, a2).unwrap();
            for b in s.ids().filter(|&b| f.value(b) == 0) {
                for c in f.sigma() {
                    let u = g.conj(&g.root_element(b, &r.one()), &g.root_element(c, &r.one()));
                    assert!(g.u_prime_factors(&u, &f).is_some());
                    assert!(g.u_prime_factors(&g.root_element(s.neg(c), &r.one()), &f).is_none());
                }
            }
        }
    }

    #[test]
    fn json_word_round_trip() {
        let g = d4("mod:3");
        let r = g.ring().clone();
        let x = g.from_word(&[Letter { root: RootId(3), xi: r.from_i64(2) }, Letter { root: RootId(17), xi: r.one() }]);
        let j = g.element_to_json(&x, true);
        assert_eq!(j["matrix"].as_array().unwrap().len(), 28);
        assert_eq!(g.from_word(&g.word_from_json(&j).unwrap()), x);
    }
}
