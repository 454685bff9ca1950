//! Tandems `(h x_alpha(xi) h^{-1}, h(xi e_alpha))`, bitandems, and the
//! manipulations built on them.

pub mod bitandem;
pub mod extraction;
pub mod uprime;

use crate::chevalgebra::LieVector;
use crate::chevgroup::{AdjointGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exactrings::{Elem, Ring};
use crate::rootsys::{RootId, RootSystem};

pub use bitandem::{bitandem_quadratic_decomposition, special_bitandem, BitandemDecomposition, BitandemWithParameter};
pub use extraction::{extract_search, extract_to_uprime, ExtractionCase, Extraction};
pub use uprime::{u_prime_generators, u_prime_reduce, verify_u_prime_reduce};

/// A tandem together with the data it was built from. Equality compares
/// `(g, l)` only.
#[derive(Clone, Debug)]
pub struct Tandem {
    pub g: GroupElement,
    pub l: LieVector,
    pub h: GroupElement,
    pub alpha: RootId,
    pub xi: Elem,
}

impl PartialEq for Tandem {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.l == other.l
    }
}

pub fn make_tandem(group: &AdjointGroup, h: &GroupElement, alpha: RootId, xi: &Elem) -> Result<Tandem> {
    let r = group.ring();
    let g = group.conj(h, &group.root_element(alpha, xi));
    let l = group.act(h, &group.algebra().e_vector(r, alpha, xi.clone()))?;
    Ok(Tandem { g, l, h: h.clone(), alpha, xi: xi.clone() })
}

/// `g e_beta = e_beta + [l, e_beta] - l^{-beta} l`, checked exactly.
pub fn verify_tandem_action(group: &AdjointGroup, t: &Tandem, beta: RootId) -> Result<bool> {
    let r = group.ring();
    let alg = group.algebra();
    let eb = alg.e_vector(r, beta, r.one());
    let lhs = group.act(&t.g, &eb)?;
    let coef = t.l.root_coeff(group.system().neg(beta));
    let rhs = eb.add(&alg.bracket(&t.l, &eb)?).sub(&t.l.scale(coef));
    Ok(lhs == rhs)
}

/// `x_alpha(xi) v = v + xi [e_alpha, v] - xi^2 v^{-alpha} e_alpha` for every
/// root, as an identity of polynomials in `xi` and the coordinates of `v`.
pub fn verify_formula_sharp(group: &AdjointGroup) -> Result<bool> {
    let alg = group.algebra();
    let s = group.system();
    let d = alg.dim();
    let mut vars = vec!["xi".to_string()];
    vars.extend((0..d).map(|i| format!("v{i}")));
    let p = Ring::polynomial(Ring::integers(), vars);
    let xi = p.var(0).expect("xi");
    let v = LieVector::from_coeffs(&p, (0..d).map(|i| p.var(i + 1).expect("v")).collect());
    for a in s.ids() {
        let lhs = group.act_root(a, &xi, &v);
        let ea = alg.e_vector(&p, a, p.one());
        let quad = p.mul(&p.mul(&xi, &xi), v.root_coeff(s.neg(a)));
        let rhs = v.add(&alg.bracket(&ea, &v)?.scale(&xi)).sub(&ea.scale(&quad));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rewrites the provenance of `t` with root `beta`: with `w` a product of
/// Weyl lifts sending `alpha` to `beta`, `h x_alpha(xi) h^{-1} =
/// (h w^{-1}) x_beta(+-xi) (h w^{-1})^{-1}`.
pub fn change_root(group: &AdjointGroup, t: &Tandem, beta: RootId) -> Result<Tandem> {
    let s: &RootSystem = group.system();
    let r = group.ring();
    let all: Vec<RootId> = s.ids().collect();
    let path = s
        .reflection_path(t.alpha, beta, &all)
        .ok_or_else(|| Error::PreconditionViolation(format!("no Weyl path to {}", s.format_root(beta))))?;
    // path applies reflections in order, so w = w_k ... w_1
    let mut w = group.identity();
    for &a in &path {
        w = group.mul(&group.weyl_lift(a), &w);
    }
    let h2 = group.mul(&t.h, &w.inverse());
    for xi in [t.xi.clone(), r.neg(&t.xi)] {
        let cand = make_tandem(group, &h2, beta, &xi)?;
        if cand == *t {
            return Ok(cand);
        }
    }
    Err(Error::PreconditionViolation("Weyl transport did not reproduce the tandem".into()))
}
