//! Bitandems with parameter `g(t) = h x_{alpha1}(t xi) x_{alpha2}(t zeta) h^{-1}`,
//! `l(t) = h (t xi e_{alpha1} + t zeta e_{alpha2})`.

use crate::chevalgebra::LieVector;
use crate::chevgroup::{AdjointGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exactrings::{Elem, Ring};
use crate::rootsys::RootId;

use super::Tandem;

#[derive(Clone, Debug)]
pub struct BitandemWithParameter {
    pub h: GroupElement,
    pub alpha1: RootId,
    pub alpha2: RootId,
    pub xi: Elem,
    pub zeta: Elem,
}

impl BitandemWithParameter {
    pub fn new(group: &AdjointGroup, h: GroupElement, alpha1: RootId, alpha2: RootId, xi: Elem, zeta: Elem) -> Result<Self> {
        let s = group.system();
        if s.pairing(alpha1, alpha2) != 0 || s.sum(alpha1, alpha2).is_some() {
            return Err(Error::NotOrthogonal(s.coords(alpha1).to_vec(), s.coords(alpha2).to_vec()));
        }
        Ok(BitandemWithParameter { h, alpha1, alpha2, xi, zeta })
    }

    pub fn g_at(&self, group: &AdjointGroup, t: &Elem) -> GroupElement {
        let r = group.ring();
        let inner = group.root_element(self.alpha1, &r.mul(t, &self.xi));
        let inner = group.mul_root(&inner, self.alpha2, &r.mul(t, &self.zeta));
        group.conj(&self.h, &inner)
    }

    pub fn l_at(&self, group: &AdjointGroup, t: &Elem) -> Result<LieVector> {
        let r = group.ring();
        let alg = group.algebra();
        let v = alg.e_vector(r, self.alpha1, r.mul(t, &self.xi)).add(&alg.e_vector(r, self.alpha2, r.mul(t, &self.zeta)));
        group.act(&self.h, &v)
    }

    /// `l = l(1)`.
    pub fn l(&self, group: &AdjointGroup) -> Result<LieVector> {
        self.l_at(group, &group.ring().one())
    }
}

/// The special bitandem of a tandem `(g, l)`: `h = g`, `xi = l^{-alpha2}`,
/// `zeta = -l^{-alpha1}`.
pub fn special_bitandem(group: &AdjointGroup, t: &Tandem, alpha1: RootId, alpha2: RootId) -> Result<BitandemWithParameter> {
    let s = group.system();
    let r = group.ring();
    let xi = t.l.root_coeff(s.neg(alpha2)).clone();
    let zeta = r.neg(t.l.root_coeff(s.neg(alpha1)));
    BitandemWithParameter::new(group, t.g.clone(), alpha1, alpha2, xi, zeta)
}

#[derive(Clone, Debug)]
pub struct BitandemDecomposition {
    /// The `t`-coefficient of `g(t) v`.
    pub linear: LieVector,
    /// The `t^2`-coefficient `w`.
    pub quadratic: LieVector,
    /// `linear = [l, v]`.
    pub linear_is_bracket: bool,
    /// `2w = [l, [l, v]]`.
    pub doubled_quadratic_holds: bool,
}

impl BitandemDecomposition {
    pub fn holds(&self) -> bool {
        self.linear_is_bracket && self.doubled_quadratic_holds
    }
}

/// Computes `g(t) v` over `base[t]` and splits it by powers of `t`.
pub fn bitandem_quadratic_decomposition(group: &AdjointGroup, b: &BitandemWithParameter, v: &LieVector) -> Result<BitandemDecomposition> {
    let base = group.ring();
    if v.ring() != base {
        return Err(Error::RingMismatch(format!("{} vs {base}", v.ring())));
    }
    let p = Ring::polynomial(base.clone(), ["t"]);
    let gp = group.over(&p);
    let t = p.var(0).expect("t");
    let lift = |x: &Elem| p.embed_base(x);
    let hp = b.h.map_ring(&p, lift);
    let vp = v.map_with(&p, lift);
    let w = gp.act_inverse(&hp, &vp)?;
    let w = gp.act_root(b.alpha2, &p.mul(&t, &lift(&b.zeta)), &w);
    let w = gp.act_root(b.alpha1, &p.mul(&t, &lift(&b.xi)), &w);
    let gv = gp.act(&hp, &w)?;

    let d = v.dim();
    let mut parts = vec![vec![base.zero(); d]; 3];
    for i in 0..d {
        let Elem::Poly(poly) = gv.coeff(i) else { unreachable!("polynomial ring element") };
        for (k, c) in poly.coefficients_in(0).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k > 2 {
                return Err(Error::DecompositionFailure(format!("t^{k} term at basis index {i}")));
            }
            parts[k][i] = c.constant_term_if_constant().expect("single variable");
        }
    }
    let constant = LieVector::from_coeffs(base, parts[0].clone());
    if constant != *v {
        return Err(Error::DecompositionFailure("constant term differs from v".into()));
    }
    let linear = LieVector::from_coeffs(base, parts[1].clone());
    let quadratic = LieVector::from_coeffs(base, parts[2].clone());
    let alg = group.algebra();
    let l = b.l(group)?;
    let lv = alg.bracket(&l, v)?;
    let llv = alg.bracket(&l, &lv)?;
    Ok(BitandemDecomposition {
        linear_is_bracket: linear == lv,
        doubled_quadratic_holds: quadratic.scale(&base.from_i64(2)) == llv,
        linear,
        quadratic,
    })
}
