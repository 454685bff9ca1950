//! The element `g_2` of the reduction lemma.
//!
//! Given `h` with `h = x_gamma(xi)` modulo `I` and a pair `(-alpha1, alpha2)`
//! admissible in `Delta`, the chain
//! `g = h x_{-alpha1}(1) h^{-1}`, `l = h e_{-alpha1}`,
//! `g_1 = g (x_{alpha1}(l^{-alpha2}) x_{alpha2}(-l^{-alpha1})) g^{-1}`,
//! `g_2 = [g_1, x_{alpha1}(1)]`
//! reduces to `x_{gamma+alpha2}(+-xi)` modulo `I`.

use crate::chevalgebra::LieVector;
use crate::error::{Error, Result};
use crate::exactrings::{Elem, Ideal};
use crate::rootsys::{Embedding, RootId};
use crate::starcond::is_admissible;

use super::{AdjointGroup, GroupElement};

#[derive(Clone, Debug)]
pub struct ReductionWitness {
    pub g: GroupElement,
    pub l: LieVector,
    pub g1: GroupElement,
    pub g2: GroupElement,
    /// `gamma + alpha2`.
    pub target: RootId,
    /// `xi` modulo `I`, read off `h`.
    pub xi_bar: Elem,
    /// `+1` or `-1`; `+1` whenever both signs fit.
    pub sign: i64,
}

#[allow(clippy::too_many_arguments)]
pub fn reduction_witness(
    group: &AdjointGroup,
    emb: &Embedding,
    h: &GroupElement,
    gamma: RootId,
    alpha1: RootId,
    alpha2: RootId,
    ideal: &Ideal,
) -> Result<ReductionWitness> {
    let s = group.system();
    let r = group.ring();
    let m_a1 = s.neg(alpha1);
    let not_adm = || Error::PairNotAdmissible(s.coords(m_a1).to_vec(), s.coords(alpha2).to_vec());
    match is_admissible(s, &emb.sub, m_a1, alpha2) {
        Ok(a) if a.admissible => {}
        Ok(_) | Err(Error::NotInDelta(_)) | Err(Error::NotOrthogonal(..)) => return Err(not_adm()),
        Err(e) => return Err(e),
    }
    if s.pairing(gamma, m_a1) != -1 || s.pairing(gamma, alpha2) != -1 {
        return Err(Error::PreconditionViolation(format!(
            "{} must pair to -1 with -alpha1 and alpha2",
            s.format_root(gamma)
        )));
    }
    let target = s.sum(gamma, alpha2).expect("pairing -1 gives a root sum");

    let (quot, hbar) = group.reduce_element(h, ideal)?;
    let qr = quot.ring().clone();
    let alg = group.algebra();
    // x_gamma(xi) e_{alpha2} = e_{alpha2} + N(gamma, alpha2) xi e_{gamma+alpha2}
    let xi_bar = qr.mul_i64(hbar.entry(alg.e(target), alg.e(alpha2)), alg.n(gamma, alpha2));
    if hbar != quot.root_element(gamma, &xi_bar) {
        return Err(Error::PreconditionViolation(format!(
            "h is not a root element x_{} modulo {ideal}",
            s.format_root(gamma)
        )));
    }

    let g = group.conj(h, &group.root_element(m_a1, &r.one()));
    let l = group.act(h, &alg.e_vector(r, m_a1, r.one()))?;
    let inner = group.root_element(alpha1, l.root_coeff(s.neg(alpha2)));
    let inner = group.mul_root(&inner, alpha2, &r.neg(l.root_coeff(m_a1)));
    let g1 = group.conj(&g, &inner);
    let g2 = group.commutator(&g1, &group.root_element(alpha1, &r.one()));

    let (_, g2bar) = group.reduce_element(&g2, ideal)?;
    let sign = if g2bar == quot.root_element(target, &xi_bar) {
        1
    } else if g2bar == quot.root_element(target, &qr.neg(&xi_bar)) {
        -1
    } else {
        return Err(Error::ReductionMismatch(format!(
            "g2 is not x_{}(+-{}) modulo {ideal}",
            s.format_root(target),
            qr.format(&xi_bar)
        )));
    };
    Ok(ReductionWitness { g, l, g1, g2, target, xi_bar, sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalgebra::ChevalleyAlgebra;
    use crate::exactrings::Ring;
    use std::sync::Arc;

    /// A pair `(-a1, a2)` admissible in Delta and a gamma pairing to -1 with both.
    fn setup(spec: &str) -> (Arc<Embedding>, RootId, RootId, RootId) {
        let emb = Arc::new(Embedding::from_preset(spec, None).unwrap());
        let s = emb.sys.clone();
        for gamma in emb.sub.complement(&s) {
            if let Some((b1, b2, _)) = crate::starcond::find_admissible_pair(&s, &emb.sub, gamma) {
                return (emb, gamma, s.neg(b1), b2);
            }
        }
        panic!("no admissible pair");
    }

    #[test]
    fn witness_over_z4_with_tail() {
        let (emb, gamma, a1, a2) = setup("D4:4A1");
        let alg = Arc::new(ChevalleyAlgebra::new(emb.sys.clone()));
        let r = Ring::modular(4).unwrap();
        let g = AdjointGroup::new(alg, &r);
        let two = Ideal::from_i64(&r, &[2]);
        let other = emb.sub.complement(&emb.sys)[3];
        for xi in 0..4 {
            let h = g.mul(&g.root_element(gamma, &r.from_i64(xi)), &g.root_element(other, &r.from_i64(2)));
            let w = reduction_witness(&g, &emb, &h, gamma, a1, a2, &two).unwrap();
            assert_eq!(w.target, emb.sys.sum(gamma, a2).unwrap());
            let (_, g2bar) = g.reduce_element(&w.g2, &two).unwrap();
            assert_eq!(g2bar.is_identity(), xi % 2 == 0);
        }
    }

    #[test]
    fn witness_exact_and_in_e7() {
        let (emb, gamma, a1, a2) = setup("E7:A7");
        let alg = Arc::new(ChevalleyAlgebra::new(emb.sys.clone()));
        let r = Ring::modular(3).unwrap();
        let g = AdjointGroup::new(alg, &r);
        let zero = Ideal::zero(&r);
        let h = g.root_element(gamma, &r.from_i64(2));
        let w = reduction_witness(&g, &emb, &h, gamma, a1, a2, &zero).unwrap();
        assert_eq!(w.xi_bar, r.from_i64(2));
        assert!([1, -1].contains(&w.sign));
    }

    #[test]
    fn rejects_bad_pairs() {
        let (emb, gamma, a1, _) = setup("D4:4A1");
        let alg = Arc::new(ChevalleyAlgebra::new(emb.sys.clone()));
        let r = Ring::modular(2).unwrap();
        let g = AdjointGroup::new(alg, &r);
        let h = g.root_element(gamma, &r.one());
        let res = reduction_witness(&g, &emb, &h, gamma, a1, a1, &Ideal::zero(&r));
        assert!(matches!(res, Err(Error::PairNotAdmissible(..))));
    }
}
