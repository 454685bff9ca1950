//! Moving a tandem into `U'_{alpha1,alpha2}` over a field, keeping the
//! offending coefficient `l^gamma` visible at `gamma + alpha1 + alpha2`.

use crate::chevalgebra::LieVector;
use crate::chevgroup::{AdjointGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exactrings::Elem;
use crate::rootsys::{Embedding, RootId};
use crate::starcond::{is_admissible, PairFunctional};

use super::{make_tandem, special_bitandem, Tandem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractionCase {
    /// `l^{-alpha1} = 0`.
    Direct,
    /// `l^{-alpha1} != 0`, through the special bitandem at some `t`.
    Bitandem,
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub case: ExtractionCase,
    pub t: Option<Elem>,
    pub g1: GroupElement,
    pub result: Tandem,
    /// `gamma + alpha1 + alpha2`.
    pub target: RootId,
    /// `l_2^{gamma+alpha1+alpha2}`.
    pub coefficient: Elem,
    pub g1_in_parabolic: bool,
    pub in_u_prime: bool,
}

impl Extraction {
    pub fn l2(&self) -> &LieVector {
        &self.result.l
    }
}

fn check_pair(group: &AdjointGroup, emb: &Embedding, gamma: RootId, alpha1: RootId, alpha2: RootId) -> Result<RootId> {
    let s = group.system();
    let not_adm = || Error::PairNotAdmissible(s.coords(alpha1).to_vec(), s.coords(alpha2).to_vec());
    match is_admissible(s, &emb.sub, alpha1, alpha2) {
        Ok(a) if a.admissible => {}
        Ok(_) | Err(Error::NotInDelta(_)) | Err(Error::NotOrthogonal(..)) => return Err(not_adm()),
        Err(e) => return Err(e),
    }
    if s.pairing(gamma, alpha1) != -1 || s.pairing(gamma, alpha2) != -1 {
        return Err(Error::PreconditionViolation(format!("{} must pair to -1 with the pair", s.format_root(gamma))));
    }
    Ok(s.sum(s.sum(gamma, alpha1).expect("root"), alpha2).expect("root"))
}

/// One run of the procedure. `t` is used only in the bitandem case.
pub fn extract_to_uprime(
    group: &AdjointGroup,
    emb: &Embedding,
    tandem: &Tandem,
    gamma: RootId,
    alpha1: RootId,
    alpha2: RootId,
    t: &Elem,
) -> Result<Extraction> {
    let target = check_pair(group, emb, gamma, alpha1, alpha2)?;
    let s = group.system();
    let r = group.ring();
    let f = PairFunctional::new(s, alpha1, alpha2)?;
    let (case, g1, t_used, second) = if r.is_zero(tandem.l.root_coeff(s.neg(alpha1))) {
        let first = make_tandem(group, &tandem.g, alpha1, &r.one())?;
        (ExtractionCase::Direct, first.g.clone(), None, make_tandem(group, &first.g, alpha2, &r.one())?)
    } else {
        let sb = special_bitandem(group, tandem, alpha1, alpha2)?;
        let g1 = sb.g_at(group, t);
        let second = make_tandem(group, &g1, alpha1, &r.one())?;
        (ExtractionCase::Bitandem, g1, Some(t.clone()), second)
    };
    Ok(Extraction {
        case,
        t: t_used,
        g1_in_parabolic: group.in_parabolic(&g1, &f),
        in_u_prime: group.u_prime_factors(&second.g, &f).is_some(),
        coefficient: second.l.root_coeff(target).clone(),
        g1,
        result: second,
        target,
    })
}

/// Runs the procedure, searching `t` over the (finite) ring in the bitandem
/// case for a nonzero target coefficient.
pub fn extract_search(group: &AdjointGroup, emb: &Embedding, tandem: &Tandem, gamma: RootId, alpha1: RootId, alpha2: RootId) -> Result<Extraction> {
    let r = group.ring();
    let first = extract_to_uprime(group, emb, tandem, gamma, alpha1, alpha2, &r.one())?;
    if first.case == ExtractionCase::Direct || !r.is_zero(&first.coefficient) {
        return Ok(first);
    }
    for t in r.elements()? {
        let e = extract_to_uprime(group, emb, tandem, gamma, alpha1, alpha2, &t)?;
        if !r.is_zero(&e.coefficient) {
            return Ok(e);
        }
    }
    Err(Error::NoWitness)
}
