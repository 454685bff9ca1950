//! The abelian group `U'` on `Sigma_{alpha1,alpha2}` and the commutator step
//! that shortens products of its root elements.

use crate::chevalgebra::{ChevalleyAlgebra, Net};
use crate::chevgroup::AdjointGroup;
use crate::error::{Error, Result};
use crate::exactrings::{Elem, Ideal, Ring};
use crate::rootsys::RootId;
use crate::starcond::PairFunctional;

/// The roots of `Sigma` with their ideals in `net`.
pub fn u_prime_generators(f: &PairFunctional, net: &Net) -> Vec<(RootId, Ideal)> {
    f.sigma().into_iter().map(|g| (g, net.ideal(g).clone())).collect()
}

/// Factor list of `[x_beta(1), prod x_{gamma_i}(xi_i)]` for `varpi(beta) = 0`:
/// `x_{beta+gamma}(N(beta, gamma) xi)` when `<beta, gamma> = -1`, nothing
/// otherwise. Zero parameters are dropped.
pub fn u_prime_reduce(
    alg: &ChevalleyAlgebra,
    ring: &Ring,
    f: &PairFunctional,
    factors: &[(RootId, Elem)],
    beta: RootId,
) -> Result<Vec<(RootId, Elem)>> {
    let s = alg.system();
    if f.value(beta) != 0 {
        return Err(Error::PreconditionViolation(format!("varpi({}) is not 0", s.format_root(beta))));
    }
    for (i, (g, _)) in factors.iter().enumerate() {
        if f.value(*g) != 2 {
            return Err(Error::PreconditionViolation(format!("{} is not in Sigma", s.format_root(*g))));
        }
        if factors[..i].iter().any(|(g2, _)| g2 == g) {
            return Err(Error::PreconditionViolation(format!("{} repeated", s.format_root(*g))));
        }
    }
    Ok(factors
        .iter()
        .filter(|(g, xi)| !ring.is_zero(xi) && s.pairing(beta, *g) == -1)
        .map(|(g, xi)| (s.sum(beta, *g).expect("pairing -1"), ring.mul_i64(xi, alg.n(beta, *g))))
        .collect())
}

/// Compares `u_prime_reduce` with the commutator computed from matrices.
pub fn verify_u_prime_reduce(group: &AdjointGroup, f: &PairFunctional, factors: &[(RootId, Elem)], beta: RootId) -> Result<bool> {
    let r = group.ring();
    let out = u_prime_reduce(group.algebra(), r, f, factors, beta)?;
    let prod = factors.iter().fold(group.identity(), |g, (a, xi)| group.mul_root(&g, *a, xi));
    let comm = group.commutator(&group.root_element(beta, &r.one()), &prod);
    let expect = out.iter().fold(group.identity(), |g, (a, xi)| group.mul_root(&g, *a, xi));
    Ok(comm == expect)
}

#[cfg(test)]
mod tests {
    use super::super::tests::group;
    use super::*;
    use crate::rootsys::Embedding;
    use crate::starcond::find_admissible_pair;
    use std::sync::Arc;

    #[test]
    fn examples_d4() {
        let g = group("D4", "mod:3");
        let r = g.ring().clone();
        let s = g.system().clone();
        let (a1, a2) = (s.lookup(&[2, -2, 0, 0]).unwrap(), s.lookup(&[2, 2, 0, 0]).unwrap());
        let f = PairFunctional::new(&s, a1, a2).unwrap();
        let sigma = f.sigma();
        let levi: Vec<RootId> = s.ids().filter(|&b| f.value(b) == 0).collect();
        // every factor orthogonal to beta: empty output
        let beta = levi[0];
        let orth: Vec<(RootId, Elem)> = sigma.iter().filter(|&&c| s.pairing(beta, c) == 0).map(|&c| (c, r.one())).collect();
        assert!(!orth.is_empty());
        assert!(u_prime_reduce(g.algebra(), &r, &f, &orth, beta).unwrap().is_empty());
        for &b in &levi {
            for &c in &sigma {
                let out = u_prime_reduce(g.algebra(), &r, &f, &[(c, r.from_i64(2))], b).unwrap();
                if s.pairing(b, c) == -1 {
                    assert_eq!(out.len(), 1);
                    assert_eq!(out[0].0, s.sum(b, c).unwrap());
                } else {
                    assert!(out.is_empty());
                }
                for &d in &sigma {
                    if d != c {
                        assert!(verify_u_prime_reduce(&g, &f, &[(c, r.one()), (d, r.from_i64(2))], b).unwrap());
                    }
                }
            }
        }
        assert!(u_prime_reduce(g.algebra(), &r, &f, &[(a1, r.one())], a1).is_err());
    }

    #[test]
    fn generators_follow_the_net() {
        let emb = Arc::new(Embedding::from_preset("D4:4A1", None).unwrap());
        let s = emb.sys.clone();
        let f2 = Ring::modular(2).unwrap();
        let net = Net::uniform(emb.clone(), &f2, Ideal::zero(&f2)).unwrap();
        let gamma = emb.sub.complement(&s)[0];
        let (b1, b2, _) = find_admissible_pair(&s, &emb.sub, gamma).unwrap();
        let f = PairFunctional::new(&s, b1, b2).unwrap();
        let gens = u_prime_generators(&f, &net);
        let units = gens.iter().filter(|(_, i)| i.is_unit_ideal().unwrap()).count();
        assert_eq!(gens.len(), 6);
        assert_eq!(units, 2);
    }
}
