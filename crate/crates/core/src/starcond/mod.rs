//! The functional `varpi`, the sets `Sigma`, admissible pairs and the
//! decision procedure for condition (*).

mod certificate;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{Embedding, RootId, RootSystem, Subsystem};

pub use certificate::{
    check_star_for, MemberEntry, OrbitEntry, PairEntry, SeparationEntry, StarCertificate, StarReport, CERTIFICATE_SCHEMA,
    CERTIFICATE_VERSION,
};

/// `varpi(gamma) = <alpha1 + alpha2, gamma>` for an orthogonal pair.
#[derive(Clone, Debug)]
pub struct PairFunctional {
    pub alpha1: RootId,
    pub alpha2: RootId,
    values: Vec<i8>,
}

impl PairFunctional {
    pub fn new(sys: &RootSystem, alpha1: RootId, alpha2: RootId) -> Result<PairFunctional> {
        if sys.pairing(alpha1, alpha2) != 0 {
            return Err(Error::NotOrthogonal(sys.coords(alpha1).to_vec(), sys.coords(alpha2).to_vec()));
        }
        let values = sys.ids().map(|g| (sys.pairing(alpha1, g) + sys.pairing(alpha2, g)) as i8).collect();
        Ok(PairFunctional { alpha1, alpha2, values })
    }

    pub fn value(&self, gamma: RootId) -> i64 {
        self.values[gamma.0] as i64
    }

    /// The roots with `varpi = 2`.
    pub fn sigma(&self) -> Vec<RootId> {
        (0..self.values.len()).filter(|&i| self.values[i] == 2).map(RootId).collect()
    }
}

pub fn sigma_set(sys: &RootSystem, alpha1: RootId, alpha2: RootId) -> Result<Vec<RootId>> {
    Ok(PairFunctional::new(sys, alpha1, alpha2)?.sigma())
}

/// A root `beta` of the subsystem separating two roots of `Sigma \ Delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub gamma1: RootId,
    pub gamma2: RootId,
    pub beta: RootId,
}

#[derive(Clone, Debug)]
pub struct Admissibility {
    pub admissible: bool,
    /// One witness per unordered pair, in order of `(gamma1, gamma2)`.
    pub separations: Vec<Separation>,
    /// The first pair without a witness, when not admissible.
    pub failing: Option<(RootId, RootId)>,
}

/// Decides whether `(alpha1, alpha2)` is admissible for `sub`: every two
/// distinct roots of `Sigma \ Delta` are told apart by some `beta` in the
/// subsystem with `varpi(beta) = 0`.
pub fn is_admissible(sys: &RootSystem, sub: &Subsystem, alpha1: RootId, alpha2: RootId) -> Result<Admissibility> {
    for a in [alpha1, alpha2] {
        if !sub.contains(a) {
            return Err(Error::NotInDelta(sys.coords(a).to_vec()));
        }
    }
    let f = PairFunctional::new(sys, alpha1, alpha2)?;
    Ok(admissibility(sys, sub, &f))
}

fn admissibility(sys: &RootSystem, sub: &Subsystem, f: &PairFunctional) -> Admissibility {
    let outside: Vec<RootId> = f.sigma().into_iter().filter(|&g| !sub.contains(g)).collect();
    let betas: Vec<RootId> = sub.roots().iter().copied().filter(|&b| f.value(b) == 0).collect();
    let mut separations = Vec::new();
    for (i, &g1) in outside.iter().enumerate() {
        for &g2 in &outside[i + 1..] {
            match betas.iter().find(|&&b| sys.pairing(b, g1) != sys.pairing(b, g2)) {
                Some(&beta) => separations.push(Separation { gamma1: g1, gamma2: g2, beta }),
                None => return Admissibility { admissible: false, separations, failing: Some((g1, g2)) },
            }
        }
    }
    Admissibility { admissible: true, separations, failing: None }
}

/// First admissible pair `(alpha1, alpha2)` in the subsystem with
/// `<alpha1, gamma> = <alpha2, gamma> = -1`, scanning pairs `i < j` in the
/// subsystem's root order.
pub fn find_admissible_pair(sys: &RootSystem, sub: &Subsystem, gamma: RootId) -> Option<(RootId, RootId, Admissibility)> {
    let cands: Vec<RootId> = sub.roots().iter().copied().filter(|&a| sys.pairing(a, gamma) == -1).collect();
    for (i, &a1) in cands.iter().enumerate() {
        for &a2 in &cands[i + 1..] {
            if sys.pairing(a1, a2) != 0 {
                continue;
            }
            let f = PairFunctional::new(sys, a1, a2).expect("orthogonal");
            let adm = admissibility(sys, sub, &f);
            if adm.admissible {
                return Some((a1, a2, adm));
            }
        }
    }
    None
}

/// Outcome of the condition (*) check.
#[derive(Clone, Debug)]
pub enum StarOutcome {
    Certificate(StarCertificate),
    /// A root outside the subsystem with no admissible pair.
    Counterexample(RootId),
}

impl StarOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, StarOutcome::Certificate(_))
    }
}

/// Decides condition (*) for an embedding. Only one representative per
/// `W(Delta)`-orbit of `Phi \ Delta` is searched; the other roots of the
/// orbit are covered by transport along recorded reflection words.
pub fn check_star(emb: &Embedding) -> StarOutcome {
    let sys = &emb.sys;
    let orbits = emb.outer_orbits();
    let found: Vec<(usize, Option<(RootId, RootId, Admissibility)>)> = orbits
        .par_iter()
        .map(|&o| (o, find_admissible_pair(sys, &emb.sub, emb.orbits.representative(o))))
        .collect();
    let mut entries = Vec::new();
    let mut pairs: Vec<(RootId, RootId, Admissibility)> = Vec::new();
    for (o, res) in found {
        let rep = emb.orbits.representative(o);
        let Some((a1, a2, adm)) = res else {
            return StarOutcome::Counterexample(rep);
        };
        let idx = match pairs.iter().position(|(x, y, _)| (*x, *y) == (a1, a2)) {
            Some(i) => i,
            None => {
                pairs.push((a1, a2, adm));
                pairs.len() - 1
            }
        };
        let members = emb.orbits.orbits()[o].iter().map(|&g| (g, emb.orbits.transport_word(g))).collect();
        entries.push((rep, idx, members));
    }
    StarOutcome::Certificate(StarCertificate::assemble(emb, entries, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn d4_4a1() -> Embedding {
        Embedding::from_preset("D4:4A1", None).unwrap()
    }

    #[test]
    fn sigma_in_d4() {
        let emb = d4_4a1();
        let s = &emb.sys;
        let a1 = s.lookup(&[2, -2, 0, 0]).unwrap();
        let a2 = s.lookup(&[2, 2, 0, 0]).unwrap();
        let sig = sigma_set(s, a1, a2).unwrap();
        assert_eq!(sig.len(), 6);
        for &g in &sig {
            assert_eq!(s.coords(g)[0], 2);
        }
        assert!(sig.contains(&a1) && sig.contains(&a2));
        assert!(!sig.contains(&s.neg(a1)));
        let e3 = s.lookup(&[0, 0, 2, -2]).unwrap();
        let bad = s.lookup(&[2, 0, 2, 0]).unwrap();
        assert!(matches!(sigma_set(s, a1, bad), Err(Error::NotOrthogonal(..))));
        assert!(is_admissible(s, &emb.sub, a1, e3).unwrap().admissible);
        assert!(matches!(is_admissible(s, &emb.sub, a1, bad), Err(Error::NotInDelta(_))));
    }

    #[test]
    fn varpi_values_are_bounded() {
        for l in ["D4", "E6", "E7"] {
            let s = RootSystem::from_label(l).unwrap();
            let a1 = s.simple(0);
            let a2 = s.ids().find(|&b| s.pairing(a1, b) == 0 && b != a1).unwrap();
            let f = PairFunctional::new(&s, a1, a2).unwrap();
            assert_eq!(f.value(a1), 2);
            assert_eq!(f.value(a2), 2);
            for g in s.ids() {
                assert!((-2..=2).contains(&f.value(g)));
            }
        }
    }

    #[test]
    fn e7_a7_pair_from_the_realization() {
        let emb = Embedding::from_preset("E7:A7", None).unwrap();
        let s = &emb.sys;
        let a1 = s.lookup(&[0, 0, 0, -2, 2, 0, 0, 0]).unwrap();
        let a2 = s.lookup(&[0, 0, -2, 0, 0, 2, 0, 0]).unwrap();
        let adm = is_admissible(s, &emb.sub, a1, a2).unwrap();
        assert!(adm.admissible);
        // Sigma \ Delta are the half-integer roots with (.,.,-1/2,-1/2,1/2,1/2,.,.)
        let f = PairFunctional::new(s, a1, a2).unwrap();
        let outside: Vec<RootId> = f.sigma().into_iter().filter(|&g| !emb.sub.contains(g)).collect();
        assert_eq!(outside.len(), 6);
        for g in outside {
            assert_eq!(&s.coords(g)[2..6], &[-1, -1, 1, 1]);
        }
    }

    #[test]
    fn star_holds_for_small_frames_and_fails_for_controls() {
        for spec in ["D4:4A1", "D6:6A1"] {
            let emb = Embedding::from_preset(spec, None).unwrap();
            let out = check_star(&emb);
            let StarOutcome::Certificate(c) = out else { panic!("{spec} should pass") };
            c.validate().unwrap();
        }
        let a2 = RootSystem::from_label("A2").unwrap();
        let emb = Embedding::new(Arc::new(a2), &[RootId(0)]);
        assert!(!check_star(&emb).is_pass());
    }

    #[test]
    fn d4_certificate_has_one_orbit_of_sixteen() {
        let emb = d4_4a1();
        let StarOutcome::Certificate(c) = check_star(&emb) else { panic!() };
        assert_eq!(c.orbits.len(), 1);
        assert_eq!(c.orbits[0].members.len(), 16);
    }
}

