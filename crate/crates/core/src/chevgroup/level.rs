//! Exact level of `S(sigma)` over a finite ring.

use crate::chevalgebra::Net;
use crate::error::Result;
use crate::exactrings::Ideal;
use crate::rootsys::RootId;

use super::AdjointGroup;

#[derive(Clone, Debug)]
pub struct OrbitLevel {
    pub orbit: usize,
    pub representative: RootId,
    /// `{xi : x_rep(xi) in S(sigma)}`, as an ideal.
    pub level: Ideal,
    pub expected: Ideal,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub orbits: Vec<OrbitLevel>,
    /// Set only when every member set was enumerated and turned out to be an ideal.
    pub exact: bool,
}

impl LevelReport {
    pub fn matches_net(&self) -> bool {
        self.orbits.iter().all(|o| o.matches)
    }
}

/// Enumerates `x_gamma(xi)` for every `xi` in the ring, one `gamma` per orbit.
pub fn level_of_s(group: &AdjointGroup, net: &Net) -> Result<LevelReport> {
    let r = group.ring();
    let els = r.elements()?;
    let emb = net.embedding();
    let mut orbits = Vec::new();
    let mut exact = true;
    for o in 0..emb.orbits.orbits().len() {
        let rep = emb.orbits.representative(o);
        let mut members = Vec::new();
        for x in &els {
            if group.in_s_sigma(&group.root_element(rep, x), net)? {
                members.push(x.clone());
            }
        }
        let mut level = Ideal::new(r.clone(), members.iter().filter(|x| !r.is_zero(x)).cloned().collect())?;
        if let Some(d) = level.scalar_generator() {
            level = if r.is_zero(&r.from_bigint(&d)) { Ideal::zero(r) } else { Ideal::principal(r, r.from_bigint(&d)) };
        }
        // the member set is an ideal iff the ideal it generates adds nothing
        let mut closed = true;
        for x in &els {
            if level.contains(x)? && !members.contains(x) {
                closed = false;
            }
        }
        exact &= closed;
        let expected = net.orbit_ideal(o).clone();
        let matches = closed && level.equals(&expected)?;
        orbits.push(OrbitLevel { orbit: o, representative: rep, level, expected, matches });
    }
    Ok(LevelReport { orbits, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalgebra::ChevalleyAlgebra;
    use crate::exactrings::Ring;
    use crate::rootsys::Embedding;
    use std::sync::Arc;

    #[test]
    fn level_equals_net_d4() {
        let emb = Arc::new(Embedding::from_preset("D4:4A1", None).unwrap());
        let alg = Arc::new(ChevalleyAlgebra::new(emb.sys.clone()));
        for ring in ["mod:2", "mod:3", "mod:4"] {
            let r: Ring = ring.parse().unwrap();
            let g = AdjointGroup::new(alg.clone(), &r);
            for net in Net::all_nets(emb.clone(), &r).unwrap() {
                let rep = level_of_s(&g, &net).unwrap();
                assert!(rep.exact);
                assert!(rep.matches_net(), "{ring} {}", net.describe());
            }
        }
    }

    #[test]
    fn level_two_over_z4() {
        let emb = Arc::new(Embedding::from_preset("D4:4A1", None).unwrap());
        let alg = Arc::new(ChevalleyAlgebra::new(emb.sys.clone()));
        let r = Ring::modular(4).unwrap();
        let g = AdjointGroup::new(alg, &r);
        let net = Net::uniform(emb.clone(), &r, Ideal::from_i64(&r, &[2])).unwrap();
        let gamma = emb.orbits.representative(emb.outer_orbits()[0]);
        assert!(g.in_s_sigma(&g.root_element(gamma, &r.from_i64(2)), &net).unwrap());
        assert!(!g.in_s_sigma(&g.root_element(gamma, &r.one()), &net).unwrap());
        let rep = level_of_s(&g, &net).unwrap();
        let outer = rep.orbits.iter().find(|o| o.representative == gamma).unwrap();
        assert_eq!(outer.level.to_string(), "(2)");
    }
}
