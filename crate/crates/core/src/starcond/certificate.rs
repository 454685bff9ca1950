//! Certificates for condition (*), their JSON form and re-validation.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{is_admissible, Admissibility, PairFunctional, StarOutcome};
use crate::error::{Error, Result};
use crate::rootsys::{Embedding, RootId, RootSystem, SubsystemSpec};

pub const CERTIFICATE_SCHEMA: &str = "chevlab.star-certificate";
pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationEntry {
    pub gamma1: Vec<i64>,
    pub gamma2: Vec<i64>,
    pub beta: Vec<i64>,
}

/// An admissible pair with one separating root per pair of `Sigma \ Delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub alpha1: Vec<i64>,
    pub alpha2: Vec<i64>,
    pub separations: Vec<SeparationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberEntry {
    pub root: Vec<i64>,
    /// Reflections (roots of the subsystem) carrying the representative to `root`.
    pub word: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub representative: Vec<i64>,
    /// Index into `pairs`.
    pub pair: usize,
    pub members: Vec<MemberEntry>,
}

/// Orbit-compressed certificate: one searched pair per orbit representative
/// of `Phi \ Delta`, plus the reflection words reaching every other root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCertificate {
    pub subsystem: SubsystemSpec,
    pub label: String,
    pub pairs: Vec<PairEntry>,
    pub orbits: Vec<OrbitEntry>,
}

type Members = Vec<(RootId, Vec<RootId>)>;

fn invalid(msg: impl Into<String>) -> Error {
    Error::Parse(format!("invalid certificate: {}", msg.into()))
}

impl StarCertificate {
    pub(super) fn assemble(emb: &Embedding, entries: Vec<(RootId, usize, Members)>, pairs: Vec<(RootId, RootId, Admissibility)>) -> StarCertificate {
        let s = &emb.sys;
        let c = |a: RootId| s.coords(a).to_vec();
        StarCertificate {
            subsystem: emb.spec(),
            label: emb.label(),
            pairs: pairs
                .into_iter()
                .map(|(a1, a2, adm)| PairEntry {
                    alpha1: c(a1),
                    alpha2: c(a2),
                    separations: adm
                        .separations
                        .iter()
                        .map(|sep| SeparationEntry { gamma1: c(sep.gamma1), gamma2: c(sep.gamma2), beta: c(sep.beta) })
                        .collect(),
                })
                .collect(),
            orbits: entries
                .into_iter()
                .map(|(rep, pair, members)| OrbitEntry {
                    representative: c(rep),
                    pair,
                    members: members
                        .into_iter()
                        .map(|(g, w)| MemberEntry { root: c(g), word: w.into_iter().map(c).collect() })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn member_count(&self) -> usize {
        self.orbits.iter().map(|o| o.members.len()).sum()
    }

    /// Replays the recorded witnesses: separations, pairings with the
    /// representatives, the reflection words and the coverage of `Phi \ Delta`.
    pub fn validate(&self) -> Result<()> {
        let emb = Embedding::from_spec(&self.subsystem)?;
        self.validate_in(&emb)
    }

    pub fn validate_in(&self, emb: &Embedding) -> Result<()> {
        let s: &RootSystem = &emb.sys;
        let sub = &emb.sub;
        let look = |v: &Vec<i64>| s.lookup(v).map_err(|_| invalid(format!("{v:?} is not a root")));
        let mut pairs = Vec::new();
        for p in &self.pairs {
            let (a1, a2) = (look(&p.alpha1)?, look(&p.alpha2)?);
            if !sub.contains(a1) || !sub.contains(a2) {
                return Err(invalid("pair root outside the subsystem"));
            }
            let f = PairFunctional::new(s, a1, a2)?;
            let outside: Vec<RootId> = f.sigma().into_iter().filter(|&g| !sub.contains(g)).collect();
            let mut seen = BTreeSet::new();
            for sep in &p.separations {
                let (g1, g2, b) = (look(&sep.gamma1)?, look(&sep.gamma2)?, look(&sep.beta)?);
                if !outside.contains(&g1) || !outside.contains(&g2) || g1 == g2 {
                    return Err(invalid("separated roots are not distinct roots of Sigma outside the subsystem"));
                }
                if !sub.contains(b) || f.value(b) != 0 || s.pairing(b, g1) == s.pairing(b, g2) {
                    return Err(invalid(format!("{:?} does not separate", sep.beta)));
                }
                seen.insert((g1.min(g2), g1.max(g2)));
            }
            let needed = outside.len() * outside.len().saturating_sub(1) / 2;
            if seen.len() != needed {
                return Err(invalid("some pair of Sigma roots has no separating root"));
            }
            pairs.push((a1, a2));
        }
        let mut covered = vec![false; s.n_roots()];
        for o in &self.orbits {
            let rep = look(&o.representative)?;
            let &(a1, a2) = pairs.get(o.pair).ok_or_else(|| invalid("pair index out of range"))?;
            if s.pairing(a1, rep) != -1 || s.pairing(a2, rep) != -1 {
                return Err(invalid("pair does not pair to -1 with its representative"));
            }
            for m in &o.members {
                let g = look(&m.root)?;
                let word = m.word.iter().map(look).collect::<Result<Vec<_>>>()?;
                if word.iter().any(|&r| !sub.contains(r)) {
                    return Err(invalid("reflection outside the subsystem"));
                }
                if s.apply_word(rep, &word) != g {
                    return Err(invalid(format!("word does not carry the representative to {:?}", m.root)));
                }
                if sub.contains(g) || covered[g.0] {
                    return Err(invalid(format!("{:?} covered twice or inside the subsystem", m.root)));
                }
                covered[g.0] = true;
            }
        }
        if s.ids().any(|g| !sub.contains(g) && !covered[g.0]) {
            return Err(invalid("a root outside the subsystem is not covered"));
        }
        Ok(())
    }

    /// `validate` plus an independent admissibility check of the transported
    /// pair at every covered root.
    pub fn validate_full(&self) -> Result<()> {
        let emb = Embedding::from_spec(&self.subsystem)?;
        self.validate_in(&emb)?;
        let s = &emb.sys;
        for o in &self.orbits {
            let p = &self.pairs[o.pair];
            let (a1, a2) = (s.lookup(&p.alpha1)?, s.lookup(&p.alpha2)?);
            for m in &o.members {
                let word = m.word.iter().map(|v| s.lookup(v)).collect::<Result<Vec<_>>>()?;
                let (b1, b2) = (s.apply_word(a1, &word), s.apply_word(a2, &word));
                let g = s.lookup(&m.root)?;
                if s.pairing(b1, g) != -1 || s.pairing(b2, g) != -1 {
                    return Err(invalid("transported pair does not pair to -1"));
                }
                if !is_admissible(s, &emb.sub, b1, b2)?.admissible {
                    return Err(invalid(format!("transported pair at {:?} is not admissible", m.root)));
                }
            }
        }
        Ok(())
    }
}

/// The versioned JSON document written by `star check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub schema: String,
    pub version: u32,
    pub status: String,
    pub subsystem: SubsystemSpec,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<StarCertificate>,
}

impl StarReport {
    pub fn new(emb: &Embedding, outcome: &StarOutcome) -> StarReport {
        let (status, gamma, certificate) = match outcome {
            StarOutcome::Certificate(c) => ("pass", None, Some(c.clone())),
            StarOutcome::Counterexample(g) => ("fail", Some(emb.sys.coords(*g).to_vec()), None),
        };
        StarReport {
            schema: CERTIFICATE_SCHEMA.to_string(),
            version: CERTIFICATE_VERSION,
            status: status.to_string(),
            subsystem: emb.spec(),
            label: emb.label(),
            gamma,
            certificate,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Parses and checks schema, version and internal consistency. A passing
    /// report is re-validated against its subsystem.
    pub fn from_json(text: &str) -> Result<StarReport> {
        let r: StarReport = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if r.schema != CERTIFICATE_SCHEMA {
            return Err(invalid(format!("unknown schema {:?}", r.schema)));
        }
        if r.version != CERTIFICATE_VERSION {
            return Err(invalid(format!("unsupported version {}", r.version)));
        }
        match (r.status.as_str(), &r.certificate, &r.gamma) {
            ("pass", Some(c), None) => {
                if c.subsystem != r.subsystem {
                    return Err(invalid("certificate subsystem differs from the report"));
                }
                c.validate()?;
            }
            ("fail", None, Some(g)) => {
                let emb = Embedding::from_spec(&r.subsystem)?;
                let gid = emb.sys.lookup(g)?;
                if emb.sub.contains(gid) || super::find_admissible_pair(&emb.sys, &emb.sub, gid).is_some() {
                    return Err(invalid("recorded counterexample has an admissible pair"));
                }
            }
            _ => return Err(invalid("status does not match the payload")),
        }
        Ok(r)
    }
}

/// Convenience for callers holding only a system and generators.
pub fn check_star_for(sys: Arc<RootSystem>, gens: &[RootId]) -> (Embedding, StarOutcome) {
    let emb = Embedding::new(sys, gens);
    let out = super::check_star(&emb);
    (emb, out)
}

#[cfg(test)]
mod tests {
    use super::super::check_star;
    use super::*;

    #[test]
    fn json_round_trip_and_tamper_detection() {
        let emb = Embedding::from_preset("D4:4A1", None).unwrap();
        let out = check_star(&emb);
        let rep = StarReport::new(&emb, &out);
        let text = rep.to_json();
        assert!(text.contains("\"schema\": \"chevlab.star-certificate\""));
        let back = StarReport::from_json(&text).unwrap();
        assert_eq!(back, rep);

        let mut bad = rep.clone();
        let c = bad.certificate.as_mut().unwrap();
        c.orbits[0].members[3].word.pop();
        assert!(StarReport::from_json(&bad.to_json()).is_err());

        let mut bad = rep.clone();
        bad.certificate.as_mut().unwrap().pairs[0].separations.pop();
        if !rep.certificate.as_ref().unwrap().pairs[0].separations.is_empty() {
            assert!(StarReport::from_json(&bad.to_json()).is_err());
        }

        let mut bad = rep.clone();
        bad.version = 2;
        assert!(StarReport::from_json(&bad.to_json()).is_err());
    }

    #[test]
    fn failing_report_round_trips() {
        let sys = Arc::new(RootSystem::from_label("A2").unwrap());
        let (emb, out) = check_star_for(sys, &[RootId(0)]);
        let rep = StarReport::new(&emb, &out);
        assert_eq!(rep.status, "fail");
        assert!(rep.to_json().contains("\"gamma\""));
        StarReport::from_json(&rep.to_json()).unwrap();
    }

    #[test]
    fn transported_pairs_stay_admissible() {
        for spec in ["D4:4A1", "E7:A7", "E6:3A2"] {
            let emb = Embedding::from_preset(spec, None).unwrap();
            let StarOutcome::Certificate(c) = check_star(&emb) else { panic!("{spec}") };
            c.validate_full().unwrap();
        }
    }
}
