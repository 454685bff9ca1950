//! Nets of ideals: `alpha -> sigma_alpha`, constant on `W(Delta)`-orbits,
//! the unit ideal on `Delta`, and `sigma_alpha sigma_beta ⊆ sigma_{alpha+beta}`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactrings::{Ideal, Ring, RingDescriptor};
use crate::rootsys::{Embedding, RootId, SubsystemSpec};

#[derive(Clone, Debug)]
pub struct Net {
    emb: Arc<Embedding>,
    ring: Ring,
    /// One ideal per orbit id of the embedding's partition.
    ideals: Vec<Ideal>,
}

impl Net {
    /// Builds and validates a net from ideals on the orbits outside the
    /// subsystem. Orbits inside the subsystem always carry the unit ideal.
    pub fn from_orbit_ideals(emb: Arc<Embedding>, ring: &Ring, assignment: &[(usize, Ideal)]) -> Result<Net> {
        let perp = emb.sys.perp(&emb.sub);
        if !perp.is_empty() {
            return Err(Error::PerpNonEmpty(perp.len()));
        }
        let norbits = emb.orbits.orbits().len();
        let mut ideals: Vec<Option<Ideal>> = vec![None; norbits];
        for (o, id) in assignment {
            if *o >= norbits {
                return Err(Error::PreconditionViolation(format!("no orbit {o}")));
            }
            if id.ring != *ring {
                return Err(Error::RingMismatch(format!("ideal over {} in a net over {ring}", id.ring)));
            }
            if emb.sub.contains(emb.orbits.representative(*o)) && !id.is_unit_ideal()? {
                return Err(Error::PreconditionViolation(format!("orbit {o} lies in the subsystem and needs the unit ideal")));
            }
            if ideals[*o].replace(id.clone()).is_some() {
                return Err(Error::PreconditionViolation(format!("orbit {o} assigned twice")));
            }
        }
        let mut out = Vec::with_capacity(norbits);
        for (o, id) in ideals.into_iter().enumerate() {
            out.push(match id {
                Some(i) => i,
                None if emb.sub.contains(emb.orbits.representative(o)) => Ideal::unit(ring),
                None => return Err(Error::PreconditionViolation(format!("orbit {o} has no ideal"))),
            });
        }
        let net = Net { emb, ring: ring.clone(), ideals: out };
        net.validate()?;
        Ok(net)
    }

    /// Every orbit outside the subsystem gets the same ideal.
    pub fn uniform(emb: Arc<Embedding>, ring: &Ring, ideal: Ideal) -> Result<Net> {
        let assignment: Vec<(usize, Ideal)> = emb.outer_orbits().into_iter().map(|o| (o, ideal.clone())).collect();
        Net::from_orbit_ideals(emb, ring, &assignment)
    }

    pub fn unit(emb: Arc<Embedding>, ring: &Ring) -> Result<Net> {
        Net::uniform(emb, ring, Ideal::unit(ring))
    }

    /// All nets over a finite residue ring `Z/n`, in a deterministic order.
    pub fn all_nets(emb: Arc<Embedding>, ring: &Ring) -> Result<Vec<Net>> {
        let choices = Ideal::all_ideals(ring)?;
        let outer = emb.outer_orbits();
        let mut out = Vec::new();
        let mut idx = vec![0usize; outer.len()];
        loop {
            let assignment: Vec<(usize, Ideal)> = outer.iter().zip(&idx).map(|(&o, &i)| (o, choices[i].clone())).collect();
            match Net::from_orbit_ideals(emb.clone(), ring, &assignment) {
                Ok(n) => out.push(n),
                Err(Error::NetViolation { .. }) => {}
                Err(e) => return Err(e),
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(out);
                }
                idx[k] += 1;
                if idx[k] < choices.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    pub fn embedding(&self) -> &Arc<Embedding> {
        &self.emb
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ideal(&self, a: RootId) -> &Ideal {
        &self.ideals[self.emb.orbits.orbit_of(a)]
    }

    pub fn orbit_ideal(&self, orbit: usize) -> &Ideal {
        &self.ideals[orbit]
    }

    /// Checks the closure condition on every pair of roots with a root sum.
    pub fn validate(&self) -> Result<()> {
        let s = &self.emb.sys;
        let of = |a: RootId| self.emb.orbits.orbit_of(a);
        let mut seen = BTreeSet::new();
        for a in s.ids() {
            for b in s.ids() {
                let Some(c) = s.sum(a, b) else { continue };
                if !seen.insert((of(a), of(b), of(c))) {
                    continue;
                }
                let prod = self.ideal(a).product(self.ideal(b));
                if !self.ideal(c).contains_ideal(&prod)? {
                    return Err(Error::NetViolation { alpha: s.coords(a).to_vec(), beta: s.coords(b).to_vec() });
                }
            }
        }
        for a in self.emb.sub.roots() {
            if !self.ideal(*a).is_unit_ideal()? {
                return Err(Error::PreconditionViolation("subsystem root without the unit ideal".into()));
            }
        }
        Ok(())
    }

    /// Short description such as `"(2)"` or `"(0),(1)"`, one ideal per outer orbit.
    pub fn describe(&self) -> String {
        self.emb.outer_orbits().iter().map(|&o| self.ideals[o].to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn to_json(&self) -> Value {
        let s = &self.emb.sys;
        let orbits: Vec<Value> = self
            .emb
            .outer_orbits()
            .into_iter()
            .map(|o| {
                let gens: Vec<String> = self.ideals[o].gens.iter().map(|g| self.ring.format(g)).collect();
                json!({"representative": s.coords(self.emb.orbits.representative(o)), "ideal": {"gens": gens}})
            })
            .collect();
        json!({"subsystem": self.emb.spec(), "ring": RingDescriptor::from(&self.ring), "orbits": orbits})
    }

    pub fn from_json(v: &Value) -> Result<Net> {
        let perr = |e: serde_json::Error| Error::Parse(e.to_string());
        let spec: SubsystemSpec = serde_json::from_value(v.get("subsystem").cloned().unwrap_or(Value::Null)).map_err(perr)?;
        let rd: RingDescriptor = serde_json::from_value(v.get("ring").cloned().unwrap_or(Value::Null)).map_err(perr)?;
        let ring = rd.to_ring()?;
        let emb = Arc::new(Embedding::from_spec(&spec)?);
        let mut assignment = Vec::new();
        for o in v.get("orbits").and_then(Value::as_array).ok_or_else(|| Error::Parse("net: missing orbits".into()))? {
            let rep: Vec<i64> = serde_json::from_value(o.get("representative").cloned().unwrap_or(Value::Null)).map_err(perr)?;
            let gens: Vec<String> =
                serde_json::from_value(o.get("ideal").and_then(|i| i.get("gens")).cloned().unwrap_or(Value::Null)).map_err(perr)?;
            let gens = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
            let orbit = emb.orbits.orbit_of(emb.sys.lookup(&rep)?);
            assignment.push((orbit, Ideal::new(ring.clone(), gens)?));
        }
        Net::from_orbit_ideals(emb, &ring, &assignment)
    }
}
