use serde::{Deserialize, Serialize};

use super::Ring;
use crate::error::{Error, Result};

/// JSON form of a ring, e.g. `{"kind":"mod","n":4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingDescriptor {
    Int,
    Mod { n: u64 },
    Poly { base: Box<RingDescriptor>, vars: Vec<String> },
    Dual { base: Box<RingDescriptor> },
}

impl From<&Ring> for RingDescriptor {
    fn from(r: &Ring) -> Self {
        match r {
            Ring::Integers => RingDescriptor::Int,
            Ring::Modular(n) => RingDescriptor::Mod { n: *n },
            Ring::Polynomial(p) => RingDescriptor::Poly { base: Box::new((&p.base).into()), vars: p.vars.clone() },
            Ring::Dual(b) => RingDescriptor::Dual { base: Box::new(b.as_ref().into()) },
        }
    }
}

impl RingDescriptor {
    pub fn to_ring(&self) -> Result<Ring> {
        Ok(match self {
            RingDescriptor::Int => Ring::Integers,
            RingDescriptor::Mod { n } => Ring::modular(*n)?,
            RingDescriptor::Poly { base, vars } => {
                if vars.is_empty() || vars.iter().any(|v| v.is_empty() || v == "eps") {
                    return Err(Error::Parse(format!("bad polynomial variables {vars:?}")));
                }
                Ring::polynomial(base.to_ring()?, vars.clone())
            }
            RingDescriptor::Dual { base } => Ring::dual(base.to_ring()?),
        })
    }
}
