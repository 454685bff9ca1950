//! Exact computations with Chevalley groups of simply-laced type over
//! commutative rings: root systems, Chevalley bases, adjoint group elements,
//! nets of ideals, the combinatorial condition on root subsystems, and tandem
//! manipulations used to study overgroups of subsystem subgroups.

pub mod error;
pub mod exactrings;

pub use error::{Error, Result};
pub mod rootsys;
pub mod starcond;
pub mod chevalgebra;
pub mod chevgroup;
pub mod tandemlab;
pub mod suite;
