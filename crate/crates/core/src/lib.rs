//! Divisibility relations among monomial generators and the D-extremal ideals
//! built from them.
//!
//! The crate covers the relation calculus (composition, closure, minimal
//! generating sets), the construction of `E_D` and its powers, a decision
//! procedure for closure membership that returns checkable certificates, and
//! multigraded Betti numbers computed through lcm lattices and Taylor
//! subcomplex homology.

pub mod betti;
pub mod closure;
pub mod decision;
pub mod error;
pub mod extremal;
pub mod homology;
pub mod index_set;
pub mod lattice;
pub mod limits;
pub mod monomial;
pub mod random;
pub mod relation;
pub mod transfer;
pub mod transversal;
pub mod verify;

pub use closure::ClosureRep;
pub use error::{Error, Result};
pub use extremal::{ExtremalIdeal, PowerGenerators, QSet};
pub use index_set::IndexSet;
pub use limits::Limits;
pub use monomial::{GeneratorList, Monomial, VariableSet};
pub use relation::{DivRel, RelationSet};
