//! Finite-group toolkit for experiments on verbally closed subgroups.
//!
//! The crate is organised around a table-backed [`FiniteGroup`] engine with
//! implicit tuple groups for the larger constructions:
//!
//! * [`group`]: subgroups, quotients, homomorphism and retraction search.
//! * [`abelian`]: primary decomposition and the strong-retract criterion.
//! * [`words`]: free-group words, verbal maps, equations and bounded
//!   closedness checks.
//! * [`approx`]: codes over `F_p` certifying the approximation properties.
//! * [`constructions`]: central and fibered products and the witness group
//!   `G = Q/R`.
//! * [`heisenberg`]: finite and integer Heisenberg groups and their quotients.
//!
//! Every bounded procedure reports its budget; absence of a solution is only
//! claimed after an exhaustive search.

pub mod abelian;
pub mod approx;
pub mod constructions;
pub mod error;
pub mod group;
pub mod heisenberg;
pub mod util;
pub mod words;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupLaw, RepresentationKind};
pub use group::subgroup::Subgroup;
pub use group::hom::Homomorphism;
pub use words::Word;
