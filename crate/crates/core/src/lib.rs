//! Model-oriented belief change on finite bases.
//!
//! Eviction removes a set of models from what a base accepts; reception forces
//! a set of models to satisfy the result. Both pick a finitely representable
//! approximation of the exact target: a maximal representable subset
//! ([`ops::frsubs`]) or a minimal representable superset ([`ops::frsups`]).
//!
//! Finite systems implement [`SatSystem`] and get a precomputed [`Catalog`];
//! the next-time temporal fragment and the rational-interval system are
//! handled symbolically in their own modules.

pub mod error;
pub mod exec;
pub mod lattice;
pub mod logic;
pub mod modelset;
pub mod ops;
pub mod poset;
pub mod postulates;
pub mod select;
pub mod syntax;
pub mod system;

pub use error::{ChangeKind, Error, Incompatibility, ParseError, Result};
pub use exec::Exec;
pub use modelset::ModelSet;
pub use ops::{frsubs, frsups, ChangeReport, EvictionReport, ReceptionReport};
pub use postulates::{Postulate, PostulateReport};
pub use select::SelectionPolicy;
pub use system::{Base, Catalog, FiniteLogic, SatSystem};
