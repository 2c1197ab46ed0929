//! Exact computations in the split para-octonion algebra over k(t).
//!
//! The crate implements, with no floating point anywhere:
//!
//! * arithmetic in F = k(t) viewed inside k((t)), plus precision-tracked
//!   Laurent jets ([`scalars`]);
//! * the split octonion algebra in Zorn vector-matrix form, its symmetric
//!   composition product, the norm form, and the isotropic-subspace maps
//!   ([`octonion`]);
//! * full-rank O-lattices over O = k[t]_(t): canonical bases, duals, module
//!   operations, lengths, discriminants, and standard Gram forms ([`lattice`]);
//! * verifiers and generators for isometries, algebra automorphisms, and
//!   related triples with their S3 action ([`groups`]);
//! * the three-way vertex classification of lattices with graded chains and
//!   stabilizer checks ([`building`]);
//! * the constructive standard-basis reduction producing, for each classified
//!   lattice, an explicit certifying automorphism, or an exact refutation for
//!   the impossible length-2 case ([`reduction`]).

pub mod building;
pub mod error;
pub mod field;
pub mod groups;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod octonion;
pub mod reduction;
pub mod scalars;

mod isotropy;

pub use field::{BaseField, FieldElem};
pub use lattice::Lattice;
pub use scalars::{LaurentJet, RationalScalar, Valuation};
