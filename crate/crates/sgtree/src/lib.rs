//! Numerical semigroup tree toolkit.
//!
//! A numerical semigroup is a cofinite, additively closed subset of the
//! non-negative integers containing 0. Removing effective generators one at
//! a time organizes all of them into a tree rooted at the integers
//! themselves, with the genus as the level. This crate provides:
//!
//! - [`semigroup`]: the bit-vector representation with exact queries for
//!   genus, multiplicity, conductor, Frobenius number and generator sets;
//! - [`tree`]: children/parent navigation and genus-bounded, optionally
//!   parallel, enumeration with pluggable pruning filters;
//! - [`chains`]: everything about infinite chains — membership, deepest
//!   descendants, chain counting, scaling, and the seed correspondence;
//! - [`families`]: constructors for the named families (ordinary,
//!   hyperelliptic, fixed-multiplicity tuples, chain branch nodes) and the
//!   push operator behind the self-replication results;
//! - [`formulas`]: closed-form counts per genus and multiplicity, with
//!   enumeration cross-checks;
//! - [`export`]: deterministic DOT / TikZ / JSON tree rendering.

pub mod chains;
pub mod error;
pub mod export;
pub mod families;
pub mod formulas;
pub mod semigroup;
pub mod tree;

pub use chains::{ChainCount, ChainSeed};
pub use error::Error;
pub use export::{ExportGraph, LabelStyle, TreeExportOptions};
pub use families::{M6Label, TupleNotation};
pub use formulas::{FormulaReport, FormulaRow};
pub use semigroup::{GeneratorList, NumericalSemigroup};
pub use tree::{GenusCounts, NodeClass, TreeNodeRecord};
