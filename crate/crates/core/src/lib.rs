//! Finite-model laboratory for Set-based triposes.
//!
//! A tripos is presented by a finite proposition set with coded connectives,
//! coded quantifiers and a filter ([`coded_tripos`]). The [`law_suite`]
//! certifies such a presentation, [`implicative`] builds presentations from
//! implicative algebras, and [`extraction`] runs the converse construction:
//! it extracts an implicative algebra from a presentation and certifies that
//! the induced tripos is isomorphic to the original.

pub mod cli;
pub mod coded_tripos;
pub mod extraction;
pub mod finite_order;
pub mod fixture;
pub mod implicative;
pub mod law_suite;
pub mod report;

pub use coded_tripos::{CodedTripos, PredCode};
pub use law_suite::CheckBudget;
pub use report::{LawReport, Status, Witness};
