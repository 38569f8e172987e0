//! Exact signature profiles and Blanchfield-form computations for knots.
//!
//! Hermitian matrices over `Q[t, 1/t]` are the central object: Seifert
//! matrices produce them, the invariants are read off them, and the
//! decomposition routines rewrite them into small diagonal forms.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod laurent;
pub mod hermat;
pub mod invariants;
pub mod realalg;
pub mod seifert;

pub use error::{Error, Result};
