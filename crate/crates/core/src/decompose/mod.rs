//! Rewriting Hermitian matrices into small diagonal forms.
//!
//! Entries are kept symbolically: each one is a sign times a product of
//! elementary factors, one per root of the symmetric lift on `[-2, 2]`
//! plus off-circle parts. Gluing two coprime entries is then a sign check
//! at finitely many points, and [`glue`] produces an explicit witness for
//! concrete Laurent polynomials.

mod bezout;
mod diagonalize;
mod factor;
mod glue;
mod minimal;
mod norm;
mod numeric;

pub use bezout::{positive_bezout, positive_on_segment, BezoutPair, MAX_GAMMA_DEGREE};
pub use diagonalize::{diagonalize, orthogonal_pieces, piece_entries, Piece};
pub use factor::{
    gcd_free_basis, multiplicity, DiagonalEntry, DiagonalForm, DiagonalFormJson, ElementaryBase, ElementaryFactor,
    EntryJson, FactorJson, Location, RootSelector,
};
pub use glue::{choose_epsilon, glue, glue_entries, glue_entries_with_sign, glue_with_tolerance, GlueResult, GlueWitness, WITNESS_SAMPLES};
pub use minimal::{elementary_diagonal, minimal_diagonal, MinimalForm};
pub use norm::{nonneg_on_circle, norm_factor, norm_factor_with_tolerance, norm_residual, NormFactor, NORM_TOLERANCE};
pub use numeric::{circle_grid, complex_roots, FloatLaurent};
