//! Repetitiveness measures of strings and their sensitivity to single edits.
//!
//! The crate is organised bottom-up:
//!
//! * [`text`]: integer-symbol strings and single-character edits.
//! * [`factor`]: LZSS, LZ77, LZ-End (greedy and optimal) and LZ78 parsers,
//!   plus a verifier for every flavor.
//! * [`measures`]: substring complexity, string attractors, and
//!   bidirectional macro schemes.
//! * [`repair`]: constructions that turn an attractor, a macro scheme or an
//!   LZ-End parsing of `T` into one of an edited `T'`.
//! * [`witness`]: string families whose parsings blow up after one edit.
//! * [`sensitivity`]: exhaustive and witness-driven sensitivity sweeps.
//!
//! All public positions are 1-based.

pub mod error;
pub mod exec;
pub mod factor;
pub(crate) mod index;
pub mod limits;
pub mod measures;
pub mod repair;
pub mod sensitivity;
pub mod text;
pub mod witness;

pub use error::{Error, Result};
pub use exec::Exec;
pub use factor::{Factorization, Flavor, Phrase, PhraseKind};
pub use limits::Limits;
pub use measures::AttractorSet;
pub use text::{Edit, EditKind, Symbol, SymbolString};

/// Exact rational used for δ and for multiplicative sensitivity.
pub type Rational = num_rational::Ratio<i64>;
