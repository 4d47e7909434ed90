//! Period sets of strings: enumeration, certification, binary realization
//! and the dynamics of period sets as the word length grows.
//!
//! A *period* of a word `u` of length `n` is an integer `0 <= p < n` such that
//! `u[i] == u[i + p]` wherever both sides are defined. The set of all periods
//! of `u` always contains `0`; it is encoded either as a [`PeriodSet`] (sorted
//! periods) or as an [`Autocorrelation`] (a length-`n` bit string).
//!
//! `Γn` denotes the family of all period sets of words of length `n`. This
//! crate computes `Γn` incrementally from `Γ(n-1)` ([`gamma`]), certifies
//! arbitrary candidate sets ([`certify`]), builds binary witness words
//! ([`realize`]), studies when a set survives, extends or dies ([`fate`]), and
//! ships a brute-force oracle that everything else is checked against
//! ([`oracle`]).

pub mod certify;
mod error;
pub mod fate;
pub mod format;
pub mod gamma;
pub mod oracle;
mod period_set;
pub mod realize;
mod word;

pub use error::{Error, Result};
pub use period_set::{fw_limit, gcd, Autocorrelation, Limit, PeriodSet};
pub use word::{border_array, is_primitive, merge, period_set_of_word, MergeMismatch, Word};
