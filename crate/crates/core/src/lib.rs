//! Infinite words with abundant palindromic prefixes.
//!
//! An infinite word has *abundant palindromic prefixes* when the increasing
//! sequence `n_1 = 0 < n_2 < …` of the lengths of its palindromic prefixes
//! satisfies `n_{i+1} <= 2 n_i + 1`. Every such word is generated by a
//! *directive function* ψ through the doubling recurrence
//!
//! ```text
//! π_{i+1} = π_i π_{ψ(i)}⁻¹ π_i   when ψ(i) is an index
//! π_{i+1} = π_i ψ(i) π_i          when ψ(i) is a letter
//! ```
//!
//! This crate provides:
//!
//! * [`words`]: finite words, palindromes, palindromic closure, lazily
//!   extended infinite words.
//! * [`psi`]: finitely described directive functions, their t-family,
//!   reducedness, words of first letters and recovery of ψ from a word.
//! * [`generators`]: every construction (ψ words, characteristic Sturmian
//!   words three ways, standard episturmian words, scarce words, the near-√3
//!   family, seeded words).
//! * [`lengths`]: the integer length recurrence, δ estimation and the
//!   asymptotic diagnostics on it.
//! * [`cf`]: continued fractions with exact quadratic-irrational values, the
//!   Sturmian δ formula and the spectrum scan.
//! * [`oracle`]: brute-force and linear-time palindromic-prefix enumeration,
//!   the referee for all of the above.
//! * [`verify`]: randomized property suites turning the theorems into checks.

pub mod cf;
pub mod error;
pub mod generators;
pub mod lengths;
pub mod oracle;
pub mod psi;
pub mod seq;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use seq::{EventuallyPeriodic, IntSequence, LetterSequence};
pub use words::{FiniteWord, Letter, WordStream};
