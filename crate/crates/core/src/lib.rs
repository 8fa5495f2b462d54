//! Exact representation functions of integer sequences.
//!
//! Given a set `A` of nonnegative integers and a configuration
//! `{(k_1, m_1), …, (k_r, m_r)}`, the representation function `r(n)` counts the
//! ordered tuples of elements of `A` with
//!
//! ```text
//! n = k_1 (a_{1,1} + … + a_{1,m_1}) + … + k_r (a_{r,1} + … + a_{r,m_r}).
//! ```
//!
//! Its generating function is the product `Π f_A(z^{k_i})^{m_i}` of substituted
//! powers of the indicator series `f_A(z) = Σ_{a∈A} z^a`. This crate computes
//! that product exactly (schoolbook or multi-prime NTT with CRT reconstruction),
//! cross-checks it against a brute-force enumerator, and ships the analyzers
//! used to probe non-polynomial behaviour, residue obstructions, rational-tail
//! forms, partial-sum growth and the circle-moment inequalities behind the
//! Erdős–Fuchs type bounds.
//!
//! Crate layout:
//! - [`config`], [`sequence`], [`series`], [`table`], [`polynomial`]: shared domain types
//! - [`sequences`]: generators (naturals, primes, squares, Moser, Mian–Chowla) and file ingestion
//! - [`engine`]: truncated power-series arithmetic and the representation product
//! - [`oracle`]: brute-force tuple enumeration, independent of [`engine`]
//! - [`analysis`]: the theorem-facing analyzers

pub mod analysis;
pub mod config;
pub mod engine;
mod error;
pub mod oracle;
pub mod polynomial;
pub mod sequence;
pub mod sequences;
pub mod series;
pub mod table;

pub use config::{ConfigError, Configuration, Term};
pub use error::{Error, Result};
pub use polynomial::PolynomialSpec;
pub use sequence::{IntegerSequence, SequenceError};
pub use sequences::SequenceSpec;
pub use series::PowerSeries;
pub use table::RepTable;
