//! Number theory for the 2-adic lambda invariant of real quadratic fields.
//!
//! The crate covers residue symbols ([`symbols`]), fundamental units and their
//! 2-adic images ([`field`]), class groups of indefinite forms ([`forms`]),
//! local Hilbert symbols over `Q` and `Q(sqrt 2)` ([`hilbert`]), Redei
//! matrices ([`redei`]), and a verdict for each radicand ([`classifier`]).
//! [`suites`] cross-checks these against each other over ranges of inputs.
//!
//! Runnable examples, one per capability:
//!
//! | example | shows |
//! |---|---|
//! | `residue_symbols` | Kronecker, quartic and Scholz symbols |
//! | `fundamental_units` | units, norms, `eps_D mod 8`, `eps_2D` decomposition |
//! | `class_groups` | narrow and wide groups, 2-parts, classes of primes |
//! | `hilbert_symbols` | local symbols and the product formula over `Q(sqrt 2)` |
//! | `redei_matrices` | classical and generalized Redei matrices |
//! | `classify` | verdicts with evidence |
//! | `search_family` | prime pairs meeting every hypothesis of the main criterion |
//! | `verify_suites` | all verification suites |
//!
//! ```
//! let v = lambda2::classifier::classify(1394).unwrap();
//! assert_eq!(v.d, 697);
//! assert!(v.status.is_zero());
//! ```

pub mod arith;
mod decimal;
pub mod error;
pub mod symbols;
pub mod field;
pub mod forms;
pub mod hilbert;
pub mod redei;
pub mod classifier;
pub mod report;
pub mod cache;
pub mod suites;
