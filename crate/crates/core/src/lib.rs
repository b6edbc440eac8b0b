//! Exact counts of bipartite graphs on `n` left and `r` right vertices up to
//! isomorphism, for four families that differ in which vertex supports are
//! held fixed, plus a brute-force oracle and closed-form bounds.
//!
//! ```
//! use bipartite_count::{count, Family};
//!
//! let (value, _method) = count(Family::X, 3, 2).unwrap();
//! assert_eq!(value, 25);
//! ```

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod family;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod polya;
pub mod verify;

pub use arith::{Count, ExactRational};
pub use bounds::BoundInterval;
pub use error::{Error, Result};
pub use family::Family;
pub use formulas::{count, Method};
pub use graph::Biadjacency;
pub use oracle::{canonical_form, classify, CanonicalKey, OracleConfig};
