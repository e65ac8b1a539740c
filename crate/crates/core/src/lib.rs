//! Exact-arithmetic Birkhoff decomposition of regularized Hopf-algebra
//! characters.
//!
//! The crate implements the minimal-subtraction splitting of truncated
//! Laurent series, rooted-tree Hopf algebras, the convolution calculus of
//! characters, the Bogoliubov recursion, the Zassenhaus-type exponential
//! recursions that solve it inside the character group, Solomon's descent
//! algebra with its Lie idempotents, and the universal formulas connecting
//! the two through the β-function.

pub mod bogoliubov;
pub mod bridge;
pub mod characters;
pub mod descent;
pub mod error;
pub mod factorization;
pub mod fixtures;
pub mod hopf;
pub mod json;
pub mod laurent;
pub mod rational;
pub mod verify;

pub use error::{CoreError, Result};
