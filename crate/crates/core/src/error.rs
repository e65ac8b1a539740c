//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// A product would create a pole deeper than the configured bound.
    #[error("polar depth {depth} exceeds the pole bound {bound}")]
    FloorExceeded { depth: i32, bound: i32 },

    /// Two series were compared on an empty common window.
    #[error("series windows [{floor_a},{cap_a}) and [{floor_b},{cap_b}) have no common exponent")]
    DisjointWindows {
        floor_a: i32,
        cap_a: i32,
        floor_b: i32,
        cap_b: i32,
    },

    /// Linear maps with different truncation degrees were mixed.
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    /// Linear maps over different Hopf algebra families were mixed.
    #[error("tree family mismatch")]
    FamilyMismatch,

    /// A map failed the `n`-connectedness precondition.
    #[error("map is not {degree}-connected")]
    NotConnected { degree: u32 },

    /// A linear map that was expected to be multiplicative is not.
    #[error("map is not a character: fails multiplicativity or unit value")]
    NotCharacter,

    /// A linear map that was expected to vanish on products is not infinitesimal.
    #[error("map is not an infinitesimal character")]
    NotInfinitesimal,

    /// A permutation-realization request beyond the supported symmetric group.
    #[error("degree {degree} exceeds the permutation cap {cap}")]
    DegreeTooLarge { degree: u32, cap: u32 },

    /// An operation requiring a homogeneous descent element got a mixed one.
    #[error("descent element is not homogeneous")]
    NotHomogeneous,

    /// A group-algebra element did not lie in the descent algebra.
    #[error("permutation element is not constant on descent classes")]
    NotDescent,

    /// Two routes that must agree by uniqueness produced different values.
    #[error("bridge identity failed at {location}")]
    BridgeMismatch { location: String },

    /// Malformed textual input (tree codes, rationals, JSON payloads).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
