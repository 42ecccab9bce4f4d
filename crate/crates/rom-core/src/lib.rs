//! Computation engine for the robustness of magic of tensor powers of the
//! single-qubit magic states |H> and |T>.
//!
//! The pipeline: stabiliser states are swept in binary-symplectic form
//! ([`pauli`]), projected onto the symmetry-invariant subspace as integer
//! signed quantum weight enumerators ([`enumerator`]), deduplicated and
//! filtered to the extreme points of the projected polytope ([`polytope`]),
//! and fed to an exact l1-minimisation ([`robustness`]). Polynomial-size
//! upper-bound relaxations live in [`hierarchy`], and [`oracle`] provides a
//! dense from-first-principles cross-check for up to three qubits.

pub mod enumerator;
pub mod graph;
pub mod hierarchy;
pub mod oracle;
pub mod pauli;
pub mod polytope;
pub mod robustness;
mod rng;
pub mod scalar;
pub mod simplex;

pub use scalar::Scalar;

/// Scalar type used by the shipped pipeline. The LP kernel itself is generic
/// over [`Scalar`].
pub type DefaultScalar = f64;

use serde::{Deserialize, Serialize};

/// Which magic-state symmetry the computation targets.
///
/// `H` uses the two-element per-qubit symmetry (coset alphabet {I, H, HS},
/// scaling base 2); `T` uses the three-element one (coset alphabet {I, S},
/// scaling base 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    H,
    T,
}

impl Mode {
    /// Base `s` of the diagonal scaling `s^{-i/2}` applied to coordinate `i`
    /// when assembling LP columns.
    pub fn scaling_base(self) -> f64 {
        match self {
            Mode::H => 2.0,
            Mode::T => 3.0,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Mode::H => "H",
            Mode::T => "T",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.letter())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "H" | "h" => Ok(Mode::H),
            "T" | "t" => Ok(Mode::T),
            other => Err(format!("unknown mode `{other}`, expected H or T")),
        }
    }
}
