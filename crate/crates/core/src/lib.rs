//! Two-dimensional discrete-time coined quantum walk on the square lattice,
//! together with machinery that checks discrete Itô-type identities for it by
//! exhaustive enumeration.
//!
//! The walker carries a four-state chirality `(L, R, D, U)` and is driven by
//! `U⊗U` for a coin `U ∈ U(2)`. The crate provides
//!
//! * [`linalg`]: fixed-size 2×2 / 4×4 complex kernels,
//! * [`coin`]: coins, the shift-coin operators `P, Q, R, S`, seeded coins,
//! * [`position`]: the master-equation evolution and position statistics,
//! * [`fourier`]: the momentum-space picture and its exact inversion,
//! * [`paths`]: the path sum `Ξₙ(l,r,d,u)` and binary-indexed ±1 path pairs,
//! * [`ito`]: identity checks, reports and sweeps,
//! * [`cli`]: the command layer behind the `qw2d` binary.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod coin;
pub mod error;
pub mod format;
pub mod fourier;
pub mod ito;
pub mod linalg;
pub mod paths;
pub mod position;

pub use crate::coin::{
    build_walk_operators, coin_hadamard, coin_identity, coin_random, make_coin, ClassicalWeights, Coin, WalkOperators,
};
pub use crate::error::{Error, Result};
pub use crate::linalg::{CMat, CVec, C64};
pub use crate::position::{Distribution, LatticeState, Qubit4};
