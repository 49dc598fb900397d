//! Exact combinatorics of weak-composition lattices and Lee-metric
//! anticodes over `Z/p^sZ`.
//!
//! * [`wcomp`]: the dominance lattice `Δ_L(n)`.
//! * [`zmod`], [`modmat`], [`code`]: ring arithmetic, canonical module
//!   matrices and linear codes.
//! * [`anticode`]: coordinate-ideal anticodes, the anticode bounds and the
//!   Lee optimality test.
//! * [`invariants`]: subcode counting, binomial moments, weight
//!   distributions and R-weights.
//! * [`oracle`]: brute-force reference implementations.
//! * [`verify`]: oracle-versus-closed-form suites.

pub mod anticode;
pub mod code;
pub mod error;
pub mod invariants;
pub mod modmat;
pub mod oracle;
pub mod verify;
pub mod wcomp;
pub mod zmod;

pub use anticode::Anticode;
pub use code::Code;
pub use error::{Error, Result};
pub use invariants::InvariantTable;
pub use modmat::{ModMatrix, SystematicForm};
pub use wcomp::WeakComposition;
pub use zmod::{ChainRingParams, Metric};
