//! Data hiding in general probabilistic theories.
//!
//! Cone models and their base norms, tensor-product composites, injective and
//! projective tensor norms, the Werner-state machinery of completely symmetric
//! models, and the quantum and cubic extremal examples.

pub mod composites;
pub mod error;
pub mod gpt;
pub mod hadamard;
pub mod linalg;
pub mod lp;
pub mod norms;
pub mod quantum;
pub mod sampling;
pub mod symmetric;
pub mod verify;

pub use error::{Error, Result};
