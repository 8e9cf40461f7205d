//! Exact-arithmetic construction and verification of rime, Cremmer–Gervais
//! and classical Yang–Baxter matrices.
//!
//! - [`operator`]: dense rational operators on V, V⊗V, V⊗V⊗V.
//! - [`constructors`]: every matrix family.
//! - [`verifier`]: exact identity checks and structural classification.
//! - [`limits`]: float demonstrations of the unitary limit and exponentials.

pub mod constructors;
pub mod error;
pub mod limits;
pub mod operator;
pub mod rational;
pub mod sample;
pub mod verifier;

pub use error::{Error, Result};
pub use operator::{Arity, Leg, Operator};
pub use rational::Rational;
