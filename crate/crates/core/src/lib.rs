//! Exact affine k-shuffle measures on the Weyl groups of types A and C.
//!
//! The crate computes the group-algebra elements `x_k` from alcove lattice
//! points, their closed forms, the physical card-shuffling models that
//! realize them, and the factorization-type distributions of polynomials
//! over finite fields that they match. Every comparison is an exact
//! rational equality.

pub mod cellini;
pub mod closed_forms;
pub mod error;
pub mod fq;
pub mod harness;
pub mod numth;
pub mod perm;
pub mod rational;
pub mod report;
pub mod series;
pub mod shuffles;
pub mod unimodal;

pub use error::{Error, Result};
pub use perm::{GroupAlgebraElement, Permutation, SignedPermutation, WeylElement};
pub use rational::Rational;
