//! Irreducibility in semigroups of unicritical polynomials.
//!
//! Tools for the dynamics of `x^d + c` over the integers and for certifying
//! irreducibility of compositions drawn from a finite set of such maps:
//! orbit classification with certified escape bounds, powered fixed points,
//! a composition-chain irreducibility certificate with a sound mod-q
//! resolver, a trichotomy classifier for the semigroup generated by a
//! presentation, an exhaustive census, and verification suites.

pub mod census;
pub mod cli;
pub mod dynamics;
pub mod integer_kernel;
pub mod irreducibility;
mod modpoly;
pub mod semigroup;
pub mod verifier;
