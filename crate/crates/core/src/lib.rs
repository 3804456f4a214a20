//! Desk-scale computational number theory for isogeny-class counting.
//!
//! This crate works with elliptic curves over small finite fields `𝔽_q`
//! (`p ≥ 5`, short Weierstrass form) and with split abelian surfaces
//! `A = E × E_ss` (ordinary × supersingular). Everything is exact integer
//! arithmetic; there is no floating point anywhere.
//!
//! The main capabilities, module by module:
//!
//! * [`ff_curves`] — finite-field towers `𝔽_{p^d}`, exhaustive point
//!   counting, Frobenius trace data via the second-order recurrence,
//!   ordinarity tests, torsion bases, and Vélu quotient curves.
//! * [`symplectic`] — the rank-4 symplectic module `(Z/ℓ^m)⁴` modelling
//!   `A[ℓ^m]` with the Weil pairing, enumeration of isotropic lines and
//!   maximal isotropic (Lagrangian) planes, and the product/graph type
//!   classification of those planes.
//! * [`endo_counts`] — norm-form counting on both endomorphism rings:
//!   ideal counts of given norm in imaginary quadratic orders, class
//!   numbers by reduced binary forms, Hurwitz class numbers, and exact
//!   representation numbers of positive-definite quaternary forms
//!   attached to quaternion maximal orders.
//! * [`frobenius`] — the Frobenius action on `ℓ^m`-torsion as an explicit
//!   2×2 (or block 4×4) matrix, its four-way classification, the scalar
//!   level `⌊v_ℓ(Δ)/2⌋`, stable cyclic subgroups, and horizontal isogeny
//!   counts.
//! * [`census`] — the counting engines: grouping of Frobenius-stable
//!   Lagrangians under the endomorphism-preimage equivalence, exhaustive
//!   isogeny-class censuses of elliptic curves, predicted sizes, and
//!   exponent/verdict reports.
//!
//! The crate is `no_std` (it requires `alloc`); all I/O, serialization
//! and parallelism live in the companion CLI crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod census;
pub mod endo_counts;
pub mod error;
pub mod ff_curves;
pub mod frobenius;
pub mod modmat;
pub mod symplectic;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
