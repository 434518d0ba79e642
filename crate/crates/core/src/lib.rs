//! Exact computations with Iwahori–Hecke and affine Hecke algebras of type A.
//!
//! The crate builds irreducible modules of the affine Hecke algebra of
//! `GL_n` (Langlands quotients) from multisegments, restricts them to the
//! finite Hecke algebra of `S_n`, decomposes the restriction into Specht
//! modules, and checks that the sign-type constituent occurs exactly once
//! for generic multisegments and not at all otherwise.
//!
//! Module map:
//! - [`scalar`]: rationals and Laurent polynomials
//! - [`linalg`]: exact matrices, subspaces, intertwiner solver, spinning
//! - [`combin`]: partitions, dominance order, tableaux counts
//! - [`symgroup`]: permutations, reduced words, parabolic cosets
//! - [`finhecke`]: finite Hecke algebra, Specht modules, multiplicities
//! - [`affhecke`]: Bernstein presentation, principal series, standard modules
//! - [`modlab`]: enveloping algebras, radicals, heads, Hom spaces
//! - [`segments`]: segments, linking, Langlands order, enumeration
//! - [`pipeline`]: K-type tables, certificates, sweeps, serialization

pub mod affhecke;
pub mod combin;
pub mod error;
pub mod finhecke;
pub mod linalg;
pub mod modlab;
pub mod pipeline;
pub mod scalar;
pub mod segments;
pub mod selftest;
pub mod symgroup;

pub use error::{HeckeError, Result};
