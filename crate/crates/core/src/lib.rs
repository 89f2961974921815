//! Exact symbolic computation in the extended affine Hecke algebra of GL_r.
//!
//! The crate realizes central elements of the algebra in the Coxeter
//! presentation two independent ways and cross-checks them:
//!
//! * `center::expand_oracle` multiplies a symmetrizer with a Schur polynomial
//!   in the inverse Bernstein generators and rewrites the result in the
//!   canonical basis of the double coset spaces;
//! * `center::formula_j` evaluates the closed expression built from
//!   Littlewood-Richardson coefficients, stabilized parabolic
//!   Kazhdan-Lusztig polynomials, and the slice-addition multipartition
//!   algorithm of `partitions::compute_mip`.
//!
//! Supporting layers: `laurent` (the ring Z[v, v^-1]), `weyl` (the extended
//! affine symmetric group in window notation), `hecke` (T-basis arithmetic,
//! bar involution, canonical bases), `pkl` (parabolic modules and their
//! canonical bases), `partitions` and `multisegments` (combinatorics), and
//! `fock` (the combinatorial Fock space action used by the leading-term
//! checks).

pub mod center;
pub mod fock;
pub mod hecke;
pub mod laurent;
pub mod multisegments;
pub mod partitions;
pub mod pkl;
pub mod weyl;

pub use laurent::LaurentPoly;
pub use weyl::{AffinePermutation, CompositionIndex};
