//! Exact-arithmetic spectral-data calculus for split orthogonal and real
//! symplectic Higgs bundles: GF(2) linear algebra, curve-tower numerics,
//! divisor-class combinatorics, Stiefel-Whitney class computation from
//! spectral data, exact fiber point counts, and moduli-component grading.
//!
//! Everything is exact (integers, big integers, GF(2)); there is no
//! floating point anywhere. All public values are immutable and all
//! operations are pure functions, so the whole crate is thread-safe by
//! construction.

pub mod cohomology;
pub mod components;
pub mod covers;
pub mod degrees;
pub mod divisors;
pub mod gf2;
pub mod hitchin;
pub mod ko;
pub mod ledger;
pub mod swdata;
