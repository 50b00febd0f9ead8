//! The real K-theory group of a surface, modeled as triples
//! (rank, w1, w2) with the Whitney-sum addition law, plus the mod-2 index
//! homomorphism attached to a spin-structure refinement.

use crate::gf2::{BitVector, Gf2Error, QuadraticRefinement};
use serde::Serialize;

/// A class (virtual rank, first and second Stiefel-Whitney data).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KOClass {
    pub rank: i64,
    pub w1: BitVector,
    pub w2: bool,
}

impl KOClass {
    pub fn new(rank: i64, w1: BitVector, w2: bool) -> Self {
        KOClass { rank, w1, w2 }
    }

    pub fn zero(dim: usize) -> Self {
        KOClass::new(0, BitVector::zeros(dim), false)
    }

    /// Whitney-sum addition: ranks add, w1 adds, and w2 picks up the
    /// intersection pairing of the w1 parts.
    pub fn add(&self, other: &KOClass, q: &QuadraticRefinement) -> Result<KOClass, Gf2Error> {
        let pairing = q.form().pairing(&self.w1, &other.w1)?;
        Ok(KOClass {
            rank: self.rank + other.rank,
            w1: self.w1.xor(&other.w1),
            w2: self.w2 ^ other.w2 ^ pairing,
        })
    }
}

/// The class of a 2-torsion line bundle with first Stiefel-Whitney class `x`.
pub fn alpha(x: &BitVector) -> KOClass {
    KOClass::new(1, x.clone(), false)
}

/// The rank-zero point class: trivial w1, nontrivial w2, 2-torsion.
pub fn omega_point(dim: usize) -> KOClass {
    KOClass::new(0, BitVector::zeros(dim), true)
}

/// The mod-2 index of a class, for a refinement `q` of parity
/// `eps = q(0) = arf(q)`:
///
/// `phi(r, x, w) = (r - 1) eps + q(x) + w`.
///
/// This is the unique additive extension of the generator values
/// `phi(trivial rank n) = n eps`, `phi(alpha(x)) = q(x)`,
/// `phi(point class) = 1`.
pub fn phi(c: &KOClass, q: &QuadraticRefinement) -> Result<bool, Gf2Error> {
    let eps = q.base_parity();
    let rank_term = (c.rank - 1).rem_euclid(2) == 1 && eps;
    Ok(rank_term ^ q.eval(&c.w1)? ^ c.w2)
}

/// Recovers w2 from the index: `phi(c) + phi(alpha(w1(c)))`.
///
/// Identical to `w2(c)` whenever the spin parity is even, or the rank is
/// odd; for even rank and odd parity the two differ by 1 (the underlying
/// index identity holds for even spin structures only).
pub fn w2_from_phi(c: &KOClass, q: &QuadraticRefinement) -> Result<bool, Gf2Error> {
    Ok(phi(c, q)? ^ phi(&alpha(&c.w1), q)?)
}
