//! Even-weight divisor patterns over the ramification points, modulo the
//! all-ones vector, together with exact counting.
//!
//! A divisor is an N-bit pattern (bit i set iff the involution acts as -1
//! over ramification point i) of even weight. Classes identify a pattern
//! with its complement; the invariant M is the weight of the canonical
//! representative.

use crate::gf2::BitVector;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use thiserror::Error;

/// Enumeration guard; patterns longer than this are refused.
pub const MAX_ENUM_N: usize = 28;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DivisorError {
    #[error("divisor weight must be even, got {0}")]
    OddWeight(usize),
    #[error("pattern length N must be even, got {0}")]
    OddLength(usize),
    #[error("invariant M={m} out of range or odd for N={n}")]
    BadInvariant { n: usize, m: usize },
    #[error("enumeration refused for N={0} (limit {1})")]
    TooLarge(usize, usize),
    #[error("invalid divisor literal: {0}")]
    Parse(String),
}

/// An even-weight pattern over the N ramification points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    support: BitVector,
}

impl Divisor {
    pub fn new(support: BitVector) -> Result<Self, DivisorError> {
        if support.len() % 2 != 0 {
            return Err(DivisorError::OddLength(support.len()));
        }
        if support.weight() % 2 != 0 {
            return Err(DivisorError::OddWeight(support.weight()));
        }
        Ok(Divisor { support })
    }

    pub fn from_binary_str(s: &str) -> Result<Self, DivisorError> {
        let v = BitVector::from_binary_str(s).map_err(|e| DivisorError::Parse(e.to_string()))?;
        Divisor::new(v)
    }

    pub fn support(&self) -> &BitVector {
        &self.support
    }

    pub fn n(&self) -> usize {
        self.support.len()
    }

    pub fn weight(&self) -> usize {
        self.support.weight()
    }
}

/// A divisor class `{D, D + all-ones}` with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    rep: Divisor,
    m_invariant: usize,
}

impl DivisorClass {
    pub fn rep(&self) -> &Divisor {
        &self.rep
    }

    /// The invariant M = weight of the canonical representative.
    pub fn m_invariant(&self) -> usize {
        self.m_invariant
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    /// The trivial class over N points.
    pub fn trivial(n: usize) -> Result<Self, DivisorError> {
        canonicalize(&Divisor::new(BitVector::zeros(n))?)
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DivisorClass", 3)?;
        st.serialize_field("rep", &self.rep.support.to_binary_string())?;
        st.serialize_field("N", &self.n())?;
        st.serialize_field("M", &self.m_invariant)?;
        st.end()
    }
}

/// Canonical representative: the member of smaller weight; ties at weight
/// N/2 broken by the lexicographically smaller bit string (index 0 most
/// significant).
pub fn canonicalize(d: &Divisor) -> Result<DivisorClass, DivisorError> {
    let partner = d.support.complement();
    let rep = match d.support.weight().cmp(&partner.weight()) {
        Ordering::Less => d.support.clone(),
        Ordering::Greater => partner,
        Ordering::Equal => match d.support.lex_cmp(&partner) {
            Ordering::Greater => partner,
            _ => d.support.clone(),
        },
    };
    let m_invariant = rep.weight();
    Ok(DivisorClass {
        rep: Divisor { support: rep },
        m_invariant,
    })
}

/// Serializes a big integer as a decimal string so arbitrarily large
/// counts survive JSON round trips unchanged.
pub fn biguint_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut res = BigUint::one();
    for i in 0..k.min(n - k) {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// Number of divisors (not classes) of invariant M over N points: C(N, M).
pub fn count_by_m(n: usize, m: usize) -> Result<BigUint, DivisorError> {
    if n % 2 != 0 {
        return Err(DivisorError::OddLength(n));
    }
    if m % 2 != 0 || m > n {
        return Err(DivisorError::BadInvariant { n, m });
    }
    Ok(binomial(n as u64, m as u64))
}

/// Total number of divisor classes: 2^(N-2).
pub fn count_classes(n: usize) -> Result<BigUint, DivisorError> {
    if n % 2 != 0 || n < 2 {
        return Err(DivisorError::OddLength(n));
    }
    Ok(BigUint::one() << (n - 2))
}

/// Number of classes with a given canonical invariant M: C(N, M) below the
/// midpoint, C(N, N/2)/2 at the midpoint.
pub fn count_classes_by_m(n: usize, m: usize) -> Result<BigUint, DivisorError> {
    if m > n / 2 {
        return Err(DivisorError::BadInvariant { n, m });
    }
    let c = count_by_m(n, m)?;
    Ok(if m == n / 2 { c / 2u32 } else { c })
}

/// Checks the even-index binomial sum: sum of C(N, M) over even M equals
/// 2^(N-1), exactly.
pub fn multisection_identity(n: usize) -> Result<bool, DivisorError> {
    if n % 2 != 0 || n < 2 {
        return Err(DivisorError::OddLength(n));
    }
    let sum: BigUint = (0..=n)
        .step_by(2)
        .map(|m| binomial(n as u64, m as u64))
        .sum();
    Ok(sum == BigUint::one() << (n - 1))
}

/// Deterministic enumeration of all classes over N points, canonical
/// representatives in lexicographic order, optionally capped at `max_m`.
pub fn enumerate_classes(
    n: usize,
    max_m: Option<usize>,
) -> Result<ClassIter, DivisorError> {
    if n % 2 != 0 || n < 2 {
        return Err(DivisorError::OddLength(n));
    }
    if n > MAX_ENUM_N {
        return Err(DivisorError::TooLarge(n, MAX_ENUM_N));
    }
    Ok(ClassIter {
        n,
        max_m,
        next_val: 0,
        end: 1u64 << n,
    })
}

/// Iterator over canonical representatives, ascending in the numeric value
/// whose most significant bit is string index 0 (= lexicographic order on
/// the bit strings).
pub struct ClassIter {
    n: usize,
    max_m: Option<usize>,
    next_val: u64,
    end: u64,
}

impl ClassIter {
    fn to_vector(&self, val: u64) -> BitVector {
        let mut v = BitVector::zeros(self.n);
        for i in 0..self.n {
            if val >> (self.n - 1 - i) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }
}

impl Iterator for ClassIter {
    type Item = DivisorClass;

    fn next(&mut self) -> Option<DivisorClass> {
        let full = self.end - 1;
        let half = self.n as u32 / 2;
        while self.next_val < self.end {
            let val = self.next_val;
            self.next_val += 1;
            let w = val.count_ones();
            if w % 2 != 0 {
                continue;
            }
            // canonical iff below the weight midpoint, or at it and
            // numerically (= lexicographically) no larger than the partner
            let canonical = w < half || (w == half && val < (val ^ full));
            if !canonical {
                continue;
            }
            if let Some(cap) = self.max_m {
                if w as usize > cap {
                    continue;
                }
            }
            let rep = Divisor {
                support: self.to_vector(val),
            };
            let m_invariant = w as usize;
            return Some(DivisorClass { rep, m_invariant });
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_of(s: &str) -> DivisorClass {
        canonicalize(&Divisor::new(BitVector::from_binary_str(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn canonicalize_cases() {
        let zero = class_of("00000000");
        assert_eq!(zero.m_invariant(), 0);
        assert_eq!(zero.rep().support().to_binary_string(), "00000000");

        let ones = class_of("11111111");
        assert_eq!(ones, zero); // complement identification

        let tied = class_of("11110000");
        assert_eq!(tied.rep().support().to_binary_string(), "00001111");
        assert_eq!(tied.m_invariant(), 4);
    }

    #[test]
    fn canonicalize_idempotent_and_class_constant() {
        for val in 0u64..64 {
            let mut v = BitVector::zeros(6);
            for i in 0..6 {
                if val >> i & 1 == 1 {
                    v.set(i, true);
                }
            }
            if v.weight() % 2 != 0 {
                continue;
            }
            let d = Divisor::new(v.clone()).unwrap();
            let c1 = canonicalize(&d).unwrap();
            let c2 = canonicalize(c1.rep()).unwrap();
            assert_eq!(c1, c2);
            let partner = Divisor::new(v.complement()).unwrap();
            assert_eq!(c1, canonicalize(&partner).unwrap());
        }
    }

    #[test]
    fn rejects_odd_weight() {
        let v = BitVector::from_binary_str("1000").unwrap();
        assert!(matches!(Divisor::new(v), Err(DivisorError::OddWeight(1))));
    }

    #[test]
    fn counts() {
        assert_eq!(count_by_m(8, 2).unwrap(), BigUint::from(28u32));
        assert_eq!(count_by_m(8, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(count_by_m(8, 4).unwrap(), BigUint::from(70u32));
        assert!(count_by_m(8, 3).is_err());

        assert_eq!(count_classes(8).unwrap(), BigUint::from(64u32)); // 1 + 28 + 35
        assert_eq!(count_classes(4).unwrap(), BigUint::from(4u32));
        assert_eq!(count_classes(2).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn multisection() {
        assert!(multisection_identity(8).unwrap()); // 1+28+70+28+1 = 128
        assert!(multisection_identity(4).unwrap()); // 1+6+1 = 8
        assert!(multisection_identity(40).unwrap());
    }

    #[test]
    fn enumerate_small() {
        // hand enumeration for N=4: 0000; {1100,0011}; {1010,0101}; {1001,0110}
        let classes: Vec<_> = enumerate_classes(4, None).unwrap().collect();
        assert_eq!(classes.len(), 4);
        let ms: Vec<usize> = classes.iter().map(|c| c.m_invariant()).collect();
        assert_eq!(ms, vec![0, 2, 2, 2]);

        assert_eq!(enumerate_classes(2, None).unwrap().count(), 1);
        assert_eq!(enumerate_classes(8, Some(0)).unwrap().count(), 1);
    }

    #[test]
    fn enumerate_matches_closed_form() {
        for n in (2..=14).step_by(2) {
            let count = enumerate_classes(n, None).unwrap().count();
            assert_eq!(BigUint::from(count), count_classes(n).unwrap());
        }
    }

    #[test]
    fn enumerate_yields_canonical_reps_in_lex_order() {
        let classes: Vec<_> = enumerate_classes(8, None).unwrap().collect();
        for w in classes.windows(2) {
            assert_eq!(
                w[0].rep().support().lex_cmp(w[1].rep().support()),
                std::cmp::Ordering::Less
            );
        }
        for c in &classes {
            assert_eq!(&canonicalize(c.rep()).unwrap(), c);
        }
    }

    #[test]
    fn per_m_class_counts_match_enumeration() {
        for n in (2..=12).step_by(2) {
            for m in (0..=n / 2).step_by(2) {
                let enumerated = enumerate_classes(n, None)
                    .unwrap()
                    .filter(|c| c.m_invariant() == m)
                    .count();
                assert_eq!(
                    BigUint::from(enumerated),
                    count_classes_by_m(n, m).unwrap(),
                    "N={n} M={m}"
                );
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        assert_eq!(
            enumerate_classes(30, None).err(),
            Some(DivisorError::TooLarge(30, MAX_ENUM_N))
        );
    }
}
