//! The Stiefel-Whitney engine: computes the three characteristic classes of
//! a split orthogonal pair from its spectral datum, by two independent
//! routes that must agree pointwise.

use crate::cohomology::{CoverCohomologyModel, CohomologyError};
use crate::divisors::DivisorClass;
use crate::gf2::BitVector;
use serde::Serialize;

/// The raw spectral datum: a cover-cohomology class, a divisor class, and
/// the spin-lift flag selecting one of the two fiber copies.
///
/// The divisor does not enter the class formulas; it carries the invariant
/// M and the extension data, so it stays part of the datum.
#[derive(Clone, Debug)]
pub struct SpectralDatum {
    pub f: BitVector,
    pub d: DivisorClass,
    pub w2_total: bool,
}

/// The computed classes. Field names are part of the JSON interface.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwClasses {
    pub w1_Vplus: BitVector,
    pub w2_Vplus: bool,
    pub w2_Vminus: bool,
    #[serde(rename = "M")]
    pub m_invariant: usize,
}

fn validate(d: &SpectralDatum, model: &CoverCohomologyModel) -> Result<(), CohomologyError> {
    let expected = model.h_sbar().dim();
    if d.f.len() != expected {
        return Err(CohomologyError::DatumMismatch {
            expected,
            got: d.f.len(),
        });
    }
    let n = model.geometry().N as usize;
    if d.d.n() != n {
        return Err(CohomologyError::DatumMismatch {
            expected: n,
            got: d.d.n(),
        });
    }
    Ok(())
}

/// Direct route: w1 is the norm of the datum class; w2 of the plus bundle
/// is the sum of the two mod-2 indices (upstairs and of the norm); w2 of
/// the minus bundle differs from it by the spin-lift flag.
pub fn sw_classes(
    d: &SpectralDatum,
    model: &CoverCohomologyModel,
) -> Result<SwClasses, CohomologyError> {
    validate(d, model)?;
    let w1 = model.norm_of(&d.f)?;
    let w2_plus = model.h_sbar().q().eval(&d.f)? ^ model.h_sigma().q().eval(&w1)?;
    Ok(SwClasses {
        w1_Vplus: w1,
        w2_Vplus: w2_plus,
        w2_Vminus: w2_plus ^ d.w2_total,
        m_invariant: d.d.m_invariant(),
    })
}

/// Spin-structure route: case split on the index of the datum class viewed
/// as a twisted spin structure upstairs. Must agree with [`sw_classes`] on
/// every input.
pub fn sw_classes_spin(
    d: &SpectralDatum,
    model: &CoverCohomologyModel,
) -> Result<SwClasses, CohomologyError> {
    validate(d, model)?;
    let w1 = model.norm_of(&d.f)?;
    let upstairs = model.h_sbar().q().eval(&d.f)?;
    let base = model.h_sigma().q().eval(&w1)?;
    let w2_plus = if upstairs { !base } else { base };
    let w2_minus = if upstairs == d.w2_total { base } else { !base };
    Ok(SwClasses {
        w1_Vplus: w1,
        w2_Vplus: w2_plus,
        w2_Vminus: w2_minus,
        m_invariant: d.d.m_invariant(),
    })
}

/// Guards against representation drift: the datum-to-w1 map must be
/// GF(2)-linear. `map` is checked at zero, on all basis pairs, and on a
/// deterministic set of denser probe vectors.
pub fn linearity_check(map: impl Fn(&BitVector) -> BitVector, dim: usize) -> bool {
    let zero = BitVector::zeros(dim);
    if !map(&zero).is_zero() {
        return false;
    }
    let add_ok = |x: &BitVector, y: &BitVector| map(&x.xor(y)) == map(x).xor(&map(y));
    for i in 0..dim {
        for j in i..dim {
            let ei = BitVector::basis(dim, i);
            let ej = BitVector::basis(dim, j);
            if !add_ok(&ei, &ej) {
                return false;
            }
        }
    }
    // denser probes: alternating masks and a running xorshift pattern
    let mut probes = Vec::new();
    let mut alt = BitVector::zeros(dim);
    for i in (0..dim).step_by(2) {
        alt.set(i, true);
    }
    probes.push(alt.clone());
    probes.push(alt.complement());
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..8 {
        let mut v = BitVector::zeros(dim);
        for i in 0..dim {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            v.set(i, state & 1 == 1);
        }
        probes.push(v);
    }
    for x in &probes {
        for y in &probes {
            if !add_ok(x, y) {
                return false;
            }
        }
    }
    true
}

/// Linearity of the norm route used for w1 in the given model.
pub fn w1_is_norm_linear(model: &CoverCohomologyModel) -> bool {
    let dim = model.h_sbar().dim();
    linearity_check(|f| model.norm_of(f).expect("dimension fixed"), dim)
}
