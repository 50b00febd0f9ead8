//! Grading of the moduli components by the divisor invariant M: descriptors
//! of the Zariski-open intersection of each component with the regular
//! fibers, exact fiber point counts, and the rank-4 maximal reference count.

use crate::cohomology::pullback_split;
use crate::cohomology::{build_cover_model, SplitReport};
use crate::covers::{build_geometry, residual_base_dims, CurveParams, ResidualIndexConvention};
use crate::divisors::{binomial, count_classes_by_m};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComponentError {
    #[error("invariant M={m} must be even and in [0, {max}]")]
    BadInvariant { m: i64, max: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Group {
    SpReal,
    SoSplit,
}

/// Residual Hitchin-base differentials under both index conventions,
/// labeled; see `covers::ResidualIndexConvention`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualDims {
    pub up_to_m_minus_one: Vec<i64>,
    pub up_to_two_m_minus_two: Vec<i64>,
}

/// One graded piece of the moduli space: the component labeled by M,
/// described over a regular fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDescriptor {
    pub group: Group,
    #[serde(rename = "M")]
    pub m_invariant: i64,
    /// Dimension of the symmetric product carrying the divisor choice.
    pub sym_dim: i64,
    /// Rank of the bundle of top differentials vanishing on the divisor.
    pub bundle_rank: i64,
    pub residual_base_dims: ResidualDims,
    /// GF(2) dimension of the fiber factor.
    pub fiber_z2_dim: i64,
    #[serde(serialize_with = "crate::divisors::biguint_decimal")]
    pub fiber_count_per_point: BigUint,
    /// Set for rows whose component is known to subdivide further or to be
    /// identified with a partner invariant.
    pub annotation: Option<String>,
}

fn residual(p: CurveParams) -> ResidualDims {
    ResidualDims {
        up_to_m_minus_one: residual_base_dims(p, ResidualIndexConvention::UpToMMinusOne),
        up_to_two_m_minus_two: residual_base_dims(p, ResidualIndexConvention::UpToTwoMMinusTwo),
    }
}

fn validate_m(p: CurveParams, m_invariant: i64) -> Result<i64, ComponentError> {
    let n = 4 * p.m * (p.g - 1);
    if m_invariant % 2 != 0 || m_invariant < 0 || m_invariant > n {
        return Err(ComponentError::BadInvariant {
            m: m_invariant,
            max: n,
        });
    }
    Ok(n)
}

/// Component descriptor on the symplectic side: fiber factor of dimension
/// `2 g_Sbar`, per-point count `C(N, M) * 2^(2 g_Sbar)`.
pub fn sp_component(
    p: CurveParams,
    m_invariant: i64,
) -> Result<ComponentDescriptor, ComponentError> {
    let n = validate_m(p, m_invariant)?;
    let geo = build_geometry(p);
    let annotation = if m_invariant == 0 {
        Some("maximal Toledo invariant; may subdivide further (see gothen_count for m=2)".into())
    } else {
        None
    };
    Ok(ComponentDescriptor {
        group: Group::SpReal,
        m_invariant,
        sym_dim: m_invariant,
        bundle_rank: (4 * p.m - 1) * (p.g - 1) - m_invariant,
        residual_base_dims: residual(p),
        fiber_z2_dim: 2 * geo.g_Sbar,
        fiber_count_per_point: binomial(n as u64, m_invariant as u64)
            * (BigUint::one() << (2 * geo.g_Sbar as usize)),
        annotation,
    })
}

/// Component descriptor on the orthogonal side: per-point count is the
/// class count for M (with the midpoint halving), parametrized up to the
/// cover cohomology.
pub fn so_component(
    p: CurveParams,
    m_invariant: i64,
) -> Result<ComponentDescriptor, ComponentError> {
    let n = validate_m(p, m_invariant)?;
    let geo = build_geometry(p);
    let canonical = m_invariant.min(n - m_invariant);
    let mut notes = Vec::new();
    if m_invariant > n / 2 {
        notes.push(format!(
            "canonical invariant {canonical}; identified with partner {m_invariant}"
        ));
    }
    if canonical == 0 {
        notes.push("maximal Toledo invariant on the symplectic side".into());
    }
    notes.push(format!(
        "parametrization up to a Z2 space of dimension {}",
        2 * geo.g_Sbar
    ));
    Ok(ComponentDescriptor {
        group: Group::SoSplit,
        m_invariant: canonical,
        sym_dim: canonical,
        bundle_rank: (4 * p.m - 1) * (p.g - 1) - canonical,
        residual_base_dims: residual(p),
        fiber_z2_dim: 2 * geo.g_Sbar,
        fiber_count_per_point: count_classes_by_m(n as usize, canonical as usize)
            .expect("validated invariant"),
        annotation: Some(notes.join("; ")),
    })
}

/// The maximal (M = 0) case.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum MaximalCaseReport {
    /// Symplectic side: a 2^(2 g_Sbar) cover of a vector space over a point.
    SpCover { cover_multiplicity_log2: i64 },
    /// Orthogonal side, m odd: 2^(2g) copies of the relative Prym variety.
    SoCopies { copies_log2: i64, prym_dim: i64 },
    /// Orthogonal side, m even: the filtration variant; no copy count is
    /// asserted.
    SoFiltration { graded_dims: [usize; 3] },
    /// m = 1: the intermediate cover is trivial.
    Degenerate { prym_dim: i64 },
}

/// Reports both sides of the maximal case for the given parameters.
#[derive(Clone, Debug, Serialize)]
pub struct MaximalCase {
    pub sp: MaximalCaseReport,
    pub so: MaximalCaseReport,
}

pub fn maximal_case(p: CurveParams) -> MaximalCase {
    let geo = build_geometry(p);
    let sp = MaximalCaseReport::SpCover {
        cover_multiplicity_log2: 2 * geo.g_Sbar,
    };
    let so = if p.m == 1 {
        MaximalCaseReport::Degenerate { prym_dim: 0 }
    } else if p.m % 2 == 1 {
        MaximalCaseReport::SoCopies {
            copies_log2: 2 * p.g,
            prym_dim: geo.g_Sbar - p.g,
        }
    } else {
        let model = build_cover_model(p, false, false);
        match pullback_split(&model).expect("model construction is valid") {
            SplitReport::Filtration { graded_dims, .. } => {
                MaximalCaseReport::SoFiltration { graded_dims }
            }
            SplitReport::DirectSum { .. } => unreachable!("m is even"),
        }
    };
    MaximalCase { sp, so }
}

/// Reference constant: the number of connected components of the maximal
/// rank-4 symplectic moduli space, `3 * 2^(2g) + 2g - 4`. The grading by M
/// does not resolve these; the constant is exposed for comparison only.
pub fn gothen_count(g: u32) -> BigUint {
    assert!(g >= 2);
    BigUint::from(3u32) * (BigUint::one() << (2 * g)) + BigUint::from(2 * g) - BigUint::from(4u32)
}

/// The full grading table for one group.
#[derive(Clone, Debug, Serialize)]
pub struct GradingTable {
    pub group: Group,
    pub m: i64,
    pub g: i64,
    #[serde(rename = "N")]
    pub n: i64,
    pub rows: Vec<ComponentDescriptor>,
    /// Sum of the per-point fiber counts over the rows.
    #[serde(serialize_with = "crate::divisors::biguint_decimal")]
    pub total: BigUint,
}

pub fn grading_table(group: Group, p: CurveParams) -> GradingTable {
    let geo = build_geometry(p);
    let n = geo.N;
    let upper = match group {
        Group::SpReal => n,
        Group::SoSplit => n / 2,
    };
    let rows: Vec<ComponentDescriptor> = (0..=upper)
        .step_by(2)
        .map(|mi| match group {
            Group::SpReal => sp_component(p, mi).expect("in-range invariant"),
            Group::SoSplit => so_component(p, mi).expect("in-range invariant"),
        })
        .collect();
    let total = rows.iter().map(|r| r.fiber_count_per_point.clone()).sum();
    GradingTable {
        group,
        m: p.m,
        g: p.g,
        n,
        rows,
        total,
    }
}
