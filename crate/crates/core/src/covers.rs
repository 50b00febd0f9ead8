//! Numeric profile of the curve tower: a surface of genus `g`, its 2m:1
//! spectral cover, and the intermediate m:1 quotient cover. All quantities
//! are exact integers and every closed form is backed by a
//! Riemann-Hurwitz / Euler-characteristic oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("rank parameter m must be >= 1, got {0}")]
    BadRank(i64),
    #[error("genus g must be >= 2, got {0}")]
    BadGenus(i64),
}

/// The pair (m, g): rank parameter of the split group and base genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveParams {
    pub m: i64,
    pub g: i64,
}

impl CurveParams {
    pub fn new(m: i64, g: i64) -> Result<Self, CoverError> {
        if m < 1 {
            return Err(CoverError::BadRank(m));
        }
        if g < 2 {
            return Err(CoverError::BadGenus(g));
        }
        Ok(CurveParams { m, g })
    }
}

/// Genera, degrees and dimension bookkeeping for the tower.
/// Field names are part of the JSON interface.
#[allow(non_snake_case)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverGeometry {
    pub g_S: i64,
    pub g_Sbar: i64,
    /// Number of ramification points of the double cover (degree of the
    /// top coefficient divisor).
    pub N: i64,
    pub deg_K: i64,
    pub dim_prym: i64,
    pub dim_hitchin_base: i64,
    /// GF(2) dimension of the two-torsion of the relative Prym variety.
    pub dim_prym2: i64,
    /// GF(2) dimension of the orthogonal-side fiber model.
    pub dim_so_fiber: i64,
}

pub fn build_geometry(p: CurveParams) -> CoverGeometry {
    let (m, g) = (p.m, p.g);
    let g_s = 1 + 4 * m * m * (g - 1);
    let g_sbar = (2 * m * m - m) * (g - 1) + 1;
    let n = 4 * m * (g - 1);
    CoverGeometry {
        g_S: g_s,
        g_Sbar: g_sbar,
        N: n,
        deg_K: 2 * g - 2,
        dim_prym: g_s - g_sbar,
        dim_hitchin_base: (2 * m * m + m) * (g - 1),
        dim_prym2: 2 * g_sbar + n - 2,
        dim_so_fiber: n - 2,
    }
}

/// Riemann-Hurwitz for the branched double cover:
/// `2 g_S - 2 = 2 (2 g_Sbar - 2) + N`. The independent oracle for the genus
/// formulas.
pub fn riemann_hurwitz_check(geo: &CoverGeometry) -> bool {
    2 * geo.g_S - 2 == 2 * (2 * geo.g_Sbar - 2) + geo.N
}

/// Adjunction on the top cover: `2 g_S - 2 = 8 m^2 (g - 1)`.
pub fn adjunction_check_top(p: CurveParams, geo: &CoverGeometry) -> bool {
    2 * geo.g_S - 2 == 8 * p.m * p.m * (p.g - 1)
}

/// Adjunction on the intermediate cover:
/// `2 g_Sbar - 2 = m (2m - 1) (2g - 2)`.
pub fn adjunction_check_mid(p: CurveParams, geo: &CoverGeometry) -> bool {
    2 * geo.g_Sbar - 2 == p.m * (2 * p.m - 1) * (2 * p.g - 2)
}

/// `[dim H^0(K^{2i})]` for `i = 1..m`, each `(4i - 1)(g - 1)` by
/// Riemann-Roch (degree `2i(2g-2) > 2g-2`).
pub fn hitchin_base_dims(p: CurveParams) -> Vec<i64> {
    (1..=p.m).map(|i| (4 * i - 1) * (p.g - 1)).collect()
}

/// Index convention for the residual differentials left after the top
/// coefficient is consumed by the divisor choice. Two conventions circulate
/// for the upper index; both are exposed and labeled rather than guessing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResidualIndexConvention {
    /// `i = 1..m-1`: the base minus its top summand.
    UpToMMinusOne,
    /// `i = 1..2m-2`: the range printed in some sources.
    UpToTwoMMinusTwo,
}

pub fn residual_base_dims(p: CurveParams, conv: ResidualIndexConvention) -> Vec<i64> {
    let upper = match conv {
        ResidualIndexConvention::UpToMMinusOne => p.m - 1,
        ResidualIndexConvention::UpToTwoMMinusTwo => 2 * p.m - 2,
    };
    (1..=upper).map(|i| (4 * i - 1) * (p.g - 1)).collect()
}
