//! Exact integer degree arithmetic on the symplectic side: the spectral
//! line bundle, its invariant and anti-invariant pieces, the rank-m bundle
//! degree, the Toledo invariant and its Milnor-Wood bound.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DegreeError {
    #[error("invariant M={m} must be even and in [0, {max}]")]
    BadInvariant { m: i64, max: i64 },
}

/// All degree data attached to (m, g, M).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct DegreeProfile {
    pub m: i64,
    pub g: i64,
    #[serde(rename = "M")]
    pub m_invariant: i64,
    pub deg_U: i64,
    pub deg_U_plus: i64,
    pub deg_U_minus: i64,
    pub deg_W: i64,
    pub toledo: i64,
}

/// Degree of the spectral line bundle adopted by this crate:
/// `2m(2m-1)(g-1)`. See [`variant_deg_u`] for the rejected alternative.
pub fn deg_u(m: i64, g: i64) -> i64 {
    2 * m * (2 * m - 1) * (g - 1)
}

/// The circulating alternative `m(2m-1)(g-1)`. It fails the
/// Euler-characteristic pushforward check (see
/// [`euler_pushforward_check_with`]) and is kept only as ledger evidence.
pub fn variant_deg_u(m: i64, g: i64) -> i64 {
    m * (2 * m - 1) * (g - 1)
}

pub fn degree_profile(m: i64, g: i64, m_invariant: i64) -> Result<DegreeProfile, DegreeError> {
    let n = 4 * m * (g - 1);
    if m_invariant % 2 != 0 || m_invariant < 0 || m_invariant > n {
        return Err(DegreeError::BadInvariant {
            m: m_invariant,
            max: n,
        });
    }
    let half = m_invariant / 2;
    let deg_w = -half + m * (g - 1);
    Ok(DegreeProfile {
        m,
        g,
        m_invariant,
        deg_U: deg_u(m, g),
        deg_U_plus: m * (2 * m - 1) * (g - 1) - half,
        deg_U_minus: m * (2 * m - 3) * (g - 1) + half,
        deg_W: deg_w,
        toledo: deg_w,
    })
}

/// Euler-characteristic invariance under the pushforward along the double
/// cover: `deg U+ + deg U- = deg U - (g_S - 1) + 2 (g_Sbar - 1)`.
/// The independent oracle for the degree formulas.
pub fn euler_pushforward_check(m: i64, g: i64, m_invariant: i64) -> Result<bool, DegreeError> {
    euler_pushforward_check_with(m, g, m_invariant, deg_u(m, g))
}

/// Same check against an arbitrary candidate for `deg U`; the adopted value
/// passes identically and the variant fails for every valid (m, g).
pub fn euler_pushforward_check_with(
    m: i64,
    g: i64,
    m_invariant: i64,
    candidate_deg_u: i64,
) -> Result<bool, DegreeError> {
    let p = degree_profile(m, g, m_invariant)?;
    let g_s = 1 + 4 * m * m * (g - 1);
    let g_sbar = (2 * m * m - m) * (g - 1) + 1;
    Ok(p.deg_U_plus + p.deg_U_minus == candidate_deg_u - (g_s - 1) + 2 * (g_sbar - 1))
}

/// Degree identity for the twist relating the invariant and anti-invariant
/// pieces: `deg U- - deg U+ = M - 2m(g-1)`, the degree of the divisor twist
/// by the dual of the pulled-back canonical bundle.
pub fn dual_twist_degree_check(m: i64, g: i64, m_invariant: i64) -> Result<bool, DegreeError> {
    let p = degree_profile(m, g, m_invariant)?;
    Ok(p.deg_U_minus - p.deg_U_plus == m_invariant - 2 * m * (g - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorWood {
    pub toledo: i64,
    pub within_bound: bool,
    pub c1_mod2: u8,
}

/// Toledo invariant with its Milnor-Wood bound check. `within_bound` is
/// equivalent to `0 <= M <= 4m(g-1)`; the mod-2 value of the first Chern
/// class depends on M mod 4.
pub fn milnor_wood(m: i64, g: i64, m_invariant: i64) -> Result<MilnorWood, DegreeError> {
    if m_invariant % 2 != 0 {
        return Err(DegreeError::BadInvariant {
            m: m_invariant,
            max: 4 * m * (g - 1),
        });
    }
    let toledo = m * (g - 1) - m_invariant / 2;
    let within_bound = toledo.abs() <= m * (g - 1);
    Ok(MilnorWood {
        toledo,
        within_bound,
        c1_mod2: (toledo.rem_euclid(2)) as u8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_values() {
        let p = degree_profile(2, 2, 0).unwrap();
        assert_eq!(p.deg_U_plus, 6);
        assert_eq!(p.deg_U_minus, 2);
        assert_eq!(p.deg_W, 2);
        assert_eq!(p.toledo, 2);

        assert_eq!(degree_profile(2, 2, 4).unwrap().deg_W, 0);
        let p = degree_profile(2, 2, 8).unwrap();
        assert_eq!(p.deg_W, -2);
        assert_eq!(p.deg_U_plus, 2);
        assert_eq!(p.deg_U_minus, 6);
    }

    #[test]
    fn euler_oracle() {
        assert!(euler_pushforward_check(2, 2, 0).unwrap()); // 6+2 = 12-16+12
        assert!(euler_pushforward_check(3, 2, 0).unwrap()); // 15+9 = 30-36+30
        // the variant value fails the same oracle
        assert!(!euler_pushforward_check_with(2, 2, 0, variant_deg_u(2, 2)).unwrap());
    }

    #[test]
    fn twist_degree_identity() {
        assert!(dual_twist_degree_check(2, 2, 4).unwrap()); // 4-4 = 0
        assert!(dual_twist_degree_check(2, 2, 0).unwrap()); // 2-6 = -4
        assert!(dual_twist_degree_check(1, 3, 4).unwrap());
    }

    #[test]
    fn sum_is_m_independent() {
        for m in 1..=8 {
            for g in 2..=6 {
                for mi in (0..=4 * m * (g - 1)).step_by(2) {
                    let p = degree_profile(m, g, mi).unwrap();
                    assert_eq!(p.deg_U_plus + p.deg_U_minus, (4 * m * m - 4 * m) * (g - 1));
                    // two routes to deg W must agree with the adopted deg U
                    assert_eq!(p.deg_W, p.deg_U / 2 - mi / 2 - (2 * m * m - 2 * m) * (g - 1));
                    assert!(euler_pushforward_check(m, g, mi).unwrap());
                    assert!(dual_twist_degree_check(m, g, mi).unwrap());
                }
            }
        }
    }

    #[test]
    fn milnor_wood_cases() {
        let r = milnor_wood(2, 2, 0).unwrap();
        assert_eq!((r.toledo, r.within_bound, r.c1_mod2), (2, true, 0));
        let r = milnor_wood(2, 2, 2).unwrap();
        assert_eq!((r.toledo, r.c1_mod2), (1, 1));
        assert!(!milnor_wood(2, 2, 10).unwrap().within_bound);
        assert!(milnor_wood(2, 2, 1).is_err());
    }

    #[test]
    fn toledo_is_a_bijection_onto_the_ladder() {
        for m in 1..=4 {
            for g in 2..=4 {
                let n = 4 * m * (g - 1);
                let values: Vec<i64> = (0..=n)
                    .step_by(2)
                    .map(|mi| milnor_wood(m, g, mi).unwrap().toledo)
                    .collect();
                let expected: Vec<i64> = (0..=n / 2).map(|k| m * (g - 1) - k).collect();
                assert_eq!(values, expected);
            }
        }
    }

    #[test]
    fn rejects_bad_invariant() {
        assert!(degree_profile(2, 2, 3).is_err());
        assert!(degree_profile(2, 2, -2).is_err());
        assert!(degree_profile(2, 2, 10).is_err());
    }
}
