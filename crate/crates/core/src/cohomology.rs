//! Free GF(2) models of the mod-2 cohomology of the base surface and the
//! intermediate cover, the norm and pullback maps between them, and the
//! two-torsion decomposition of the relative Prym variety.
//!
//! No curve cohomology is ever computed: the model realizes exactly the
//! relations used downstream (norm/pullback composition, intersection-form
//! compatibility, exactness), with explicit matrices so that every relation
//! is machine-checkable.

use crate::covers::{build_geometry, CoverGeometry, CurveParams};
use crate::divisors::DivisorClass;
use crate::gf2::{
    check_exact, echelon_basis, intersection_dim, span_dim, BitMatrix, BitVector, Gf2Error,
    QuadraticRefinement, SymplecticForm,
};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("datum dimension mismatch: expected {expected}, got {got}")]
    DatumMismatch { expected: usize, got: usize },
}

/// The mod-2 first cohomology of a genus-h surface: standard symplectic
/// intersection form plus a quadratic refinement modeling the analytic
/// mod-2 index of a spin structure of parity `eps`.
#[derive(Clone, Debug)]
pub struct SurfaceCohomology {
    form: SymplecticForm,
    q: QuadraticRefinement,
}

impl SurfaceCohomology {
    /// Canonical model of dimension `2h` with spin parity `eps`:
    /// the refinement has Arf invariant `eps` and value `eps` at zero.
    pub fn standard(dim: usize, eps: bool) -> Self {
        assert!(dim % 2 == 0 && dim >= 2);
        let form = SymplecticForm::standard(dim);
        let mut basis_values = BitVector::zeros(dim);
        if eps {
            // value 1 on the first dual pair makes the Arf invariant 1
            basis_values.set(0, true);
            basis_values.set(1, true);
        }
        let q = QuadraticRefinement::new(form.clone(), basis_values, eps).unwrap();
        SurfaceCohomology { form, q }
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn q(&self) -> &QuadraticRefinement {
        &self.q
    }
}

/// The tower model: cohomology of the base and of the intermediate cover,
/// with the norm map down and the pullback map up.
#[derive(Clone, Debug)]
pub struct CoverCohomologyModel {
    params: CurveParams,
    geo: CoverGeometry,
    h_sigma: SurfaceCohomology,
    h_sbar: SurfaceCohomology,
    nm: BitMatrix,
    pullback: BitMatrix,
}

impl CoverCohomologyModel {
    pub fn params(&self) -> CurveParams {
        self.params
    }

    pub fn geometry(&self) -> &CoverGeometry {
        &self.geo
    }

    pub fn h_sigma(&self) -> &SurfaceCohomology {
        &self.h_sigma
    }

    pub fn h_sbar(&self) -> &SurfaceCohomology {
        &self.h_sbar
    }

    pub fn nm(&self) -> &BitMatrix {
        &self.nm
    }

    pub fn pullback(&self) -> &BitMatrix {
        &self.pullback
    }

    /// True when the cover degree m is odd.
    pub fn m_odd(&self) -> bool {
        self.params.m % 2 == 1
    }

    pub fn norm_of(&self, f: &BitVector) -> Result<BitVector, Gf2Error> {
        self.nm.apply(f)
    }

    pub fn pullback_of(&self, x: &BitVector) -> Result<BitVector, Gf2Error> {
        self.pullback.apply(x)
    }

    /// Basis of the norm-kernel (the two-torsion of the relative Prym of
    /// the intermediate cover over the base).
    pub fn prym2_basis(&self) -> Vec<BitVector> {
        self.nm.kernel_basis()
    }

    /// Test-support constructor; the invariants are not re-checked here.
    pub fn from_parts(
        params: CurveParams,
        h_sigma: SurfaceCohomology,
        h_sbar: SurfaceCohomology,
        nm: BitMatrix,
        pullback: BitMatrix,
    ) -> Self {
        let geo = build_geometry(params);
        CoverCohomologyModel {
            params,
            geo,
            h_sigma,
            h_sbar,
            nm,
            pullback,
        }
    }
}

/// Builds the explicit matrices for the tower.
///
/// m odd: the pullback embeds the base cohomology onto the first 2g
/// coordinates and the norm projects back onto them, so norm o pullback is
/// the identity. m even: the pullback lands on 2g isotropic a-type
/// coordinates while the norm reads the dual b-type coordinates of the same
/// pairs, so norm o pullback is zero and the pullback image lies inside the
/// norm kernel.
pub fn build_cover_model(
    p: CurveParams,
    eps_sigma: bool,
    eps_sbar: bool,
) -> CoverCohomologyModel {
    let geo = build_geometry(p);
    let dim_sigma = (2 * p.g) as usize;
    let dim_sbar = (2 * geo.g_Sbar) as usize;
    assert!(dim_sbar >= dim_sigma, "cover cohomology too small");
    let h_sigma = SurfaceCohomology::standard(dim_sigma, eps_sigma);
    let h_sbar = SurfaceCohomology::standard(dim_sbar, eps_sbar);

    let mut nm = BitMatrix::zeros(dim_sigma, dim_sbar);
    let mut pullback = BitMatrix::zeros(dim_sbar, dim_sigma);
    if p.m % 2 == 1 {
        for j in 0..dim_sigma {
            pullback.set(j, j, true);
            nm.set(j, j, true);
        }
    } else {
        assert!(2 * dim_sigma <= dim_sbar, "need g_Sbar >= 2g for m even");
        for j in 0..dim_sigma {
            pullback.set(2 * j, j, true); // a-type slot of pair j
            nm.set(j, 2 * j + 1, true); // b-type slot of pair j
        }
    }
    CoverCohomologyModel {
        params: p,
        geo,
        h_sigma,
        h_sbar,
        nm,
        pullback,
    }
}

/// Decomposition report for the cover cohomology relative to the norm
/// kernel and the pullback image.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum SplitReport {
    /// m odd: cover cohomology = norm-kernel (+) pullback image.
    DirectSum {
        kernel_dim: usize,
        pullback_dim: usize,
        intersection_dim: usize,
        spans_all: bool,
        /// Norm restricted to the pullback image is an isomorphism onto the
        /// base cohomology.
        section_ok: bool,
    },
    /// m even: pullback image inside the norm kernel inside everything,
    /// with the three graded dimensions.
    Filtration {
        graded_dims: [usize; 3],
        image_in_kernel: bool,
    },
}

impl SplitReport {
    pub fn is_valid(&self, model: &CoverCohomologyModel) -> bool {
        let dim_sbar = model.h_sbar.dim();
        let dim_sigma = model.h_sigma.dim();
        match self {
            SplitReport::DirectSum {
                kernel_dim,
                pullback_dim,
                intersection_dim,
                spans_all,
                section_ok,
            } => {
                kernel_dim + pullback_dim == dim_sbar
                    && *intersection_dim == 0
                    && *spans_all
                    && *section_ok
                    && *pullback_dim == dim_sigma
            }
            SplitReport::Filtration {
                graded_dims,
                image_in_kernel,
            } => {
                *image_in_kernel
                    && graded_dims[0] == dim_sigma
                    && graded_dims[2] == dim_sigma
                    && graded_dims.iter().sum::<usize>() == dim_sbar
            }
        }
    }
}

/// Analyzes the cover cohomology as a norm-kernel/pullback decomposition:
/// a genuine direct sum for m odd, a three-step filtration for m even.
pub fn pullback_split(model: &CoverCohomologyModel) -> Result<SplitReport, CohomologyError> {
    let kernel = model.nm.kernel_basis();
    let image = model.pullback.image_basis();
    if model.m_odd() {
        let kernel_dim = kernel.len();
        let pullback_dim = image.len();
        let inter = intersection_dim(&kernel, &image);
        let mut all = kernel.clone();
        all.extend(image.iter().cloned());
        let spans_all = span_dim(&all) == model.h_sbar.dim();
        // section property: Nm restricted to im(pullback) is injective with
        // full image
        let nm_on_image: Vec<BitVector> = image
            .iter()
            .map(|v| model.nm.apply(v))
            .collect::<Result<_, _>>()?;
        let section_ok = span_dim(&nm_on_image) == model.h_sigma.dim()
            && nm_on_image.len() == image.len();
        Ok(SplitReport::DirectSum {
            kernel_dim,
            pullback_dim,
            intersection_dim: inter,
            spans_all,
            section_ok,
        })
    } else {
        let image_in_kernel = intersection_dim(&image, &kernel) == span_dim(&image);
        let bottom = span_dim(&image);
        let middle = kernel.len().saturating_sub(bottom);
        let top = model.h_sbar.dim() - kernel.len();
        Ok(SplitReport::Filtration {
            graded_dims: [bottom, middle, top],
            image_in_kernel,
        })
    }
}

/// One point of the two-torsion model: a cover-cohomology class plus a
/// divisor class.
#[derive(Clone, Debug, Serialize)]
pub struct PrymTwoTorsionModel {
    pub h1_part: BitVector,
    pub div_part: DivisorClass,
}

impl PrymTwoTorsionModel {
    /// Total GF(2) dimension of the model space for given parameters.
    pub fn dim(geo: &CoverGeometry) -> usize {
        (2 * geo.g_Sbar + geo.N - 2) as usize
    }
}

/// Structure of the orthogonal-side fiber: the two-torsion model modulo its
/// cover-cohomology factor, in two copies indexed by the spin-lift flag.
#[derive(Clone, Debug, Serialize)]
pub struct SoFiberReport {
    pub dim: usize,
    pub copies: u32,
    #[serde(serialize_with = "crate::divisors::biguint_decimal")]
    pub points_per_copy: BigUint,
}

/// Computes the fiber dimension as an explicit GF(2) quotient in the model:
/// the full two-torsion space modulo the subspace spanned by the
/// cover-cohomology coordinates.
pub fn so_fiber_model(p: CurveParams) -> SoFiberReport {
    let geo = build_geometry(p);
    let total = PrymTwoTorsionModel::dim(&geo);
    let sub_dim = (2 * geo.g_Sbar) as usize;
    // quotient dimension via explicit spans
    let full: Vec<BitVector> = (0..total).map(|i| BitVector::basis(total, i)).collect();
    let sub: Vec<BitVector> = (0..sub_dim).map(|i| BitVector::basis(total, i)).collect();
    let dim = span_dim(&full) - span_dim(&echelon_basis(&sub));
    SoFiberReport {
        dim,
        copies: 2,
        points_per_copy: BigUint::one() << dim,
    }
}

/// Exactness of 0 -> norm-kernel -> cover cohomology -> base cohomology -> 0
/// at every junction.
pub fn norm_sequence_exact(model: &CoverCohomologyModel) -> Result<bool, CohomologyError> {
    let kernel = model.prym2_basis();
    let dim_sbar = model.h_sbar.dim();
    let mut incl = BitMatrix::zeros(dim_sbar, kernel.len());
    for (c, k) in kernel.iter().enumerate() {
        for r in 0..dim_sbar {
            if k.get(r) {
                incl.set(r, c, true);
            }
        }
    }
    let maps = vec![
        BitMatrix::zeros(kernel.len(), 0),
        incl,
        model.nm.clone(),
        BitMatrix::zeros(0, model.h_sigma.dim()),
    ];
    Ok(check_exact(&maps)?.all_exact())
}
