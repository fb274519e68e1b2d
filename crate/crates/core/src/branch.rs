use ndarray::{Array4, Array5};

use crate::{CoreError, LfDims, LightField, Result};

/// The four admissible 4D layouts of a light-field feature.
///
/// Each branch folds some light-field axes into the batch dimension and
/// exposes the remaining two as the convolution plane:
///
/// | branch  | data layout        | plane   |
/// |---------|--------------------|---------|
/// | spatial | (B·U·V, C, H, W)   | (H, W)  |
/// | angular | (B·H·W, C, U, V)   | (U, V)  |
/// | epi-h   | (B·H·U, C, V, W)   | (V, W)  |
/// | epi-v   | (B·W·V, C, U, H)   | (U, H)  |
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Spatial,
    Angular,
    EpiH,
    EpiV,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::Spatial, Branch::Angular, Branch::EpiH, Branch::EpiV];

    /// Names of the light-field axes folded into the batch dimension,
    /// in fold order (slowest first).
    pub fn batch_axes(self) -> [&'static str; 2] {
        match self {
            Branch::Spatial => ["u", "v"],
            Branch::Angular => ["h", "w"],
            Branch::EpiH => ["h", "u"],
            Branch::EpiV => ["w", "v"],
        }
    }

    /// Names of the two axes forming the convolution plane (P, Q).
    pub fn plane_axes(self) -> [&'static str; 2] {
        match self {
            Branch::Spatial => ["h", "w"],
            Branch::Angular => ["u", "v"],
            Branch::EpiH => ["v", "w"],
            Branch::EpiV => ["u", "h"],
        }
    }

    /// Axis permutation taking (U, V, H, W, C) to (fold0, fold1, C, P, Q).
    fn permutation(self) -> [usize; 5] {
        match self {
            Branch::Spatial => [0, 1, 4, 2, 3],
            Branch::Angular => [2, 3, 4, 0, 1],
            Branch::EpiH => [2, 0, 4, 1, 3],
            Branch::EpiV => [3, 1, 4, 0, 2],
        }
    }
}

/// A light-field feature folded into one of the [`Branch`] layouts.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchView {
    branch: Branch,
    data: Array4<f64>,
}

impl BranchView {
    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn data(&self) -> &Array4<f64> {
        &self.data
    }

    pub fn into_data(self) -> Array4<f64> {
        self.data
    }

    /// Wraps an already folded array. The caller asserts the layout; use
    /// [`branch_view`] to fold a light field.
    pub fn from_parts(branch: Branch, data: Array4<f64>) -> Self {
        Self { branch, data }
    }
}

/// Folds a light-field feature into the 4D layout of `branch`.
///
/// Folding is pure data movement: the element multiset is preserved and
/// [`inverse_branch_view`] restores the original bitwise.
pub fn branch_view(lf: &LightField, branch: Branch) -> BranchView {
    let perm = branch.permutation();
    let folded = lf
        .data()
        .view()
        .permuted_axes(perm)
        .as_standard_layout()
        .into_owned();
    let (f0, f1, c, p, q) = folded.dim();
    let data = folded
        .into_shape_with_order((f0 * f1, c, p, q))
        .expect("contiguous reshape");
    BranchView { branch, data }
}

/// Unfolds a [`BranchView`] back into a light field with the stated
/// dimensions. Exact inverse of [`branch_view`].
pub fn inverse_branch_view(bv: &BranchView, dims: LfDims) -> Result<LightField> {
    let LfDims { u, v, h, w, c } = dims;
    let (fold0, fold1) = match bv.branch {
        Branch::Spatial => (u, v),
        Branch::Angular => (h, w),
        Branch::EpiH => (h, u),
        Branch::EpiV => (w, v),
    };
    let (plane_p, plane_q) = match bv.branch {
        Branch::Spatial => (h, w),
        Branch::Angular => (u, v),
        Branch::EpiH => (v, w),
        Branch::EpiV => (u, h),
    };
    let expected = (fold0 * fold1, c, plane_p, plane_q);
    if bv.data.dim() != expected {
        return Err(CoreError::DimMismatch {
            context: "inverse_branch_view",
            expected: format!("{expected:?}"),
            got: format!("{:?}", bv.data.dim()),
        });
    }

    let five = bv
        .data
        .view()
        .into_shape_with_order((fold0, fold1, c, plane_p, plane_q))
        .expect("contiguous reshape")
        .to_owned();

    // Invert the forward permutation: forward maps lf axis perm[i] to
    // folded axis i, so axis i of the folded array goes back to perm[i].
    let perm = bv.branch.permutation();
    let mut inverse = [0usize; 5];
    for (folded_axis, &lf_axis) in perm.iter().enumerate() {
        inverse[lf_axis] = folded_axis;
    }
    let restored: Array5<f64> = five
        .permuted_axes(inverse)
        .as_standard_layout()
        .into_owned();
    debug_assert_eq!(restored.dim(), (u, v, h, w, c));
    LightField::new(restored)
}
