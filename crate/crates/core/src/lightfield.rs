use ndarray::{Array3, Array5, ArrayView3};

use crate::{CoreError, Result};

/// A single view or any H×W×C raster, values in row-major order.
pub type Image = Array3<f64>;

/// Angular and spatial extents of a [`LightField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LfDims {
    pub u: usize,
    pub v: usize,
    pub h: usize,
    pub w: usize,
    pub c: usize,
}

/// A U×V grid of sub-aperture views, each H×W with C channels.
///
/// Stored as one dense array with axis order (U, V, H, W, C). The same type
/// carries both 3-channel images (values in [0,1]) and intermediate network
/// features (C = channel width, unbounded values); the only construction
/// invariant is that every sample is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct LightField {
    data: Array5<f64>,
}

impl LightField {
    /// Wraps a dense (U, V, H, W, C) array, rejecting empty dimensions and
    /// non-finite samples.
    pub fn new(data: Array5<f64>) -> Result<Self> {
        let (u, v, h, w, c) = data.dim();
        if u == 0 || v == 0 || h == 0 || w == 0 || c == 0 {
            return Err(CoreError::EmptyDims { u, v, h, w, c });
        }
        if let Some((idx, _)) = data.indexed_iter().find(|(_, x)| !x.is_finite()) {
            return Err(CoreError::NonFinite {
                u: idx.0,
                v: idx.1,
                h: idx.2,
                w: idx.3,
                c: idx.4,
            });
        }
        Ok(Self { data })
    }

    /// Assembles a light field from a row-major U×V list of equally sized views.
    pub fn from_views(u: usize, v: usize, views: &[Image]) -> Result<Self> {
        if views.len() != u * v || views.is_empty() {
            return Err(CoreError::DimMismatch {
                context: "from_views",
                expected: format!("{} views", u * v),
                got: format!("{} views", views.len()),
            });
        }
        let (h, w, c) = views[0].dim();
        let mut data = Array5::zeros((u, v, h, w, c));
        for ui in 0..u {
            for vi in 0..v {
                let view = &views[ui * v + vi];
                if view.dim() != (h, w, c) {
                    return Err(CoreError::DimMismatch {
                        context: "from_views",
                        expected: format!("{:?}", (h, w, c)),
                        got: format!("{:?}", view.dim()),
                    });
                }
                data.slice_mut(ndarray::s![ui, vi, .., .., ..]).assign(view);
            }
        }
        Self::new(data)
    }

    pub fn dims(&self) -> LfDims {
        let (u, v, h, w, c) = self.data.dim();
        LfDims { u, v, h, w, c }
    }

    pub fn data(&self) -> &Array5<f64> {
        &self.data
    }

    pub fn into_data(self) -> Array5<f64> {
        self.data
    }

    /// Borrowed view of sub-aperture image (u, v).
    pub fn view(&self, u: usize, v: usize) -> Result<ArrayView3<'_, f64>> {
        let d = self.dims();
        if u >= d.u {
            return Err(CoreError::IndexOutOfRange {
                what: "u",
                got: u,
                limit: d.u,
            });
        }
        if v >= d.v {
            return Err(CoreError::IndexOutOfRange {
                what: "v",
                got: v,
                limit: d.v,
            });
        }
        Ok(self.data.slice(ndarray::s![u, v, .., .., ..]))
    }

    /// Owned copy of sub-aperture image (u, v).
    pub fn view_image(&self, u: usize, v: usize) -> Result<Image> {
        Ok(self.view(u, v)?.to_owned())
    }

    /// Applies `f` to every view, producing a new light field with the
    /// (identical) output dimensions of `f`.
    pub fn map_views<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, ArrayView3<'_, f64>) -> Image,
    {
        let d = self.dims();
        let mut views = Vec::with_capacity(d.u * d.v);
        for u in 0..d.u {
            for v in 0..d.v {
                views.push(f(u, v, self.view(u, v)?));
            }
        }
        Self::from_views(d.u, d.v, &views)
    }
}
