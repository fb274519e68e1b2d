use lfd_core::LightField;
use ndarray::s;

use crate::{PatchPair, PipelineError, Result};

/// The six channel orders in lexicographic sequence.
const RGB_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// One of the 48 joint augmentations. Bit 0 = horizontal flip, bit 1 =
/// vertical flip, bit 2 = 90-degree rotation, bits 3+ = channel order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AugCode(u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AugParts {
    pub hflip: bool,
    pub vflip: bool,
    pub rot90: bool,
    pub rgb_perm: [usize; 3],
}

impl AugCode {
    pub const COUNT: u8 = 48;

    pub fn new(code: u8) -> Result<Self> {
        if code >= Self::COUNT {
            return Err(PipelineError::BadAugCode { code });
        }
        Ok(AugCode(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn decode(self) -> AugParts {
        AugParts {
            hflip: self.0 & 1 != 0,
            vflip: self.0 & 2 != 0,
            rot90: self.0 & 4 != 0,
            rgb_perm: RGB_PERMS[(self.0 >> 3) as usize],
        }
    }

    pub fn encode(parts: AugParts) -> Self {
        let perm = RGB_PERMS
            .iter()
            .position(|p| *p == parts.rgb_perm)
            .expect("a permutation of {0,1,2}") as u8;
        AugCode(
            (parts.hflip as u8) | ((parts.vflip as u8) << 1) | ((parts.rot90 as u8) << 2)
                | (perm << 3),
        )
    }
}

/// Applies one augmentation code to a whole light field. Spatial and
/// angular axes transform together: the horizontal flip reverses W and V,
/// the vertical flip reverses H and U, and the rotation turns the view
/// grid the same direction as the image plane. Order: rotation, vertical
/// flip, horizontal flip, then the channel shuffle.
pub fn augment_lf(lf: &LightField, code: AugCode) -> Result<LightField> {
    let parts = code.decode();
    let dims = lf.dims();
    let mut data = lf.data().clone();
    if parts.rot90 {
        if dims.u != dims.v || dims.h != dims.w {
            return Err(PipelineError::NotSquare {
                u: dims.u,
                v: dims.v,
                h: dims.h,
                w: dims.w,
            });
        }
        let turned = data.view().permuted_axes([1, 0, 3, 2, 4]);
        data = turned.slice(s![..;-1, .., ..;-1, .., ..]).to_owned();
    }
    if parts.vflip {
        data = data.slice(s![..;-1, .., ..;-1, .., ..]).to_owned();
    }
    if parts.hflip {
        data = data.slice(s![.., ..;-1, .., ..;-1, ..]).to_owned();
    }
    if parts.rgb_perm != RGB_PERMS[0] {
        let src = data.clone();
        for (c, &from) in parts.rgb_perm.iter().enumerate() {
            data.slice_mut(s![.., .., .., .., c])
                .assign(&src.slice(s![.., .., .., .., from]));
        }
    }
    Ok(LightField::new(data)?)
}

/// Applies the same code to both members of a pair.
pub fn augment(pair: &PatchPair, code: AugCode) -> Result<PatchPair> {
    Ok(PatchPair {
        hr: augment_lf(&pair.hr, code)?,
        lr: augment_lf(&pair.lr, code)?,
        ..pair.clone()
    })
}
