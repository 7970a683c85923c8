//! Flat grayscale morphology on 8-bit images.
//!
//! Erosion pads out-of-frame samples with 255 and dilation with 0, so a
//! constant image is a fixed point of both.

mod distance;
mod extrema;
mod reconstruct;

pub use distance::distance_transform;
pub use extrema::{impose_minima, regional_maxima, regional_minima};
pub use reconstruct::{
    close_by_reconstruction, open_by_reconstruction, reconstruct_by_dilation,
    reconstruct_by_erosion,
};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::image::{Image, LabelImage};
use crate::{BinaryImage, GrayImage8};

/// Pixel adjacency used by reconstruction, extrema and flooding.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize,
)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

const FOUR: [(isize, isize); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];
const EIGHT: [(isize, isize); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

impl Connectivity {
    /// Neighbor offsets in raster order (excluding the origin).
    pub fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }

    /// Neighbors that precede the origin in raster order.
    pub(crate) fn causal(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &FOUR[..2],
            Connectivity::Eight => &EIGHT[..4],
        }
    }

    /// Neighbors that follow the origin in raster order.
    pub(crate) fn anticausal(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &FOUR[2..],
            Connectivity::Eight => &EIGHT[4..],
        }
    }
}

/// Calls `f(index)` for each in-frame neighbor of `(x, y)`.
#[inline]
pub(crate) fn for_each_neighbor(
    width: usize,
    height: usize,
    x: usize,
    y: usize,
    offsets: &[(isize, isize)],
    mut f: impl FnMut(usize),
) {
    for &(dx, dy) in offsets {
        let nx = x as isize + dx;
        let ny = y as isize + dy;
        if nx >= 0 && ny >= 0 && (nx as usize) < width && (ny as usize) < height {
            f(ny as usize * width + nx as usize);
        }
    }
}

/// Flat structuring element: a symmetric set of offsets containing the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    offsets: Vec<(isize, isize)>,
}

impl StructuringElement {
    pub fn new(mut offsets: Vec<(isize, isize)>) -> Result<Self> {
        offsets.sort_unstable();
        offsets.dedup();
        if offsets.binary_search(&(0, 0)).is_err() {
            return Err(Error::MissingOrigin);
        }
        if let Some(&(dx, dy)) = offsets
            .iter()
            .find(|&&(dx, dy)| offsets.binary_search(&(-dx, -dy)).is_err())
        {
            return Err(Error::AsymmetricElement { dx, dy });
        }
        Ok(Self { offsets })
    }

    /// `{(dx, dy) : dx² + dy² ≤ r²}`.
    pub fn disk(radius: usize) -> Self {
        let r = radius as isize;
        let mut offsets = Vec::new();
        for dy in -r..=r {
            for dx in -r..=r {
                if dx * dx + dy * dy <= r * r {
                    offsets.push((dx, dy));
                }
            }
        }
        Self { offsets }
    }

    /// Origin plus the neighbors of `conn`.
    pub fn unit(conn: Connectivity) -> Self {
        let mut offsets = conn.offsets().to_vec();
        offsets.push((0, 0));
        offsets.sort_unstable();
        Self { offsets }
    }

    pub fn offsets(&self) -> &[(isize, isize)] {
        &self.offsets
    }
}

fn filter(
    img: &GrayImage8,
    se: &StructuringElement,
    init: u8,
    pick: fn(u8, u8) -> u8,
) -> GrayImage8 {
    let (w, h) = img.dims();
    let src = img.data();
    let mut out = vec![init; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = init;
            for &(dx, dy) in se.offsets() {
                let nx = x as isize + dx;
                let ny = y as isize + dy;
                if nx >= 0 && ny >= 0 && (nx as usize) < w && (ny as usize) < h {
                    acc = pick(acc, src[ny as usize * w + nx as usize]);
                }
            }
            out[y * w + x] = acc;
        }
    }
    Image::from_raw(w, h, out)
}

/// Minimum over the structuring element; out-of-frame samples read as 255.
pub fn erode(img: &GrayImage8, se: &StructuringElement) -> GrayImage8 {
    filter(img, se, u8::MAX, u8::min)
}

/// Maximum over the structuring element; out-of-frame samples read as 0.
pub fn dilate(img: &GrayImage8, se: &StructuringElement) -> GrayImage8 {
    filter(img, se, u8::MIN, u8::max)
}

/// Binary erosion with the same border policy (out-of-frame counts as set).
pub fn erode_binary(bw: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    erode(&bw.to_gray(), se).map(|&v| v > 0)
}

/// Labels the connected components of `bw` in raster order of their first
/// pixel.
pub fn label_components(bw: &BinaryImage, conn: Connectivity) -> LabelImage {
    let (w, h) = bw.dims();
    let mask = bw.data();
    let mut labels = vec![0u32; w * h];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..w * h {
        if !mask[start] || labels[start] != 0 {
            continue;
        }
        next += 1;
        labels[start] = next;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for_each_neighbor(w, h, p % w, p / w, conn.offsets(), |q| {
                if mask[q] && labels[q] == 0 {
                    labels[q] = next;
                    queue.push_back(q);
                }
            });
        }
    }
    LabelImage::from_parts(Image::from_raw(w, h, labels), next)
}

/// Removes connected components smaller than `min_area` pixels.
pub fn area_filter(bw: &BinaryImage, min_area: usize, conn: Connectivity) -> BinaryImage {
    let labels = label_components(bw, conn);
    let mut area = vec![0usize; labels.num_labels() as usize + 1];
    for &l in labels.data() {
        area[l as usize] += 1;
    }
    labels
        .image()
        .map(|&l| l != 0 && area[l as usize] >= min_area)
}
