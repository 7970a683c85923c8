//! Wavelet subband energies and intensity statistics per region.

mod wavelet;

pub use wavelet::{dwt2, idwt2, max_levels, DetailLevel, SubbandPyramid, WaveletKind};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{Image, Pixel};
use crate::scalar::Scalar;
use crate::{BinaryImage, GrayImage8};

/// Total energy below which the normalized energies are reported as zeros.
pub const DEGENERATE_ENERGY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Band {
    LH,
    HL,
    HH,
    LL,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubbandEnergy<T> {
    pub level: usize,
    pub band: Band,
    /// Sum of squared coefficients.
    pub energy: T,
    /// `energy / total`, or 0 for a degenerate region.
    pub norm_energy: T,
    /// `ln(1 + energy)`.
    pub log_energy: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<T> {
    pub area: usize,
    pub mean: T,
    pub std: T,
    /// Details of level 1..=L (LH, HL, HH each), then the final LL.
    pub subbands: Vec<SubbandEnergy<T>>,
}

impl<T: Scalar> FeatureVector<T> {
    pub fn total_energy(&self) -> T {
        self.subbands
            .iter()
            .fold(T::zero(), |acc, s| acc + s.energy)
    }
}

fn energy<T: Scalar>(img: &Image<T>) -> T {
    img.data().iter().fold(T::zero(), |acc, &v| acc + v * v)
}

/// Texture and intensity features of the pixels in `region`.
///
/// The region's bounding box is mean-subtracted over region pixels (pixels
/// outside the mask become 0), padded by edge replication to a multiple of
/// `2^levels`, and decomposed with [`dwt2`]. Mean, standard deviation and
/// area use the original intensities.
pub fn extract_features<T: Scalar + Pixel>(
    img: &GrayImage8,
    region: &BinaryImage,
    kind: WaveletKind,
    levels: usize,
) -> Result<FeatureVector<T>> {
    img.check_same_dims(region)?;
    if levels == 0 {
        return Err(Error::ZeroLevels);
    }
    let (w, _) = img.dims();
    let mut bbox = (usize::MAX, usize::MAX, 0usize, 0usize);
    let mut area = 0usize;
    let mut sum = 0f64;
    for (i, (&inside, &v)) in region.data().iter().zip(img.data()).enumerate() {
        if inside {
            let (x, y) = (i % w, i / w);
            bbox = (bbox.0.min(x), bbox.1.min(y), bbox.2.max(x), bbox.3.max(y));
            area += 1;
            sum += f64::from(v);
        }
    }
    if area == 0 {
        return Err(Error::EmptyRegion);
    }
    let mean = sum / area as f64;
    let var = region
        .data()
        .iter()
        .zip(img.data())
        .filter(|(&inside, _)| inside)
        .map(|(_, &v)| (f64::from(v) - mean).powi(2))
        .sum::<f64>()
        / area as f64;

    let (x0, y0) = (bbox.0, bbox.1);
    let (bw, bh) = (bbox.2 - x0 + 1, bbox.3 - y0 + 1);
    let block = 1usize << levels;
    if bw < block || bh < block {
        return Err(Error::RegionTooSmall {
            width: bw,
            height: bh,
            levels,
        });
    }
    let (pw, ph) = (bw.next_multiple_of(block), bh.next_multiple_of(block));
    let patch = Image::from_fn(pw, ph, |x, y| {
        let (sx, sy) = (x0 + x.min(bw - 1), y0 + y.min(bh - 1));
        if region.get(sx, sy) {
            T::of(f64::from(img.get(sx, sy)) - mean)
        } else {
            T::zero()
        }
    });

    let pyr = dwt2(&patch, kind, levels)?;
    let mut subbands = Vec::with_capacity(3 * levels + 1);
    for (i, lvl) in pyr.levels.iter().enumerate() {
        for (band, img) in [
            (Band::LH, &lvl.lh),
            (Band::HL, &lvl.hl),
            (Band::HH, &lvl.hh),
        ] {
            subbands.push((i + 1, band, energy(img)));
        }
    }
    subbands.push((levels, Band::LL, energy(&pyr.ll)));

    let total = subbands.iter().fold(T::zero(), |acc, s| acc + s.2);
    let degenerate = total.as_f64() < DEGENERATE_ENERGY;
    Ok(FeatureVector {
        area,
        mean: T::of(mean),
        std: T::of(var.sqrt()),
        subbands: subbands
            .into_iter()
            .map(|(level, band, e)| SubbandEnergy {
                level,
                band,
                energy: e,
                norm_energy: if degenerate { T::zero() } else { e / total },
                log_energy: e.ln_1p(),
            })
            .collect(),
    })
}
