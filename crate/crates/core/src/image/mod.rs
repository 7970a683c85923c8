//! Raster containers and value conversions.
//!
//! Every raster is a row-major [`Image`] over some pixel type. The crate
//! root exposes the concrete aliases used across the pipeline
//! (`GrayImage8`, `BinaryImage`, `RgbImage`, `FloatImage<T>`).
//! [`LabelImage`] wraps an `Image<u32>` and additionally guarantees that
//! its nonzero labels are contiguous.

mod pnm;

pub use pnm::{read_pgm, write_pgm, write_ppm};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An (r, g, b) triple.
pub type Rgb = [u8; 3];

/// Per-pixel validity check applied by [`Image::new`].
pub trait Pixel: Copy + PartialEq + Send + Sync {
    #[inline]
    fn is_valid(&self) -> bool {
        true
    }
}

impl Pixel for u8 {}
impl Pixel for u32 {}
impl Pixel for bool {}
impl Pixel for Rgb {}

impl Pixel for f32 {
    #[inline]
    fn is_valid(&self) -> bool {
        self.is_finite()
    }
}

impl Pixel for f64 {
    #[inline]
    fn is_valid(&self) -> bool {
        self.is_finite()
    }
}

/// Row-major 2-D raster.
#[derive(Debug, Clone, PartialEq)]
pub struct Image<P> {
    width: usize,
    height: usize,
    data: Vec<P>,
}

impl<P: Pixel> Image<P> {
    /// Wraps `data`, checking the dimensions, the buffer length and each pixel.
    pub fn new(width: usize, height: usize, data: Vec<P>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        let expected = width * height;
        if data.len() != expected {
            return Err(Error::BufferLength {
                width,
                height,
                expected,
                found: data.len(),
            });
        }
        if let Some(i) = data.iter().position(|p| !p.is_valid()) {
            return Err(Error::InvalidPixel {
                x: i % width,
                y: i / width,
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Constant image.
    ///
    /// # Panics
    /// If either dimension is zero or `value` is not a valid pixel.
    pub fn filled(width: usize, height: usize, value: P) -> Self {
        Self::new(width, height, vec![value; width * height]).expect("valid constant image")
    }

    /// Builds an image by evaluating `f(x, y)` in raster order.
    ///
    /// # Panics
    /// If either dimension is zero or `f` yields an invalid pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> P) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data).expect("valid generated image")
    }

    /// Constructor for internal callers that already guarantee validity.
    pub(crate) fn from_raw(width: usize, height: usize, data: Vec<P>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn map<Q: Pixel>(&self, f: impl FnMut(&P) -> Q) -> Image<Q> {
        Image::from_raw(self.width, self.height, self.data.iter().map(f).collect())
    }

    /// Combines two equally sized images pixel by pixel.
    pub fn zip_map<Q: Pixel, R: Pixel>(
        &self,
        other: &Image<Q>,
        mut f: impl FnMut(P, Q) -> R,
    ) -> Result<Image<R>> {
        self.check_same_dims(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Image::from_raw(self.width, self.height, data))
    }
}

impl<P> Image<P> {
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false: images have at least one pixel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn data(&self) -> &[P] {
        &self.data
    }

    pub fn into_data(self) -> Vec<P> {
        self.data
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    #[inline]
    pub fn contains(&self, x: isize, y: isize) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    pub fn check_same_dims<Q>(&self, other: &Image<Q>) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }

    #[inline]
    pub fn is_on_border(&self, x: usize, y: usize) -> bool {
        x == 0 || y == 0 || x + 1 == self.width || y + 1 == self.height
    }
}

impl<P: Copy> Image<P> {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> P {
        self.data[y * self.width + x]
    }

    /// Sample with coordinates clamped into the frame.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> P {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.get(x, y)
    }
}

impl<P: Pixel> Image<P> {
    /// Overwrites one pixel.
    ///
    /// # Panics
    /// If the coordinates are out of range or the value is invalid.
    pub fn set(&mut self, x: usize, y: usize, value: P) {
        assert!(value.is_valid(), "invalid pixel value");
        let i = self.index(x, y);
        self.data[i] = value;
    }
}

impl Image<bool> {
    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn any(&self) -> bool {
        self.data.iter().any(|&b| b)
    }

    /// true → 255, false → 0.
    pub fn to_gray(&self) -> Image<u8> {
        self.map(|&b| if b { 255 } else { 0 })
    }

    pub fn not(&self) -> Image<bool> {
        self.map(|&b| !b)
    }
}

impl Image<u8> {
    /// 255 − v everywhere.
    pub fn complement(&self) -> Image<u8> {
        self.map(|&v| 255 - v)
    }
}

/// Non-negative label map whose nonzero labels form `1..=num_labels`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelImage {
    image: Image<u32>,
    num_labels: u32,
}

impl LabelImage {
    /// Validates contiguity of the nonzero labels.
    pub fn new(image: Image<u32>) -> Result<Self> {
        let max = image.data().iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; max as usize + 1];
        for &l in image.data() {
            seen[l as usize] = true;
        }
        if let Some(missing) = (1..=max).find(|&l| !seen[l as usize]) {
            return Err(Error::NonContiguousLabels { missing, max });
        }
        Ok(Self {
            image,
            num_labels: max,
        })
    }

    /// Renumbers arbitrary nonzero labels to `1..=k` in order of first
    /// appearance (raster order). Zero stays zero.
    pub fn relabel(image: Image<u32>) -> Self {
        let mut map = std::collections::HashMap::new();
        let mut next = 0u32;
        let relabeled = image.map(|&l| {
            if l == 0 {
                0
            } else {
                *map.entry(l).or_insert_with(|| {
                    next += 1;
                    next
                })
            }
        });
        Self {
            image: relabeled,
            num_labels: next,
        }
    }

    pub(crate) fn from_parts(image: Image<u32>, num_labels: u32) -> Self {
        debug_assert!(Self::new(image.clone()).is_ok());
        Self { image, num_labels }
    }

    #[inline]
    pub fn num_labels(&self) -> u32 {
        self.num_labels
    }

    #[inline]
    pub fn image(&self) -> &Image<u32> {
        &self.image
    }

    pub fn into_image(self) -> Image<u32> {
        self.image
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.image.width()
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.image.height()
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.image.dims()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.image.get(x, y)
    }

    #[inline]
    pub fn data(&self) -> &[u32] {
        self.image.data()
    }

    /// Pixels carrying `label`.
    pub fn mask_of(&self, label: u32) -> Image<bool> {
        self.image.map(|&l| l == label)
    }

    /// Label-0 pixels.
    pub fn ridge(&self) -> Image<bool> {
        self.mask_of(0)
    }
}

/// Value-preserving cast to a float raster.
pub fn to_float<T: Scalar + Pixel>(img: &Image<u8>) -> Image<T> {
    img.map(|&v| T::of(v as f64))
}

/// Clamp to [0, 255], then round half away from zero.
pub fn to_u8<T: Scalar + Pixel>(img: &Image<T>) -> Image<u8> {
    img.map(|&v| clamp_round_u8(v.as_f64()))
}

/// Affine map min → 0, max → 255 followed by rounding; a constant image
/// maps to all zeros.
pub fn rescale_to_u8<T: Scalar + Pixel>(img: &Image<T>) -> Image<u8> {
    let (lo, hi) = img
        .data()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            let v = v.as_f64();
            (lo.min(v), hi.max(v))
        });
    if hi <= lo {
        return img.map(|_| 0);
    }
    let scale = 255.0 / (hi - lo);
    img.map(|&v| clamp_round_u8((v.as_f64() - lo) * scale))
}

#[inline]
pub(crate) fn clamp_round_u8(v: f64) -> u8 {
    // f64::round is half-away-from-zero.
    v.clamp(0.0, 255.0).round() as u8
}
