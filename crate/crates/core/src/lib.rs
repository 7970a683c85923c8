//! Marker-controlled watershed segmentation of low-contrast lesions.
//!
//! The pipeline runs Otsu enhancement, gradient relief, opening/closing by
//! reconstruction, foreground and background marker extraction, minima
//! imposition and seeded flooding. A wavelet feature extractor describes
//! the resulting regions, and a synthetic phantom generator with overlap
//! metrics makes every stage testable without clinical data.
//!
//! Floating-point rasters are generic over [`Scalar`] (`f32` or `f64`).
//! The aliases below fix the pixel types used throughout.

pub mod enhance;
pub mod error;
pub mod features;
pub mod gradient;
pub mod image;
pub mod morphology;
pub mod phantom;
mod scalar;
pub mod watershed;

pub use error::{Error, PnmError, Result};
pub use image::{Image, LabelImage, Pixel, Rgb};
pub use scalar::Scalar;

/// 8-bit intensity raster.
pub type GrayImage8 = Image<u8>;
/// Boolean mask.
pub type BinaryImage = Image<bool>;
/// Interleaved 8-bit color raster.
pub type RgbImage = Image<Rgb>;
/// Real-valued raster; `f64` unless stated otherwise.
pub type FloatImage<T = f64> = Image<T>;
pub type FloatImage32 = Image<f32>;
pub type FloatImage64 = Image<f64>;

pub type SubbandPyramid64 = features::SubbandPyramid<f64>;
pub type SubbandPyramid32 = features::SubbandPyramid<f32>;
pub type FeatureVector64 = features::FeatureVector<f64>;
pub type FeatureVector32 = features::FeatureVector<f32>;
