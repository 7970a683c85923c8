//! Sobel gradient magnitude.

use crate::image::{Image, Pixel};
use crate::scalar::Scalar;
use crate::GrayImage8;

/// `sqrt(gx² + gy²)` of the 3×3 Sobel responses, with replicate border
/// extension. `gx` responds to left→right increase, `gy` to top→bottom.
pub fn sobel_gradient_magnitude<T: Scalar + Pixel>(img: &GrayImage8) -> Image<T> {
    let (w, h) = img.dims();
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let s = |dx: isize, dy: isize| img.get_clamped(x + dx, y + dy) as i32;
            let gx = (s(1, -1) + 2 * s(1, 0) + s(1, 1)) - (s(-1, -1) + 2 * s(-1, 0) + s(-1, 1));
            let gy = (s(-1, 1) + 2 * s(0, 1) + s(1, 1)) - (s(-1, -1) + 2 * s(0, -1) + s(1, -1));
            let mag = ((gx * gx + gy * gy) as f64).sqrt();
            out.push(T::of(mag));
        }
    }
    Image::from_raw(w, h, out)
}
