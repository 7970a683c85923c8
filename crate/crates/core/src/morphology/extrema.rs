use std::collections::VecDeque;

use super::{for_each_neighbor, reconstruct_by_erosion, Connectivity};
use crate::error::{Error, Result};
use crate::image::Image;
use crate::{BinaryImage, GrayImage8};

/// Marks every plateau (maximal connected set of equal values) that has no
/// neighbor strictly above it. `above(a, b)` decides whether `a` beats `b`.
fn plateau_extrema<P: Copy + PartialEq>(
    img: &Image<P>,
    conn: Connectivity,
    above: impl Fn(P, P) -> bool,
) -> BinaryImage {
    let (w, h) = img.dims();
    let px = img.data();
    let mut visited = vec![false; w * h];
    let mut out = vec![false; w * h];
    let mut queue = VecDeque::new();
    let mut plateau = Vec::new();
    for start in 0..w * h {
        if visited[start] {
            continue;
        }
        let level = px[start];
        visited[start] = true;
        queue.push_back(start);
        plateau.clear();
        let mut extremal = true;
        while let Some(p) = queue.pop_front() {
            plateau.push(p);
            for_each_neighbor(w, h, p % w, p / w, conn.offsets(), |q| {
                if px[q] == level {
                    if !visited[q] {
                        visited[q] = true;
                        queue.push_back(q);
                    }
                } else if above(px[q], level) {
                    extremal = false;
                }
            });
        }
        if extremal {
            for &p in &plateau {
                out[p] = true;
            }
        }
    }
    Image::from_raw(w, h, out)
}

/// Plateaus with no strictly greater neighbor.
pub fn regional_maxima<P: Copy + PartialOrd>(img: &Image<P>, conn: Connectivity) -> BinaryImage {
    plateau_extrema(img, conn, |a, b| a > b)
}

/// Plateaus with no strictly smaller neighbor.
pub fn regional_minima<P: Copy + PartialOrd>(img: &Image<P>, conn: Connectivity) -> BinaryImage {
    plateau_extrema(img, conn, |a, b| a < b)
}

/// Rewrites `img` so its regional minima are exactly the components of
/// `minima` (all at 0); everything else is raised to at least `img + 1`.
pub fn impose_minima(
    img: &GrayImage8,
    minima: &BinaryImage,
    conn: Connectivity,
) -> Result<GrayImage8> {
    img.check_same_dims(minima)?;
    if !minima.any() {
        return Err(Error::EmptyMinima);
    }
    let marker = minima.map(|&m| if m { 0u8 } else { 255 });
    let mask = img.zip_map(&marker, |v, fm| fm.min(v.saturating_add(1)))?;
    reconstruct_by_erosion(&marker, &mask, conn)
}
