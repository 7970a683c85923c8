use std::collections::VecDeque;

use super::{dilate, erode, for_each_neighbor, Connectivity, StructuringElement};
use crate::error::{Error, Result};
use crate::image::Image;
use crate::GrayImage8;

/// Morphological reconstruction of `mask` from `marker` by geodesic dilation.
///
/// The result is the fixpoint of `marker ← min(dilate_unit(marker), mask)`.
/// It is computed with the hybrid raster / anti-raster sweep followed by a
/// FIFO propagation pass.
pub fn reconstruct_by_dilation(
    marker: &GrayImage8,
    mask: &GrayImage8,
    conn: Connectivity,
) -> Result<GrayImage8> {
    marker.check_same_dims(mask)?;
    if let Some(i) = marker
        .data()
        .iter()
        .zip(mask.data())
        .position(|(m, k)| m > k)
    {
        return Err(Error::MarkerAboveMask {
            x: i % marker.width(),
            y: i / marker.width(),
        });
    }
    Ok(hybrid(marker, mask, conn))
}

/// Dual reconstruction: fixpoint of `marker ← max(erode_unit(marker), mask)`.
pub fn reconstruct_by_erosion(
    marker: &GrayImage8,
    mask: &GrayImage8,
    conn: Connectivity,
) -> Result<GrayImage8> {
    marker.check_same_dims(mask)?;
    if let Some(i) = marker
        .data()
        .iter()
        .zip(mask.data())
        .position(|(m, k)| m < k)
    {
        return Err(Error::MarkerBelowMask {
            x: i % marker.width(),
            y: i / marker.width(),
        });
    }
    Ok(hybrid(&marker.complement(), &mask.complement(), conn).complement())
}

fn hybrid(marker: &GrayImage8, mask: &GrayImage8, conn: Connectivity) -> GrayImage8 {
    let (w, h) = marker.dims();
    let mask = mask.data();
    let mut out = marker.data().to_vec();

    for y in 0..h {
        for x in 0..w {
            let p = y * w + x;
            let mut v = out[p];
            for_each_neighbor(w, h, x, y, conn.causal(), |q| v = v.max(out[q]));
            out[p] = v.min(mask[p]);
        }
    }

    let mut fifo = VecDeque::new();
    for y in (0..h).rev() {
        for x in (0..w).rev() {
            let p = y * w + x;
            let mut v = out[p];
            for_each_neighbor(w, h, x, y, conn.anticausal(), |q| v = v.max(out[q]));
            let v = v.min(mask[p]);
            out[p] = v;
            let mut enqueue = false;
            for_each_neighbor(w, h, x, y, conn.anticausal(), |q| {
                enqueue |= out[q] < v && out[q] < mask[q];
            });
            if enqueue {
                fifo.push_back(p);
            }
        }
    }

    while let Some(p) = fifo.pop_front() {
        let v = out[p];
        for_each_neighbor(w, h, p % w, p / w, conn.offsets(), |q| {
            if out[q] < v && out[q] != mask[q] {
                out[q] = v.min(mask[q]);
                fifo.push_back(q);
            }
        });
    }
    Image::from_raw(w, h, out)
}

/// `reconstruct_by_dilation(erode(img, se), img)`: removes bright detail the
/// element does not fit in, keeping surviving contours intact.
pub fn open_by_reconstruction(
    img: &GrayImage8,
    se: &StructuringElement,
    conn: Connectivity,
) -> GrayImage8 {
    reconstruct_by_dilation(&erode(img, se), img, conn).expect("erosion lies below its source")
}

/// `reconstruct_by_erosion(dilate(img, se), img)`: fills dark detail.
pub fn close_by_reconstruction(
    img: &GrayImage8,
    se: &StructuringElement,
    conn: Connectivity,
) -> GrayImage8 {
    reconstruct_by_erosion(&dilate(img, se), img, conn).expect("dilation lies above its source")
}
