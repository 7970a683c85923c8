use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::image::{Image, LabelImage, Pixel};
use crate::morphology::{for_each_neighbor, label_components, regional_minima, Connectivity};
use crate::scalar::Scalar;

const UNSET: u32 = u32::MAX;

/// Flood priority: relief value, then insertion sequence (FIFO among equals).
struct Entry<T> {
    level: T,
    seq: u64,
    index: usize,
}

impl<T: Scalar> PartialEq for Entry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for Entry<T> {}

impl<T: Scalar> PartialOrd for Entry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Entry<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // relief values are finite by the FloatImage invariant
        self.level
            .partial_cmp(&other.level)
            .expect("finite relief")
            .then(self.seq.cmp(&other.seq))
    }
}

/// Marker-seeded priority flood.
///
/// Pixels are processed in order of `(relief, insertion sequence)`. A popped
/// pixel joins the basin of its labeled neighbors when they agree and
/// becomes a ridge pixel (label 0) when they carry two or more labels.
/// Marker pixels keep their labels. Pixels sealed off by ridge pixels are
/// never reached; they are reported as ridge too.
pub fn watershed_seeded<T: Scalar + Pixel>(
    relief: &Image<T>,
    markers: &LabelImage,
    conn: Connectivity,
) -> Result<LabelImage> {
    relief.check_same_dims(markers.image())?;
    if markers.num_labels() == 0 {
        return Err(Error::EmptyMarkers);
    }
    let (w, h) = relief.dims();
    let level = relief.data();
    let mut labels: Vec<u32> = markers
        .data()
        .iter()
        .map(|&l| if l == 0 { UNSET } else { l })
        .collect();
    let mut queued = vec![false; w * h];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let mut push = |heap: &mut BinaryHeap<Reverse<Entry<T>>>, index: usize| {
        heap.push(Reverse(Entry {
            level: level[index],
            seq,
            index,
        }));
        seq += 1;
    };

    for p in 0..w * h {
        if labels[p] == UNSET {
            continue;
        }
        for_each_neighbor(w, h, p % w, p / w, conn.offsets(), |q| {
            if labels[q] == UNSET && !queued[q] {
                queued[q] = true;
                push(&mut heap, q);
            }
        });
    }

    while let Some(Reverse(Entry { index: p, .. })) = heap.pop() {
        let (x, y) = (p % w, p / w);
        let mut basin = UNSET;
        let mut conflict = false;
        for_each_neighbor(w, h, x, y, conn.offsets(), |q| {
            let l = labels[q];
            if l != UNSET && l != 0 {
                if basin == UNSET {
                    basin = l;
                } else if basin != l {
                    conflict = true;
                }
            }
        });
        if conflict {
            labels[p] = 0;
            continue;
        }
        debug_assert_ne!(basin, UNSET, "queued pixels always touch a basin");
        labels[p] = basin;
        for_each_neighbor(w, h, x, y, conn.offsets(), |q| {
            if labels[q] == UNSET && !queued[q] {
                queued[q] = true;
                push(&mut heap, q);
            }
        });
    }

    for l in &mut labels {
        if *l == UNSET {
            *l = 0;
        }
    }
    Ok(LabelImage::from_parts(
        Image::from_raw(w, h, labels),
        markers.num_labels(),
    ))
}

/// Watershed seeded by every regional minimum of the relief, which
/// over-segments noisy input.
pub fn watershed_unseeded<T: Scalar + Pixel>(relief: &Image<T>, conn: Connectivity) -> LabelImage {
    let minima = regional_minima(relief, conn);
    let markers = label_components(&minima, conn);
    watershed_seeded(relief, &markers, conn).expect("every relief has a regional minimum")
}
