use crate::error::Result;
use crate::image::LabelImage;
use crate::GrayImage8;

/// Summary of one nonzero watershed region.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionStats {
    pub label: u32,
    pub area: usize,
    pub mean: f64,
    pub touches_border: bool,
    /// (x, y) in pixel coordinates.
    pub centroid: (f64, f64),
}

/// Per-label statistics for labels `1..=num_labels`, in label order. Ridge
/// pixels belong to no region.
pub fn region_stats(img: &GrayImage8, labels: &LabelImage) -> Result<Vec<RegionStats>> {
    img.check_same_dims(labels.image())?;
    let n = labels.num_labels() as usize;
    let mut area = vec![0usize; n + 1];
    let mut sum = vec![0u64; n + 1];
    let mut sx = vec![0u64; n + 1];
    let mut sy = vec![0u64; n + 1];
    let mut border = vec![false; n + 1];
    let w = img.width();
    for (i, (&l, &v)) in labels.data().iter().zip(img.data()).enumerate() {
        let l = l as usize;
        if l == 0 {
            continue;
        }
        let (x, y) = (i % w, i / w);
        area[l] += 1;
        sum[l] += u64::from(v);
        sx[l] += x as u64;
        sy[l] += y as u64;
        border[l] |= img.is_on_border(x, y);
    }
    Ok((1..=n)
        .map(|l| {
            let a = area[l].max(1) as f64;
            RegionStats {
                label: l as u32,
                area: area[l],
                mean: sum[l] as f64 / a,
                touches_border: border[l],
                centroid: (sx[l] as f64 / a, sy[l] as f64 / a),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Image;

    #[test]
    fn single_region() {
        let img = Image::filled(4, 3, 9u8);
        let labels = LabelImage::new(Image::filled(4, 3, 1u32)).unwrap();
        let s = region_stats(&img, &labels).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].area, 12);
        assert_eq!(s[0].mean, 9.0);
        assert!(s[0].touches_border);
        assert_eq!(s[0].centroid, (1.5, 1.0));
    }

    #[test]
    fn matches_naive_accumulation() {
        let img = Image::from_fn(7, 6, |x, y| (x * 31 + y * 17) as u8);
        let raw = Image::from_fn(7, 6, |x, y| ((x / 2 + y / 3 * 4) % 5) as u32);
        let labels = LabelImage::relabel(raw);
        let stats = region_stats(&img, &labels).unwrap();
        let ridge = labels.data().iter().filter(|&&l| l == 0).count();
        assert_eq!(stats.iter().map(|s| s.area).sum::<usize>() + ridge, 42);
        for s in &stats {
            let px: Vec<(usize, usize)> = (0..6)
                .flat_map(|y| (0..7).map(move |x| (x, y)))
                .filter(|&(x, y)| labels.get(x, y) == s.label)
                .collect();
            let mean = px.iter().map(|&(x, y)| img.get(x, y) as f64).sum::<f64>() / px.len() as f64;
            assert_eq!(s.area, px.len());
            assert!((s.mean - mean).abs() < 1e-12);
            let border = px
                .iter()
                .any(|&(x, y)| x == 0 || y == 0 || x == 6 || y == 5);
            assert_eq!(s.touches_border, border);
        }
    }
}
