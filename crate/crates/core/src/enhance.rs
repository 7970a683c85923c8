//! Intensity histogram, Otsu's threshold and binarization.

use crate::error::{Error, Result};
use crate::{BinaryImage, GrayImage8};

/// 256-bin intensity histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: [u64; 256],
    total: u64,
}

impl Histogram {
    pub fn from_counts(counts: [u64; 256]) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    #[inline]
    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Optimum of the between-class variance over all splits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OtsuResult {
    pub threshold: u8,
    pub between_class_variance: f64,
    /// All mass sits in one bin, so every split scores zero.
    pub degenerate: bool,
}

pub fn histogram(img: &GrayImage8) -> Histogram {
    let mut counts = [0u64; 256];
    for &v in img.data() {
        counts[v as usize] += 1;
    }
    Histogram {
        counts,
        total: img.len() as u64,
    }
}

/// Otsu's threshold.
///
/// Class 0 holds intensities `<= t` and class 1 intensities `> t`, for
/// `t` in `0..=254`. The score is `w0 * w1 * (mu0 - mu1)^2` with class
/// weights taken as exact count ratios; splits leaving a class empty score
/// zero. Ties resolve to the floor of the mean of all maximizing `t`.
pub fn otsu_threshold(hist: &Histogram) -> Result<OtsuResult> {
    let n = hist.total;
    if n == 0 {
        return Err(Error::EmptyHistogram);
    }
    let occupied: Vec<usize> = (0..256).filter(|&v| hist.counts[v] > 0).collect();
    if let [only] = occupied[..] {
        return Ok(OtsuResult {
            threshold: only as u8,
            between_class_variance: 0.0,
            degenerate: true,
        });
    }

    let total_moment: u128 = hist
        .counts
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u128 * c as u128)
        .sum();
    let nf = n as f64;

    let mut best = f64::NEG_INFINITY;
    let mut arg_sum = 0usize;
    let mut arg_count = 0usize;
    let mut w0: u64 = 0;
    let mut m0: u128 = 0;
    for t in 0..255usize {
        w0 += hist.counts[t];
        m0 += t as u128 * hist.counts[t] as u128;
        let w1 = n - w0;
        let score = if w0 == 0 || w1 == 0 {
            0.0
        } else {
            let mu0 = m0 as f64 / w0 as f64;
            let mu1 = (total_moment - m0) as f64 / w1 as f64;
            let d = mu0 - mu1;
            (w0 as f64 / nf) * (w1 as f64 / nf) * d * d
        };
        if score > best {
            best = score;
            arg_sum = t;
            arg_count = 1;
        } else if score == best {
            arg_sum += t;
            arg_count += 1;
        }
    }
    Ok(OtsuResult {
        threshold: (arg_sum / arg_count) as u8,
        between_class_variance: best,
        degenerate: false,
    })
}

/// Foreground where intensity is strictly greater than `t`.
pub fn binarize(img: &GrayImage8, t: u8) -> BinaryImage {
    img.map(|&v| v > t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Image;
    use proptest::prelude::*;

    /// Naive oracle: recompute class statistics from scratch for every split
    /// using normalized probabilities, and resolve ties by scanning.
    fn brute_force(counts: &[u64; 256]) -> (u8, f64) {
        let n: u64 = counts.iter().sum();
        let p: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
        let scores: Vec<f64> = (0..255)
            .map(|t| {
                let w0: f64 = p[..=t].iter().sum();
                let w1: f64 = p[t + 1..].iter().sum();
                let c0: u64 = counts[..=t].iter().sum();
                let c1: u64 = counts[t + 1..].iter().sum();
                if c0 == 0 || c1 == 0 {
                    return 0.0;
                }
                let mu0 = (0..=t).map(|i| i as f64 * p[i]).sum::<f64>() / w0;
                let mu1 = (t + 1..256).map(|i| i as f64 * p[i]).sum::<f64>() / w1;
                w0 * w1 * (mu0 - mu1).powi(2)
            })
            .collect();
        let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let ties: Vec<usize> = (0..255).filter(|&t| scores[t] == max).collect();
        ((ties.iter().sum::<usize>() / ties.len()) as u8, max)
    }

    #[test]
    fn histogram_counts() {
        let img = Image::new(2, 2, vec![0u8, 0, 255, 255]).unwrap();
        let h = histogram(&img);
        assert_eq!(h.counts()[0], 2);
        assert_eq!(h.counts()[255], 2);
        assert_eq!(h.total(), 4);
        let c = Image::filled(5, 3, 9u8);
        assert_eq!(histogram(&c).counts()[9], 15);
    }

    #[test]
    fn empty_histogram_errors() {
        assert_eq!(
            otsu_threshold(&Histogram::from_counts([0; 256])),
            Err(Error::EmptyHistogram)
        );
    }

    #[test]
    fn single_bin_is_degenerate() {
        let mut c = [0u64; 256];
        c[93] = 1000;
        let r = otsu_threshold(&Histogram::from_counts(c)).unwrap();
        assert_eq!(r.threshold, 93);
        assert!(r.degenerate);
        assert_eq!(r.between_class_variance, 0.0);
    }

    #[test]
    fn twin_impulses_take_plateau_midpoint() {
        let mut c = [0u64; 256];
        c[50] = 10;
        c[200] = 10;
        let (oracle_t, _) = brute_force(&c);
        assert_eq!(oracle_t, 124);
        let r = otsu_threshold(&Histogram::from_counts(c)).unwrap();
        assert_eq!(r.threshold, 124);
        assert!(!r.degenerate);
        // w0 = w1 = 1/2, |mu0 - mu1| = 150
        assert!((r.between_class_variance - 0.25 * 150.0 * 150.0).abs() < 1e-9);
    }

    #[test]
    fn also_minimizes_within_class_variance() {
        let mut c = [0u64; 256];
        for (i, v) in c.iter_mut().enumerate() {
            *v = ((i * 37 + 11) % 23) as u64 + if (90..130).contains(&i) { 40 } else { 0 };
        }
        let r = otsu_threshold(&Histogram::from_counts(c)).unwrap();
        let n: f64 = c.iter().sum::<u64>() as f64;
        let within = |t: usize| {
            let class = |range: std::ops::Range<usize>| {
                let w: f64 = range.clone().map(|i| c[i] as f64).sum();
                if w == 0.0 {
                    return 0.0;
                }
                let mu = range.clone().map(|i| i as f64 * c[i] as f64).sum::<f64>() / w;
                range
                    .map(|i| c[i] as f64 * (i as f64 - mu).powi(2))
                    .sum::<f64>()
                    / n
            };
            class(0..t + 1) + class(t + 1..256)
        };
        let best = (0..255).map(within).fold(f64::INFINITY, f64::min);
        assert!((within(r.threshold as usize) - best).abs() <= 1e-9 * best);
    }

    #[test]
    fn binarize_rule() {
        let img = Image::new(4, 1, vec![0u8, 85, 170, 255]).unwrap();
        assert_eq!(binarize(&img, 127).data(), &[false, false, true, true]);
        assert_eq!(binarize(&img, 255).count(), 0);
        let pos = Image::new(3, 1, vec![1u8, 2, 255]).unwrap();
        assert_eq!(binarize(&pos, 0).count(), 3);
    }

    proptest! {
        #[test]
        fn matches_exhaustive_oracle(counts in proptest::collection::vec(0u64..50, 256)) {
            let mut c = [0u64; 256];
            c.copy_from_slice(&counts);
            prop_assume!(c.iter().filter(|&&v| v > 0).count() >= 2);
            let r = otsu_threshold(&Histogram::from_counts(c)).unwrap();
            let (t, v) = brute_force(&c);
            prop_assert_eq!(r.threshold, t);
            prop_assert!((r.between_class_variance - v).abs() <= 1e-12 * v);
        }

        #[test]
        fn scaling_counts_keeps_threshold(counts in proptest::collection::vec(0u64..50, 256), k in 2u64..9) {
            let mut c = [0u64; 256];
            c.copy_from_slice(&counts);
            prop_assume!(c.iter().any(|&v| v > 0));
            let scaled = c.map(|v| v * k);
            let a = otsu_threshold(&Histogram::from_counts(c)).unwrap();
            let b = otsu_threshold(&Histogram::from_counts(scaled)).unwrap();
            prop_assert_eq!(a.threshold, b.threshold);
        }

        #[test]
        fn foreground_non_increasing_in_t(data in proptest::collection::vec(any::<u8>(), 64), t in 0u8..255) {
            let img = Image::new(8, 8, data).unwrap();
            prop_assert!(binarize(&img, t).count() >= binarize(&img, t + 1).count());
        }
    }
}
