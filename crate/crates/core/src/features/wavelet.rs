use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{Image, Pixel};
use crate::scalar::Scalar;

/// Orthonormal wavelet family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveletKind {
    #[default]
    Haar,
    #[serde(rename = "db4")]
    Daubechies4,
}

impl WaveletKind {
    /// Analysis low-pass taps.
    pub fn lowpass<T: Scalar>(self) -> Vec<T> {
        match self {
            WaveletKind::Haar => {
                let r = T::FRAC_1_SQRT_2();
                vec![r, r]
            }
            WaveletKind::Daubechies4 => {
                let s3 = T::of(3.0).sqrt();
                let one = T::one();
                let three = T::of(3.0);
                let norm = T::of(4.0) * T::SQRT_2();
                vec![
                    (one + s3) / norm,
                    (three + s3) / norm,
                    (three - s3) / norm,
                    (one - s3) / norm,
                ]
            }
        }
    }

    /// Quadrature mirror of the low-pass: `g[k] = (-1)^k h[L-1-k]`.
    pub fn highpass<T: Scalar>(self) -> Vec<T> {
        let h = self.lowpass::<T>();
        let n = h.len();
        (0..n)
            .map(|k| {
                if k % 2 == 0 {
                    h[n - 1 - k]
                } else {
                    -h[n - 1 - k]
                }
            })
            .collect()
    }
}

/// Detail subbands of one decomposition level.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailLevel<T> {
    /// Row low-pass, column high-pass (responds to vertical variation).
    pub lh: Image<T>,
    /// Row high-pass, column low-pass.
    pub hl: Image<T>,
    pub hh: Image<T>,
    /// Size of this level's input before odd sizes were padded.
    pub input_dims: (usize, usize),
}

/// Multi-level 2-D decomposition. `levels[0]` is the finest level.
#[derive(Debug, Clone, PartialEq)]
pub struct SubbandPyramid<T> {
    pub levels: Vec<DetailLevel<T>>,
    /// Approximation after the last level.
    pub ll: Image<T>,
    pub original_dims: (usize, usize),
}

impl<T: Scalar> SubbandPyramid<T> {
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }
}

/// Largest level count for which every level's input is at least 2×2.
pub fn max_levels(width: usize, height: usize) -> usize {
    let (mut w, mut h, mut n) = (width, height, 0);
    while w >= 2 && h >= 2 {
        n += 1;
        w = w.div_ceil(2);
        h = h.div_ceil(2);
    }
    n
}

/// One-dimensional analysis step on an even-length signal with periodic
/// extension.
fn analyze<T: Scalar>(x: &[T], lo: &[T], hi: &[T], out_lo: &mut [T], out_hi: &mut [T]) {
    let n = x.len();
    for i in 0..n / 2 {
        let (mut a, mut d) = (T::zero(), T::zero());
        for (k, (&l, &g)) in lo.iter().zip(hi).enumerate() {
            let v = x[(2 * i + k) % n];
            a = a + l * v;
            d = d + g * v;
        }
        out_lo[i] = a;
        out_hi[i] = d;
    }
}

/// Transpose of [`analyze`].
fn synthesize<T: Scalar>(a: &[T], d: &[T], lo: &[T], hi: &[T], out: &mut [T]) {
    let n = out.len();
    out.iter_mut().for_each(|v| *v = T::zero());
    for i in 0..n / 2 {
        for (k, (&l, &g)) in lo.iter().zip(hi).enumerate() {
            let j = (2 * i + k) % n;
            out[j] = out[j] + l * a[i] + g * d[i];
        }
    }
}

/// Pads to even dimensions by replicating the last row/column.
fn pad_even<T: Scalar + Pixel>(img: &Image<T>) -> Image<T> {
    let (w, h) = img.dims();
    let (pw, ph) = (w + w % 2, h + h % 2);
    if (pw, ph) == (w, h) {
        return img.clone();
    }
    Image::from_fn(pw, ph, |x, y| img.get(x.min(w - 1), y.min(h - 1)))
}

fn crop<T: Scalar + Pixel>(img: &Image<T>, w: usize, h: usize) -> Image<T> {
    Image::from_fn(w, h, |x, y| img.get(x, y))
}

/// Returns (LL, LH, HL, HH) of an even-sized image.
fn level_forward<T: Scalar + Pixel>(
    img: &Image<T>,
    kind: WaveletKind,
) -> (Image<T>, Image<T>, Image<T>, Image<T>) {
    let (lo, hi) = (kind.lowpass::<T>(), kind.highpass::<T>());
    let (w, h) = img.dims();
    let (hw, hh) = (w / 2, h / 2);

    // rows: left half low-pass, right half high-pass
    let mut rows = vec![T::zero(); w * h];
    for y in 0..h {
        let src = &img.data()[y * w..(y + 1) * w];
        let (l, r) = rows[y * w..(y + 1) * w].split_at_mut(hw);
        analyze(src, &lo, &hi, l, r);
    }

    let mut col = vec![T::zero(); h];
    let mut cl = vec![T::zero(); hh];
    let mut ch = vec![T::zero(); hh];
    let mut ll = vec![T::zero(); hw * hh];
    let mut lh = vec![T::zero(); hw * hh];
    let mut hl = vec![T::zero(); hw * hh];
    let mut hhb = vec![T::zero(); hw * hh];
    for x in 0..w {
        for y in 0..h {
            col[y] = rows[y * w + x];
        }
        analyze(&col, &lo, &hi, &mut cl, &mut ch);
        for y in 0..hh {
            if x < hw {
                ll[y * hw + x] = cl[y];
                lh[y * hw + x] = ch[y];
            } else {
                hl[y * hw + x - hw] = cl[y];
                hhb[y * hw + x - hw] = ch[y];
            }
        }
    }
    (
        Image::from_raw(hw, hh, ll),
        Image::from_raw(hw, hh, lh),
        Image::from_raw(hw, hh, hl),
        Image::from_raw(hw, hh, hhb),
    )
}

fn level_inverse<T: Scalar + Pixel>(
    ll: &Image<T>,
    lh: &Image<T>,
    hl: &Image<T>,
    hh: &Image<T>,
    kind: WaveletKind,
) -> Image<T> {
    let (lo, hi) = (kind.lowpass::<T>(), kind.highpass::<T>());
    let (hw, hhh) = ll.dims();
    let (w, h) = (hw * 2, hhh * 2);
    let mut rows = vec![T::zero(); w * h];
    let mut a = vec![T::zero(); hhh];
    let mut d = vec![T::zero(); hhh];
    let mut col = vec![T::zero(); h];
    for x in 0..w {
        let (low, high) = if x < hw { (ll, lh) } else { (hl, hh) };
        let cx = x % hw;
        for y in 0..hhh {
            a[y] = low.get(cx, y);
            d[y] = high.get(cx, y);
        }
        synthesize(&a, &d, &lo, &hi, &mut col);
        for y in 0..h {
            rows[y * w + x] = col[y];
        }
    }
    let mut out = vec![T::zero(); w * h];
    for y in 0..h {
        let (l, r) = rows[y * w..(y + 1) * w].split_at(hw);
        synthesize(l, r, &lo, &hi, &mut out[y * w..(y + 1) * w]);
    }
    Image::from_raw(w, h, out)
}

/// Separable orthonormal 2-D DWT, rows then columns, recursing on LL.
///
/// Each level's input is padded to even size by edge replication; the
/// filter bank wraps periodically, which keeps every level orthogonal.
pub fn dwt2<T: Scalar + Pixel>(
    img: &Image<T>,
    kind: WaveletKind,
    levels: usize,
) -> Result<SubbandPyramid<T>> {
    if levels == 0 {
        return Err(Error::ZeroLevels);
    }
    let max = max_levels(img.width(), img.height());
    if levels > max {
        return Err(Error::TooManyLevels {
            requested: levels,
            max,
        });
    }
    let mut current = img.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let input_dims = current.dims();
        let (ll, lh, hl, hh) = level_forward(&pad_even(&current), kind);
        details.push(DetailLevel {
            lh,
            hl,
            hh,
            input_dims,
        });
        current = ll;
    }
    Ok(SubbandPyramid {
        levels: details,
        ll: current,
        original_dims: img.dims(),
    })
}

/// Inverse of [`dwt2`], cropping each level back to its recorded size.
pub fn idwt2<T: Scalar + Pixel>(pyr: &SubbandPyramid<T>, kind: WaveletKind) -> Result<Image<T>> {
    if pyr.levels.is_empty() {
        return Err(Error::MalformedPyramid("no levels".into()));
    }
    if pyr.levels[0].input_dims != pyr.original_dims {
        return Err(Error::MalformedPyramid(
            "finest level does not match the original size".into(),
        ));
    }
    let mut current = pyr.ll.clone();
    for (depth, level) in pyr.levels.iter().enumerate().rev() {
        let (iw, ih) = level.input_dims;
        let expect = (iw.div_ceil(2), ih.div_ceil(2));
        for (name, band) in [
            ("LL", &current),
            ("LH", &level.lh),
            ("HL", &level.hl),
            ("HH", &level.hh),
        ] {
            if band.dims() != expect {
                return Err(Error::MalformedPyramid(format!(
                    "level {} {name} is {:?}, expected {:?}",
                    depth + 1,
                    band.dims(),
                    expect
                )));
            }
        }
        let full = level_inverse(&current, &level.lh, &level.hl, &level.hh, kind);
        current = crop(&full, iw, ih);
    }
    Ok(current)
}
