use crate::image::{Image, Pixel};
use crate::scalar::Scalar;
use crate::BinaryImage;

/// Exact Euclidean distance from every foreground (`true`) pixel to the
/// nearest background pixel; background pixels get 0.
///
/// Squared distances are computed in integers with Meijster's separable
/// algorithm, so the result is exactly `sqrt` of an integer. If the mask has
/// no background at all, every pixel gets `width + height`.
pub fn distance_transform<T: Scalar + Pixel>(bw: &BinaryImage) -> Image<T> {
    let (w, h) = bw.dims();
    if bw.data().iter().all(|&b| b) {
        return Image::from_raw(w, h, vec![T::of((w + h) as f64); w * h]);
    }
    let inf = (w + h) as i64;
    let fg = bw.data();

    // vertical distance to the nearest background pixel in the same column
    let mut g = vec![0i64; w * h];
    for x in 0..w {
        g[x] = if fg[x] { inf } else { 0 };
        for y in 1..h {
            let p = y * w + x;
            g[p] = if fg[p] { (g[p - w] + 1).min(inf) } else { 0 };
        }
        for y in (0..h.saturating_sub(1)).rev() {
            let p = y * w + x;
            if g[p + w] < g[p] {
                g[p] = g[p + w] + 1;
            }
        }
    }

    let mut out = vec![T::zero(); w * h];
    let mut s = vec![0usize; w];
    let mut t = vec![0i64; w];
    for y in 0..h {
        let row = &g[y * w..(y + 1) * w];
        let f = |x: i64, i: usize| (x - i as i64).pow(2) + row[i].pow(2);
        let sep = |i: usize, u: usize| {
            let (i2, u2) = (i as i64, u as i64);
            (u2 * u2 - i2 * i2 + row[u].pow(2) - row[i].pow(2)).div_euclid(2 * (u2 - i2))
        };
        let mut q: isize = 0;
        s[0] = 0;
        t[0] = 0;
        for u in 1..w {
            while q >= 0 && f(t[q as usize], s[q as usize]) > f(t[q as usize], u) {
                q -= 1;
            }
            if q < 0 {
                q = 0;
                s[0] = u;
            } else {
                let next = 1 + sep(s[q as usize], u);
                if next < w as i64 {
                    q += 1;
                    s[q as usize] = u;
                    t[q as usize] = next;
                }
            }
        }
        for u in (0..w).rev() {
            let d2 = f(u as i64, s[q as usize]);
            out[y * w + u] = T::of((d2 as f64).sqrt());
            if u as i64 == t[q as usize] {
                q -= 1;
            }
        }
    }
    Image::from_raw(w, h, out)
}
