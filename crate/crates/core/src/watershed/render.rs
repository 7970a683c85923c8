use crate::error::Result;
use crate::image::{clamp_round_u8, LabelImage, Rgb};
use crate::{BinaryImage, GrayImage8, RgbImage};

const GOLDEN: f64 = 0.618033988749895;

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> Rgb {
    let c = v * s;
    let hp = h * 6.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [
        clamp_round_u8((r + m) * 255.0),
        clamp_round_u8((g + m) * 255.0),
        clamp_round_u8((b + m) * 255.0),
    ]
}

/// Color of label `k`: black for 0, otherwise golden-ratio hue stepping at
/// saturation 0.85 and full value.
pub fn label_color(k: u32) -> Rgb {
    if k == 0 {
        return [0, 0, 0];
    }
    hsv_to_rgb((k as f64 * GOLDEN).fract(), 0.85, 1.0)
}

pub fn render_label_colormap(labels: &LabelImage) -> RgbImage {
    labels.image().map(|&l| label_color(l))
}

/// Alpha-blends `color` over the gray image on `mask`; elsewhere the gray
/// value is replicated into all three channels.
pub fn render_overlay(
    img: &GrayImage8,
    mask: &BinaryImage,
    color: Rgb,
    alpha: f64,
) -> Result<RgbImage> {
    let alpha = alpha.clamp(0.0, 1.0);
    img.zip_map(mask, |v, on| {
        if !on {
            return [v, v, v];
        }
        let v = f64::from(v);
        color.map(|c| clamp_round_u8((1.0 - alpha) * v + alpha * f64::from(c)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Image;

    #[test]
    fn colormap_rules() {
        let zero = LabelImage::new(Image::filled(3, 2, 0u32)).unwrap();
        assert!(render_label_colormap(&zero)
            .data()
            .iter()
            .all(|&c| c == [0, 0, 0]));

        // k=1: hue 0.618.. → sector 3, (0, x, c) with x = 0.85*(1-|3.708 % 2 - 1|)
        // = 0.85*0.2918 = 0.2480 → (m=0.15) rgb = (38, 101, 255)
        assert_eq!(label_color(1), [38, 101, 255]);
        // k=2: hue 0.236.. → sector 1, (x, c, 0) with x = 0.85*(1-|1.416-1|) = 0.4963
        // → rgb = (165, 255, 38)
        assert_eq!(label_color(2), [165, 255, 38]);
        assert_ne!(label_color(1), label_color(2));

        let labels = LabelImage::relabel(Image::from_fn(5, 5, |x, y| (x + y) as u32 % 4));
        assert_eq!(
            render_label_colormap(&labels),
            render_label_colormap(&labels.clone())
        );
    }

    #[test]
    fn overlay_blend() {
        let img = Image::new(2, 1, vec![100u8, 30]).unwrap();
        let mask = Image::new(2, 1, vec![true, false]).unwrap();
        let half = render_overlay(&img, &mask, [255, 0, 0], 0.5).unwrap();
        assert_eq!(half.data(), &[[178, 50, 50], [30, 30, 30]]);
        let none = render_overlay(&img, &mask, [255, 0, 0], 0.0).unwrap();
        assert_eq!(none.data(), &[[100, 100, 100], [30, 30, 30]]);
        let full = render_overlay(&img, &mask, [1, 2, 3], 1.0).unwrap();
        assert_eq!(full.data()[0], [1, 2, 3]);
    }
}
