//! Synthetic low-contrast phantoms with known ground truth, overlap
//! metrics, and batch evaluation of the segmentation pipeline.

mod eval;
mod metrics;

pub use eval::{evaluate, EvalReport, PhantomOutcome};
pub use metrics::{dice, jaccard};

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{clamp_round_u8, Image, LabelImage};
use crate::{BinaryImage, GrayImage8};

/// Rotated ellipse; `angle` is in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub cx: f64,
    pub cy: f64,
    pub semi_x: f64,
    pub semi_y: f64,
    #[serde(default)]
    pub angle: f64,
}

impl Ellipse {
    pub fn new(cx: f64, cy: f64, semi_x: f64, semi_y: f64) -> Self {
        Self {
            cx,
            cy,
            semi_x,
            semi_y,
            angle: 0.0,
        }
    }

    /// Whether the pixel center `(x, y)` lies inside or on the ellipse.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (s, c) = self.angle.sin_cos();
        let (dx, dy) = (x - self.cx, y - self.cy);
        let u = (dx * c + dy * s) / self.semi_x;
        let v = (-dx * s + dy * c) / self.semi_y;
        u * u + v * v <= 1.0
    }

    /// Axis-aligned half extents of the rotated ellipse.
    fn half_extent(&self) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        (
            ((self.semi_x * c).powi(2) + (self.semi_y * s).powi(2)).sqrt(),
            ((self.semi_x * s).powi(2) + (self.semi_y * c).powi(2)).sqrt(),
        )
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.semi_x * self.semi_y
    }

    /// Ramanujan's perimeter approximation.
    pub fn perimeter(&self) -> f64 {
        let (a, b) = (self.semi_x, self.semi_y);
        let h = ((a - b) / (a + b)).powi(2);
        std::f64::consts::PI * (a + b) * (1.0 + 3.0 * h / (10.0 + (4.0 - 3.0 * h).sqrt()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tumor {
    pub shape: Ellipse,
    pub mean: f64,
}

/// Geometry, intensities, noise level and seed of one phantom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PhantomConfig {
    pub width: usize,
    pub height: usize,
    pub organ: Ellipse,
    pub organ_mean: f64,
    pub background_mean: f64,
    pub tumors: Vec<Tumor>,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl Default for PhantomConfig {
    fn default() -> Self {
        Self {
            width: 256,
            height: 256,
            organ: Ellipse::new(128.0, 128.0, 90.0, 60.0),
            organ_mean: 120.0,
            background_mean: 30.0,
            tumors: vec![Tumor {
                shape: Ellipse::new(150.0, 118.0, 14.0, 10.0),
                mean: 160.0,
            }],
            noise_sigma: 8.0,
            seed: 0,
        }
    }
}

impl PhantomConfig {
    /// Default geometry with the tumor `contrast` above the organ.
    pub fn with_contrast(contrast: f64, noise_sigma: f64, seed: u64) -> Self {
        let mut cfg = Self {
            noise_sigma,
            seed,
            ..Self::default()
        };
        let organ_mean = cfg.organ_mean;
        for t in &mut cfg.tumors {
            t.mean = organ_mean + contrast;
        }
        cfg
    }

    fn check_inside_frame(&self, e: &Ellipse, what: &str) -> Result<()> {
        let (hx, hy) = e.half_extent();
        let inside = e.semi_x > 0.0
            && e.semi_y > 0.0
            && e.cx - hx >= 0.0
            && e.cy - hy >= 0.0
            && e.cx + hx <= (self.width - 1) as f64
            && e.cy + hy <= (self.height - 1) as f64;
        if !inside {
            return Err(Error::InvalidPhantom(format!("{what} leaves the frame")));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidPhantom("empty frame".into()));
        }
        let finite = [self.organ_mean, self.background_mean, self.noise_sigma]
            .iter()
            .chain(self.tumors.iter().map(|t| &t.mean))
            .all(|v| v.is_finite());
        if !finite || self.noise_sigma < 0.0 {
            return Err(Error::InvalidPhantom(
                "intensities and noise must be finite, noise non-negative".into(),
            ));
        }
        self.check_inside_frame(&self.organ, "organ")?;
        for (i, t) in self.tumors.iter().enumerate() {
            self.check_inside_frame(&t.shape, &format!("tumor {i}"))?;
            if t.mean == self.organ_mean {
                return Err(Error::InvalidPhantom(format!(
                    "tumor {i} has no contrast against the organ"
                )));
            }
        }
        Ok(())
    }
}

/// Noise-free region membership: 0 background, 1 organ, 2.. tumors in
/// config order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub labels: LabelImage,
}

impl GroundTruth {
    /// Union of all tumor pixels.
    pub fn tumor_mask(&self) -> BinaryImage {
        self.labels.image().map(|&l| l >= 2)
    }

    pub fn organ_mask(&self) -> BinaryImage {
        self.labels.image().map(|&l| l >= 1)
    }
}

/// Standard normal samples by the Box–Muller transform over Xoshiro256**
/// seeded through SplitMix64; samples come in (cos, sin) pairs.
struct GaussianStream {
    rng: Xoshiro256StarStar,
    spare: Option<f64>,
}

impl GaussianStream {
    fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256StarStar::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform in (0, 1] from the top 53 bits.
    fn uniform_open0(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform_open0();
        let u2 = self.uniform_open0();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// Renders the phantom and its ground truth.
///
/// Each pixel takes the mean of its innermost region (background, organ,
/// tumor), plus `N(0, σ²)` noise in raster order, then is clamped to
/// [0, 255] and rounded.
pub fn generate_phantom(cfg: &PhantomConfig) -> Result<(GrayImage8, GroundTruth)> {
    cfg.validate()?;
    let (w, h) = (cfg.width, cfg.height);
    let mut truth = vec![0u32; w * h];
    for y in 0..h {
        for x in 0..w {
            let (fx, fy) = (x as f64, y as f64);
            let p = y * w + x;
            if cfg.organ.contains(fx, fy) {
                truth[p] = 1;
            }
            for (i, t) in cfg.tumors.iter().enumerate() {
                if t.shape.contains(fx, fy) {
                    if truth[p] >= 2 {
                        return Err(Error::OverlappingTumors {
                            first: truth[p] as usize - 2,
                            second: i,
                        });
                    }
                    if truth[p] == 0 {
                        return Err(Error::InvalidPhantom(format!(
                            "tumor {i} extends outside the organ"
                        )));
                    }
                    truth[p] = i as u32 + 2;
                }
            }
        }
    }
    let labels = LabelImage::new(Image::from_raw(w, h, truth))
        .map_err(|_| Error::InvalidPhantom("a region covers no pixel center".into()))?;

    let mut noise = GaussianStream::new(cfg.seed);
    let img = labels.image().map(|&l| {
        let mu = match l {
            0 => cfg.background_mean,
            1 => cfg.organ_mean,
            k => cfg.tumors[k as usize - 2].mean,
        };
        clamp_round_u8(mu + cfg.noise_sigma * noise.next())
    });
    Ok((img, GroundTruth { labels }))
}
