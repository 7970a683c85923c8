use serde::{Deserialize, Serialize};

use super::{
    region_stats, render_label_colormap, render_overlay, watershed_seeded, watershed_unseeded,
};
use crate::enhance::{binarize, histogram, otsu_threshold};
use crate::error::{Error, Result};
use crate::gradient::sobel_gradient_magnitude;
use crate::image::{rescale_to_u8, to_float, Image, LabelImage};
use crate::morphology::{
    area_filter, close_by_reconstruction, distance_transform, erode_binary, impose_minima,
    label_components, open_by_reconstruction, regional_maxima, Connectivity, StructuringElement,
};
use crate::{BinaryImage, GrayImage8, RgbImage};

/// Image the Otsu threshold is computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ThresholdSource {
    /// The opening-closing by reconstruction.
    #[default]
    OpeningClosing,
}

/// Rule for picking the tumor among regions that do not touch the frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TumorPolicy {
    LargestInterior,
    /// Largest |region mean − mean of the other interior regions|.
    #[default]
    MaxMeanContrast,
}

/// Free parameters of the marker-controlled pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub se_radius: usize,
    pub connectivity: Connectivity,
    pub min_marker_area: usize,
    pub fg_shrink_radius: usize,
    pub use_otsu_on: ThresholdSource,
    pub tumor_policy: TumorPolicy,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            se_radius: 5,
            connectivity: Connectivity::Eight,
            min_marker_area: 20,
            fg_shrink_radius: 1,
            use_otsu_on: ThresholdSource::OpeningClosing,
            tumor_policy: TumorPolicy::MaxMeanContrast,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.se_radius < 1 {
            return Err(Error::InvalidConfig("se_radius must be at least 1".into()));
        }
        if self.min_marker_area < 1 {
            return Err(Error::InvalidConfig(
                "min_marker_area must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Stage dump names, in pipeline order.
pub const STAGE_NAMES: [&str; 12] = [
    "01_input",
    "02_otsu_binary",
    "03_gradient",
    "04_open_recon",
    "05_openclose_recon",
    "06_regional_maxima",
    "07_fg_markers",
    "08_threshold_oc",
    "09_bg_ridge",
    "10_imposed_minima",
    "11_label_matrix",
    "12_overlay",
];

#[derive(Debug, Clone, PartialEq)]
pub enum StageImage {
    Gray(GrayImage8),
    Rgb(RgbImage),
}

impl StageImage {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            StageImage::Gray(g) => g.dims(),
            StageImage::Rgb(c) => c.dims(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub name: &'static str,
    pub image: StageImage,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationResult {
    pub labels: LabelImage,
    /// Label-0 pixels of `labels`.
    pub ridge: BinaryImage,
    pub fg_markers: BinaryImage,
    pub bg_markers: BinaryImage,
    /// Exactly [`STAGE_NAMES`], in order.
    pub stages: Vec<Stage>,
    pub tumor_label: Option<u32>,
    /// The threshold image was constant; labels are a single region.
    pub degenerate: bool,
}

impl SegmentationResult {
    pub fn tumor_mask(&self) -> Option<BinaryImage> {
        self.tumor_label.map(|k| self.labels.mask_of(k))
    }
}

const OVERLAY_COLOR: [u8; 3] = [255, 0, 0];
const OVERLAY_ALPHA: f64 = 0.5;

/// Marker-controlled watershed segmentation.
///
/// 1. Sobel gradient magnitude of the input.
/// 2. Opening then closing by reconstruction with `disk(se_radius)`.
/// 3. Foreground markers: regional maxima of (2), shrunk by
///    `disk(fg_shrink_radius)`, components smaller than `min_marker_area`
///    dropped.
/// 4. Otsu threshold of (2).
/// 5. Background markers: ridge of the watershed of the distance map to the
///    nearest thresholded-background or foreground-marker pixel, i.e. the
///    lines halfway between markers and between markers and the outside.
/// 6. Minima of the rescaled gradient imposed at all markers.
/// 7. Seeded watershed of (6) from the marker components.
/// 8. Tumor region picked among regions not touching the frame.
pub fn segment(img: &GrayImage8, cfg: &PipelineConfig) -> Result<SegmentationResult> {
    cfg.validate()?;
    let (w, h) = img.dims();
    if w < 8 || h < 8 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
        });
    }
    let conn = cfg.connectivity;
    let se = StructuringElement::disk(cfg.se_radius);

    let input_otsu = otsu_threshold(&histogram(img))?;
    let otsu_binary = binarize(img, input_otsu.threshold);

    let grad = sobel_gradient_magnitude::<f64>(img);
    let grad_u8 = rescale_to_u8(&grad);

    let opened = open_by_reconstruction(img, &se, conn);
    let oc = close_by_reconstruction(&opened, &se, conn);

    let maxima = regional_maxima(&oc, conn);
    let shrunk = erode_binary(&maxima, &StructuringElement::disk(cfg.fg_shrink_radius));
    let fgm = area_filter(&shrunk, cfg.min_marker_area, conn);

    let ThresholdSource::OpeningClosing = cfg.use_otsu_on;
    let oc_otsu = otsu_threshold(&histogram(&oc))?;
    let bw = binarize(&oc, oc_otsu.threshold);

    let mut stages = Vec::with_capacity(12);
    let mut push = |name: &'static str, image: StageImage| stages.push(Stage { name, image });
    push(STAGE_NAMES[0], StageImage::Gray(img.clone()));
    push(STAGE_NAMES[1], StageImage::Gray(otsu_binary.to_gray()));
    push(STAGE_NAMES[2], StageImage::Gray(grad_u8.clone()));
    push(STAGE_NAMES[3], StageImage::Gray(opened));
    push(STAGE_NAMES[4], StageImage::Gray(oc.clone()));
    push(STAGE_NAMES[5], StageImage::Gray(maxima.to_gray()));
    push(STAGE_NAMES[6], StageImage::Gray(fgm.to_gray()));
    push(STAGE_NAMES[7], StageImage::Gray(bw.to_gray()));

    if oc_otsu.degenerate {
        let labels = LabelImage::new(Image::filled(w, h, 1u32)).expect("single label");
        let ridge = labels.ridge();
        let bgm = Image::filled(w, h, false);
        push(STAGE_NAMES[8], StageImage::Gray(bgm.to_gray()));
        push(STAGE_NAMES[9], StageImage::Gray(grad_u8));
        push(
            STAGE_NAMES[10],
            StageImage::Rgb(render_label_colormap(&labels)),
        );
        push(
            STAGE_NAMES[11],
            StageImage::Rgb(render_overlay(img, &ridge, OVERLAY_COLOR, OVERLAY_ALPHA)?),
        );
        return Ok(SegmentationResult {
            labels,
            ridge,
            fg_markers: fgm,
            bg_markers: bgm,
            stages,
            tumor_label: None,
            degenerate: true,
        });
    }
    if !fgm.any() {
        return Err(Error::NoForegroundMarkers);
    }

    // Zero set: thresholded background plus every foreground marker. The
    // ridge of its distance map separates each marker from the others and
    // from the outside.
    let seeds_free = bw.zip_map(&fgm, |b, f| b && !f)?;
    let dist = distance_transform::<f64>(&seeds_free);
    let bgm = watershed_unseeded(&dist, conn).ridge();
    push(STAGE_NAMES[8], StageImage::Gray(bgm.to_gray()));

    let markers = fgm.zip_map(&bgm, |f, b| f || b)?;
    let relief = impose_minima(&grad_u8, &markers, conn)?;
    push(STAGE_NAMES[9], StageImage::Gray(relief.clone()));

    let seeds = label_components(&markers, conn);
    let labels = watershed_seeded(&to_float::<f64>(&relief), &seeds, conn)?;
    let ridge = labels.ridge();
    let tumor_label = pick_tumor(img, &labels, cfg.tumor_policy)?;

    push(
        STAGE_NAMES[10],
        StageImage::Rgb(render_label_colormap(&labels)),
    );
    let overlay_mask = match tumor_label {
        Some(k) => labels.mask_of(k),
        None => ridge.clone(),
    };
    push(
        STAGE_NAMES[11],
        StageImage::Rgb(render_overlay(
            img,
            &overlay_mask,
            OVERLAY_COLOR,
            OVERLAY_ALPHA,
        )?),
    );

    Ok(SegmentationResult {
        labels,
        ridge,
        fg_markers: fgm,
        bg_markers: bgm,
        stages,
        tumor_label,
        degenerate: false,
    })
}

fn pick_tumor(img: &GrayImage8, labels: &LabelImage, policy: TumorPolicy) -> Result<Option<u32>> {
    let stats = region_stats(img, labels)?;
    let interior: Vec<_> = stats
        .iter()
        .filter(|s| !s.touches_border && s.area > 0)
        .collect();
    let best = match policy {
        TumorPolicy::LargestInterior => interior
            .iter()
            .max_by(|a, b| a.area.cmp(&b.area).then(b.label.cmp(&a.label))),
        TumorPolicy::MaxMeanContrast => {
            let total_area: usize = interior.iter().map(|s| s.area).sum();
            let total_sum: f64 = interior.iter().map(|s| s.mean * s.area as f64).sum();
            let contrast = |s: &RegionRef| {
                let rest = total_area - s.area;
                if rest == 0 {
                    return 0.0;
                }
                let rest_mean = (total_sum - s.mean * s.area as f64) / rest as f64;
                (s.mean - rest_mean).abs()
            };
            interior.iter().max_by(|a, b| {
                contrast(a)
                    .total_cmp(&contrast(b))
                    .then(b.label.cmp(&a.label))
            })
        }
    };
    Ok(best.map(|s| s.label))
}

type RegionRef<'a> = &'a super::RegionStats;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_image_is_degenerate() {
        let img = Image::filled(16, 16, 90u8);
        let r = segment(&img, &PipelineConfig::default()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.labels.num_labels(), 1);
        assert!(r.tumor_label.is_none());
        assert!(!r.ridge.any());
        let names: Vec<_> = r.stages.iter().map(|s| s.name).collect();
        assert_eq!(names, STAGE_NAMES);
    }

    #[test]
    fn rejects_tiny_and_bad_config() {
        let img = Image::filled(7, 9, 0u8);
        assert!(matches!(
            segment(&img, &PipelineConfig::default()),
            Err(Error::ImageTooSmall { .. })
        ));
        let cfg = PipelineConfig {
            se_radius: 0,
            ..Default::default()
        };
        assert!(matches!(
            segment(&Image::filled(8, 8, 0u8), &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn bright_blob_is_found() {
        let img = Image::from_fn(48, 48, |x, y| {
            let (dx, dy) = (x as f64 - 24.0, y as f64 - 22.0);
            if dx * dx / 100.0 + dy * dy / 64.0 <= 1.0 {
                200
            } else if (x as f64 - 24.0).powi(2) / 400.0 + (y as f64 - 24.0).powi(2) / 324.0 <= 1.0 {
                120
            } else {
                30
            }
        });
        let cfg = PipelineConfig {
            se_radius: 2,
            min_marker_area: 5,
            ..Default::default()
        };
        let r = segment(&img, &cfg).unwrap();
        assert!(!r.degenerate);
        let tumor = r.tumor_mask().expect("tumor found");
        let truth = img.map(|&v| v == 200);
        let inter = tumor.zip_map(&truth, |a, b| a && b).unwrap().count();
        let dice = 2.0 * inter as f64 / (tumor.count() + truth.count()) as f64;
        assert!(dice > 0.9, "dice {dice}");
        assert!(!r
            .fg_markers
            .zip_map(&r.bg_markers, |a, b| a && b)
            .unwrap()
            .any());
        for (p, &l) in r.labels.data().iter().enumerate() {
            assert_eq!(r.ridge.data()[p], l == 0);
        }
    }

    #[test]
    fn no_markers_error() {
        // a bright speck too small to survive the area filter next to a ramp
        let img = Image::from_fn(16, 16, |x, _| (x * 10) as u8);
        let cfg = PipelineConfig {
            se_radius: 1,
            min_marker_area: 1000,
            ..Default::default()
        };
        assert_eq!(segment(&img, &cfg), Err(Error::NoForegroundMarkers));
    }
}
