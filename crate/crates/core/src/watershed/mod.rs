//! Seeded watershed flooding, the marker-controlled segmentation pipeline,
//! and label/overlay rendering.

mod flood;
mod pipeline;
mod render;
mod stats;

pub use flood::{watershed_seeded, watershed_unseeded};
pub use pipeline::{
    segment, PipelineConfig, SegmentationResult, Stage, StageImage, ThresholdSource, TumorPolicy,
    STAGE_NAMES,
};
pub use render::{render_label_colormap, render_overlay};
pub use stats::{region_stats, RegionStats};
