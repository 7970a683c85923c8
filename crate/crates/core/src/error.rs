use thiserror::Error;

/// Errors produced by the segmentation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("image dimensions must be positive, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("buffer holds {found} values but {width}x{height} requires {expected}")]
    BufferLength {
        width: usize,
        height: usize,
        expected: usize,
        found: usize,
    },

    #[error("pixel ({x}, {y}) holds an invalid value")]
    InvalidPixel { x: usize, y: usize },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("labels are not contiguous: label {missing} is absent but {max} is present")]
    NonContiguousLabels { missing: u32, max: u32 },

    #[error(transparent)]
    Pnm(#[from] PnmError),

    #[error("histogram is empty")]
    EmptyHistogram,

    #[error("structuring element must contain the origin")]
    MissingOrigin,

    #[error("structuring element is not symmetric: ({dx}, {dy}) has no mirror")]
    AsymmetricElement { dx: isize, dy: isize },

    #[error("marker exceeds mask at pixel ({x}, {y})")]
    MarkerAboveMask { x: usize, y: usize },

    #[error("marker is below mask at pixel ({x}, {y})")]
    MarkerBelowMask { x: usize, y: usize },

    #[error("minima mask is empty; flooding would be unseeded")]
    EmptyMinima,

    #[error("marker image has no labeled pixel")]
    EmptyMarkers,

    #[error("invalid pipeline configuration: {0}")]
    InvalidConfig(String),

    #[error("image is {width}x{height}; segmentation needs at least 8x8")]
    ImageTooSmall { width: usize, height: usize },

    #[error("no foreground markers survived cleanup; try a smaller min_marker_area")]
    NoForegroundMarkers,

    #[error("wavelet levels must be at least 1")]
    ZeroLevels,

    #[error("{requested} wavelet levels requested but at most {max} are feasible")]
    TooManyLevels { requested: usize, max: usize },

    #[error("malformed subband pyramid: {0}")]
    MalformedPyramid(String),

    #[error("region is empty")]
    EmptyRegion,

    #[error("region bounding box {width}x{height} is smaller than 2^{levels}; use fewer levels")]
    RegionTooSmall {
        width: usize,
        height: usize,
        levels: usize,
    },

    #[error("invalid phantom: {0}")]
    InvalidPhantom(String),

    #[error("tumor ellipses {first} and {second} overlap")]
    OverlappingTumors { first: usize, second: usize },

    #[error("evaluation batch is empty")]
    EmptyBatch,
}

/// PGM/PPM parse failures; every variant carries the byte offset where
/// parsing stopped.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PnmError {
    #[error("bad magic number at byte {offset}: expected P2 or P5")]
    BadMagic { offset: usize },

    #[error("malformed header at byte {offset}: {reason}")]
    MalformedHeader { offset: usize, reason: &'static str },

    #[error("maxval {maxval} at byte {offset} exceeds 255")]
    MaxvalTooLarge { offset: usize, maxval: u64 },

    #[error("sample {value} at byte {offset} exceeds maxval {maxval}")]
    SampleOutOfRange {
        offset: usize,
        value: u64,
        maxval: u64,
    },

    #[error("truncated payload at byte {offset}: expected {expected} samples, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
