use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use lesionseg::features::WaveletKind;
use lesionseg::morphology::Connectivity;
use lesionseg::phantom::PhantomConfig;
use lesionseg::watershed::PipelineConfig;

use crate::SharedArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConnectivityArg {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

impl From<ConnectivityArg> for Connectivity {
    fn from(c: ConnectivityArg) -> Self {
        match c {
            ConnectivityArg::Four => Connectivity::Four,
            ConnectivityArg::Eight => Connectivity::Eight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveletArg {
    #[default]
    Haar,
    Db4,
}

impl From<WaveletArg> for WaveletKind {
    fn from(w: WaveletArg) -> Self {
        match w {
            WaveletArg::Haar => WaveletKind::Haar,
            WaveletArg::Db4 => WaveletKind::Daubechies4,
        }
    }
}

/// Everything a command may need. Loaded from `--config` when given, then
/// overridden by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub pipeline: PipelineConfig,
    pub phantom: PhantomConfig,
    pub wavelet: WaveletArg,
    pub levels: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            pipeline: PipelineConfig::default(),
            phantom: PhantomConfig::default(),
            wavelet: WaveletArg::Haar,
            levels: 2,
        }
    }
}

impl CliConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))
    }

    /// Defaults, then the config file, then flags.
    pub fn resolve(args: &SharedArgs) -> Result<Self, String> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                Self::from_json(&text)?
            }
            None => Self::default(),
        };
        if let Some(r) = args.se_radius {
            cfg.pipeline.se_radius = r;
        }
        if let Some(c) = args.connectivity {
            cfg.pipeline.connectivity = c.into();
        }
        if let Some(a) = args.min_marker_area {
            cfg.pipeline.min_marker_area = a;
        }
        if let Some(w) = args.wavelet {
            cfg.wavelet = w;
        }
        if let Some(l) = args.levels {
            cfg.levels = l;
        }
        if let Some(s) = args.seed {
            cfg.phantom.seed = s;
        }
        cfg.pipeline.validate().map_err(|e| e.to_string())?;
        if cfg.levels == 0 {
            return Err("levels must be at least 1".into());
        }
        Ok(cfg)
    }
}
