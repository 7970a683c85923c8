//! Command-line driver: `segment`, `otsu`, `phantom` and `eval`.
//!
//! Exit codes are 0 on success, 2 for input or configuration errors and 3
//! when the pipeline finds no foreground markers.

mod config;
mod output;

pub use config::{CliConfig, ConnectivityArg, WaveletArg};

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use lesionseg::enhance::{histogram, otsu_threshold};
use lesionseg::features::extract_features;
use lesionseg::image::{read_pgm, write_pgm, write_ppm};
use lesionseg::phantom::{evaluate, generate_phantom, PhantomConfig};
use lesionseg::watershed::{segment, StageImage};
use lesionseg::{Error, FeatureVector64, GrayImage8};

use output::{write_atomic, write_json};

#[derive(Debug, Parser)]
#[command(
    name = "lesionseg",
    version,
    about = "Marker-controlled watershed lesion segmentation"
)]
pub struct Cli {
    #[command(flatten)]
    pub shared: SharedArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Flags accepted by every subcommand; they override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct SharedArgs {
    /// JSON config file
    #[arg(long, global = true, value_name = "JSON")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_name = "N")]
    pub se_radius: Option<usize>,

    #[arg(long, global = true, value_name = "4|8")]
    pub connectivity: Option<ConnectivityArg>,

    #[arg(long, global = true, value_name = "N")]
    pub min_marker_area: Option<usize>,

    #[arg(long, global = true, value_name = "haar|db4")]
    pub wavelet: Option<WaveletArg>,

    #[arg(long, global = true, value_name = "N")]
    pub levels: Option<usize>,

    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    /// Output directory (segment), path prefix (phantom) or report path (eval)
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the pipeline and write the stage dumps, features and summary
    Segment { input: PathBuf },
    /// Print Otsu's threshold of an image
    Otsu { input: PathBuf },
    /// Write a synthetic phantom and its ground-truth label image
    Phantom {
        /// Noise standard deviation
        #[arg(long)]
        sigma: Option<f64>,
        /// Tumor mean minus organ mean
        #[arg(long)]
        contrast: Option<f64>,
    },
    /// Segment a batch of phantoms and write a Dice report
    Eval { batch: PathBuf },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn pipeline(err: Error) -> Self {
        let code = if matches!(err, Error::NoForegroundMarkers) {
            3
        } else {
            2
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` and runs the selected command.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let cfg = CliConfig::resolve(&cli.shared).map_err(CliError::input)?;
    match &cli.command {
        Command::Segment { input } => cmd_segment(input, required_out(&cli.shared)?, &cfg),
        Command::Otsu { input } => cmd_otsu(input),
        Command::Phantom { sigma, contrast } => {
            let mut cfg = cfg;
            if let Some(s) = sigma {
                cfg.phantom.noise_sigma = *s;
            }
            if let Some(c) = contrast {
                let organ = cfg.phantom.organ_mean;
                for t in &mut cfg.phantom.tumors {
                    t.mean = organ + c;
                }
            }
            cmd_phantom(&cfg, required_out(&cli.shared)?)
        }
        Command::Eval { batch } => cmd_eval(batch, required_out(&cli.shared)?, &cfg),
    }
}

fn required_out(shared: &SharedArgs) -> CliResult<&Path> {
    shared
        .out
        .as_deref()
        .ok_or_else(|| CliError::input("--out is required for this command"))
}

fn load_pgm(path: &Path) -> CliResult<GrayImage8> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    read_pgm(&bytes).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct FeatureRecord<'a> {
    label: u32,
    #[serde(flatten)]
    features: &'a FeatureVector64,
}

#[derive(Serialize)]
struct Summary<'a> {
    regions: u32,
    tumor_label: Option<u32>,
    degenerate: bool,
    config: &'a CliConfig,
}

pub fn cmd_segment(input: &Path, out_dir: &Path, cfg: &CliConfig) -> CliResult<()> {
    let img = load_pgm(input)?;
    let result = segment(&img, &cfg.pipeline).map_err(CliError::pipeline)?;

    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::input(format!("cannot create {}: {e}", out_dir.display())))?;
    for stage in &result.stages {
        let (name, bytes) = match &stage.image {
            StageImage::Gray(g) => (format!("{}.pgm", stage.name), write_pgm(g)),
            StageImage::Rgb(c) => (format!("{}.ppm", stage.name), write_ppm(c)),
        };
        write_atomic(&out_dir.join(name), &bytes)?;
    }

    if let (Some(label), Some(mask)) = (result.tumor_label, result.tumor_mask()) {
        let features = extract_features::<f64>(&img, &mask, cfg.wavelet.into(), cfg.levels)
            .map_err(|e| CliError::input(format!("feature extraction failed: {e}")))?;
        write_json(
            &out_dir.join("features.json"),
            &FeatureRecord {
                label,
                features: &features,
            },
        )?;
    }

    write_json(
        &out_dir.join("summary.json"),
        &Summary {
            regions: result.labels.num_labels(),
            tumor_label: result.tumor_label,
            degenerate: result.degenerate,
            config: cfg,
        },
    )
}

/// The single output line of `otsu`.
pub fn otsu_line(img: &GrayImage8) -> CliResult<String> {
    let r = otsu_threshold(&histogram(img)).map_err(CliError::pipeline)?;
    Ok(format!(
        "threshold={} variance={} degenerate={}",
        r.threshold, r.between_class_variance, r.degenerate
    ))
}

pub fn cmd_otsu(input: &Path) -> CliResult<()> {
    let img = load_pgm(input)?;
    println!("{}", otsu_line(&img)?);
    Ok(())
}

/// Appends `suffix` to the final component of `prefix`.
fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn cmd_phantom(cfg: &CliConfig, prefix: &Path) -> CliResult<()> {
    let (img, truth) =
        generate_phantom(&cfg.phantom).map_err(|e| CliError::input(e.to_string()))?;
    // labels are tiny (0, 1, 2..) so the u8 cast is lossless for < 254 tumors
    let gt = truth.labels.image().map(|&l| l.min(255) as u8);
    write_atomic(&with_suffix(prefix, ".pgm"), &write_pgm(&img))?;
    write_atomic(&with_suffix(prefix, "_gt.pgm"), &write_pgm(&gt))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BatchFile {
    List(Vec<PhantomConfig>),
    Wrapped { phantoms: Vec<PhantomConfig> },
}

pub fn cmd_eval(batch_path: &Path, out: &Path, cfg: &CliConfig) -> CliResult<()> {
    let text = std::fs::read_to_string(batch_path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", batch_path.display())))?;
    let batch = match serde_json::from_str::<BatchFile>(&text) {
        Ok(BatchFile::List(v)) | Ok(BatchFile::Wrapped { phantoms: v }) => v,
        Err(e) => {
            return Err(CliError::input(format!(
                "malformed batch file {}: {e}",
                batch_path.display()
            )))
        }
    };
    let report = evaluate(&batch, &cfg.pipeline).map_err(|e| CliError::input(e.to_string()))?;
    write_json(out, &report)?;
    println!("mean_dice={}", report.mean_dice);
    Ok(())
}
