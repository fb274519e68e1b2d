use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Light-field degradation, evaluation, and reference-network toolkit.
#[derive(Debug, Parser)]
#[command(name = "lfdanet", version, disable_help_subcommand = true)]
pub struct Cli {
    /// Master seed; every random draw in every command derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker thread count; capped by the LFDANET_THREADS variable.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// TOML config file; sets network fields and threads, flags override.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degrade every scene under --in and write LR scenes to --out.
    Degrade(DegradeArgs),
    /// Cut degraded training patches from HR scenes, with augmentation.
    Patchify(PatchifyArgs),
    /// Score predicted scenes against ground truth and print PSNR/SSIM.
    Metrics(MetricsArgs),
    /// Sweep mismatched degradation inputs over a PSNR grid.
    Grid(GridArgs),
    /// Run the reference network on LR scenes.
    Forward(ForwardArgs),
    /// Report parameter counts, compute estimates, or kernel images.
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
pub struct DegradeArgs {
    /// Directory containing HR scene directories.
    #[arg(long = "in")]
    pub input: PathBuf,

    /// Output directory for the degraded scenes.
    #[arg(long)]
    pub out: PathBuf,

    /// Blur kernel width sigma_b, in HR pixels.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,

    /// Noise standard deviation on the 0 to 255 scale.
    #[arg(long, allow_negative_numbers = true)]
    pub noise: f64,

    /// Downscale factor.
    #[arg(long, default_value_t = 4)]
    pub alpha: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AugChoice {
    /// One sampled augmentation code per patch.
    SampleOne,
    /// All 48 augmentation codes per patch.
    MaterializeAll,
}

#[derive(Debug, Args)]
pub struct PatchifyArgs {
    /// Directory containing HR scene directories.
    #[arg(long = "in")]
    pub input: PathBuf,

    /// Output directory for the patch store.
    #[arg(long)]
    pub out: PathBuf,

    /// Augmentation mode.
    #[arg(long, value_enum, default_value_t = AugChoice::SampleOne)]
    pub aug: AugChoice,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Directory of predicted scenes.
    #[arg(long)]
    pub pred: PathBuf,

    /// Directory of ground-truth scenes.
    #[arg(long)]
    pub gt: PathBuf,

    /// Write the per-view/per-scene/dataset report as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParamsOpts {
    /// Parameter container file to load.
    #[arg(long)]
    pub params: Option<PathBuf>,

    /// Initialize parameters instead of loading a file.
    #[arg(long, value_enum, conflicts_with = "params")]
    pub init_params: Option<InitKind>,

    /// Write the resolved parameters to this container file.
    #[arg(long)]
    pub save_params: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitKind {
    /// All-zero parameters; the network reduces to bicubic upsampling.
    Zeros,
    /// Seeded uniform fan-in initialization.
    Uniform,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Directory containing HR scene directories.
    #[arg(long = "in")]
    pub input: PathBuf,

    /// Ground-truth blur width used to produce the LR input.
    #[arg(long, allow_negative_numbers = true)]
    pub gt_sigma: f64,

    /// Ground-truth noise level used to produce the LR input.
    #[arg(long, allow_negative_numbers = true)]
    pub gt_noise: f64,

    /// Sweep ranges as "B0:B1:BSTEP,N0:N1:NSTEP".
    /// Default "0:3:0.3,0:50:5".
    #[arg(long)]
    pub spec: Option<String>,

    /// Output CSV path.
    #[arg(long)]
    pub csv: PathBuf,

    #[command(flatten)]
    pub params: ParamsOpts,
}

#[derive(Debug, Args)]
pub struct ForwardArgs {
    /// Directory containing LR scene directories.
    #[arg(long = "in")]
    pub input: PathBuf,

    /// Output directory for the reconstructed scenes.
    #[arg(long)]
    pub out: PathBuf,

    /// Blur width the network is told.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,

    /// Noise level the network is told.
    #[arg(long, allow_negative_numbers = true)]
    pub noise: f64,

    /// Upscale factor; must match the configured network.
    #[arg(long, default_value_t = 4)]
    pub alpha: u32,

    #[command(flatten)]
    pub params: ParamsOpts,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[command(flatten)]
    pub params: ParamsOpts,

    #[command(subcommand)]
    pub what: InspectCmd,
}

#[derive(Debug, Subcommand)]
pub enum InspectCmd {
    /// Print the exact parameter count with a per-module breakdown.
    Count,
    /// Print the multiply-accumulate estimate for one input size.
    Flops {
        /// Input view height.
        #[arg(long, default_value_t = 32)]
        height: usize,
        /// Input view width.
        #[arg(long, default_value_t = 32)]
        width: usize,
    },
    /// Render the generated per-channel kernels as a PNG grid.
    Kernels {
        /// Output PNG path.
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated blur widths, one grid column each.
        #[arg(long, default_value = "0,1.5,3,4.5")]
        sigmas: String,
        /// Noise level shared by all columns.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        noise: f64,
    },
}
