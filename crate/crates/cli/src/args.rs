use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::units;

#[derive(Debug, Parser)]
#[command(
    name = "supersep",
    version,
    about = "Slit-interference and superselection calculations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Far-field intensity of an N-slit system on a screen window.
    Pattern(PatternArgs),
    /// 2+1-slit pattern, with and without interference between the arms.
    Combine(CombineArgs),
    /// Commutator phase of Aharonov-Bohm translations.
    Reeh(ReehArgs),
    /// Weyl defect of the grid CCR pair.
    Schmudgen(SchmudgenArgs),
    /// Box-length equivalence and sector orthogonality.
    Sector(SectorArgs),
    /// Experiment geometry and matter-wave wavelengths.
    Plan(PlanArgs),
    /// Runs the subcommand described by a JSON config file.
    Run(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Destination file; stdout if omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    /// Slit width.
    #[arg(long, value_parser = units::length)]
    pub b: f64,
    /// Gap between adjacent slits.
    #[arg(long, value_parser = units::length)]
    pub s: f64,
    #[arg(long, value_parser = units::length)]
    pub lambda: f64,
    /// Slit-to-screen distance.
    #[arg(long, value_parser = units::length)]
    pub x: f64,
    /// Screen interval `lo:hi`.
    #[arg(long, value_parser = units::window, allow_hyphen_values = true)]
    pub window: Option<(f64, f64)>,
    #[arg(long, default_value_t = supersep_core::optics::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Intensity scale `A`.
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    /// Number of slits.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[command(flatten)]
    pub screen: ScreenArgs,
    /// Screen position of the system centre.
    #[arg(long, value_parser = units::length, allow_hyphen_values = true)]
    pub center: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Superseparable,
    Coherent,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Fraunhofer,
    Spherical,
}

#[derive(Debug, Args)]
pub struct CombineArgs {
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Model::Fraunhofer)]
    pub model: Model,
    #[command(flatten)]
    pub screen: ScreenArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("flux_source").required(true))]
pub struct ReehArgs {
    /// Superconducting flux quanta `n`, giving `α = n/2`.
    #[arg(long, group = "flux_source")]
    pub flux_quanta: Option<u32>,
    /// Flux parameter `α = qΦ/2π` directly.
    #[arg(long, group = "flux_source", allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Probe `x,y,a,b`: base point and translation amounts.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub probe: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldKind {
    Gaussian,
    Random,
}

#[derive(Debug, Args)]
pub struct SchmudgenArgs {
    /// Argument of the unit phase `z`.
    #[arg(long, value_parser = units::angle, allow_hyphen_values = true)]
    pub z_angle: f64,
    /// `s` in grid steps.
    #[arg(long, default_value_t = 4)]
    pub s_steps: u32,
    /// `t` in grid steps.
    #[arg(long, default_value_t = 4)]
    pub t_steps: u32,
    /// Grid half-width in samples.
    #[arg(long, default_value_t = 128)]
    pub radius: usize,
    /// Number of samples per unit length.
    #[arg(long, default_value_t = 16)]
    pub per_unit: u32,
    #[arg(long, value_enum, default_value_t = FieldKind::Gaussian)]
    pub field: FieldKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SectorArgs {
    /// First box length, e.g. `3/2` or `2/3*sqrt(5)`.
    #[arg(long)]
    pub box1: String,
    #[arg(long)]
    pub box2: String,
    /// Energy levels listed per box.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Species {
    Rb85,
    C12,
    Electron,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long, value_parser = units::length)]
    pub b: f64,
    #[arg(long, value_parser = units::length)]
    pub s: f64,
    #[arg(long, value_parser = units::length)]
    pub lambda: f64,
    /// Shrink `b` and `s` by this factor at fixed wavelength.
    #[arg(long)]
    pub rescale: Option<f64>,
    #[arg(long, value_enum, conflicts_with = "mass")]
    pub species: Option<Species>,
    #[arg(long, value_parser = units::mass)]
    pub mass: Option<f64>,
    #[arg(long, value_parser = units::speed)]
    pub velocity: Option<f64>,
    /// Also list commonly quoted matter-wave figures against recomputed ones.
    #[arg(long)]
    pub checks: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
}
