// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Photon-loss models for entangled pairs: link budgets, Fock decay,
/// channel checks, state metrics and the CHSH audit.
///
/// Lengths are in meters. Attenuation coefficients are in dB/km.
#[derive(Debug, Clone, Parser)]
#[command(name = "photonloss", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Free-space loss versus distance: a Beer-Lambert baseline plus one
    /// series per receiver aperture.
    LinkBudget(LinkBudgetArgs),
    /// Purity and entropy of an N-photon Fock state decaying along a fiber.
    FockDecay(FockDecayArgs),
    /// Compare the audited pipelines over a grid of transmittances.
    AuditChsh(AuditArgs),
    /// Completeness check of a built-in channel.
    ChannelValidate(ChannelArgs),
    /// Purity, entropy and maximal CHSH value of a built-in state.
    StateMetrics(StateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write here instead of standard output (atomically).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// 10^(−α·z_km/10)
    Decibel,
    /// 10^(−α·z_km)
    LiteralExponent,
}

#[derive(Debug, Clone, Args)]
pub struct LinkBudgetArgs {
    /// Attenuation coefficient, dB/km.
    #[arg(long, default_value_t = 0.07)]
    pub alpha: f64,
    /// Wavelength, m.
    #[arg(long, default_value_t = 1550e-9)]
    pub wavelength: f64,
    /// Initial beam waist w₀, m.
    #[arg(long, default_value_t = 0.01)]
    pub waist: f64,
    /// Receiver aperture radius, m. Repeat for several series.
    #[arg(long = "aperture")]
    pub apertures: Vec<f64>,
    /// Largest distance, m.
    #[arg(long)]
    pub zmax: f64,
    /// Grid step, m.
    #[arg(long)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = Convention::Decibel)]
    pub convention: Convention,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FockDecayArgs {
    /// Attenuation coefficient, dB/km.
    #[arg(long, default_value_t = 0.07)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub n_photons: usize,
    /// Largest fiber length, m.
    #[arg(long)]
    pub lmax: f64,
    /// Grid step, m.
    #[arg(long)]
    pub step: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    /// Signal transmittance in (0, 1]. Repeat for several rows.
    #[arg(long = "eta", required = true)]
    pub etas: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelKind {
    /// Single-mode photon loss, parameter η.
    Loss,
    /// Qubit identity, no parameter.
    Identity,
    /// Qubit depolarizing noise, parameter p.
    Depolarizing,
    /// {vac, H, V} loss, parameter t.
    PolarizedLoss,
    /// The single operator (1 − η)|0⟩⟨0| + η|1⟩⟨1| used as if it were a
    /// channel, parameter η.
    Flawed,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum)]
    pub channel: ChannelKind,
    #[arg(long)]
    pub param: Option<f64>,
    /// Completeness tolerance on max|Σ K†K − I|.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    #[value(name = "phi+")]
    PhiPlus,
    #[value(name = "phi-")]
    PhiMinus,
    #[value(name = "psi+")]
    PsiPlus,
    #[value(name = "psi-")]
    PsiMinus,
    /// w·Φ⁺ + (1 − w)·I/4, parameter w.
    Werner,
    /// I/4 on two qubits.
    MixedPair,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub state: StateKind,
    #[arg(long)]
    pub param: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::LinkBudget(a) => &a.out,
            Command::FockDecay(a) => &a.out,
            Command::AuditChsh(a) => &a.out,
            Command::ChannelValidate(a) => &a.out,
            Command::StateMetrics(a) => &a.out,
        }
    }
}
