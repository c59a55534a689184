// SPDX-License-Identifier: Apache-2.0

//! `photonloss` command-line front end.
//!
//! [`render`] turns a parsed command into the bytes of its output file;
//! [`run`] also writes them. Both are deterministic for a given command.

mod args;
mod output;

use clap::ValueEnum;
use serde::Serialize;
use thiserror::Error;

use photonloss_core::audit::{compare_report, flawed_signal_operator};
use photonloss_core::channels::{
    depolarizing_channel, identity_channel, loss_channel, polarized_photon_loss_channel, validate_cptp,
};
use photonloss_core::lossmodels::{
    distance_grid, fock_decay_state, link_budget_curve, AttenuationConvention, FiberParams, FsoParams,
};
use photonloss_core::metrics::{chsh_max, purity, von_neumann_entropy};
use photonloss_core::states::{bell_state, maximally_mixed_pair, werner_state};
use photonloss_core::{BellKind, Channel64, CptpReport64, Density64, LinkBudgetPoint64};

pub use args::{
    AuditArgs, ChannelArgs, ChannelKind, Cli, Command, Convention, FockDecayArgs, Format, LinkBudgetArgs, OutputArgs,
    StateArgs, StateKind,
};
pub use output::{fmt_num, write_atomic};

use output::{to_json, CsvTable};

/// Exact CSV headers.
pub const LINK_BUDGET_HEADER: &str = "series,z_m,atm_T,geo_eta,loss_db";
pub const FOCK_DECAY_HEADER: &str = "length_m,survival_q,purity,entropy_bits";
pub const AUDIT_HEADER: &str =
    "eta,first_case_chsh,flawed_trace,flawed_chsh_weighted,coincidence_p,conditional_chsh,s_eff";
pub const CHANNEL_HEADER: &str = "channel,param,d_in,d_out,completeness_defect,tolerance,is_trace_preserving,is_valid";
pub const STATE_HEADER: &str = "state,param,dim,purity,entropy_bits,chsh";

/// Largest photon number accepted by `fock-decay`.
pub const MAX_PHOTONS: usize = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] photonloss_core::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad flags or parameters outside an operation's domain, 1 for
    /// everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(photonloss_core::Error::Usage(_)) => 2,
            _ => 1,
        }
    }
}

/// Renders and writes the output of `cli`, to `--output` or standard output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let text = render(&cli.command)?;
    match &cli.command.output().output {
        Some(path) => write_atomic(path, &text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

pub fn render(command: &Command) -> Result<String, CliError> {
    match command {
        Command::LinkBudget(a) => link_budget(a),
        Command::FockDecay(a) => fock_decay(a),
        Command::AuditChsh(a) => audit(a),
        Command::ChannelValidate(a) => channel(a),
        Command::StateMetrics(a) => state(a),
    }
}

fn value_name<V: ValueEnum>(v: &V) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn header(h: &str) -> Vec<&str> {
    h.split(',').collect()
}

#[derive(Serialize)]
struct Series {
    name: String,
    aperture_radius: Option<f64>,
    include_geo: bool,
    points: Vec<LinkBudgetPoint64>,
}

#[derive(Serialize)]
struct LinkBudgetDoc {
    alpha: f64,
    wavelength: f64,
    waist: f64,
    convention: AttenuationConvention,
    series: Vec<Series>,
}

fn link_budget(a: &LinkBudgetArgs) -> Result<String, CliError> {
    let convention = match a.convention {
        Convention::Decibel => AttenuationConvention::Decibel,
        Convention::LiteralExponent => AttenuationConvention::LiteralExponent,
    };
    // The baseline ignores the aperture; any positive radius will do.
    let base = FsoParams::new(a.alpha, a.wavelength, a.waist, a.apertures.first().copied().unwrap_or(1.0))?
        .with_convention(convention);
    if !base.is_paraxial() {
        eprintln!(
            "warning: waist {} m is under ten wavelengths; the paraxial beam model is inaccurate",
            fmt_num(a.waist)
        );
    }

    let mut series = vec![Series {
        name: "baseline".into(),
        aperture_radius: None,
        include_geo: false,
        points: link_budget_curve(&base, a.zmax, a.step, false)?,
    }];
    for &r in &a.apertures {
        let p = FsoParams::new(a.alpha, a.wavelength, a.waist, r)?.with_convention(convention);
        series.push(Series {
            name: format!("a_R={}", fmt_num(r)),
            aperture_radius: Some(r),
            include_geo: true,
            points: link_budget_curve(&p, a.zmax, a.step, true)?,
        });
    }

    match a.out.format {
        Format::Json => {
            to_json(&LinkBudgetDoc { alpha: a.alpha, wavelength: a.wavelength, waist: a.waist, convention, series })
        }
        Format::Csv => {
            let mut t = CsvTable::new(&header(LINK_BUDGET_HEADER))?;
            for s in &series {
                for p in &s.points {
                    t.row([
                        s.name.clone(),
                        fmt_num(p.z),
                        fmt_num(p.atm_transmittance),
                        fmt_num(p.geo_efficiency),
                        fmt_num(p.total_loss_db),
                    ])?;
                }
            }
            t.finish()
        }
    }
}

#[derive(Serialize)]
struct FockPoint {
    length_m: f64,
    survival_q: f64,
    purity: f64,
    entropy_bits: f64,
    populations: Vec<f64>,
}

fn fock_decay(a: &FockDecayArgs) -> Result<String, CliError> {
    if a.n_photons == 0 || a.n_photons > MAX_PHOTONS {
        return Err(CliError::Usage(format!("--n-photons must lie in 1..={MAX_PHOTONS}, got {}", a.n_photons)));
    }
    let mut points = Vec::new();
    for l in distance_grid(a.lmax, a.step)? {
        let p = FiberParams::new(a.alpha, l / 1000.0, a.n_photons)?;
        let rho = fock_decay_state(&p);
        points.push(FockPoint {
            length_m: l,
            survival_q: p.survival(),
            purity: purity(&rho),
            entropy_bits: von_neumann_entropy(&rho)?,
            populations: (0..rho.dim()).map(|j| rho.matrix().get(j, j).re).collect(),
        });
    }
    match a.out.format {
        Format::Json => to_json(&points),
        Format::Csv => {
            let mut t = CsvTable::new(&header(FOCK_DECAY_HEADER))?;
            for p in &points {
                t.row([p.length_m, p.survival_q, p.purity, p.entropy_bits].map(fmt_num))?;
            }
            t.finish()
        }
    }
}

fn audit(a: &AuditArgs) -> Result<String, CliError> {
    let report = compare_report(&a.etas)?;
    match a.out.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut t = CsvTable::new(&header(AUDIT_HEADER))?;
            for c in &report {
                let r = c.row();
                t.row(
                    [
                        r.eta,
                        r.first_case_chsh,
                        r.flawed_trace,
                        r.flawed_chsh_weighted,
                        r.coincidence_p,
                        r.conditional_chsh,
                        r.s_eff,
                    ]
                    .map(fmt_num),
                )?;
            }
            t.finish()
        }
    }
}

#[derive(Serialize)]
struct ChannelDoc {
    channel: String,
    param: Option<f64>,
    d_in: usize,
    d_out: usize,
    #[serde(flatten)]
    report: CptpReport64,
}

fn require_param(name: &str, param: Option<f64>) -> Result<f64, CliError> {
    param.ok_or_else(|| CliError::Usage(format!("{name} needs --param")))
}

fn reject_param(name: &str, param: Option<f64>) -> Result<(), CliError> {
    match param {
        Some(_) => Err(CliError::Usage(format!("{name} takes no --param"))),
        None => Ok(()),
    }
}

fn channel(a: &ChannelArgs) -> Result<String, CliError> {
    if !(a.tolerance.is_finite() && a.tolerance > 0.0) {
        return Err(CliError::Usage(format!("--tolerance must be positive, got {}", a.tolerance)));
    }
    let name = value_name(&a.channel);
    let c: Channel64 = match a.channel {
        ChannelKind::Loss => loss_channel(require_param(&name, a.param)?)?,
        ChannelKind::Identity => {
            reject_param(&name, a.param)?;
            identity_channel(2)
        }
        ChannelKind::Depolarizing => depolarizing_channel(require_param(&name, a.param)?)?,
        ChannelKind::PolarizedLoss => polarized_photon_loss_channel(require_param(&name, a.param)?)?,
        ChannelKind::Flawed => {
            photonloss_core::KrausChannel::new(vec![flawed_signal_operator(require_param(&name, a.param)?)?])?
        }
    };
    let doc = ChannelDoc {
        channel: name,
        param: a.param,
        d_in: c.d_in(),
        d_out: c.d_out(),
        report: validate_cptp(&c, a.tolerance),
    };
    match a.out.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut t = CsvTable::new(&header(CHANNEL_HEADER))?;
            t.row([
                doc.channel.clone(),
                doc.param.map(fmt_num).unwrap_or_default(),
                doc.d_in.to_string(),
                doc.d_out.to_string(),
                fmt_num(doc.report.completeness_defect),
                fmt_num(doc.report.tolerance),
                doc.report.is_trace_preserving.to_string(),
                doc.report.is_valid.to_string(),
            ])?;
            t.finish()
        }
    }
}

#[derive(Serialize)]
struct StateDoc {
    state: String,
    param: Option<f64>,
    dim: usize,
    purity: f64,
    entropy_bits: f64,
    chsh: f64,
}

fn state(a: &StateArgs) -> Result<String, CliError> {
    let name = value_name(&a.state);
    let rho: Density64 = match a.state {
        StateKind::Werner => werner_state(require_param(&name, a.param)?)?,
        other => {
            reject_param(&name, a.param)?;
            match other {
                StateKind::PhiPlus => bell_state(BellKind::PhiPlus),
                StateKind::PhiMinus => bell_state(BellKind::PhiMinus),
                StateKind::PsiPlus => bell_state(BellKind::PsiPlus),
                StateKind::PsiMinus => bell_state(BellKind::PsiMinus),
                _ => maximally_mixed_pair(),
            }
        }
    };
    let doc = StateDoc {
        state: name,
        param: a.param,
        dim: rho.dim(),
        purity: purity(&rho),
        entropy_bits: von_neumann_entropy(&rho)?,
        chsh: chsh_max(&rho)?,
    };
    match a.out.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut t = CsvTable::new(&header(STATE_HEADER))?;
            t.row([
                doc.state.clone(),
                doc.param.map(fmt_num).unwrap_or_default(),
                doc.dim.to_string(),
                fmt_num(doc.purity),
                fmt_num(doc.entropy_bits),
                fmt_num(doc.chsh),
            ])?;
            t.finish()
        }
    }
}
