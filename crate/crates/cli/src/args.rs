use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankgpt::attacks::{DEFAULT_THRESHOLD_BITS, DEFAULT_TRIALS};
use rankgpt::{FieldCtx, GptParams, ScramblerMode, Variant};

use crate::formats::Format;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "rankgpt",
    version,
    about = "Rank-metric GPT public-key encryption: keys, encryption and attack analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a message file under a public key.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file with a private key.
    Decrypt(DecryptArgs),
    /// Attack costs, the published security table and distinguisher runs.
    Analyze(AnalyzeArgs),
    /// Run the distinguisher on a public key, and optionally brute-force a ciphertext.
    Attack(AttackArgs),
}

/// System parameters: a preset, optionally overridden field by field.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// paper-28 or desk-12.
    #[arg(long)]
    pub preset: Option<String>,
    /// Base field size (prime).
    #[arg(long)]
    pub q: Option<u32>,
    /// Extension degree N; defaults to n.
    #[arg(long = "bigN")]
    pub big_n: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// simple, extended, rectangular or two-distortion.
    #[arg(long)]
    pub variant: Option<Variant>,
    #[arg(long)]
    pub t1: Option<usize>,
    #[arg(long)]
    pub t2: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub mcols: Option<usize>,
    /// base_field or extension_field_V.
    #[arg(long)]
    pub mode: Option<ScramblerMode>,
    /// Extension-field columns of the scrambler; defaults to the unused rank budget.
    #[arg(long)]
    pub sext: Option<usize>,
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<GptParams, CliError> {
        let variant = self.variant.unwrap_or(Variant::Simple);
        let mode = self.mode.unwrap_or(ScramblerMode::ExtensionField);
        let mut params = match self.preset.as_deref() {
            Some("desk-12") => GptParams::desk12(variant, mode),
            Some("paper-28") => {
                let mut p = GptParams::standard28();
                p.variant = variant;
                p.mode = mode;
                p
            }
            Some(other) => {
                return Err(CliError::Param(format!(
                    "unknown preset `{other}` (expected paper-28 or desk-12)"
                )))
            }
            None => {
                let (n, k) = match (self.n, self.k) {
                    (Some(n), Some(k)) => (n, k),
                    _ => {
                        return Err(CliError::Param(
                            "give --preset, or at least --n and --k".into(),
                        ))
                    }
                };
                let ctx = field(self.q.unwrap_or(2), self.big_n.unwrap_or(n))?;
                GptParams::new(ctx, n, k, variant, 0, 0, 0, 0, mode)
            }
        };
        if self.q.is_some() || self.big_n.is_some() {
            let q = self.q.unwrap_or(params.ctx.q());
            let degree = self.big_n.unwrap_or(params.ctx.degree());
            if (q, degree) != (params.ctx.q(), params.ctx.degree()) {
                params.ctx = field(q, degree)?;
            }
        }
        let overrides = [
            (&mut params.n, self.n),
            (&mut params.k, self.k),
            (&mut params.t1, self.t1),
            (&mut params.t2, self.t2),
            (&mut params.p, self.p),
            (&mut params.m_cols, self.mcols),
        ];
        for (slot, value) in overrides {
            if let Some(v) = value {
                *slot = v;
            }
        }
        params.r_x = params.t1;
        params.s_ext = self.sext.unwrap_or_else(|| params.default_s_ext());
        params
            .validate()
            .map_err(|e| CliError::Param(e.to_string()))?;
        Ok(params)
    }
}

fn field(q: u32, degree: usize) -> Result<FieldCtx, CliError> {
    FieldCtx::with_default_modulus(q, degree).map_err(|e| CliError::Param(e.to_string()))
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Deterministic seed; system entropy when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Bin)]
    pub format: Format,
    #[arg(long = "pub", default_value = "pub.key")]
    pub pub_out: PathBuf,
    #[arg(long = "priv", default_value = "priv.key")]
    pub priv_out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    /// Public key file.
    #[arg(long)]
    pub key: PathBuf,
    /// Message file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Ciphertext file.
    #[arg(long = "out")]
    pub output: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Bin)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    /// Private key file.
    #[arg(long)]
    pub key: PathBuf,
    /// Ciphertext file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Recovered message file.
    #[arg(long = "out")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Analyze this public key instead of the parameter flags.
    #[arg(long, conflicts_with_all = ["table", "simulate"])]
    pub key: Option<PathBuf>,
    /// Reproduce the eight-row security table of the (28, 14) system.
    #[arg(long, conflicts_with = "simulate")]
    pub table: bool,
    /// Run the distinguisher on fresh keys of this preset.
    #[arg(long, value_name = "PRESET")]
    pub simulate: Option<String>,
    /// Frobenius depth of the distinguisher.
    #[arg(long)]
    pub u: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Security threshold in bits.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD_BITS)]
    pub threshold: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    /// Public key file.
    #[arg(long)]
    pub key: PathBuf,
    /// Frobenius depth of the distinguisher.
    #[arg(long)]
    pub u: Option<usize>,
    /// Ciphertext to decrypt by exhaustive search (toy parameters only).
    #[arg(long, requires = "output")]
    pub ciphertext: Option<PathBuf>,
    /// Where to write the recovered message.
    #[arg(long = "out", requires = "ciphertext")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}
