//! Command-line grammar. Every subcommand's arguments serialize into the
//! `config` echo of the report envelope.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fixfree_core::action::{ActionSpec, SubspaceKind};
use fixfree_core::forms::Sign;
use fixfree_core::group::{GroupFamily, DEFAULT_CAP};
use fixfree_core::limits::DEFAULT_TOLERANCE;
use fixfree_core::membership::Coset;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "fixfree", version, about = "Element proportions, limits and fixed point statistics for finite classical groups")]
pub struct Cli {
    /// Output format; `series` defaults to CSV, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for streamed GL counts (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Certified enclosure of a limiting proportion as n -> infinity.
    Limit(LimitArgs),
    /// Exact series coefficients a_1..a_N.
    Series(SeriesArgs),
    /// Build a group table and report its coset sizes.
    Enumerate(EnumerateArgs),
    /// a_n(q,t,C,I) by enumeration, series or Monte Carlo.
    Proportion(ProportionArgs),
    /// Run one verification suite; exits 1 on any failure.
    Verify(VerifyArgs),
    /// Generation probe on PSL_2(q).
    Probe(ProbeArgs),
    /// Negative-cycle statistic on the hyperoctahedral group.
    Weyl(WeylArgs),
    /// List the bundled element-set presets.
    Presets,
}

#[derive(Args, Debug, Serialize)]
pub struct LimitArgs {
    #[arg(long, value_parser = ["gl", "su", "sp-odd", "sp-even", "o-half"])]
    pub family: String,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SeriesArgs {
    #[arg(long, value_parser = ["gl", "sl"], default_value = "gl")]
    pub family: String,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub t: usize,
    /// Determinant coset (SL series only).
    #[arg(long)]
    pub label: Option<u64>,
    /// Highest coefficient index N.
    #[arg(long)]
    pub order: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, value_parser = family_name)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Also count A(t) inside each coset.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Enumeration,
    Series,
    Montecarlo,
}

#[derive(Args, Debug, Serialize)]
pub struct ProportionArgs {
    /// Take family, q, t and coset from a bundled preset; explicit flags win.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_parser = family_name)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub t: Option<usize>,
    /// all, tau, s, o, or a coset label (`3` or `label:3`).
    #[arg(long, value_parser = coset_name)]
    pub coset: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Enumeration)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, required_if_eq("method", "montecarlo"))]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ExactnessBridge,
    Bounds,
    Identities,
    InverseTranspose,
    Orthogonal,
    CosetAverage,
    Expectation,
    Fpr,
    Symmetric,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, value_parser = family_name)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Quadratic form type: +, - or o.
    #[arg(long, value_parser = sign_name, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Point set, e.g. `space:2`, `singular:1`, `nondegenerate+:2`, `antiflag:1`, `forms-`.
    #[arg(long, value_parser = action_name)]
    pub action: Option<String>,
    #[arg(long, value_parser = coset_name)]
    pub coset: Option<String>,
    /// Number of elements x tried by the expectation suite.
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    /// Field sizes for the bound and identity suites.
    #[arg(long, value_delimiter = ',')]
    pub qs: Vec<u64>,
    /// Values of t for the bound suite.
    #[arg(long, value_delimiter = ',')]
    pub ts: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Skip the τ-twisted elements in the fpr suite.
    #[arg(long)]
    pub no_tau: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ProbeArgs {
    #[arg(long)]
    pub q: u32,
    /// Also sample this many partners per class.
    #[arg(long, requires = "seed")]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct WeylArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 6, 8])]
    pub m: Vec<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
}

pub fn parse_family(s: &str) -> Result<GroupFamily, String> {
    GroupFamily::parse(s).ok_or_else(|| format!("unknown group family `{s}` (gl, sl, sp, gu, su, o+, o-, o, so.., omega..)"))
}

pub fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        "o" | "circ" | "0" => Ok(Sign::Circ),
        _ => Err(format!("unknown form type `{s}` (+, - or o)")),
    }
}

pub fn parse_coset(s: &str) -> Result<Coset, String> {
    Ok(match s {
        "all" => Coset::All,
        "tau" => Coset::Tau,
        "s" => Coset::OrthogonalS,
        "o" => Coset::OrthogonalO,
        _ => {
            let l = s.strip_prefix("label:").unwrap_or(s);
            Coset::Label(l.parse().map_err(|_| format!("unknown coset `{s}` (all, tau, s, o or a label)"))?)
        }
    })
}

pub fn parse_action(s: &str) -> Result<ActionSpec, String> {
    let bad = || format!("unknown action `{s}`");
    let (head, k) = match s.split_once(':') {
        Some((h, k)) => (h, Some(k.parse::<usize>().map_err(|_| bad())?)),
        None => (s, None),
    };
    let need = |k: Option<usize>| k.filter(|&k| k > 0).ok_or_else(|| format!("action `{head}` needs a dimension, e.g. `{head}:1`"));
    let space = |kind| Ok(ActionSpec::Subspaces { k: need(k)?, kind });
    match head {
        "space" => space(SubspaceKind::Any),
        "singular" => space(SubspaceKind::TotallySingular),
        "nondegenerate" => space(SubspaceKind::Nondegenerate),
        "nondegenerate+" => space(SubspaceKind::NondegenerateOfType(Sign::Plus)),
        "nondegenerate-" => space(SubspaceKind::NondegenerateOfType(Sign::Minus)),
        "nonsingular" => Ok(ActionSpec::Subspaces { k: 1, kind: SubspaceKind::Nonsingular }),
        "flag" => Ok(ActionSpec::Flags { k: need(k)? }),
        "antiflag" => Ok(ActionSpec::Antiflags { k: need(k)? }),
        "forms" => Ok(ActionSpec::QuadraticForms { sign: None }),
        "forms+" => Ok(ActionSpec::QuadraticForms { sign: Some(Sign::Plus) }),
        "forms-" => Ok(ActionSpec::QuadraticForms { sign: Some(Sign::Minus) }),
        _ => Err(bad()),
    }
}

fn family_name(s: &str) -> Result<String, String> {
    parse_family(s).map(|_| s.to_string())
}

fn sign_name(s: &str) -> Result<String, String> {
    parse_sign(s).map(|_| s.to_string())
}

fn coset_name(s: &str) -> Result<String, String> {
    parse_coset(s).map(|_| s.to_string())
}

fn action_name(s: &str) -> Result<String, String> {
    parse_action(s).map(|_| s.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_coset("label:2"), Ok(Coset::Label(2)));
        assert_eq!(parse_coset("1"), Ok(Coset::Label(1)));
        assert!(parse_coset("x").is_err());
        assert_eq!(parse_action("antiflag:1"), Ok(ActionSpec::Antiflags { k: 1 }));
        assert_eq!(
            parse_action("nondegenerate-:2"),
            Ok(ActionSpec::Subspaces { k: 2, kind: SubspaceKind::NondegenerateOfType(Sign::Minus) })
        );
        assert!(parse_action("space").is_err());
        assert_eq!(parse_family("o+"), Ok(GroupFamily::O(Sign::Plus)));
    }
}
