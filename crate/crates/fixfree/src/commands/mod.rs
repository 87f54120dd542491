//! One function per subcommand, each producing a [`Report`].

mod enumerate;
mod limit;
mod probe;
mod proportion;
mod verify;

use std::path::PathBuf;

use anyhow::Result;
use fixfree_core::group::{GroupSpec, GroupTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::args::{Cli, Command};
use crate::cache;
use crate::parallel::default_threads;
use crate::report::Report;

/// Settings that affect how, not what, a command computes.
#[derive(Clone, Debug)]
pub struct Context {
    pub threads: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Self {
        Context { threads: cli.threads.unwrap_or_else(default_threads), cache_dir: cache::cache_dir() }
    }

    pub(crate) fn table(&self, spec: &GroupSpec, cap: u64) -> Result<GroupTable> {
        Ok(cache::load_or_build_in(self.cache_dir.as_deref(), spec, cap)?.0)
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let ctx = Context::from_cli(cli);
    match &cli.command {
        Command::Limit(a) => limit::limit(a),
        Command::Series(a) => limit::series(a),
        Command::Enumerate(a) => enumerate::enumerate(&ctx, a),
        Command::Proportion(a) => proportion::proportion(&ctx, a),
        Command::Verify(a) => verify::verify(&ctx, a),
        Command::Probe(a) => probe::probe(&ctx, a),
        Command::Weyl(a) => probe::weyl(a),
        Command::Presets => Ok(enumerate::presets()),
    }
}

/// JSON has no 128-bit integers; large counts fall back to strings.
pub(crate) fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub(crate) fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub(crate) fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub(crate) fn approx(r: &BigRational) -> Value {
    use num_traits::ToPrimitive;
    float(r.to_f64().unwrap_or(f64::NAN))
}

pub(crate) fn usage(msg: impl Into<String>) -> anyhow::Error {
    fixfree_core::Error::Argument(msg.into()).into()
}
