mod args;
mod error;
mod finite;
mod report;
mod spec;
mod symbolic;

use std::io::Write;
use std::process::ExitCode;

use bcm_core::logic::goedel::GoedelSystem;
use bcm_core::logic::horn::HornSystem;
use bcm_core::logic::prop::{Fragment, PropSystem, Signature};
use bcm_core::logic::threeval::ThreeValSystem;
use clap::Parser;
use num_rational::Rational64;

use args::{Cli, Logic};
use error::{CliError, CliResult};
use report::Out;

fn parse_theta(text: &str) -> CliResult<Rational64> {
    let bad = || CliError::Usage(format!("--theta must be a fraction or decimal in (0,1], got `{text}`"));
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(n, d));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let int: i64 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let scale = 10i64.pow(frac.len() as u32);
    let frac: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    Ok(Rational64::new(int * scale + frac, scale))
}

fn run(cli: &Cli) -> CliResult<String> {
    if cli.theta.is_some() && cli.logic != Logic::Goedel {
        return Err(CliError::Usage("--theta applies to goedel only".into()));
    }
    if cli.excluded_middle && cli.logic != Logic::Goedel {
        return Err(CliError::Usage("--excluded-middle applies to goedel only".into()));
    }
    if cli.models_file.is_some() && cli.logic != Logic::Ltlx {
        return Err(CliError::Usage("--models-file applies to ltlx only".into()));
    }
    let mut out = Out::new(cli.format());
    if cli.logic == Logic::Qint {
        symbolic::run_qint(cli, &mut out)?;
        return Ok(out.finish());
    }
    let sig = Signature::parse(&cli.atoms).map_err(|e| CliError::Usage(format!("--atoms: {e}")))?;
    match cli.logic {
        Logic::Prop => finite::run(PropSystem::full(sig), cli, &mut out)?,
        Logic::PropT => finite::run(PropSystem::new(sig, Fragment::AtomsOnly), cli, &mut out)?,
        Logic::PropP => finite::run(PropSystem::new(sig, Fragment::AtomsAndFalsum), cli, &mut out)?,
        Logic::Horn => finite::run(HornSystem::new(sig), cli, &mut out)?,
        Logic::K3 => finite::run(ThreeValSystem::kleene(sig), cli, &mut out)?,
        Logic::P3 => finite::run(ThreeValSystem::priest(sig), cli, &mut out)?,
        Logic::Goedel => {
            let theta = parse_theta(cli.theta.as_deref().unwrap_or("1/2"))?;
            let sys = GoedelSystem::new(sig, theta, cli.excluded_middle)?;
            finite::run(sys, cli, &mut out)?
        }
        Logic::Ltlx => symbolic::run_ltlx(cli, &sig, &mut out)?,
        Logic::Qint => unreachable!("handled above"),
    }
    Ok(out.finish())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    }
}
