use bcm_core::logic::ltlx::{
    compat_x, evict_x, parse_kripke_models, parse_xformula, rcp_x, universal_model, ModelInput, XFormula,
};
use bcm_core::logic::prop::Signature;
use bcm_core::logic::qint::{compat_instances, evict_q, parse_interval, parse_target, receive_q, QChange, RatInterval};
use bcm_core::{ChangeKind, Error, Incompatibility, SelectionPolicy};
use serde_json::json;

use crate::args::{Cli, Command, OnIncompatible};
use crate::error::{CliError, CliResult};
use crate::report::{yes_no, Out};
use crate::spec::{load_base, read_file};

fn unsupported(cli: &Cli, logic: &str) -> CliError {
    CliError::Usage(
        format!(
            "`{:?}` needs a finite catalog and is not available for {logic}",
            cli.command
        )
        .to_lowercase(),
    )
}

fn print_base(out: &mut Out, lines: &[String]) {
    out.text("result base:");
    if lines.is_empty() {
        out.text("(empty base)");
    }
    for l in lines {
        out.text(l);
    }
}

fn kept(out: &mut Out, logic: &str, inc: &Incompatibility, base: Vec<String>) {
    out.text(format!("{}: incompatible, base kept", inc.kind));
    out.text(format!("reason: {}", inc.explanation));
    out.text(format!("target: {}", inc.target));
    print_base(out, &base);
    out.json(json!({
        "type": "change",
        "logic": logic,
        "kind": inc.kind,
        "kept": true,
        "reason": inc.explanation,
        "target": inc.target,
        "result_base": base,
    }));
}

pub fn run_ltlx(cli: &Cli, sig: &Signature, out: &mut Out) -> CliResult<()> {
    let render = |fs: &[XFormula]| fs.iter().map(|f| f.render(sig)).collect::<Vec<_>>();
    match cli.command {
        Command::Compat => {
            let (ev, rc) = compat_x(sig);
            let witness = universal_model(sig).render(sig);
            out.text(format!(
                "eviction: {} (universal model witness: {witness}), reception: {} (rcp_x construction)",
                yes_no(ev),
                yes_no(rc)
            ));
            out.json(json!({
                "type": "compat",
                "logic": "ltlx",
                "eviction": ev,
                "eviction_reason": format!("universal model witness: {witness}"),
                "reception": rc,
                "reception_reason": "rcp_x construction",
            }));
            Ok(())
        }
        Command::Evict | Command::Receive => {
            let base = load_base(cli.base.as_deref(), &cli.formulas, |t| parse_xformula(t, sig))?;
            let input = ltl_input(cli, sig)?;
            if cli.command == Command::Receive {
                let result = render(&rcp_x(&base, &input));
                out.text("reception");
                out.text(format!("input: {}", describe_input(&input, sig)));
                print_base(out, &result);
                out.json(json!({
                    "type": "change",
                    "logic": "ltlx",
                    "kind": ChangeKind::Reception,
                    "kept": false,
                    "input": describe_input(&input, sig),
                    "result_base": result,
                }));
                return Ok(());
            }
            match evict_x(sig, &base, &input) {
                Ok(ev) => {
                    let added = render(&ev.added);
                    let result = render(&ev.result);
                    out.text("eviction");
                    out.text(format!("input: {}", describe_input(&input, sig)));
                    out.text(format!(
                        "added: {}",
                        if added.is_empty() {
                            "(none)".into()
                        } else {
                            added.join(", ")
                        }
                    ));
                    print_base(out, &result);
                    out.json(json!({
                        "type": "change",
                        "logic": "ltlx",
                        "kind": ChangeKind::Eviction,
                        "kept": false,
                        "input": describe_input(&input, sig),
                        "added": added,
                        "result_base": result,
                    }));
                    Ok(())
                }
                Err(Error::Incompatible(inc)) if cli.on_incompatible == OnIncompatible::Keep => {
                    kept(out, "ltlx", &inc, render(&base));
                    Ok(())
                }
                Err(e) => Err(e.into()),
            }
        }
        _ => Err(unsupported(cli, "ltlx")),
    }
}

fn ltl_input(cli: &Cli, sig: &Signature) -> CliResult<ModelInput> {
    if let Some(path) = &cli.models_file {
        let text = read_file(path)?;
        let models = parse_kripke_models(&text, sig).map_err(|e| CliError::parse_in(&path.display().to_string(), e))?;
        return Ok(ModelInput::explicit(models));
    }
    let Some(spec) = cli.models.as_deref() else {
        return Err(CliError::Usage(
            "--models-file or --models \"mod-of: ...\" is required".into(),
        ));
    };
    let Some(list) = spec.trim().strip_prefix("mod-of:") else {
        return Err(CliError::Usage("ltlx --models takes `mod-of: <formula>, ...`".into()));
    };
    let formulas = list
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_xformula(p, sig).map_err(|e| CliError::parse_in("--models", e)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ModelInput::ModOf(formulas))
}

fn describe_input(input: &ModelInput, sig: &Signature) -> String {
    match input {
        ModelInput::Explicit(ms) => format!("{} listed model(s)", ms.len()),
        ModelInput::ModOf(fs) => format!(
            "Mod({{{}}})",
            fs.iter().map(|f| f.render(sig)).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn q_policy(cli: &Cli) -> CliResult<SelectionPolicy> {
    match cli.select.as_str() {
        "lexmin" => Ok(SelectionPolicy::LexMin),
        "lexmax" => Ok(SelectionPolicy::LexMax),
        other => Err(CliError::Usage(format!(
            "qint supports lexmin and lexmax, not `{other}`"
        ))),
    }
}

fn q_lines(base: &[RatInterval]) -> Vec<String> {
    base.iter().map(ToString::to_string).collect()
}

pub fn run_qint(cli: &Cli, out: &mut Out) -> CliResult<()> {
    match cli.command {
        Command::Compat => {
            let policy = SelectionPolicy::default();
            let mut verdicts = Vec::new();
            for (kind, base, input) in compat_instances() {
                let r = match kind {
                    ChangeKind::Eviction => evict_q(&base, &input, &policy),
                    ChangeKind::Reception => receive_q(&base, &input, &policy),
                };
                let reason = match &r {
                    Ok(c) => format!("base {} input {} gives {}", q_lines(&base).join(" "), input, c.chosen),
                    Err(Error::Incompatible(inc)) => format!(
                        "base {}, input {}: {}",
                        q_lines(&base).join(" "),
                        input,
                        inc.witness.as_deref().unwrap_or("no witness")
                    ),
                    Err(e) => return Err(e.clone().into()),
                };
                verdicts.push((r.is_ok(), reason));
            }
            out.text(format!(
                "eviction: {} ({}), reception: {} ({})",
                yes_no(verdicts[0].0),
                verdicts[0].1,
                yes_no(verdicts[1].0),
                verdicts[1].1
            ));
            out.json(json!({
                "type": "compat",
                "logic": "qint",
                "eviction": verdicts[0].0,
                "eviction_reason": verdicts[0].1,
                "reception": verdicts[1].0,
                "reception_reason": verdicts[1].1,
            }));
            Ok(())
        }
        Command::Evict | Command::Receive => {
            let base = load_base(cli.base.as_deref(), &cli.formulas, parse_interval)?;
            let text = cli
                .models
                .as_deref()
                .ok_or_else(|| CliError::Usage("--models is required".into()))?;
            let input = parse_target(text).map_err(|e| CliError::parse_in("--models", e))?;
            let policy = q_policy(cli)?;
            let r = if cli.command == Command::Evict {
                evict_q(&base, &input, &policy)
            } else {
                receive_q(&base, &input, &policy)
            };
            match r {
                Ok(c) => {
                    q_change(out, &c, &input);
                    Ok(())
                }
                Err(Error::Incompatible(inc)) if cli.on_incompatible == OnIncompatible::Keep => {
                    kept(out, "qint", &inc, q_lines(&base));
                    Ok(())
                }
                Err(e) => Err(e.into()),
            }
        }
        _ => Err(unsupported(cli, "qint")),
    }
}

fn q_change(out: &mut Out, c: &QChange, input: &bcm_core::logic::qint::IntervalTarget) {
    let result = q_lines(&c.result_base);
    out.text(c.kind.to_string());
    out.text(format!("input: {input}"));
    out.text(format!("target: {}", c.target));
    out.text(format!("candidates: {}", c.candidates.len()));
    for cand in &c.candidates {
        out.text(format!("  {cand}"));
    }
    out.text(format!("chosen: {}", c.chosen));
    print_base(out, &result);
    out.json(json!({
        "type": "change",
        "logic": "qint",
        "kind": c.kind,
        "kept": false,
        "input": input.to_string(),
        "target": c.target.to_string(),
        "candidates": c.candidates.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "chosen": c.chosen.to_string(),
        "result_base": result,
    }));
}
