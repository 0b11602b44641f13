use std::path::Path;

use bcm_core::lattice::{lattice_export, Highlight};
use bcm_core::poset::{all_pairs, compat_finite, rmbp_check, uniqueness_audit};
use bcm_core::postulates::Counterexample;
use bcm_core::{ChangeReport, Error, Exec, FiniteLogic, ModelSet, PostulateReport, SatSystem};
use serde_json::json;

use crate::args::{Cli, Command, OnIncompatible};
use crate::error::{CliError, CliResult};
use crate::report::{yes_no, Out};
use crate::spec::{load_base, parse_models, parse_policy};

pub fn run<S: SatSystem>(system: S, cli: &Cli, out: &mut Out) -> CliResult<()> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let logic = FiniteLogic::with_exec(system, exec)?;
    match cli.command {
        Command::Evict | Command::Receive => change(&logic, cli, out),
        Command::Compat => compat(&logic, out),
        Command::Postulates => postulates(&logic, cli, out),
        Command::Lattice => lattice(&logic, cli, out),
        Command::Catalog => catalog(&logic, out),
        Command::Audit => audit(&logic, exec, out),
        Command::Probe => probe(&logic, cli, out),
    }
}

fn set<S: SatSystem>(logic: &FiniteLogic<S>, s: &ModelSet) -> String {
    logic.system.render_set(s)
}

fn models_arg<S: SatSystem>(logic: &FiniteLogic<S>, cli: &Cli) -> CliResult<ModelSet> {
    let text = cli
        .models
        .as_deref()
        .ok_or_else(|| CliError::Usage("--models is required".into()))?;
    parse_models(&logic.system, text).map_err(|e| CliError::parse_in("--models", e))
}

fn base_lines(lines: &[String]) -> Vec<String> {
    if lines.is_empty() {
        vec!["(empty base)".into()]
    } else {
        lines.to_vec()
    }
}

fn change<S: SatSystem>(logic: &FiniteLogic<S>, cli: &Cli, out: &mut Out) -> CliResult<()> {
    let sys = &logic.system;
    let base = load_base(cli.base.as_deref(), &cli.formulas, |t| sys.parse_formula(t))?;
    let input = models_arg(logic, cli)?;
    let policy = parse_policy(sys, &cli.select)?;
    let result = if cli.command == Command::Evict {
        logic.evict(&base, &input, &policy)
    } else {
        logic.receive(&base, &input, &policy)
    };
    let report: ChangeReport<S::Formula> = match result {
        Ok(r) => r,
        Err(Error::Incompatible(inc)) if cli.on_incompatible == OnIncompatible::Keep => {
            let kept = sys.render_base(&base);
            out.text(format!("{}: incompatible, base kept", inc.kind));
            out.text(format!("reason: {}", inc.explanation));
            out.text(format!("target: {}", inc.target));
            out.text("result base:");
            for l in base_lines(&kept) {
                out.text(l);
            }
            out.json(json!({
                "type": "change",
                "logic": sys.name(),
                "kind": inc.kind,
                "kept": true,
                "reason": inc.explanation,
                "target": inc.target,
                "result_base": kept,
            }));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let rendered = sys.render_base(&report.result_base);
    out.text(report.kind.to_string());
    out.text(format!("base models: {}", set(logic, &logic.models_of(&base))));
    out.text(format!("input: {}", set(logic, &input)));
    out.text(format!("target: {}", set(logic, &report.target)));
    out.text(format!("candidates: {}", report.candidates.len()));
    for c in &report.candidates {
        out.text(format!("  {}", set(logic, c)));
    }
    out.text(format!("chosen: {}", set(logic, &report.chosen)));
    out.text("result base:");
    for l in base_lines(&rendered) {
        out.text(l);
    }
    out.json(json!({
        "type": "change",
        "logic": sys.name(),
        "kind": report.kind,
        "kept": false,
        "base_models": set(logic, &logic.models_of(&base)),
        "input": set(logic, &input),
        "target": set(logic, &report.target),
        "candidates": report.candidates.iter().map(|c| set(logic, c)).collect::<Vec<_>>(),
        "chosen": set(logic, &report.chosen),
        "result_base": rendered,
    }));
    Ok(())
}

fn compat<S: SatSystem>(logic: &FiniteLogic<S>, out: &mut Out) -> CliResult<()> {
    let c = compat_finite(&logic.catalog);
    let n = logic.universe_size();
    let ev_reason = if c.eviction {
        let w = logic.catalog.witness(&ModelSet::empty(n)).expect("representable");
        format!("empty set representable by {}", logic.system.render_base(w).join("; "))
    } else {
        let common = logic.catalog.sets().fold(ModelSet::full(n), |a, s| a.intersection(s));
        let first = common.iter().next();
        match first {
            Some(m) => {
                let label = logic.system.model_label(m);
                let kind = if label.chars().all(|ch| ch == 'u') {
                    "all-u model"
                } else {
                    "model"
                };
                format!("{kind} {label} in every representable set")
            }
            None => "empty set not representable".into(),
        }
    };
    let rc_reason = if c.reception {
        "universe representable".to_string()
    } else {
        "universe not representable".to_string()
    };
    out.text(format!(
        "eviction: {} ({ev_reason}), reception: {} ({rc_reason})",
        yes_no(c.eviction),
        yes_no(c.reception)
    ));
    out.json(json!({
        "type": "compat",
        "logic": logic.system.name(),
        "eviction": c.eviction,
        "eviction_reason": ev_reason,
        "reception": c.reception,
        "reception_reason": rc_reason,
    }));
    Ok(())
}

fn counterexample_json<S: SatSystem>(logic: &FiniteLogic<S>, c: &Counterexample) -> serde_json::Value {
    json!({
        "base": c.base,
        "input": set(logic, &c.input),
        "base_models": set(logic, &c.base_models),
        "result_models": set(logic, &c.result_models),
        "witness": c.witness.map(|w| set(logic, &w)),
        "other_base": c.other_base,
        "other_input": c.other_input.map(|w| set(logic, &w)),
    })
}

fn render_report<S: SatSystem>(logic: &FiniteLogic<S>, r: &PostulateReport, out: &mut Out) {
    out.text(format!(
        "{} ({} cases, {} without a candidate)",
        r.kind, r.cases, r.undefined
    ));
    for o in &r.outcomes {
        if o.passed() {
            out.text(format!("  {}: pass ({} checked)", o.postulate, o.checked));
        } else {
            out.text(format!(
                "  {}: FAIL ({} of {} checked)",
                o.postulate, o.failures, o.checked
            ));
        }
        if let Some(c) = &o.counterexample {
            let base = if c.base.is_empty() {
                "(empty base)".to_string()
            } else {
                c.base.join("; ")
            };
            out.text(format!(
                "    counterexample: base {base}, input {}, result {}",
                set(logic, &c.input),
                set(logic, &c.result_models)
            ));
        }
    }
    out.json(json!({
        "type": "postulates",
        "logic": logic.system.name(),
        "kind": r.kind,
        "cases": r.cases,
        "undefined": r.undefined,
        "vacuity_redundancy_violated": r.vacuity_redundancy_violated(),
        "outcomes": r.outcomes.iter().map(|o| json!({
            "postulate": o.postulate,
            "checked": o.checked,
            "failures": o.failures,
            "counterexample": o.counterexample.as_ref().map(|c| counterexample_json(logic, c)),
        })).collect::<Vec<_>>(),
    }));
}

fn postulates<S: SatSystem>(logic: &FiniteLogic<S>, cli: &Cli, out: &mut Out) -> CliResult<()> {
    let policy = parse_policy(&logic.system, &cli.select)?;
    let cases = logic.exhaustive_cases()?;
    let evict = logic.evict_op(&policy);
    let receive = logic.receive_op(&policy);
    let reports = [
        logic.check_eviction_postulates(&evict, &cases)?,
        logic.check_reception_postulates(&receive, &cases)?,
    ];
    for r in &reports {
        render_report(logic, r, out);
    }
    let passed: usize = reports.iter().map(PostulateReport::passed_count).sum();
    let total: usize = reports.iter().map(|r| r.outcomes.len()).sum();
    out.text(format!("{passed}/{total} postulates pass"));
    Ok(())
}

fn lattice<S: SatSystem>(logic: &FiniteLogic<S>, cli: &Cli, out: &mut Out) -> CliResult<()> {
    let highlight = match cli.highlight.as_str() {
        "all" => Highlight::AllNonRepresentable,
        "none" => Highlight::None,
        spec => Highlight::Target(parse_models(&logic.system, spec).map_err(|e| CliError::parse_in("--highlight", e))?),
    };
    let graph = lattice_export(&logic.system, &logic.catalog, &highlight, cli.bound)?;
    let dot = graph.to_dot(&logic.system.name());
    let summary = format!(
        "nodes: {}, representable: {}, edges: {}, thick: {}",
        graph.nodes.len(),
        graph.representable_count(),
        graph.edges.len(),
        graph.thick.len()
    );
    match &cli.dot {
        Some(path) => {
            write_file(path, &dot)?;
            out.text(format!("{summary}; written to {}", path.display()));
        }
        None => {
            if !out.is_json() {
                out.text(dot.trim_end());
            }
        }
    }
    out.json(json!({
        "type": "lattice",
        "logic": logic.system.name(),
        "nodes": graph.nodes.len(),
        "representable": graph.representable_count(),
        "edges": graph.edges.len(),
        "thick": graph.thick.iter().map(|(a, b)| [set(logic, a), set(logic, b)]).collect::<Vec<_>>(),
        "dot": if cli.dot.is_some() { None } else { Some(dot) },
    }));
    Ok(())
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn catalog<S: SatSystem>(logic: &FiniteLogic<S>, out: &mut Out) -> CliResult<()> {
    out.text(format!(
        "{} representable sets over {} models",
        logic.catalog.len(),
        logic.universe_size()
    ));
    for (s, base) in logic.catalog.entries() {
        let rendered = logic.system.render_base(base);
        out.text(format!("{}  <-  {}", set(logic, s), base_lines(&rendered).join("; ")));
        out.json(json!({
            "type": "catalog-entry",
            "logic": logic.system.name(),
            "set": set(logic, s),
            "base": rendered,
        }));
    }
    Ok(())
}

fn audit<S: SatSystem>(logic: &FiniteLogic<S>, exec: Exec, out: &mut Out) -> CliResult<()> {
    let a = uniqueness_audit(&logic.catalog, exec)?;
    let bases = logic.system.sample_bases(&logic.catalog);
    let rmbp = rmbp_check(&logic.system, &all_pairs(&bases));
    out.text("target  frsubs  frsups");
    for row in &a.rows {
        out.text(format!("{}  {}  {}", set(logic, &row.target), row.frsubs, row.frsups));
        out.json(json!({
            "type": "audit-row",
            "target": set(logic, &row.target),
            "frsubs": row.frsubs,
            "frsups": row.frsups,
        }));
    }
    let multiples: Vec<String> = a.frsubs_multiples.iter().map(|s| set(logic, s)).collect();
    let violations: Vec<String> = a.frsups_violations.iter().map(|s| set(logic, s)).collect();
    out.text(format!("frsups unique: {}", yes_no(a.frsups_unique())));
    if !violations.is_empty() {
        out.text(format!("frsups violations: {}", violations.join(" ")));
    }
    out.text(format!(
        "frsubs multiples ({}): {}",
        multiples.len(),
        multiples.join(" ")
    ));
    match &rmbp.witness {
        None => out.text(format!("rmbp: pass ({} pairs)", rmbp.pairs)),
        Some(w) => out.text(format!(
            "rmbp: FAIL at model {}: [{}] and [{}] jointly {}, union {}",
            w.model,
            w.first.join("; "),
            w.second.join("; "),
            w.satisfies_both,
            w.satisfies_union
        )),
    }
    out.json(json!({
        "type": "audit",
        "logic": logic.system.name(),
        "frsups_unique": a.frsups_unique(),
        "frsups_violations": violations,
        "frsubs_multiples": multiples,
        "rmbp_pairs": rmbp.pairs,
        "rmbp_passed": rmbp.passed(),
        "rmbp_witness": rmbp.witness,
    }));
    Ok(())
}

fn probe<S: SatSystem>(logic: &FiniteLogic<S>, cli: &Cli, out: &mut Out) -> CliResult<()> {
    let policy = parse_policy(&logic.system, &cli.select)?;
    let w = logic.monotony_probe(&policy)?;
    match &w {
        None => out.text("monotony: no counterexample"),
        Some(w) => {
            out.text("monotony: counterexample");
            out.text(format!(
                "  base {} with models inside those of {}",
                w.base.join("; "),
                w.larger_base.join("; ")
            ));
            out.text(format!(
                "  input {}: results {} and {}",
                set(logic, &w.input),
                set(logic, &w.result),
                set(logic, &w.larger_result)
            ));
        }
    }
    out.json(json!({
        "type": "probe",
        "logic": logic.system.name(),
        "counterexample": w.as_ref().map(|w| json!({
            "base": w.base,
            "larger_base": w.larger_base,
            "input": set(logic, &w.input),
            "result": set(logic, &w.result),
            "larger_result": set(logic, &w.larger_result),
        })),
    }));
    Ok(())
}
