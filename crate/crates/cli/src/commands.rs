use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::json;
use stablemat::format::InstanceFile;
use stablemat::generate::{marriage_ties, random_explicit, random_partition, Labels, MarriageParams, RandomParams};
use stablemat::solver::{explain, NoReason};
use stablemat::stability::{blocking_reports, brute_force_stable_sets, check_stable, BlockReport, Instability};
use stablemat::{solve as run_solver, Instance, Side, Verdict};

use crate::{GenArgs, GenKind};

const YES: u8 = 0;
const NO: u8 = 1;

fn read_instance(path: &Path) -> Result<Instance> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let inst = InstanceFile::parse(&text)?.to_instance()?;
    let violations = inst.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        bail!("invalid instance:\n  {}", list.join("\n  "));
    }
    Ok(inst)
}

fn names(inst: &Instance, set: &stablemat::ElementSet) -> serde_json::Value {
    json!(inst.ground().set_names(set))
}

pub fn solve(path: &Path, trace: bool, as_json: bool) -> Result<ExitCode> {
    let inst = read_instance(path)?;
    let outcome = run_solver(&inst)?;
    let mut out = io::stdout().lock();
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(&outcome.to_json(&inst))?)?;
    } else if trace {
        write!(out, "{}", explain(&inst, &outcome))?;
    } else {
        match &outcome.verdict {
            Verdict::Yes(set) => writeln!(out, "yes {}", names(&inst, set))?,
            Verdict::No(NoReason::RankDeficit { outer, inner, rank_d, rank_h }) => writeln!(
                out,
                "no: rank deficit at t={outer}, i={inner} (rk_D(E\\P)={rank_d} < rk_H(K)={rank_h})"
            )?,
            Verdict::No(NoReason::Insertable { element }) => writeln!(
                out,
                "no: rejected element {} can be added in M_H",
                inst.ground().name(*element)
            )?,
        }
    }
    Ok(ExitCode::from(if outcome.verdict.is_yes() { YES } else { NO }))
}

fn report_json(inst: &Instance, r: &BlockReport) -> serde_json::Value {
    let side = |s: Side| {
        json!({
            "weak": r.weak.get(s),
            "strong": r.strong.get(s),
            "witness": r.witness.get(s).map(|f| inst.ground().name(f)),
        })
    };
    json!({
        "element": inst.ground().name(r.element),
        "label": if r.in_e1 { "e1" } else { "e2" },
        "d": side(Side::D),
        "h": side(Side::H),
        "blocks": r.verdict,
    })
}

fn report_line(inst: &Instance, r: &BlockReport) -> String {
    let side = |s: Side| {
        let kind = match (r.weak.get(s), r.strong.get(s)) {
            (_, true) => "strong",
            (true, false) => "weak",
            (false, false) => "none",
        };
        match r.witness.get(s) {
            Some(f) => format!("{s}={kind} via {}", inst.ground().name(*f)),
            None => format!("{s}={kind}"),
        }
    };
    format!(
        "blocks: {} ({}) {} {}",
        inst.ground().name(r.element),
        if r.in_e1 { "E1" } else { "E2" },
        side(Side::D),
        side(Side::H)
    )
}

pub fn check(path: &Path, set: &[String], as_json: bool) -> Result<ExitCode> {
    let inst = read_instance(path)?;
    let set = inst.set(set.iter().filter(|s| !s.is_empty()))?;
    let mut out = io::stdout().lock();
    let dependent = match check_stable(&inst, &set) {
        Err(Instability::NotCommonIndependent(side)) => Some(side),
        _ => None,
    };
    if let Some(side) = dependent {
        if as_json {
            writeln!(out, "{}", json!({ "stable": false, "reason": "not common independent", "side": side.to_string() }))?;
        } else {
            writeln!(out, "not stable: not common independent (dependent in matroid_{})", side.to_string().to_lowercase())?;
        }
        return Ok(ExitCode::from(NO));
    }
    let reports = blocking_reports(&inst, &set)?;
    if as_json {
        let list: Vec<_> = reports.iter().map(|r| report_json(&inst, r)).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "stable": reports.is_empty(), "blocking": list }))?)?;
    } else if reports.is_empty() {
        writeln!(out, "stable")?;
    } else {
        writeln!(out, "not stable")?;
        for r in &reports {
            writeln!(out, "{}", report_line(&inst, r))?;
        }
    }
    Ok(ExitCode::from(if reports.is_empty() { YES } else { NO }))
}

pub fn oracle(path: &Path, max_size: usize) -> Result<ExitCode> {
    let inst = read_instance(path)?;
    let found = brute_force_stable_sets(&inst, max_size)?;
    let mut out = io::stdout().lock();
    for s in &found {
        writeln!(out, "{}", names(&inst, s))?;
    }
    Ok(ExitCode::from(if found.is_empty() { NO } else { YES }))
}

pub fn gen(args: &GenArgs) -> Result<ExitCode> {
    let labels: Labels = args.labels.into();
    let inst = match args.kind {
        GenKind::MarriageTies => marriage_ties(MarriageParams {
            men: args.men,
            women: args.women,
            tiers: args.tiers,
            density: args.density,
            labels,
            seed: args.seed,
        })?,
        GenKind::RandomPartition | GenKind::RandomExplicit => {
            let p = RandomParams { size: args.size, tiers: args.tiers, labels, seed: args.seed };
            match args.kind {
                GenKind::RandomPartition => random_partition(p)?,
                _ => random_explicit(p)?,
            }
        }
    };
    println!("{}", InstanceFile::from_instance(&inst).render());
    Ok(ExitCode::from(YES))
}

/// Oracle-call budget per run: ten times `|E|^6`.
pub fn budget(n: usize) -> u64 {
    10 * (n as u64).pow(6)
}

pub fn bench(sizes: &[usize], seeds: u64, tiers: usize, labels: Labels) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    writeln!(out, "size,seed,oracle_calls,wall_ms")?;
    let mut over = Vec::new();
    for &size in sizes {
        for seed in 0..seeds {
            let inst = random_partition(RandomParams { size, tiers, labels, seed })?;
            let start = Instant::now();
            let outcome = run_solver(&inst)?;
            let ms = start.elapsed().as_secs_f64() * 1000.0;
            writeln!(out, "{size},{seed},{},{ms:.3}", outcome.oracle_calls)?;
            if outcome.oracle_calls > budget(size) {
                over.push(format!("size {size} seed {seed}: {} calls", outcome.oracle_calls));
            }
        }
    }
    if !over.is_empty() {
        eprintln!("over the 10*|E|^6 budget: {}", over.join("; "));
        return Ok(ExitCode::from(NO));
    }
    Ok(ExitCode::from(YES))
}
