use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use liecore::cache::Cache;
use liecore::liealg::LieAlgebra;
use liecore::nullcone::{self, Characteristic, NullCone};
use liecore::orbits::{self, OrbitTable};
use liecore::rootsys::SimpleType;
use liecore::sheets::{self, SheetEngine};
use liecore::{Error, Result};
use serde_json::{json, Value};

use crate::{Campaign, Format, RunConfig};

pub const REPORT_SCHEMA: &str = "liecore-report/1";

struct Report {
    result: Value,
    text: String,
    dot: Option<String>,
}

fn timed<T>(phase: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f();
    log::info!("{phase}: {:.2?}", start.elapsed());
    out
}

fn require_slow(config: &RunConfig, t: SimpleType, campaign: &Campaign) -> Result<()> {
    let slow = t.letter == 'E' && t.rank == 8;
    if slow && !config.slow {
        return Err(Error::TooLarge(format!("{} for {t} is a slow campaign; pass --slow", campaign.name())));
    }
    Ok(())
}

pub fn run(config: &RunConfig, campaign: &Campaign) -> Result<()> {
    let t = config.simple_type()?;
    require_slow(config, t, campaign)?;
    let cache = config.cache()?;
    let g = timed("algebra", || LieAlgebra::new(t))?;
    let report = match campaign {
        Campaign::Orbits => orbits_report(&g, config, cache.as_ref())?,
        Campaign::Reachable => reachable_report(&g, config, cache.as_ref())?,
        Campaign::Sheets => sheets_report(t, config, cache)?,
        Campaign::Props => props_report(t, config, cache)?,
        _ => nullcone_report(g, config, campaign, cache.as_ref())?,
    };
    let body = match config.format {
        Format::Json => {
            let mut doc = json!({
                "schema": REPORT_SCHEMA,
                "campaign": campaign.name(),
                "type": t.to_string(),
                "seed": config.seed,
            });
            if let Some(hw) = &config.hw {
                doc["highest_weight"] = json!(hw);
            }
            doc["result"] = report.result;
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Text => report.text,
        Format::Dot => report
            .dot
            .clone()
            .ok_or_else(|| Error::Hypothesis(format!("{} has no DOT output", campaign.name())))?,
    };
    if let (Campaign::Hasse { dot: Some(Some(path)) }, Some(dot)) = (campaign, &report.dot) {
        fs::write(path, dot)?;
    }
    let to_stdout_dot = matches!(campaign, Campaign::Hasse { dot: Some(None) });
    match &config.out {
        Some(path) => fs::write(path, body)?,
        None if to_stdout_dot && config.format != Format::Dot => print!("{}", report.dot.unwrap_or_default()),
        None => print!("{body}"),
    }
    Ok(())
}

fn orbit_table(g: &LieAlgebra, config: &RunConfig, cache: Option<&Cache>) -> Result<OrbitTable> {
    timed("classification", || orbits::classify_cached(g, config.seed, cache))
}

fn orbits_report(g: &LieAlgebra, config: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let table = orbit_table(g, config, cache)?;
    let mut text = format!("{} nonzero nilpotent orbits\ndiagram\tdim\tdim g_e\n", table.len());
    for o in &table.orbits {
        let _ = writeln!(text, "{}\t{}\t{}", o.diagram, o.orbit_dim, o.dim_centralizer);
    }
    Ok(Report {
        result: json!({ "count": table.len(), "orbits": table.orbits, "collisions": table.collisions }),
        text,
        dot: None,
    })
}

fn reachable_report(g: &LieAlgebra, config: &RunConfig, cache: Option<&Cache>) -> Result<Report> {
    let table = orbit_table(g, config, cache)?;
    let rows = timed("reachability", || {
        table.orbits.iter().map(|o| orbits::reachability_report(g, o)).collect::<Result<Vec<_>>>()
    })?;
    let reachable = rows.iter().filter(|r| r.reachable).count();
    let mismatches: Vec<String> =
        rows.iter().filter(|r| r.reachable != r.panyushev).map(|r| r.diagram.to_string()).collect();
    let mut text = format!("{reachable} reachable orbits, {} Panyushev mismatches\n", mismatches.len());
    text.push_str("diagram\tdim g_e\tdim [g_e,g_e]\treachable\tstrongly\talmost\tpanyushev\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.diagram, r.dim_centralizer, r.dim_derived, r.reachable, r.strongly_reachable, r.almost_reachable, r.panyushev
        );
    }
    Ok(Report {
        result: json!({ "reachable": reachable, "panyushev_mismatches": mismatches, "orbits": rows }),
        text,
        dot: None,
    })
}

fn sheet_engine(config: &RunConfig, cache: Option<Cache>) -> SheetEngine {
    SheetEngine::with_cache(config.seed, cache)
}

fn sheets_report(t: SimpleType, config: &RunConfig, cache: Option<Cache>) -> Result<Report> {
    let engine = sheet_engine(config, cache);
    let all = timed("sheets", || engine.sheets(t))?;
    let proper = all.iter().filter(|s| s.proper).count();
    let mut text = format!("{proper} sheets with proper Levi, {} in total\nlevi\tsheet diagram\trank\tinduced\n", all.len());
    for s in &all {
        let _ = writeln!(text, "{}\t{:?}\t{}\t{}", s.levi_type, s.sheet_diagram, s.rank, s.induced);
    }
    Ok(Report {
        result: json!({ "proper": proper, "total": all.len(), "sheets": all }),
        text,
        dot: None,
    })
}

fn props_report(t: SimpleType, config: &RunConfig, cache: Option<Cache>) -> Result<Report> {
    let engine = sheet_engine(config, cache);
    let all = timed("sheets", || engine.sheets(t))?;
    let tables = engine.table(t)?;
    let (g, table) = (&tables.0, &tables.1);
    let exceptions = timed("unique-sheet ranks", || sheets::proposition_41_check(g, table, &all))?;
    let violations = timed("multi-sheet ranks", || sheets::proposition_42_violations(g, table, &all))?;
    let mut text = String::from("orbits in a unique sheet with rank != dim c_e\ndiagram\trank\tdim c_e\n");
    for e in &exceptions {
        let _ = writeln!(text, "{}\t{}\t{}", e.diagram, e.rank, e.dim_c_e);
    }
    let _ = writeln!(text, "orbits in several sheets with max rank >= dim c_e: {}", violations.len());
    for d in &violations {
        let _ = writeln!(text, "{d}");
    }
    Ok(Report {
        result: json!({ "unique_sheet_exceptions": exceptions, "multi_sheet_violations": violations }),
        text,
        dot: None,
    })
}

fn strata(nc: &NullCone, config: &RunConfig, cache: Option<&Cache>) -> Result<Vec<Characteristic>> {
    let hw: Vec<String> = nc.module.highest_weight.iter().map(i64::to_string).collect();
    let key = format!("strata-{}-{}-{}", nc.g.roots.simple_type, hw.join("."), config.seed);
    timed("characteristics", || match cache {
        Some(c) => c.get_or_compute(&key, || nc.characteristics_of_strata(config.seed)),
        None => nc.characteristics_of_strata(config.seed),
    })
}

fn strata_text(chars: &[Characteristic]) -> String {
    let mut text = format!("{} strata\nnr\tdim\t|h|^2\th\n", chars.len());
    for (i, c) in chars.iter().enumerate() {
        let _ = writeln!(text, "{}\t{}\t{}\t{}", i + 1, c.stratum_dim, c.norm_sq, nullcone::show(&c.h));
    }
    text
}

fn nullcone_report(g: LieAlgebra, config: &RunConfig, campaign: &Campaign, cache: Option<&Cache>) -> Result<Report> {
    let hw = config
        .hw
        .clone()
        .ok_or_else(|| Error::Hypothesis(format!("{} needs --hw", campaign.name())))?;
    let nc = timed("module", || NullCone::new(g, &hw, config.max_dim))?;
    let chars = strata(&nc, config, cache)?;
    match campaign {
        Campaign::Strata => Ok(Report {
            text: strata_text(&chars),
            result: json!({ "count": chars.len(), "strata": chars }),
            dot: None,
        }),
        Campaign::Closure { pair } => {
            let pick = |i: usize| {
                chars
                    .get(i.wrapping_sub(1))
                    .ok_or_else(|| Error::Hypothesis(format!("no stratum {i}; there are {}", chars.len())))
            };
            let (a, b) = (pick(pair[0])?, pick(pair[1])?);
            let cert = timed("closure", || nc.closure_includes(&a.h, &b.h, config.seed))?;
            let verified = timed("replay", || Ok(nc.verify_inclusion(&a.h, &b.h, &cert)))?;
            if !verified {
                return Err(Error::Inconsistent("certificate failed to replay".into()));
            }
            let included = cert.is_included();
            Ok(Report {
                text: format!(
                    "stratum {} (dim {}) {} in the closure of stratum {} (dim {}); certificate replayed\n",
                    pair[0],
                    a.stratum_dim,
                    if included { "lies" } else { "does not lie" },
                    pair[1],
                    b.stratum_dim
                ),
                result: json!({
                    "small": pair[0], "big": pair[1], "included": included,
                    "verified": verified, "certificate": cert,
                }),
                dot: None,
            })
        }
        Campaign::Hasse { .. } => {
            let hd = timed("closure order", || nc.hasse_diagram(chars, config.seed))?;
            let one_based = |v: &[(usize, usize)]| v.iter().map(|(a, b)| [a + 1, b + 1]).collect::<Vec<_>>();
            let mut text = strata_text(&hd.nodes);
            text.push_str("covering relations\n");
            for (a, b) in &hd.edges {
                let _ = writeln!(text, "S{} < S{}", a + 1, b + 1);
            }
            Ok(Report {
                result: json!({
                    "nodes": hd.nodes, "inclusions": one_based(&hd.inclusions), "edges": one_based(&hd.edges),
                }),
                text,
                dot: Some(hd.to_dot()),
            })
        }
        Campaign::Stabilizers => {
            let rows = timed("stabilizers", || nc.stabilizer_table(&chars))?;
            let mut text = String::from("nr\tdim\tstabilizer\n");
            let mut json_rows = Vec::new();
            for (i, r) in rows.iter().enumerate() {
                let _ = writeln!(text, "{}\t{}\t{}", i + 1, r.stratum.stratum_dim, r.stabilizer);
                json_rows.push(json!({
                    "nr": i + 1,
                    "stratum_dim": r.stratum.stratum_dim,
                    "h": r.stratum.h,
                    "representative": r.representative,
                    "stabilizer_dim": r.stabilizer_dim,
                    "type": r.stabilizer.to_string(),
                }));
            }
            Ok(Report { result: json!(json_rows), text, dot: None })
        }
        _ => unreachable!("handled by the caller"),
    }
}
