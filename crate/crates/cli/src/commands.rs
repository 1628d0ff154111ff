//! Command implementations. Each returns `Ok(())` or a [`CommandError`]
//! carrying the process exit code: 1 for build/verification failures,
//! 2 for unusable invocations (bad labels, out-of-range selectors,
//! malformed replacement tables).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use serde_json::json;

use pentagram_core::cache::CacheOutcome;
use pentagram_core::classifier::{
    signature, ClassifiedContexts, GoldenTable, PairIndex, TypeSignature,
};
use pentagram_core::enumerator::{validate_pentagram, ContextCatalog, Pentagram};
use pentagram_core::pauli::PauliObservable;
use pentagram_core::polar_space::{extend_to_fano, make_context, Context};
use pentagram_core::records::{AtlasRowRecord, FamilyCounts, ATLAS_CSV_HEADER};
use pentagram_core::{verify, with_thread_count, Pipeline};

use crate::render::{self, ContextPanel, Scene};
use crate::{Cli, ClassifyArgs, Command, Common, Format, NeighborsArgs, RenderArgs, TableArgs};

#[derive(Debug)]
pub enum CommandError {
    /// Exit code 2.
    Usage(String),
    /// Exit code 1.
    Failure(String),
}

impl CommandError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CommandError::Usage(_) => 2,
            CommandError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CommandError::Usage(msg) | CommandError::Failure(msg) => msg,
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CommandError> {
    with_thread_count(cli.common.threads, || dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<(), CommandError> {
    let common = &cli.common;
    match &cli.command {
        Command::Enumerate => cmd_enumerate(common),
        Command::Table(args) => cmd_table(common, args),
        Command::Classify(args) => cmd_classify(common, args),
        Command::Klein(args) => cmd_klein(common, args),
        Command::Neighbors(args) => cmd_neighbors(common, args),
        Command::Render(args) => cmd_render(common, args),
        Command::Verify(args) => cmd_verify(common, args),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), CommandError> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| {
            CommandError::Failure(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Loads a replacement reference table, or the embedded one. A table that
/// fails its own structural parse is a usage error; disagreement with the
/// enumeration surfaces later as a build failure.
fn load_table(path: Option<&PathBuf>) -> Result<GoldenTable, CommandError> {
    match path {
        None => Ok(GoldenTable::embedded()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| {
                CommandError::Usage(format!("cannot read {}: {e}", p.display()))
            })?;
            GoldenTable::parse_csv(&text)
                .map_err(|e| CommandError::Usage(format!("{}: {e}", p.display())))
        }
    }
}

/// Builds the full pipeline against the cache directory. Any mismatch
/// between the enumeration and the reference table comes back as a
/// one-line diff.
fn build_pipeline(common: &Common, golden: GoldenTable) -> Result<Pipeline, CommandError> {
    Pipeline::load_or_build_with_table(Some(&common.cache_dir), golden)
        .map_err(|e| CommandError::Failure(format!("atlas mismatch: {e}")))
}

fn outcome_text(outcome: Option<&CacheOutcome>) -> String {
    match outcome {
        Some(CacheOutcome::Loaded) => "loaded".to_string(),
        Some(CacheOutcome::RebuiltMissing) => "rebuilt (no cache present)".to_string(),
        Some(CacheOutcome::RebuiltInvalid(reason)) => format!("rebuilt (invalid cache: {reason})"),
        None => "unused".to_string(),
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn labels_of<const N: usize>(points: [PauliObservable; N]) -> Vec<String> {
    points.iter().map(|p| p.to_string()).collect()
}

fn sign_char(negative: bool) -> char {
    if negative {
        '-'
    } else {
        '+'
    }
}

fn cmd_enumerate(common: &Common) -> Result<(), CommandError> {
    let pipeline = build_pipeline(common, GoldenTable::embedded())?;
    let families = FamilyCounts::tally(pipeline.pentagrams());
    let outcome = outcome_text(pipeline.cache_outcome());
    let text = match common.format {
        Format::Text => format!(
            "pentagrams: {}\nby negative contexts: 5 -> {}, 3 -> {}, 1 -> {}\ncache: {outcome}\ncache dir: {}\n",
            families.total(),
            families.neg5,
            families.neg3,
            families.neg1,
            common.cache_dir.display(),
        ),
        Format::Csv => format!(
            "negative_contexts,count\n5,{}\n3,{}\n1,{}\n",
            families.neg5, families.neg3, families.neg1
        ),
        Format::Json => format!(
            "{:#}\n",
            json!({
                "total": families.total(),
                "families": { "neg5": families.neg5, "neg3": families.neg3, "neg1": families.neg1 },
                "cache": outcome,
                "cache_dir": common.cache_dir.display().to_string(),
            })
        ),
    };
    emit(common, &text)
}

fn cmd_table(common: &Common, args: &TableArgs) -> Result<(), CommandError> {
    let pipeline = build_pipeline(common, load_table(args.golden.as_ref())?)?;
    let rows: Vec<AtlasRowRecord> = pipeline
        .classification()
        .entries
        .iter()
        .map(AtlasRowRecord::from_entry)
        .collect();
    let text = match common.format {
        Format::Csv => {
            let mut out = String::from(ATLAS_CSV_HEADER);
            out.push('\n');
            for row in &rows {
                out.push_str(&row.csv_row());
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&rows)
                .expect("atlas rows serialize infallibly");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = format!(
                "{:>3} {:>3} {:>4} {:>4} {:>4} {:>3} {:>4} {:>4} {:>4} {:>4} {:>5}\n",
                "T", "C-", "O_A", "O_B", "O_C", "F-", "F+a", "F+b", "F+c", "K", "N"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>3} {:>3} {:>4} {:>4} {:>4} {:>3} {:>4} {:>4} {:>4} {:>4} {:>5}",
                    r.t, r.c_neg, r.o_a, r.o_b, r.o_c, r.f_neg, r.f_a, r.f_b, r.f_c, r.k, r.n
                );
            }
            out
        }
    };
    emit(common, &text)
}

/// Parses "A,B,C,D" into a context. Label problems are usage errors;
/// a well-formed quadruple that is not a context is a validation failure.
fn parse_context(word: &str) -> Result<Context, CommandError> {
    let labels: Vec<&str> = word.split(',').map(str::trim).collect();
    if labels.len() != 4 {
        return Err(CommandError::Usage(format!(
            "context {word:?} must list exactly four observables"
        )));
    }
    let mut points = [PauliObservable::from_str("XII").unwrap(); 4];
    for (slot, label) in points.iter_mut().zip(&labels) {
        *slot = PauliObservable::from_str(label)
            .map_err(|e| CommandError::Usage(format!("observable {label:?}: {e}")))?;
    }
    make_context(points).map_err(|e| CommandError::Failure(format!("context {word:?}: {e}")))
}

fn parse_pentagram(
    catalog: &ContextCatalog,
    words: &[String],
) -> Result<Pentagram, CommandError> {
    let mut contexts = Vec::with_capacity(5);
    for word in words {
        contexts.push(parse_context(word)?);
    }
    let contexts: [Context; 5] = contexts
        .try_into()
        .map_err(|_| CommandError::Usage("exactly five contexts are required".to_string()))?;
    validate_pentagram(catalog, &contexts).map_err(|e| CommandError::Failure(e.to_string()))
}

struct ContextReport {
    labels: Vec<String>,
    sign: char,
    class: &'static str,
    infinity: Vec<String>,
}

fn context_reports(
    pentagram: &Pentagram,
    catalog: &ContextCatalog,
    classified: &ClassifiedContexts,
) -> Vec<ContextReport> {
    pentagram
        .context_indices()
        .iter()
        .map(|&i| {
            let context = catalog.get(i as usize);
            let profile = classified.profile(i as usize);
            ContextReport {
                labels: labels_of(context.points()),
                sign: sign_char(profile.sign.is_negative()),
                class: profile.plane_class.code(),
                infinity: labels_of(profile.infinity),
            }
        })
        .collect()
}

fn cmd_classify(common: &Common, args: &ClassifyArgs) -> Result<(), CommandError> {
    let catalog = ContextCatalog::enumerate();
    let classified = ClassifiedContexts::build(&catalog);
    let golden = GoldenTable::embedded();
    let pentagram = parse_pentagram(&catalog, &args.contexts)?;
    let sig = signature(&pentagram, &classified);
    let t = golden.type_of(&sig).ok_or_else(|| {
        CommandError::Failure(format!("signature {sig} matches no reference type"))
    })?;
    let reports = context_reports(&pentagram, &catalog, &classified);
    let text = match common.format {
        Format::Text => {
            let mut out = format!("type {t}\nsignature {sig}\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "context {}: sign {}, plane class {}, infinity {}",
                    r.labels.join(","),
                    r.sign,
                    r.class,
                    r.infinity.join(",")
                );
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("T,context,sign,class,infinity\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{t},{},{},{},{}",
                    r.labels.join(" "),
                    r.sign,
                    r.class,
                    r.infinity.join(" ")
                );
            }
            out
        }
        Format::Json => format!(
            "{:#}\n",
            json!({
                "type": t,
                "signature": signature_json(&sig),
                "contexts": reports.iter().map(|r| json!({
                    "points": r.labels,
                    "sign": r.sign.to_string(),
                    "plane_class": r.class,
                    "infinity": r.infinity,
                })).collect::<Vec<_>>(),
            })
        ),
    };
    emit(common, &text)
}

fn signature_json(sig: &TypeSignature) -> serde_json::Value {
    json!([
        sig.c_neg, sig.o_a, sig.o_b, sig.o_c, sig.f_neg, sig.f_a, sig.f_b, sig.f_c
    ])
}

fn cmd_klein(common: &Common, args: &TableArgs) -> Result<(), CommandError> {
    let pipeline = build_pipeline(common, load_table(args.golden.as_ref())?)?;
    let classification = pipeline.classification();
    let total: u32 = classification.entries.iter().map(|e| e.klein).sum();
    let realized = classification.klein_realized_types();
    let missing = classification.klein_missing_types();
    let deviations: Vec<_> = classification
        .entries
        .iter()
        .filter(|e| e.klein != e.klein_reference)
        .collect();
    let text = match common.format {
        Format::Text => {
            let mut out = format!("pentagrams on the Klein quadric: {total}\n");
            let _ = writeln!(
                out,
                "realized types ({}): {}",
                realized.len(),
                join_types(&realized)
            );
            let _ = writeln!(
                out,
                "missing types ({}): {}",
                missing.len(),
                join_types(&missing)
            );
            if deviations.is_empty() {
                out.push_str("reference K column deviations: none\n");
            } else {
                let _ = writeln!(out, "reference K column deviations ({}):", deviations.len());
                for e in &deviations {
                    let _ = writeln!(
                        out,
                        "  T{} reference={} computed={}",
                        e.t, e.klein_reference, e.klein
                    );
                }
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("T,K,K_reference\n");
            for e in &classification.entries {
                let _ = writeln!(out, "{},{},{}", e.t, e.klein, e.klein_reference);
            }
            out
        }
        Format::Json => format!(
            "{:#}\n",
            json!({
                "total": total,
                "realized_types": realized,
                "missing_types": missing,
                "rows": classification.entries.iter().map(|e| json!({
                    "t": e.t,
                    "k": e.klein,
                    "k_reference": e.klein_reference,
                })).collect::<Vec<_>>(),
                "deviations": deviations.iter().map(|e| json!({
                    "t": e.t,
                    "reference": e.klein_reference,
                    "computed": e.klein,
                })).collect::<Vec<_>>(),
            })
        ),
    };
    emit(common, &text)
}

fn join_types(types: &[u8]) -> String {
    types
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_neighbors(common: &Common, args: &NeighborsArgs) -> Result<(), CommandError> {
    let pipeline = build_pipeline(common, GoldenTable::embedded())?;
    let pentagrams = pipeline.pentagrams();
    if args.index >= pentagrams.len() {
        return Err(CommandError::Usage(format!(
            "index {} out of range (the enumeration holds {} pentagrams)",
            args.index,
            pentagrams.len()
        )));
    }
    let pairs = PairIndex::build(pentagrams);
    let mut neighbors = pairs.two_edge_neighbors(args.index, pentagrams);
    neighbors.sort_unstable();
    let types = &pipeline.classification().types;
    let own_type = types[args.index];
    let text = match common.format {
        Format::Text => {
            let mut out = format!(
                "pentagram {}: type {own_type}\ntwo-edge neighbors ({}):\n",
                args.index,
                neighbors.len()
            );
            for &n in &neighbors {
                let _ = writeln!(out, "  {:>6}  type {}", n, types[n as usize]);
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("index,type\n");
            for &n in &neighbors {
                let _ = writeln!(out, "{n},{}", types[n as usize]);
            }
            out
        }
        Format::Json => format!(
            "{:#}\n",
            json!({
                "index": args.index,
                "type": own_type,
                "neighbors": neighbors.iter().map(|&n| json!({
                    "index": n,
                    "type": types[n as usize],
                })).collect::<Vec<_>>(),
            })
        ),
    };
    emit(common, &text)
}

fn scene_for(
    pentagram: &Pentagram,
    catalog: &ContextCatalog,
    t: u8,
    sig: &TypeSignature,
) -> Scene {
    let panels: Vec<ContextPanel> = pentagram
        .context_indices()
        .iter()
        .map(|&i| {
            let context = *catalog.get(i as usize);
            let plane = extend_to_fano(&context);
            ContextPanel { context, plane }
        })
        .collect();
    let panels: [ContextPanel; 5] = match panels.try_into() {
        Ok(panels) => panels,
        Err(_) => unreachable!("a pentagram has five contexts"),
    };
    Scene {
        title: format!("type {t}, signature {sig}"),
        panels,
    }
}

fn cmd_render(common: &Common, args: &RenderArgs) -> Result<(), CommandError> {
    let scene = match (&args.index, &args.contexts) {
        (Some(index), None) => {
            let pipeline = build_pipeline(common, GoldenTable::embedded())?;
            let pentagrams = pipeline.pentagrams();
            if *index >= pentagrams.len() {
                return Err(CommandError::Usage(format!(
                    "index {index} out of range (the enumeration holds {} pentagrams)",
                    pentagrams.len()
                )));
            }
            let classification = pipeline.classification();
            scene_for(
                &pentagrams[*index],
                pipeline.catalog(),
                classification.types[*index],
                &classification.signatures[*index],
            )
        }
        (None, Some(words)) => {
            let catalog = ContextCatalog::enumerate();
            let classified = ClassifiedContexts::build(&catalog);
            let golden = GoldenTable::embedded();
            let pentagram = parse_pentagram(&catalog, words)?;
            let sig = signature(&pentagram, &classified);
            let t = golden.type_of(&sig).ok_or_else(|| {
                CommandError::Failure(format!("signature {sig} matches no reference type"))
            })?;
            scene_for(&pentagram, &catalog, t, &sig)
        }
        _ => {
            return Err(CommandError::Usage(
                "pass either --index N or five explicit contexts".to_string(),
            ))
        }
    };
    let text = if args.svg {
        render::svg(&scene)
    } else {
        render::dot(&scene)
    };
    emit(common, &text)
}

fn cmd_verify(common: &Common, args: &TableArgs) -> Result<(), CommandError> {
    let pipeline = build_pipeline(common, load_table(args.golden.as_ref())?)?;
    let report = verify::run(&pipeline);
    let cache = outcome_text(pipeline.cache_outcome());
    let text = match common.format {
        Format::Text => format!("cache: {cache}\n{}", report.to_text()),
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in report.checks() {
                let _ = writeln!(out, "{},{},{}", c.name, c.passed, csv_quote(&c.detail));
            }
            out
        }
        Format::Json => format!(
            "{:#}\n",
            json!({
                "cache": cache,
                "passed": report.passed(),
                "checks": report.checks().iter().map(|c| json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            })
        ),
    };
    emit(common, &text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CommandError::Failure(format!(
            "verification failed: {} of {} checks",
            report.failures().count(),
            report.checks().len()
        )))
    }
}
