use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use spine_core::frontend::{render_json, render_text, BUILTIN_NAMES};
use spine_core::{
    analyze, builtin, census, parse_spec, universal_cover, verify_cover, AnalyzeOptions, Census, CensusOptions,
    CoverReport, CoverSpec, GluingSpec, SymmetryOptions,
};

const EXIT_ANALYSIS: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "spine", version, about = "Build and analyze special spines from gluing specifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trace curves and compute χ, embeddability, π1 presentation and invariants
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        /// Coset enumeration limit (overrides SPINE_MAX_COSETS)
        #[arg(long, value_name = "N")]
        max_cosets: Option<usize>,
        /// Include wall-clock timings in the report
        #[arg(long)]
        timings: bool,
    },
    /// Classify every closed gluing of N vertex pieces up to symmetry
    Census {
        #[arg(long, value_name = "N")]
        pieces: usize,
        /// Count mirror images as the same complex
        #[arg(long, value_enum, default_value_t = Toggle::On)]
        reflections: Toggle,
        #[command(flatten)]
        format: Format,
        #[arg(long, value_name = "N")]
        max_cosets: Option<usize>,
    },
    /// Build a finite cover of the complex and check it
    Cover {
        #[command(flatten)]
        input: Input,
        /// Build the cover from the regular action of π1 on itself
        #[arg(long, required = true)]
        universal: bool,
        #[command(flatten)]
        format: Format,
        #[arg(long, value_name = "N")]
        max_cosets: Option<usize>,
    },
    /// Print the names of the built-in example specs
    ListBuiltins,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Spec document to read
    file: Option<PathBuf>,
    /// Use a built-in example instead of a file
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct Format {
    /// Emit JSON (default)
    #[arg(long)]
    json: bool,
    /// Emit human-readable text
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn analysis(message: impl Into<String>) -> Self {
        Failure { code: EXIT_ANALYSIS, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("spine: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Analyze { input, format, max_cosets, timings } => {
            let spec = load(&input)?;
            let mut opts = options(max_cosets)?;
            opts.timings = timings;
            let report = analyze(&spec, opts).map_err(|e| Failure::analysis(e.to_string()))?;
            Ok(if format.text { render_text(&report) } else { render_json(&report) + "\n" })
        }
        Command::Census { pieces, reflections, format, max_cosets } => {
            let opts = CensusOptions {
                symmetry: SymmetryOptions { reflections: reflections == Toggle::On, ..SymmetryOptions::default() },
                max_cosets: options(max_cosets)?.max_cosets,
            };
            let result = census(pieces, opts).map_err(|e| Failure::analysis(e.to_string()))?;
            Ok(if format.text { census_text(&result) } else { census_json(&result) })
        }
        Command::Cover { input, universal, format, max_cosets } => {
            debug_assert!(universal);
            let spec = load(&input)?;
            let limit = options(max_cosets)?.max_cosets;
            let cover = universal_cover(&spec, limit).map_err(|e| Failure::analysis(e.to_string()))?;
            let report = verify_cover(&cover, limit).map_err(|e| Failure::analysis(e.to_string()))?;
            Ok(if format.text { cover_text(&cover, &report) } else { cover_json(&cover, &report) })
        }
        Command::ListBuiltins => Ok(BUILTIN_NAMES.iter().map(|n| format!("{n}\n")).collect()),
    }
}

fn load(input: &Input) -> Result<GluingSpec, Failure> {
    if let Some(name) = &input.builtin {
        return builtin(name).map_err(|e| Failure::input(e.to_string()));
    }
    let path = input.file.as_ref().expect("clap requires a file or a builtin");
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn options(max_cosets: Option<usize>) -> Result<AnalyzeOptions, Failure> {
    let mut opts = AnalyzeOptions::from_env().map_err(|e| Failure::input(e.to_string()))?;
    match max_cosets {
        Some(0) => Err(Failure::input("--max-cosets must be positive")),
        Some(n) => {
            opts.max_cosets = n;
            Ok(opts)
        }
        None => Ok(opts),
    }
}

fn census_json(c: &Census) -> String {
    let mut value = serde_json::to_value(c).expect("census serializes");
    value["matches_reference"] = json!(c.matches_reference());
    value["inconsistent_classes"] = json!(c.inconsistent_classes());
    let reps: Vec<String> = c.classes.iter().map(|k| k.representative.to_string()).collect();
    for (class, rep) in value["classes"].as_array_mut().expect("classes array").iter_mut().zip(reps) {
        class["representative"] = json!(rep);
    }
    serde_json::to_string_pretty(&value).expect("json") + "\n"
}

fn census_text(c: &Census) -> String {
    let mut out = String::new();
    let mode = if c.reflections { "rotations and reflections" } else { "rotations only" };
    let _ = writeln!(out, "pieces:      {} vertex", c.pieces);
    let _ = writeln!(out, "symmetry:    {mode}");
    let _ = writeln!(out, "gluings:     {}", c.raw_count);
    let _ = writeln!(out, "classes:     {}", c.class_count);
    let _ = writeln!(out, "embeddable:  {}", c.embeddable_classes);
    if let Some((classes, embeddable)) = c.reference {
        let flag = if c.matches_reference() == Some(true) { "match" } else { "MISMATCH" };
        let _ = writeln!(out, "reference:   {classes} classes, {embeddable} embeddable ({flag})");
    }
    for (i, k) in c.classes.iter().enumerate() {
        let cosets = k.cosets.as_ref().map_or("-".to_string(), ToString::to_string);
        let h1 = k.abelian.as_ref().map_or("-".to_string(), ToString::to_string);
        let _ = writeln!(
            out,
            "\nclass {i}: size {} first #{} chi {} curves {} embeddable {} H1 {h1} pi1 {cosets}{}",
            k.size,
            k.first_index,
            k.chi,
            k.curve_count,
            k.embeddable,
            if k.consistent { "" } else { " INCONSISTENT" }
        );
        for line in k.representative.to_string().lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}

fn cover_json(cover: &CoverSpec, report: &CoverReport) -> String {
    let value = json!({
        "report": report,
        "universal": cover.universal,
        "base": { "pieces": cover.base_pieces, "matchings": cover.base_matchings, "disks": cover.base_disks },
        "spec": cover.spec.to_string(),
    });
    serde_json::to_string_pretty(&value).expect("json") + "\n"
}

fn cover_text(cover: &CoverSpec, r: &CoverReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sheets:      {}", r.index);
    let _ = writeln!(out, "pieces:      {} (base {})", r.pieces, cover.base_pieces);
    let _ = writeln!(out, "matchings:   {} (base {})", r.matchings, cover.base_matchings);
    let _ = writeln!(out, "disks:       {} (base {})", r.disks, cover.base_disks);
    let _ = writeln!(out, "curves:      {}", r.curve_count);
    let _ = writeln!(out, "chi:         {}", r.chi);
    let _ = writeln!(out, "embeddable:  {}", r.verdict.embeddable_orientable);
    let _ = writeln!(out, "order:       {}", r.cosets);
    let _ = writeln!(out, "lifts:       {}", if r.lifts_match_trace { "match trace" } else { "DIFFER from trace" });
    if let Some(sc) = r.simply_connected {
        let _ = writeln!(out, "simply connected: {sc}");
    }
    let _ = writeln!(out, "\n{}", cover.spec);
    out
}
