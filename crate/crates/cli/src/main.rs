//! `equilab`: property reports, certificates, gallery graphs and the
//! cross-check harness from the command line.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use equilab_core::enumerate::{connected_triangle_free, random_triangle_free, rng};
use equilab_core::exact::{
    forced_value, solve_unit_system, stable_system, star_system, ForcedOutcome, SetSystem, SystemWitness,
    DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_STRONG_LIMIT,
};
use equilab_core::generate::{generate, Family};
use equilab_core::recognize::CrosscheckOptions;
use equilab_core::report::{analyze, crosscheck_all, render_text, PanelOptions, SCHEMA_VERSION};
use equilab_core::transforms::co_line;
use equilab_core::{parse_edge_list, Error, Graph, DEFAULT_STEP_BUDGET};

/// Largest vertex count for exhaustive cross-checking.
const CROSSCHECK_MAX_N: usize = 9;

#[derive(Parser)]
#[command(name = "equilab", version, about = "Equistarable and equistable graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Format {
    /// Emit JSON (default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit a plain-text summary.
    #[arg(long)]
    text: bool,
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Step budget for exponential enumerations.
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
    budget: u64,
    /// Seed for the randomized parts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest ground set for exhaustive subset scans.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    exhaustive_limit: usize,
    /// Largest ground set for the strong variants.
    #[arg(long, default_value_t = DEFAULT_STRONG_LIMIT)]
    strong_limit: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run the property panel on a graph.
    Analyze {
        /// Edge-list path, `-` for standard input, or `gallery:<descriptor>`.
        input: String,
        #[command(flatten)]
        format: Format,
        #[command(flatten)]
        limits: Limits,
        /// Also evaluate the complement of the line graph.
        #[arg(long)]
        with_co_line: bool,
        /// Also evaluate the strong variants.
        #[arg(long)]
        strong: bool,
    },
    /// Decide whether the total weight of a subset is forced.
    Certify {
        input: String,
        /// Comma-separated edge labels such as `1-2,4-5`.
        #[arg(long, required = true)]
        target: String,
        /// Use the maximal stable sets of the complement of the line graph
        /// instead of the maximal stars.
        #[arg(long)]
        with_co_line: bool,
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: u64,
    },
    /// Write a named graph as an edge list.
    Gallery {
        /// For example `cycle(5)`, `kmn_plus(2,3)`, `graph_H`.
        descriptor: String,
        /// Output path (standard output when absent).
        #[arg(short = 'o', long = "output")]
        output: Option<String>,
    },
    /// Compare each triangle-free graph with the complement of its line graph.
    Crosscheck {
        /// Graphs to check instead of the enumeration.
        inputs: Vec<String>,
        /// Enumerate all connected triangle-free graphs up to this many vertices.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Random connected triangle-free graphs on more vertices.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[command(flatten)]
        format: Format,
        #[command(flatten)]
        limits: Limits,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExhausted(_)) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read_graph(input: &str) -> Result<Graph, Failure> {
    if let Some(desc) = input.strip_prefix("gallery:") {
        let family: Family = desc.parse()?;
        return Ok(generate(&family)?);
    }
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| input_error(format!("{input}: {e}")))?
    };
    Ok(parse_edge_list(&text)?)
}

fn emit(text: &str, path: Option<&str>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{p}: {e}"))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| input_error(format!("standard output: {e}")))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_analyze(input: &str, format: Format, limits: Limits, with_co_line: bool, strong: bool) -> Result<u8, Failure> {
    let g = read_graph(input)?;
    let o = PanelOptions {
        budget: limits.budget,
        seed: limits.seed,
        exhaustive_limit: limits.exhaustive_limit,
        strong_limit: limits.strong_limit,
        strong,
        with_co_line,
    };
    let r = analyze(&g, &o)?;
    if format.text {
        emit(&render_text(&r.json), None)?;
    } else {
        emit(&pretty(&r.json), None)?;
    }
    Ok(if r.unknown.is_empty() { 0 } else { 3 })
}

fn cmd_certify(input: &str, target: &str, with_co_line: bool, budget: u64) -> Result<u8, Failure> {
    let g = read_graph(input)?;
    let (s, kind): (SetSystem, &str) = if with_co_line {
        (stable_system(&co_line(&g)?.graph, budget)?, "stable_sets")
    } else {
        (star_system(&g)?, "stars")
    };
    // element i of either system is edge i of g
    let mut t = target
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|name| {
            g.edge_by_label(name)
                .ok_or_else(|| Failure::from(Error::UnknownLabel(name.to_string())))
        })
        .collect::<Result<Vec<usize>, Failure>>()?;
    t.sort_unstable();
    t.dedup();
    let names: Vec<&str> = t.iter().map(|&e| s.element_names()[e].as_str()).collect();
    let (result, certificate) = match forced_value(&s, &t) {
        Ok(ForcedOutcome::Forced(c)) => ("forced", SystemWitness::Forced(c)),
        Ok(ForcedOutcome::NotForced(n)) => ("not_forced", SystemWitness::NotForced(n)),
        Err(Error::InfeasibleSystem) => {
            let proof = solve_unit_system(&s).expect_err("reported infeasible");
            ("infeasible_system", SystemWitness::Infeasible(proof))
        }
        Err(e) => return Err(e.into()),
    };
    assert!(certificate.verify(&s), "certificate failed verification");
    let out = json!({
        "schema": SCHEMA_VERSION,
        "system": kind,
        "target": names,
        "result": result,
        "certificate": certificate.to_json(&s),
    });
    emit(&pretty(&out), None)?;
    Ok(0)
}

fn cmd_gallery(descriptor: &str, output: Option<&str>) -> Result<u8, Failure> {
    let family: Family = descriptor.strip_prefix("gallery:").unwrap_or(descriptor).parse()?;
    let g = generate(&family)?;
    emit(&g.to_edge_list(), output)?;
    Ok(0)
}

fn cmd_crosscheck(
    inputs: &[String],
    max_n: usize,
    samples: usize,
    format: Format,
    limits: Limits,
) -> Result<u8, Failure> {
    let graphs: Vec<Graph> = if inputs.is_empty() {
        if max_n > CROSSCHECK_MAX_N {
            return Err(input_error(format!(
                "--max-n is at most {CROSSCHECK_MAX_N} for exhaustive enumeration"
            )));
        }
        let mut gs: Vec<Graph> = connected_triangle_free(max_n)?
            .into_iter()
            .filter(|g| g.n() >= 2)
            .collect();
        let mut r = rng(limits.seed);
        for i in 0..samples {
            let n = max_n.max(2) + 1 + i % 4;
            let m = (n - 1 + i % (n + 2)).min(limits.exhaustive_limit);
            gs.push(random_triangle_free(n, m, &mut r));
        }
        gs
    } else {
        inputs.iter().map(|i| read_graph(i)).collect::<Result<_, _>>()?
    };
    let o = CrosscheckOptions {
        budget: limits.budget,
        strong_limit: limits.strong_limit,
        exhaustive_limit: limits.exhaustive_limit,
        seed: limits.seed,
    };
    let summary = crosscheck_all(&graphs, &o)?;
    let mut out = summary.to_json();
    out["exhaustive_max_n"] = json!(if inputs.is_empty() { Some(max_n) } else { None });
    out["samples"] = json!(if inputs.is_empty() { samples } else { 0 });
    out["seed"] = json!(limits.seed);
    if format.text {
        emit(&summary.render_text(), None)?;
    } else {
        emit(&pretty(&out), None)?;
    }
    Ok(if summary.violations.is_empty() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Analyze {
            input,
            format,
            limits,
            with_co_line,
            strong,
        } => cmd_analyze(input, *format, *limits, *with_co_line, *strong),
        Command::Certify {
            input,
            target,
            with_co_line,
            budget,
        } => cmd_certify(input, target, *with_co_line, *budget),
        Command::Gallery { descriptor, output } => cmd_gallery(descriptor, output.as_deref()),
        Command::Crosscheck {
            inputs,
            max_n,
            samples,
            format,
            limits,
        } => cmd_crosscheck(inputs, *max_n, *samples, *format, *limits),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("equilab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
