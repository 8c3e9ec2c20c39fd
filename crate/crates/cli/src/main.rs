use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use pform_core::catalog::{self, NAMES};
use pform_core::certify::{certify, Certificate, EutaxyStatus, Verdict};
use pform_core::format::{self, parse_document, to_document};
use pform_core::improve::{improve, ImproveOptions, StopReason};
use pform_core::periodic::{density, generalized_min};
use pform_core::rational::{format as fmt_rat, parse as parse_rat};
use pform_core::{Error, PeriodicForm};

const EXIT_NOT_EXTREME: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "pform", version, about = "Packing invariants and local optimality of periodic forms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Map certification verdicts to exit codes (0 extreme, 1 not extreme, 4 inconclusive).
    #[arg(long, global = true)]
    strict_exit: bool,
    /// Seed for randomized probes in `improve`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest denominator used when snapping improved forms.
    #[arg(long, global = true, default_value = "1048576")]
    max_denominator: u64,
}

/// INPUT is a pform/1 file, `-` for stdin, or `catalog:NAME[:PARAM]`.
#[derive(Subcommand)]
enum Command {
    /// Generalized arithmetical minimum and its representations.
    Min { input: String },
    /// Lambda, determinant and packing density.
    Density { input: String },
    /// Local optimality certificate.
    Certify { input: String },
    /// Iterative density improvement.
    Improve {
        input: String,
        #[arg(long, default_value_t = 500)]
        steps: usize,
        /// Backtracking factor for the line search.
        #[arg(long, default_value = "1/2")]
        shrink: String,
        /// Write the final form here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Named lattices and periodic sets.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Rewrite a lattice as translates of the sublattice spanned by the columns of H.
    Represent {
        /// Rows separated by `;`, entries by `,` or spaces, e.g. "2 0; 1 1".
        #[arg(long = "H", value_name = "ROWS")]
        h: String,
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Get {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateMinimum => EXIT_DEGENERATE,
            _ => EXIT_PARSE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

fn load(input: &str) -> Result<(PeriodicForm, Map<String, Value>), Failure> {
    if let Some(entry) = input.strip_prefix("catalog:") {
        let mut parts = entry.split(':');
        let name = parts.next().unwrap_or_default();
        let params: Vec<&str> = parts.collect();
        let entry = catalog::get(name, &params)?;
        return Ok((entry.form, catalog_meta(&entry.name, &entry.params)));
    }
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| fail(EXIT_PARSE, format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| fail(EXIT_PARSE, format!("{input}: {e}")))?
    };
    Ok(parse_document(&text)?)
}

fn catalog_meta(name: &str, params: &[String]) -> Map<String, Value> {
    let mut meta = Map::new();
    let label = if params.is_empty() { name.to_string() } else { format!("{name}({})", params.join(",")) };
    meta.insert("name".into(), Value::String(label));
    meta
}

fn write_or_print(doc: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, format!("{doc}\n")).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display()))),
        None => {
            println!("{doc}");
            Ok(())
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn parse_h(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    text.split(';')
        .map(|row| {
            row.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| fail(EXIT_PARSE, format!("bad H entry `{s}`"))))
                .collect()
        })
        .collect()
}

fn cmd_min(g: &Global, input: &str) -> CmdResult {
    let (x, _) = load(input)?;
    let min = generalized_min(&x);
    let degenerate = min.lambda == pform_core::rational::int(0);
    if g.json {
        print_json(&format::min_report(&min));
    } else {
        println!("lambda = {}, {} classes", fmt_rat(&min.lambda), min.reps.len());
        if degenerate {
            println!("warning: lambda = 0, translates overlap");
        }
        for r in &min.reps {
            let w: Vec<String> = r.w.iter().map(fmt_rat).collect();
            println!("  ({}, {}, {:?})  w = [{}]", r.i, r.j, r.v, w.join(", "));
        }
    }
    Ok(0)
}

fn cmd_density(g: &Global, input: &str) -> CmdResult {
    let (x, _) = load(input)?;
    let rep = density(&x);
    if rep.lambda == pform_core::rational::int(0) {
        return Err(fail(EXIT_DEGENERATE, "lambda = 0: translates overlap, density undefined"));
    }
    if g.json {
        print_json(&format::density_report(&rep));
    } else {
        println!("lambda = {}", fmt_rat(&rep.lambda));
        println!("det = {}", fmt_rat(&rep.det));
        println!("m = {}", rep.m);
        println!("center_density_squared = {}", fmt_rat(&rep.center_density_squared));
        println!("delta/vol B^d = {:.10}", rep.delta_over_ball);
        println!("delta = {:.10}", rep.delta);
    }
    Ok(0)
}

fn verdict_code(strict: bool, v: Verdict) -> u8 {
    if !strict {
        return 0;
    }
    match v {
        Verdict::IsolatedExtreme | Verdict::ExtremeTranslational => 0,
        Verdict::NotExtreme => EXIT_NOT_EXTREME,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Long coefficient lists are summarized; the JSON report keeps them all.
fn summarize(values: &[pform_core::Rational]) -> String {
    if values.len() > 8 && values.iter().all(|v| v == &values[0]) {
        return format!("{} entries, all {}", values.len(), fmt_rat(&values[0]));
    }
    let shown: Vec<String> = values.iter().take(8).map(fmt_rat).collect();
    let more = if values.len() > 8 { format!(", ... ({} total)", values.len()) } else { String::new() };
    format!("[{}{more}]", shown.join(", "))
}

fn print_certificate(c: &Certificate) {
    println!("verdict: {}", c.verdict.name());
    println!("lambda = {}, {} classes", fmt_rat(&c.lambda), c.reps.len());
    println!(
        "perfection: rank {} of {}{}",
        c.perfection.rank,
        c.perfection.ambient_dim,
        if c.perfection.perfect { " (perfect)" } else { "" }
    );
    match &c.eutaxy {
        EutaxyStatus::Interior { coefficients } => {
            println!("eutaxy: interior, coefficients {}", summarize(coefficients));
        }
        EutaxyStatus::Boundary { face, coefficients } => {
            println!("eutaxy: boundary, face of {} generators, coefficients {}", face.len(), summarize(coefficients));
        }
        EutaxyStatus::Outside { separator } => {
            println!("eutaxy: outside, separator {}", summarize(&separator.coords()));
        }
    }
    if let Some(s) = &c.strong_eutaxy {
        println!("strongly eutactic: {}", s.strongly_eutactic);
    }
    println!("floating: {} {:?}", c.is_floating(), c.floating);
    if let Some(u) = &c.uncertainty {
        println!("dim U = {}{}", u.basis.len(), if u.is_subspace { "" } else { " (hull of a cone)" });
    }
    if let Some(t) = &c.translational {
        match t.witness {
            Some((i, j)) => println!("translational criterion: {} (witness {i}, {j})", t.holds),
            None => println!("translational criterion: {}", t.holds),
        }
    }
    if let Some(dir) = &c.improving {
        println!("improving direction N = {}", summarize(&dir.n.coords()));
        println!(
            "  epsilon = {}: center density squared {} -> {}",
            fmt_rat(&dir.epsilon),
            fmt_rat(&dir.center_density_squared_before),
            fmt_rat(&dir.center_density_squared_after)
        );
    }
}

fn cmd_certify(g: &Global, input: &str) -> CmdResult {
    let (x, _) = load(input)?;
    let c = certify(&x)?;
    if g.json {
        print_json(&format::certificate(&c));
    } else {
        print_certificate(&c);
    }
    Ok(verdict_code(g.strict_exit, c.verdict))
}

fn cmd_improve(g: &Global, input: &str, steps: usize, shrink: &str, output: &Option<PathBuf>) -> CmdResult {
    let (x, meta) = load(input)?;
    let shrink = parse_rat(shrink)?;
    if !(shrink > pform_core::rational::int(0) && shrink < pform_core::rational::int(1)) {
        return Err(fail(EXIT_PARSE, "shrink must lie strictly between 0 and 1"));
    }
    if g.max_denominator < 1 {
        return Err(fail(EXIT_PARSE, "max-denominator must be positive"));
    }
    if generalized_min(&x).lambda == pform_core::rational::int(0) {
        return Err(fail(EXIT_DEGENERATE, "lambda = 0: translates overlap"));
    }
    let opts = ImproveOptions {
        steps,
        shrink,
        max_denominator: g.max_denominator.into(),
        seed: g.seed,
        ..ImproveOptions::default()
    };
    let tr = improve(&x, &opts)?;
    let stop = match &tr.stop {
        StopReason::Extreme(v) => format!("extreme ({})", v.name()),
        StopReason::Stalled => "stalled".to_string(),
        StopReason::StepLimit => "step limit".to_string(),
    };
    let doc = to_document(&tr.final_form, &meta);
    if g.json {
        let steps: Vec<Value> = tr
            .steps
            .iter()
            .map(|s| {
                json!({
                    "step": s.index,
                    "verdict": s.verdict.name(),
                    "source": s.source.name(),
                    "epsilon": fmt_rat(&s.epsilon),
                    "center_density_squared": fmt_rat(&s.density.center_density_squared),
                    "delta_over_ball": s.density.delta_over_ball,
                })
            })
            .collect();
        let report = json!({
            "initial": format::density_report(&tr.initial),
            "steps": steps,
            "stop": stop,
            "final": format::density_report(&tr.final_density),
            "certificate": format::certificate(&tr.final_certificate),
            "form": serde_json::from_str::<Value>(&doc).expect("document is json"),
        });
        print_json(&report);
    } else {
        println!("initial delta/vol B^d = {:.10}", tr.initial.delta_over_ball);
        for s in &tr.steps {
            println!(
                "step {:>4}  {:<12} eps = {:<10} delta/vol B^d = {:.10}",
                s.index + 1,
                s.source.name(),
                fmt_rat(&s.epsilon),
                s.density.delta_over_ball
            );
        }
        println!("stopped: {stop} after {} steps", tr.steps.len());
        println!("final delta/vol B^d = {:.10}", tr.final_density.delta_over_ball);
        println!("final verdict: {}", tr.final_certificate.verdict.name());
    }
    if let Some(path) = output {
        write_or_print(&doc, &Some(path.clone()))?;
    }
    Ok(verdict_code(g.strict_exit, tr.final_certificate.verdict))
}

fn cmd_catalog(g: &Global, action: &CatalogAction) -> CmdResult {
    match action {
        CatalogAction::List => {
            if g.json {
                let v: Vec<Value> = NAMES
                    .iter()
                    .map(|n| json!({"name": n.name, "params": n.params, "summary": n.summary}))
                    .collect();
                print_json(&Value::Array(v));
            } else {
                for n in NAMES {
                    println!("{:<14} {:<6} {}", n.name, n.params, n.summary);
                }
            }
        }
        CatalogAction::Get { name, params, output } => {
            let p: Vec<&str> = params.iter().map(String::as_str).collect();
            let entry = catalog::get(name, &p)?;
            let doc = to_document(&entry.form, &catalog_meta(&entry.name, &entry.params));
            write_or_print(&doc, output)?;
        }
    }
    Ok(0)
}

fn cmd_represent(input: &str, h: &str, output: &Option<PathBuf>) -> CmdResult {
    let (x, mut meta) = load(input)?;
    if x.m() != 1 {
        return Err(fail(EXIT_PARSE, "represent expects a lattice (m = 1)"));
    }
    let h = parse_h(h)?;
    let y = catalog::sublattice_representation(x.q(), &h)?;
    meta.insert("comment".into(), Value::String(format!("sublattice representation, m = {}", y.m())));
    write_or_print(&to_document(&y, &meta), output)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Min { input } => cmd_min(g, input),
        Command::Density { input } => cmd_density(g, input),
        Command::Certify { input } => cmd_certify(g, input),
        Command::Improve { input, steps, shrink, output } => cmd_improve(g, input, *steps, shrink, output),
        Command::Catalog { action } => cmd_catalog(g, action),
        Command::Represent { h, input, output } => cmd_represent(input, h, output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
