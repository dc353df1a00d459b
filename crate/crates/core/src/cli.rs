//! Command-line driver: `harmspec <gen|matrix|index|charpoly|energy|census|audit>`.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::audit::{self, AuditContext, AuditError, AuditPlan, Baseline, ClaimRegistry, Params};
use crate::census::{
    self, Census, CensusError, MatchRule, ReferenceComparison, REFERENCE_CUBIC10_HE,
};
use crate::charpoly::{char_poly, factored_display, rational_roots, ClosedForm, ClosedFormError};
use crate::generators::{FamilyArgs, FamilyRegistry, FamilySpec, GenError};
use crate::graph::Graph;
use crate::graph6::{self, Graph6Error};
use crate::harmonic::{harmonic_index, harmonic_matrix};
use crate::poly::PolynomialJson;
use crate::rational::{fmt_rational, Rational, RationalJson};
use crate::spectrum::{EnergyMethods, SpectrumError, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DRIFT: i32 = 2;

/// Env var capping census worker threads.
pub const THREADS_ENV: &str = "HARMSPEC_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "harmspec",
    version,
    about = "Harmonic matrices, characteristic polynomials and harmonic energy"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Debug, Args)]
pub struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Jacobi convergence tolerance, relative to the Frobenius norm.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    pub tol: f64,
    /// Decimal places for displayed energies and eigenvalues.
    #[arg(long, default_value_t = 7, global = true)]
    pub decimals: usize,
    /// Suppress progress messages.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Graph6,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit graph6 for a family member or an input file.
    Gen(GraphInput),
    /// Exact harmonic matrix.
    Matrix(GraphInput),
    /// Exact harmonic index.
    Index(GraphInput),
    /// Exact characteristic polynomial of the harmonic matrix.
    Charpoly(GraphInput),
    /// Harmonic spectrum and energy.
    Energy {
        #[command(flatten)]
        input: GraphInput,
        /// jacobi | regular-shortcut
        #[arg(long, default_value = "jacobi")]
        method: String,
    },
    /// All d-regular graphs on n vertices up to isomorphism, with energies.
    Census(CensusArgs),
    /// Check published claims against the exact and numeric oracles.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph family name or alias.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// File with one graph6 string per line.
    #[arg(long, conflicts_with_all = ["family", "graph6"])]
    pub from_file: Option<PathBuf>,
    /// A single graph6 string.
    #[arg(long, conflicts_with = "family")]
    pub graph6: Option<String>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, required_unless_present = "from_file")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "from_file")]
    pub degree: Option<usize>,
    /// Census the graphs in a graph6 file instead of enumerating.
    #[arg(long, conflicts_with_all = ["n", "degree"])]
    pub from_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Run every registered claim (the default when no --claim is given).
    #[arg(long)]
    pub all: bool,
    /// Claim id; repeatable.
    #[arg(long, conflicts_with = "all")]
    pub claim: Vec<String>,
    /// Evaluate at this n instead of the default grid.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub m: Option<usize>,
    /// Range of n, as `a..b` (inclusive), replacing the default grids.
    #[arg(long, conflicts_with = "n", value_parser = parse_range)]
    pub range: Option<RangeInclusive<usize>>,
    /// Frozen verdict file to diff against.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    /// Write the current verdicts to the --baseline file.
    #[arg(long, requires = "baseline")]
    pub update_baseline: bool,
    /// List claim ids and statements.
    #[arg(long)]
    pub list: bool,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got '{s}'"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start '{a}'"))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end '{b}'"))?;
    Ok(a..=b)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Rendered command output plus an exit status.
struct Outcome {
    body: String,
    status: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            body,
            status: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return status;
        }
    };
    log::set_max_level(if cli.output.quiet {
        log::LevelFilter::Warn
    } else {
        log::LevelFilter::Info
    });
    match execute(&cli, err) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.output, &outcome.body, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(opts: &OutputOpts, body: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => fs::write(path, body).map_err(|source| CliError::File {
            path: path.clone(),
            source,
        }),
        None => out
            .write_all(body.as_bytes())
            .map_err(|source| CliError::File {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let o = &cli.output;
    if !(o.tol > 0.0 && o.tol < 1.0) {
        return Err(usage(format!("--tol must lie in (0, 1), got {}", o.tol)));
    }
    match &cli.command {
        Command::Gen(input) => gen(o, input).map(Outcome::ok),
        Command::Matrix(input) => matrix(o, input).map(Outcome::ok),
        Command::Index(input) => index(o, input).map(Outcome::ok),
        Command::Charpoly(input) => charpoly(o, input).map(Outcome::ok),
        Command::Energy { input, method } => energy(o, input, method).map(Outcome::ok),
        Command::Census(args) => run_census(o, args, err).map(Outcome::ok),
        Command::Audit(args) => run_audit(o, args, err),
    }
}

fn reject_format(o: &OutputOpts, cmd: &str, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&o.format) {
        Ok(())
    } else {
        let name = o
            .format
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        Err(usage(format!("{cmd} does not support --format {name}")))
    }
}

struct Input {
    graph: Graph,
    graph6: String,
    spec: Option<FamilySpec>,
}

fn read_graph_file(path: &Path) -> Result<Vec<Graph>, CliError> {
    let f = File::open(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })?;
    graph6::read_all(BufReader::new(f)).map_err(|e| match e {
        Graph6Error::Io(msg) => CliError::File {
            path: path.to_path_buf(),
            source: io::Error::other(msg),
        },
        other => CliError::Usage(format!("{}: {other}", path.display())),
    })
}

fn load_inputs(input: &GraphInput) -> Result<Vec<Input>, CliError> {
    let wrap = |graph: Graph, spec: Option<FamilySpec>| -> Result<Input, CliError> {
        let graph6 = graph6::encode(&graph)?;
        Ok(Input {
            graph,
            graph6,
            spec,
        })
    };
    if let Some(path) = &input.from_file {
        return read_graph_file(path)?
            .into_iter()
            .map(|g| wrap(g, None))
            .collect();
    }
    if let Some(s) = &input.graph6 {
        return Ok(vec![wrap(graph6::decode(s.trim())?, None)?]);
    }
    let Some(name) = &input.family else {
        return Err(usage(
            "give --family (with --n/--m), --graph6 or --from-file",
        ));
    };
    let registry = FamilyRegistry::standard();
    let family = registry.get(name)?;
    let spec = family.spec(FamilyArgs {
        n: input.n,
        m: input.m,
    })?;
    Ok(vec![wrap(crate::generators::generate(&spec)?, Some(spec))?])
}

fn fmt_f64(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn gen(o: &OutputOpts, input: &GraphInput) -> Result<String, CliError> {
    let inputs = load_inputs(input)?;
    Ok(match o.format {
        Format::Text | Format::Graph6 => inputs.iter().map(|i| format!("{}\n", i.graph6)).collect(),
        Format::Json => to_json(&json!({
            "graphs": inputs.iter().map(|i| json!({
                "graph6": i.graph6,
                "order": i.graph.order(),
                "size": i.graph.edge_count(),
                "degrees": i.graph.degrees().as_slice(),
            })).collect::<Vec<_>>()
        })),
        Format::Csv => {
            let mut rows = vec![vec!["graph6".into(), "order".into(), "size".into()]];
            rows.extend(inputs.iter().map(|i| {
                vec![
                    i.graph6.clone(),
                    i.graph.order().to_string(),
                    i.graph.edge_count().to_string(),
                ]
            }));
            csv_string(rows)
        }
    })
}

fn matrix(o: &OutputOpts, input: &GraphInput) -> Result<String, CliError> {
    reject_format(o, "matrix", &[Format::Text, Format::Json, Format::Csv])?;
    let inputs = load_inputs(input)?;
    Ok(match o.format {
        Format::Json => to_json(&json!({
            "results": inputs.iter().map(|i| json!({
                "graph6": i.graph6,
                "matrix": harmonic_matrix(&i.graph).to_json(),
            })).collect::<Vec<_>>()
        })),
        Format::Csv => {
            let mut rows = Vec::new();
            for i in &inputs {
                for (r, row) in harmonic_matrix(&i.graph).rows().enumerate() {
                    let mut rec = vec![i.graph6.clone(), r.to_string()];
                    rec.extend(row.iter().map(fmt_rational));
                    rows.push(rec);
                }
            }
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            for r in rows {
                w.write_record(&r).expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
        }
        _ => {
            let mut s = String::new();
            for (k, i) in inputs.iter().enumerate() {
                if k > 0 {
                    s.push('\n');
                }
                s.push_str(&format!("# {}\n", i.graph6));
                s.push_str(&harmonic_matrix(&i.graph).to_grid());
                if !s.ends_with('\n') {
                    s.push('\n');
                }
            }
            s
        }
    })
}

fn index(o: &OutputOpts, input: &GraphInput) -> Result<String, CliError> {
    reject_format(o, "index", &[Format::Text, Format::Json, Format::Csv])?;
    let inputs = load_inputs(input)?;
    let values: Vec<(String, Rational)> = inputs
        .iter()
        .map(|i| (i.graph6.clone(), harmonic_index(&i.graph)))
        .collect();
    Ok(match o.format {
        Format::Json => to_json(&json!({
            "results": values.iter().map(|(g, h)| json!({
                "graph6": g,
                "index": RationalJson::from(h),
            })).collect::<Vec<_>>()
        })),
        Format::Csv => {
            let mut rows = vec![vec!["graph6".to_string(), "index".to_string()]];
            rows.extend(values.iter().map(|(g, h)| vec![g.clone(), fmt_rational(h)]));
            csv_string(rows)
        }
        _ => values
            .iter()
            .map(|(g, h)| format!("{g}\tH = {}\n", fmt_rational(h)))
            .collect(),
    })
}

#[derive(Serialize)]
struct ClosedFormCheck {
    form: &'static str,
    matches: bool,
    residual: PolynomialJson,
}

fn charpoly(o: &OutputOpts, input: &GraphInput) -> Result<String, CliError> {
    reject_format(o, "charpoly", &[Format::Text, Format::Json, Format::Csv])?;
    let inputs = load_inputs(input)?;
    let mut results = Vec::new();
    for i in &inputs {
        let p = char_poly(&harmonic_matrix(&i.graph));
        let mut forms = Vec::new();
        if let Some(spec) = &i.spec {
            for form in ClosedForm::for_family(spec) {
                let claimed = form.polynomial()?;
                let residual = &claimed - &p;
                forms.push(ClosedFormCheck {
                    form: form.name(),
                    matches: residual.is_zero(),
                    residual: PolynomialJson::from(&residual),
                });
            }
        }
        results.push((i, p, forms));
    }
    Ok(match o.format {
        Format::Json => to_json(&json!({
            "results": results.iter().map(|(i, p, forms)| json!({
                "graph6": i.graph6,
                "order": i.graph.order(),
                "polynomial": PolynomialJson::from(p),
                "factored": factored_display(p),
                "closed_forms": forms,
            })).collect::<Vec<_>>()
        })),
        Format::Csv => {
            let mut rows = vec![vec![
                "graph6".to_string(),
                "power".to_string(),
                "coefficient".to_string(),
            ]];
            for (i, p, _) in &results {
                for (k, c) in p.coeffs().iter().enumerate() {
                    rows.push(vec![i.graph6.clone(), k.to_string(), fmt_rational(c)]);
                }
            }
            csv_string(rows)
        }
        _ => {
            let mut s = String::new();
            for (i, p, forms) in &results {
                s.push_str(&format!("# {}\n", i.graph6));
                s.push_str(&format!("φ(λ) = {p}\n"));
                s.push_str(&format!("     = {}\n", factored_display(p)));
                let coeffs: Vec<String> = p.coeffs().iter().map(fmt_rational).collect();
                s.push_str(&format!(
                    "coefficients (λ^0..λ^{}): [{}]\n",
                    i.graph.order(),
                    coeffs.join(", ")
                ));
                for f in forms {
                    let verdict = if f.matches { "matches" } else { "differs" };
                    s.push_str(&format!(
                        "closed form {}: {verdict}, residual {}\n",
                        f.form, f.residual.text
                    ));
                }
            }
            s
        }
    })
}

#[derive(Serialize)]
struct ExactEigen {
    value: RationalJson,
    multiplicity: usize,
}

/// The spectrum as rationals with multiplicity, when φ splits over ℚ.
fn exact_spectrum(g: &Graph) -> Option<Vec<(Rational, usize)>> {
    let p = char_poly(&harmonic_matrix(g));
    let mut roots = rational_roots(&p);
    if roots.iter().map(|r| r.1).sum::<usize>() != g.order() {
        return None;
    }
    roots.sort_by(|a, b| b.0.cmp(&a.0));
    Some(roots)
}

fn grouped_decimal(values: &[f64], decimals: usize) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = Vec::new();
    for &v in values {
        let s = fmt_f64(v, decimals);
        match out.last_mut() {
            Some((last, k)) if *last == s => *k += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

fn with_mult(items: impl Iterator<Item = (String, usize)>) -> String {
    items
        .map(|(v, k)| if k == 1 { v } else { format!("{v}×{k}") })
        .collect::<Vec<_>>()
        .join(", ")
}

fn energy(o: &OutputOpts, input: &GraphInput, method: &str) -> Result<String, CliError> {
    reject_format(o, "energy", &[Format::Text, Format::Json, Format::Csv])?;
    let methods = EnergyMethods::standard();
    let method = methods.get(method)?;
    let inputs = load_inputs(input)?;
    let mut results = Vec::new();
    for i in &inputs {
        let report = method.energy(&i.graph, o.tol)?;
        let exact = if i.graph.order() <= 64 {
            exact_spectrum(&i.graph)
        } else {
            None
        };
        results.push((report, exact));
    }
    let d = o.decimals;
    Ok(match o.format {
        Format::Json => to_json(&json!({
            "results": results.iter().map(|(r, exact)| json!({
                "graph6": r.graph6,
                "method": r.method,
                "he": r.he,
                "spectrum": r.spectrum,
                "exact_spectrum": exact.as_ref().map(|ex| ex.iter().map(|(v, k)| ExactEigen {
                    value: RationalJson::from(v),
                    multiplicity: *k,
                }).collect::<Vec<_>>()),
            })).collect::<Vec<_>>()
        })),
        Format::Csv => {
            let mut rows = vec![vec![
                "graph6".to_string(),
                "method".into(),
                "he".into(),
                "spectrum".into(),
            ]];
            for (r, _) in &results {
                let spec: Vec<String> = r
                    .spectrum
                    .eigenvalues
                    .iter()
                    .map(|&x| fmt_f64(x, d))
                    .collect();
                rows.push(vec![
                    r.graph6.clone(),
                    r.method.to_string(),
                    fmt_f64(r.he, d),
                    spec.join(";"),
                ]);
            }
            csv_string(rows)
        }
        _ => {
            let mut s = String::new();
            for (r, exact) in &results {
                s.push_str(&format!("# {} ({})\n", r.graph6, r.method));
                s.push_str(&format!("HE = {}\n", fmt_f64(r.he, d)));
                s.push_str(&format!(
                    "spectrum = {{{}}}\n",
                    with_mult(grouped_decimal(&r.spectrum.eigenvalues, d).into_iter())
                ));
                if let Some(ex) = exact {
                    s.push_str(&format!(
                        "exact spectrum = {{{}}}\n",
                        with_mult(ex.iter().map(|(v, k)| (fmt_rational(v), *k)))
                    ));
                }
            }
            s
        }
    })
}

fn census_threads() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn is_cubic10(c: &Census) -> bool {
    c.records.len() == REFERENCE_CUBIC10_HE.len()
        && (0..c.records.len()).all(|i| {
            let g = c.graph(c.records[i].index);
            g.order() == 10 && g.degrees().regular_degree() == Some(3)
        })
}

fn run_census(o: &OutputOpts, args: &CensusArgs, err: &mut dyn Write) -> Result<String, CliError> {
    let compute = || -> Result<Census, CliError> {
        match &args.from_file {
            Some(path) => Ok(census::census_from_graphs(&read_graph_file(path)?, o.tol)?),
            None => {
                let (n, d) = (args.n.unwrap_or(0), args.degree.unwrap_or(0));
                Ok(census::census(n, d, o.tol)?)
            }
        }
    };
    let started = std::time::Instant::now();
    let c = match census_threads()? {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| usage(format!("thread pool: {e}")))?
            .install(compute)?,
        None => compute()?,
    };
    if !o.quiet {
        let _ = writeln!(
            err,
            "census: {} graphs in {:.2?}",
            c.records.len(),
            started.elapsed()
        );
    }
    let reference = if is_cubic10(&c) {
        Some(census::reference_compare(
            &c.records,
            &REFERENCE_CUBIC10_HE,
        )?)
    } else {
        None
    };
    let d = o.decimals;
    Ok(match o.format {
        Format::Json => to_json(&json!({
            "n": c.n,
            "degree": c.degree,
            "count": c.records.len(),
            "connected": c.records.iter().filter(|r| r.connected).count(),
            "records": c.records,
            "classes": c.classes,
            "reference": reference,
        })),
        Format::Csv => {
            let mut rows = vec![vec![
                "index".to_string(),
                "graph6".into(),
                "connected".into(),
                "he".into(),
                "spectrum".into(),
            ]];
            for r in &c.records {
                let spec: Vec<String> = r.spectrum.iter().map(|&x| fmt_f64(x, d)).collect();
                rows.push(vec![
                    r.index.to_string(),
                    r.graph6.clone(),
                    r.connected.to_string(),
                    fmt_f64(r.he, d),
                    spec.join(";"),
                ]);
            }
            csv_string(rows)
        }
        Format::Graph6 => c
            .records
            .iter()
            .map(|r| format!("{}\n", r.graph6))
            .collect(),
        Format::Text => census_text(&c, reference.as_ref(), d),
    })
}

fn census_text(c: &Census, reference: Option<&ReferenceComparison>, d: usize) -> String {
    let mut s = String::new();
    let label = match (c.n, c.degree) {
        (Some(n), Some(k)) => format!("{k}-regular graphs on {n} vertices"),
        _ => "input graphs".to_string(),
    };
    let connected = c.records.iter().filter(|r| r.connected).count();
    s.push_str(&format!(
        "{label}: {} ({connected} connected)\n\n",
        c.records.len()
    ));
    let w = c
        .records
        .iter()
        .map(|r| r.graph6.len())
        .max()
        .unwrap_or(6)
        .max(6);
    s.push_str(&format!(
        "{:>4}  {:<w$}  {:<9}  {}\n",
        "#", "graph6", "connected", "HE"
    ));
    for r in &c.records {
        s.push_str(&format!(
            "{:>4}  {:<w$}  {:<9}  {}\n",
            r.index,
            r.graph6,
            if r.connected { "yes" } else { "no" },
            fmt_f64(r.he, d)
        ));
    }
    s.push_str(&format!(
        "\nenergy classes: {} ({} singletons)\n",
        c.classes.len(),
        c.singleton_count()
    ));
    for cl in c.classes.iter().filter(|cl| cl.members.len() > 1) {
        let members: Vec<String> = cl.members.iter().map(|m| format!("G{m}")).collect();
        s.push_str(&format!(
            "  HE {}: {}\n",
            fmt_f64(cl.he, d),
            members.join(", ")
        ));
        for p in &cl.pairs {
            s.push_str(&format!(
                "    G{} vs G{}: {} + {} eigenvalues unmatched\n",
                p.a, p.b, p.unmatched_a, p.unmatched_b
            ));
        }
    }
    if let Some(r) = reference {
        let by = |rule| r.rows.iter().filter(|m| m.rule == rule).count();
        s.push_str(&format!(
            "\nreference comparison: {}/{} matched ({} by truncation, {} by rounding)\n",
            r.matched,
            r.total,
            by(MatchRule::Truncation),
            by(MatchRule::Rounding)
        ));
        for m in r.rows.iter().filter(|m| m.rule == MatchRule::None) {
            s.push_str(&format!("  unmatched reference value {:.3}\n", m.reference));
        }
    }
    s
}

fn run_audit(o: &OutputOpts, args: &AuditArgs, err: &mut dyn Write) -> Result<Outcome, CliError> {
    reject_format(o, "audit", &[Format::Text, Format::Json, Format::Csv])?;
    let registry = ClaimRegistry::standard();
    if args.list {
        let mut s = String::new();
        for c in registry.claims() {
            s.push_str(&format!("{:<34} {}\n", c.id(), c.statement()));
        }
        return Ok(Outcome::ok(s));
    }
    let plan = AuditPlan {
        claims: if args.all {
            Vec::new()
        } else {
            args.claim.clone()
        },
        n_range: args.range.clone(),
        params: args.n.map(|n| Params {
            m: args.m,
            n: Some(n),
        }),
    };
    let ctx = AuditContext::with_tol(o.tol);
    let results = audit::audit_all(&registry, &ctx, &plan)?;
    let summary = audit::summarize(&results);

    let mut drift: Option<Vec<String>> = None;
    if let Some(path) = &args.baseline {
        if args.update_baseline {
            let b = Baseline::from_results(&results);
            fs::write(path, b.to_json()).map_err(|source| CliError::File {
                path: path.clone(),
                source,
            })?;
            if !o.quiet {
                let _ = writeln!(
                    err,
                    "wrote {} baseline entries to {}",
                    b.entries.len(),
                    path.display()
                );
            }
        } else {
            let text = fs::read_to_string(path).map_err(|source| CliError::File {
                path: path.clone(),
                source,
            })?;
            drift = Some(Baseline::from_json(&text)?.drift(&results));
        }
    }

    let body = match o.format {
        Format::Json => to_json(&json!({
            "results": results,
            "summary": summary,
            "drift": drift,
        })),
        Format::Csv => {
            let mut rows = vec![vec![
                "claim".to_string(),
                "params".into(),
                "kind".into(),
                "verdict".into(),
                "evidence".into(),
            ]];
            for r in &results {
                let kind = serde_json::to_value(r.kind)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default();
                rows.push(vec![
                    r.claim.clone(),
                    r.params.to_string(),
                    kind,
                    r.verdict.to_string(),
                    r.evidence.summary(),
                ]);
            }
            csv_string(rows)
        }
        _ => {
            let mut s = String::new();
            let w = results.iter().map(|r| r.claim.len()).max().unwrap_or(5);
            for r in &results {
                s.push_str(&format!(
                    "{:<w$}  {:<10}  {:<13}  {}\n",
                    r.claim,
                    r.params.to_string(),
                    r.verdict.to_string(),
                    r.evidence.summary()
                ));
            }
            s.push_str(&format!(
                "\n{:<w$}  {:>5}  {:>7}  {:>8}\n",
                "claim", "exact", "numeric", "mismatch"
            ));
            for c in &summary {
                s.push_str(&format!(
                    "{:<w$}  {:>5}  {:>7}  {:>8}\n",
                    c.claim, c.exact_match, c.numeric_match, c.mismatch
                ));
            }
            if let Some(d) = &drift {
                if d.is_empty() {
                    s.push_str("\nbaseline: no drift\n");
                } else {
                    s.push_str(&format!("\nbaseline drift ({}):\n", d.len()));
                    for line in d {
                        s.push_str(&format!("  {line}\n"));
                    }
                }
            }
            s
        }
    };
    let status = match &drift {
        Some(d) if !d.is_empty() => {
            let _ = writeln!(err, "error: {} verdicts drifted from the baseline", d.len());
            EXIT_DRIFT
        }
        _ => EXIT_OK,
    };
    Ok(Outcome { body, status })
}
