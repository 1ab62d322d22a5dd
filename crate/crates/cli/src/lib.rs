//! Command-line front end for `graph-energy`.
//!
//! Exit codes: 0 success, 1 some construction was not certified, 2 input
//! or usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use graph_energy::bounds::{
    energy_lower_report, koolen_moulton_report, matrix_upper_report, refined_upper, theorem2_chain,
    BoundReport, ChainDiagnostic,
};
use graph_energy::characterization::{grade_near_maximal, theorem3_check, DEFAULT_DELTA};
use graph_energy::construction::{construct_max_energy_graph, sweep, SWEEP_CSV_HEADER};
use graph_energy::report::{format_real, Document};
use graph_energy::{paley_graph, singular_values, symmetric_eigenvalues, Graph, RealMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNCERTIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "genergy", version, about = "Graph and matrix energy toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Graph,
    Matrix,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy and full spectrum of a graph or matrix file (`-` reads stdin).
    Energy {
        file: PathBuf,
        #[arg(long = "as", value_enum)]
        kind: Option<InputKind>,
    },
    /// Paley graph of prime order p ≡ 1 (mod 4) and its spectrum.
    Paley {
        p: u64,
        /// Also write the graph in edge-list format to this path.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Build a graph of order n with certified energy ≥ n^{3/2}/2 − n^{11/10}.
    Construct {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the constructed graph in edge-list format to this path.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Evaluate every applicable energy bound and the bound's proof chain.
    Bounds {
        file: PathBuf,
        #[arg(long = "as", value_enum)]
        kind: Option<InputKind>,
    },
    /// Grade a nonnegative square matrix against the near-maximal-energy conditions.
    Grade {
        file: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[arg(long = "as", value_enum)]
        kind: Option<InputKind>,
    },
    /// Run the construction for every n in [n_min, n_max] and emit one CSV row per n.
    Sweep {
        n_min: usize,
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A graph or matrix read from an input file.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Graph(Graph),
    Matrix(RealMatrix),
}

impl Input {
    pub fn matrix(&self) -> Result<RealMatrix, String> {
        match self {
            Input::Graph(g) => g.adjacency_matrix().map_err(|e| e.to_string()),
            Input::Matrix(m) => Ok(m.clone()),
        }
    }
}

/// Edge-list files win when both readings would be valid; `kind` overrides.
pub fn parse_input(text: &str, kind: Option<InputKind>) -> Result<Input, String> {
    match kind {
        Some(InputKind::Graph) => Graph::parse_edge_list(text)
            .map(Input::Graph)
            .map_err(|e| format!("invalid graph: {e}")),
        Some(InputKind::Matrix) => RealMatrix::parse(text)
            .map(Input::Matrix)
            .map_err(|e| format!("invalid matrix: {e}")),
        None => match Graph::parse_edge_list(text) {
            Ok(g) => Ok(Input::Graph(g)),
            Err(graph_err) => RealMatrix::parse(text).map(Input::Matrix).map_err(|matrix_err| {
                format!("input is neither a graph ({graph_err}) nor a matrix ({matrix_err})")
            }),
        },
    }
}

struct Outcome {
    body: String,
    code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, code: EXIT_OK }
    }
}

fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Text => doc.to_text(),
        Format::Json => format!("{:#}\n", doc.to_json()),
        Format::Csv => doc.to_csv(),
    }
}

fn read_source(path: &Path, stdin: &mut dyn Read) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn write_graph(path: &Path, g: &Graph) -> Result<(), String> {
    fs::write(path, g.to_edge_list()).map_err(|e| format!("{}: {e}", path.display()))
}

fn spectrum_document(kind: &str, input: &Input) -> Result<Document, String> {
    let m = input.matrix()?;
    let sv = singular_values(&m).map_err(|e| e.to_string())?;
    let mut d = Document::new(kind);
    match input {
        Input::Graph(g) => {
            d.push("input", "graph")
                .push("order", g.order())
                .push("edges", g.edge_count());
        }
        Input::Matrix(a) => {
            d.push("input", "matrix")
                .push("rows", a.rows())
                .push("cols", a.cols());
        }
    }
    d.push("energy", sv.energy())
        .push("singular_values", sv.values());
    if m.is_symmetric() {
        let ev = symmetric_eigenvalues(&m).map_err(|e| e.to_string())?;
        d.push("eigenvalues", ev.values());
    }
    Ok(d)
}

fn bound_entries(d: &mut Document, r: &BoundReport) {
    let p = &r.name;
    d.push(format!("{p}.value"), r.value)
        .push(format!("{p}.energy"), r.subject_energy)
        .push(format!("{p}.slack"), r.slack)
        .push(format!("{p}.applicable"), r.applicable)
        .push(format!("{p}.verdict"), r.verdict.as_str());
}

fn chain_entries(d: &mut Document, chain: &ChainDiagnostic) {
    d.push("chain.available", true).push("chain.alpha", chain.alpha);
    for (i, s) in chain.steps.iter().enumerate() {
        let k = i + 1;
        d.push(format!("chain.step{k}.label"), s.label)
            .push(format!("chain.step{k}.lhs"), s.lhs)
            .push(format!("chain.step{k}.rhs"), s.rhs)
            .push(format!("chain.step{k}.holds"), s.holds);
    }
    d.push("chain.all_hold", chain.all_hold());
}

fn bounds_document(input: &Input) -> Result<Document, String> {
    let err = |e: graph_energy::Error| e.to_string();
    let m = input.matrix()?;
    m.check_nonnegative().map_err(err)?;
    let mut d = Document::new("bounds");
    if let Input::Graph(g) = input {
        bound_entries(&mut d, &koolen_moulton_report(g).map_err(err)?);
    }
    bound_entries(&mut d, &matrix_upper_report(&m).map_err(err)?);
    let oriented = if m.rows() > m.cols() { m.transpose() } else { m.clone() };
    bound_entries(&mut d, &refined_upper(&oriented).map_err(err)?);
    if let Input::Graph(g) = input {
        bound_entries(&mut d, &energy_lower_report(g).map_err(err)?);
    }
    match theorem2_chain(&m) {
        Ok(chain) => chain_entries(&mut d, &chain),
        Err(e) => {
            d.push("chain.available", false)
                .push("chain.reason", e.to_string().as_str());
        }
    }
    Ok(d)
}

fn grade_document(input: &Input, epsilon: f64, delta: f64) -> Result<Document, String> {
    let m = input.matrix()?;
    let report = grade_near_maximal(&m, epsilon, delta).map_err(|e| e.to_string())?;
    let mut d = report.to_document();
    match theorem3_check(&m, epsilon, delta) {
        Ok(c) => {
            d.push("complement.available", true);
            d.extend_prefixed("complement", &c.to_document());
        }
        Err(e) => {
            d.push("complement.available", false)
                .push("complement.reason", e.to_string().as_str());
        }
    }
    Ok(d)
}

fn sweep_output(n_min: usize, n_max: usize, step: usize, seed: u64, format: Format) -> Result<Outcome, String> {
    let rows = sweep(n_min, n_max, step, seed).map_err(|e| e.to_string())?;
    let code = if rows.iter().all(|r| r.certified) {
        EXIT_OK
    } else {
        EXIT_UNCERTIFIED
    };
    let body = match format {
        Format::Json => {
            let items: Vec<_> = rows.iter().map(|r| r.to_document().to_json()).collect();
            format!("{:#}\n", serde_json::Value::Array(items))
        }
        Format::Text | Format::Csv => {
            let mut out = format!("{SWEEP_CSV_HEADER}\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.n,
                    r.p,
                    r.window_ok,
                    format_real(r.energy),
                    format_real(r.target),
                    format_real(r.km_bound),
                    r.certified
                ));
            }
            out
        }
    };
    Ok(Outcome { body, code })
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<Outcome, String> {
    let format = cli.format;
    match cli.command {
        Command::Energy { file, kind } => {
            let input = parse_input(&read_source(&file, stdin)?, kind)?;
            Ok(Outcome::ok(render(&spectrum_document("energy", &input)?, format)))
        }
        Command::Paley { p, graph_out } => {
            let g = paley_graph(p).map_err(|e| e.to_string())?;
            if let Some(path) = graph_out {
                write_graph(&path, &g)?;
            }
            let input = Input::Graph(g);
            let mut d = spectrum_document("paley", &input)?;
            let Input::Graph(g) = &input else { unreachable!() };
            let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            d.push("p", p).push("edge_list", edges.join(" ").as_str());
            Ok(Outcome::ok(render(&d, format)))
        }
        Command::Construct { n, seed, graph_out } => {
            let report = construct_max_energy_graph(n, seed).map_err(|e| e.to_string())?;
            if let Some(path) = graph_out {
                let host = paley_graph(report.p).map_err(|e| e.to_string())?;
                let g = host.induced_subgraph(&report.x).map_err(|e| e.to_string())?;
                write_graph(&path, &g)?;
            }
            let code = if report.certified {
                EXIT_OK
            } else {
                EXIT_UNCERTIFIED
            };
            Ok(Outcome {
                body: render(&report.to_document(), format),
                code,
            })
        }
        Command::Bounds { file, kind } => {
            let input = parse_input(&read_source(&file, stdin)?, kind)?;
            Ok(Outcome::ok(render(&bounds_document(&input)?, format)))
        }
        Command::Grade {
            file,
            epsilon,
            delta,
            kind,
        } => {
            let input = parse_input(&read_source(&file, stdin)?, kind)?;
            Ok(Outcome::ok(render(&grade_document(&input, epsilon, delta)?, format)))
        }
        Command::Sweep {
            n_min,
            n_max,
            step,
            seed,
        } => sweep_output(n_min, n_max, step, seed, format),
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, stdin) {
        Ok(out) => {
            let _ = stdout.write_all(out.body.as_bytes());
            out.code
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}
