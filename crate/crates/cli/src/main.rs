mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chromastate::closedform::{
    compile_special, passes, render_closed_form, render_special, verify, verify_special,
    IndexNames, RenderStyle,
};
use chromastate::designs::{oa_from_generator, qoa_certify};
use chromastate::entanglement::{schmidt_bounds, term_count};
use chromastate::graph::{detect_special_class, kuniform_adjacency_check, local_complement, SpecialDetection};
use chromastate::simulator::{build_graph_state, k_uniformity, lc_unitary_check};
use chromastate::{chromatic_coloring, compile_chi_color, Coloring, FieldMatrix, PrimeDimension, WeightedGraph};

use report::{ExitCode, Failure, InputDigest, RunReport, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "chromastate", version, about = "Closed forms of qudit graph states from colored graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summarize a graph file: size, coloring, special-class detection.
    Inspect { file: PathBuf },
    /// Compile the closed form of the graph state.
    ClosedForm {
        file: PathBuf,
        /// Comma-separated color label per vertex; overrides `color` lines in the file.
        #[arg(long)]
        color_hint: Option<String>,
        /// Emit the factored special-class presentation when it applies.
        #[arg(long)]
        special: bool,
        /// Comma-separated summation index names, one per vertex.
        #[arg(long)]
        index_names: Option<String>,
        /// Use Σ, ω and ⟩ instead of ASCII.
        #[arg(long)]
        unicode: bool,
    },
    /// Compare the closed form against the simulated graph state.
    Verify {
        file: PathBuf,
        /// Reinterpret the graph over another prime dimension.
        #[arg(long)]
        d_override: Option<u32>,
        #[arg(long)]
        color_hint: Option<String>,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Orthogonal array of the generator, optionally with uniformity certification.
    Designs {
        file: PathBuf,
        /// Write the array in `OA r n d k` format.
        #[arg(long)]
        oa_out: Option<PathBuf>,
        #[arg(long)]
        qoa: bool,
        #[arg(long)]
        color_hint: Option<String>,
    },
    /// Schmidt-measure and term-count bounds.
    Bounds {
        file: PathBuf,
        #[arg(long)]
        color_hint: Option<String>,
    },
    /// Local complementation at a vertex.
    Lc {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value_t = 1)]
        lambda: u32,
        /// Write the new graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nonsingular-minor conditions and simulated uniformity.
    Kuniform {
        file: PathBuf,
        #[arg(long)]
        color_hint: Option<String>,
    },
}

struct Outcome {
    ok: bool,
    text: String,
    results: Value,
}

struct Input {
    path: String,
    bytes: Vec<u8>,
    graph: WeightedGraph,
}

fn load(path: &PathBuf) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::input(format!("{}: not UTF-8", path.display())))?;
    let graph = WeightedGraph::parse(&text)?;
    Ok(Input { path: path.display().to_string(), bytes, graph })
}

fn parse_hint(list: &str) -> Result<Vec<u32>, Failure> {
    list.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Failure::input(format!("bad color label `{s}`"))))
        .collect()
}

fn coloring(g: &WeightedGraph, hint: Option<&str>) -> Result<Coloring, Failure> {
    let parsed = hint.map(parse_hint).transpose()?;
    Ok(chromatic_coloring(g, parsed.as_deref().or(g.color_hint()))?)
}

fn matrix_lines(m: &FieldMatrix) -> String {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn detection_text(det: &SpecialDetection) -> String {
    match det {
        SpecialDetection::Accepted(s) => format!(
            "special accepted: red {:?}, unconnected blue {:?}, {} component(s)",
            s.red,
            s.blue_u,
            s.s()
        ),
        SpecialDetection::Rejected(r) => format!("special rejected: {r}"),
    }
}

fn inspect(g: &WeightedGraph) -> Result<Outcome, Failure> {
    let c = chromatic_coloring(g, g.color_hint())?;
    let det = detect_special_class(g, &c);
    let mut text = String::new();
    writeln!(text, "n {}", g.n()).unwrap();
    writeln!(text, "d {}", g.d()).unwrap();
    writeln!(text, "edges {}", g.edges().len()).unwrap();
    for e in g.edges() {
        writeln!(text, "edge {} {} {}", e.u, e.v, e.weight).unwrap();
    }
    writeln!(text, "chi {}", c.chi()).unwrap();
    writeln!(text, "classes {:?}", c.class_sizes()).unwrap();
    for (i, class) in c.classes().iter().enumerate() {
        writeln!(text, "class {} {:?}", i + 1, class).unwrap();
    }
    writeln!(text, "{}", detection_text(&det)).unwrap();
    let results = json!({
        "n": g.n(),
        "d": g.d(),
        "edges": g.edges(),
        "connected": g.is_connected(),
        "coloring": c,
        "special": det,
    });
    Ok(Outcome { ok: true, text, results })
}

fn closed_form(
    g: &WeightedGraph,
    hint: Option<&str>,
    special: bool,
    names: Option<&str>,
    unicode: bool,
) -> Result<Outcome, Failure> {
    let c = coloring(g, hint)?;
    let cf = compile_chi_color(g, &c)?;
    let names = match names {
        Some(list) => IndexNames::parse(list, g.n())?,
        None => IndexNames::default_for(g.n()),
    };
    let style = if unicode { RenderStyle::Unicode } else { RenderStyle::Ascii };
    let summation = render_closed_form(&cf, g, &names, style);

    let mut text = String::new();
    writeln!(text, "chi {}", c.chi()).unwrap();
    writeln!(text, "classes {:?}", c.class_sizes()).unwrap();
    writeln!(text, "terms {}", cf.term_count()).unwrap();
    writeln!(text, "G\n{}", matrix_lines(cf.generator())).unwrap();
    writeln!(text, "Q\n{}", matrix_lines(cf.phase())).unwrap();
    writeln!(text, "{summation}").unwrap();

    let mut results = json!({
        "closed_form": cf.data(),
        "summation": summation,
    });
    if special {
        let det = detect_special_class(g, &c);
        writeln!(text, "{}", detection_text(&det)).unwrap();
        if let Some(s) = det.accepted() {
            let sf = compile_special(g, s)?;
            let factored = render_special(&sf, g, &names, style);
            writeln!(text, "{factored}").unwrap();
            results["special"] = json!({ "form": sf, "summation": factored });
        } else {
            results["special"] = json!(det);
        }
    }
    Ok(Outcome { ok: true, text, results })
}

fn verify_cmd(
    g: &WeightedGraph,
    d_override: Option<u32>,
    hint: Option<&str>,
    corrupt: bool,
) -> Result<Outcome, Failure> {
    let g = match d_override {
        Some(d) => g.with_dimension(PrimeDimension::new(d)?)?,
        None => g.clone(),
    };
    let c = coloring(&g, hint)?;
    let mut cf = compile_chi_color(&g, &c)?;
    if corrupt {
        let col = cf.target_vertices().first().copied().unwrap_or(0);
        let bumped = (cf.generator().get(0, col) + 1) % g.d();
        cf = cf.with_generator_entry(0, col, bumped);
    }
    let fidelity = verify::<f64>(&cf, &g)?;
    let mut ok = passes(fidelity);
    let mut text = format!("fidelity {fidelity:.12}\n");
    let mut results = json!({ "d": g.d(), "fidelity": fidelity, "passed": ok });
    if let Some(s) = detect_special_class(&g, &c).accepted() {
        let f = verify_special::<f64>(&compile_special(&g, s)?, &g)?;
        writeln!(text, "special fidelity {f:.12}").unwrap();
        results["special_fidelity"] = json!(f);
        ok &= passes(f);
    }
    Ok(Outcome { ok, text, results })
}

fn designs(g: &WeightedGraph, oa_out: Option<&PathBuf>, qoa: bool, hint: Option<&str>) -> Result<Outcome, Failure> {
    let c = coloring(g, hint)?;
    let cf = compile_chi_color(g, &c)?;
    let oa = oa_from_generator(cf.generator())?;
    let table = oa.to_string();
    let mut text = String::new();
    match oa_out {
        Some(path) => {
            std::fs::write(path, &table)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            writeln!(text, "{}", table.lines().next().unwrap_or_default()).unwrap();
        }
        None => text.push_str(&table),
    }
    let mut results = json!({
        "rows": oa.rows(),
        "cols": oa.cols(),
        "d": oa.dim().get(),
        "strength": oa.strength(),
    });
    if qoa {
        let cert = qoa_certify(&cf, g)?;
        let residual = cert.residual.map_or("-".to_string(), |r| format!("{r:.3e}"));
        writeln!(text, "qoa r {} n {} d {} k_star {} residual {residual}", cert.r, cert.n, cert.d, cert.k_star)
            .unwrap();
        results["qoa"] = json!({
            "r": cert.r.to_string(),
            "n": cert.n,
            "d": cert.d,
            "k_star": cert.k_star,
            "residual": cert.residual,
        });
    }
    Ok(Outcome { ok: true, text, results })
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or("-".to_string(), |v| v.to_string())
}

fn bounds(g: &WeightedGraph, hint: Option<&str>) -> Result<Outcome, Failure> {
    let c = coloring(g, hint)?;
    let b = schmidt_bounds(g, &c)?;
    let t = term_count(&compile_chi_color(g, &c)?);
    let mut text = String::new();
    writeln!(text, "chi {}", b.chi).unwrap();
    writeln!(text, "classes {:?}", b.class_sizes).unwrap();
    writeln!(text, "gamma_rank {}", b.gamma_rank).unwrap();
    writeln!(text, "lower_rank {}", b.lower_rank).unwrap();
    writeln!(text, "lower_color {}", opt(b.lower_color)).unwrap();
    writeln!(text, "upper {}", b.upper).unwrap();
    writeln!(text, "odd_cycle_transversal {}", b.odd_cycle_transversal).unwrap();
    writeln!(text, "term_lower {}", opt(b.term_lower)).unwrap();
    writeln!(text, "term_upper {}", opt(b.term_upper)).unwrap();
    writeln!(text, "terms {}", t.terms).unwrap();
    writeln!(text, "meets_lower {}", opt(t.meets_lower)).unwrap();
    let results = json!({
        "bounds": {
            "chi": b.chi,
            "class_sizes": b.class_sizes,
            "gamma_rank": b.gamma_rank,
            "lower_rank": b.lower_rank,
            "lower_color": b.lower_color,
            "upper": b.upper,
            "odd_cycle_transversal": b.odd_cycle_transversal,
            "term_lower": b.term_lower.map(|x| x.to_string()),
            "term_upper": b.term_upper.map(|x| x.to_string()),
        },
        "basis": {
            "lower_rank": "half the rank of the adjacency matrix over F_d",
            "lower_color": "sum of all but the largest class when it does not exceed the largest class; otherwise the middle class for chi = 3",
            "upper": "floor(n/2) for chi <= 2, floor((n + K)/2) otherwise, K the odd cycle transversal",
            "term_lower": "d^lower_color",
            "term_upper": "d^upper, chi = 2 only",
        },
        "term_count": { "m": t.m, "terms": t.terms.to_string(), "meets_lower": t.meets_lower },
    });
    Ok(Outcome { ok: true, text, results })
}

fn lc(input: &Input, vertex: usize, lambda: u32, out: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let g = &input.graph;
    let h = local_complement(g, vertex, lambda)?;
    let comments = vec![format!("local complement of {} at vertex {vertex}, lambda {lambda}", input.path)];
    let file = h.to_file_string(&comments);
    let fidelity = if g.d() == 2 && lambda % 2 == 1 { Some(lc_unitary_check(g, vertex)?) } else { None };
    let ok = fidelity.is_none_or(passes);
    let mut text = String::new();
    match out {
        Some(path) => {
            std::fs::write(path, &file).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            writeln!(text, "wrote {}", path.display()).unwrap();
            if let Some(f) = fidelity {
                writeln!(text, "lc fidelity {f:.12}").unwrap();
            }
        }
        None => text.push_str(&file),
    }
    let results = json!({
        "vertex": vertex,
        "lambda": lambda,
        "edges": h.sorted_edges(),
        "graph": file,
        "unitary_check_fidelity": fidelity,
    });
    Ok(Outcome { ok, text, results })
}

fn kuniform(g: &WeightedGraph, hint: Option<&str>) -> Result<Outcome, Failure> {
    let c = coloring(g, hint)?;
    let report = kuniform_adjacency_check(g, &c)?;
    let k = k_uniformity(&build_graph_state::<f64>(g)?, 1e-9)?;
    let mut text = String::new();
    writeln!(text, "a_ok {}", report.a_ok).unwrap();
    writeln!(text, "b1_ok {}", opt(report.b1_ok)).unwrap();
    writeln!(text, "k_uniformity {k}").unwrap();
    let results = json!({ "minors": report, "k_uniformity": k });
    Ok(Outcome { ok: true, text, results })
}

fn file_of(cmd: &Command) -> &PathBuf {
    match cmd {
        Command::Inspect { file }
        | Command::ClosedForm { file, .. }
        | Command::Verify { file, .. }
        | Command::Designs { file, .. }
        | Command::Bounds { file, .. }
        | Command::Lc { file, .. }
        | Command::Kuniform { file, .. } => file,
    }
}

fn name_of(cmd: &Command) -> &'static str {
    match cmd {
        Command::Inspect { .. } => "inspect",
        Command::ClosedForm { .. } => "closed-form",
        Command::Verify { .. } => "verify",
        Command::Designs { .. } => "designs",
        Command::Bounds { .. } => "bounds",
        Command::Lc { .. } => "lc",
        Command::Kuniform { .. } => "kuniform",
    }
}

fn run(cli: &Cli) -> Result<(Input, Outcome), Failure> {
    let input = load(file_of(&cli.command))?;
    let g = &input.graph;
    let outcome = match &cli.command {
        Command::Inspect { .. } => inspect(g)?,
        Command::ClosedForm { color_hint, special, index_names, unicode, .. } => {
            closed_form(g, color_hint.as_deref(), *special, index_names.as_deref(), *unicode)?
        }
        Command::Verify { d_override, color_hint, corrupt, .. } => {
            verify_cmd(g, *d_override, color_hint.as_deref(), *corrupt)?
        }
        Command::Designs { oa_out, qoa, color_hint, .. } => {
            designs(g, oa_out.as_ref(), *qoa, color_hint.as_deref())?
        }
        Command::Bounds { color_hint, .. } => bounds(g, color_hint.as_deref())?,
        Command::Lc { vertex, lambda, out, .. } => lc(&input, *vertex, *lambda, out.as_ref())?,
        Command::Kuniform { color_hint, .. } => kuniform(g, color_hint.as_deref())?,
    };
    Ok((input, outcome))
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((input, outcome)) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => {
                    let report = RunReport {
                        schema_version: report::SCHEMA_VERSION,
                        tool_version: env!("CARGO_PKG_VERSION"),
                        command: name_of(&cli.command).to_string(),
                        args: std::env::args().skip(1).collect(),
                        input: InputDigest::of(&input.path, &input.bytes),
                        status: if outcome.ok { Status::Ok } else { Status::Failed },
                        results: outcome.results,
                    };
                    println!("{}", report.to_json());
                }
            }
            if !outcome.ok {
                eprintln!("error: check failed");
                process::exit(ExitCode::Internal as i32);
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            process::exit(f.code as i32);
        }
    }
}
