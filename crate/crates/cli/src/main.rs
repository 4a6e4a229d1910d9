use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use partalg::alcove::position;
use partalg::branching::{
    enumerate_paths_bounded, vertices_at_level, DimensionTable, Path, Vertex,
};
use partalg::diagram::{enumerate_diagrams_bounded, AlgebraElement, DEFAULT_MAX_DIAGRAM_LEVEL};
use partalg::dot::emit_dot;
use partalg::kronecker::KroneckerEngine;
use partalg::modules::{
    decomposition_row, is_permissible, restrict_cell, restrict_simple, simple_dimension_verified,
    SimpleDimensions,
};
use partalg::residues::{
    content_vector, linkage_classes, linkage_classes_brute_force, residue_vector,
};
use partalg::selftest::{run_selftest, SELFTEST_MAX_LEVEL, SELFTEST_MAX_N};
use partalg::{Error, Partition};

const DEFAULT_MAX_K: usize = 14;
const DEFAULT_MAX_N: usize = 10;

#[derive(Parser)]
#[command(
    name = "partalg",
    version,
    about = "Partition algebra representation theory calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Args)]
struct Common {
    /// Output format (defaults to json, or dot for graph-dot)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest level accepted before refusing
    #[arg(long = "max-k", default_value_t = DEFAULT_MAX_K)]
    max_k: usize,
    /// Cross-check results against brute-force oracles
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct Triple {
    #[arg(long, value_parser = parse_partition)]
    lambda: Partition,
    #[arg(long, value_parser = parse_partition)]
    mu: Partition,
    #[arg(long, value_parser = parse_partition)]
    nu: Partition,
    /// Largest symmetric-group degree accepted before refusing
    #[arg(long = "max-n", default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the diagrams spanning P_k
    Diagrams {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Multiply two algebra elements, e.g. "z * [[1,1']] + 2 * [[1],[1']]"
    Mult {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        common: Common,
    },
    /// Paths to (lambda, k), with contents and, given n, residues and permissibility
    Paths {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Cell, and given n, simple and radical dimensions at level k
    Dims {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Linkage classes at level k
    Blocks {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Decomposition rows of the cell modules at level k
    Decomp {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Restrict to one cell module
        #[arg(long, value_parser = parse_partition)]
        lambda: Option<Partition>,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension of the simple module L(lambda)
    SimpleDim {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[command(flatten)]
        common: Common,
    },
    /// Restriction to level k-1 of the cell module, or of the simple module given n
    Restrict {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Test one path, or list the permissible paths to (lambda, k)
    Permissible {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_partition)]
        lambda: Option<Partition>,
        /// Shapes along the path, e.g. "[],[],[1],[1]"
        #[arg(long, value_parser = parse_path)]
        path: Option<Path>,
        #[command(flatten)]
        common: Common,
    },
    /// Kronecker coefficients of the padded triple for n up to --nmax
    Kronecker {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Stable Kronecker coefficient and the n at which it is read off
    Stable {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        common: Common,
    },
    /// Check that the Kronecker sequence increases to its stable value
    Monotone {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Graphviz rendering of levels 0..=k, styled by alcove position
    GraphDot {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive oracle suites on small instances
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn parse_path(s: &str) -> Result<Path, String> {
    s.parse::<Path>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceBound { .. } | Error::OutOfRange { .. } => {
                Failure::Resource(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// A result in every format the verb supports.
struct Report {
    json: Value,
    csv: Option<Table>,
    dot: Option<String>,
    ok: bool,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn json(json: Value) -> Self {
        Report {
            json,
            csv: None,
            dot: None,
            ok: true,
        }
    }

    fn with_csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some(Table { header, rows });
        self
    }

    fn render(self, format: Format, verb: &str) -> Result<String, Failure> {
        match format {
            Format::Json => Ok(format!("{}\n", self.json)),
            Format::Dot => self.dot.ok_or_else(|| {
                Failure::Usage(format!("--format dot is not supported by `{verb}`"))
            }),
            Format::Csv => {
                let table = self.csv.ok_or_else(|| {
                    Failure::Usage(format!("--format csv is not supported by `{verb}`"))
                })?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header)?;
                for row in &table.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

fn check_k(k: usize, common: &Common) -> Result<(), Failure> {
    if k > common.max_k {
        return Err(Failure::Resource(format!(
            "--k {k} exceeds --max-k {}",
            common.max_k
        )));
    }
    Ok(())
}

fn vertex(lambda: &Partition, k: usize) -> Result<Vertex, Failure> {
    Vertex::new(lambda.clone(), k).map_err(|e| Failure::Domain(format!("--lambda: {e}")))
}

fn vertex_json(v: &Vertex) -> Value {
    json!({ "shape": v.shape, "level": v.level })
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn diagrams(k: usize, common: &Common) -> Result<Report, Failure> {
    check_k(k, common)?;
    let list = enumerate_diagrams_bounded(k, common.max_k.min(DEFAULT_MAX_DIAGRAM_LEVEL))?;
    let names = strings(&list);
    let rows = names.iter().map(|d| vec![d.clone()]).collect();
    Ok(
        Report::json(json!({ "level": k, "count": list.len(), "diagrams": names }))
            .with_csv(vec!["diagram"], rows),
    )
}

fn mult(k: usize, left: &str, right: &str, common: &Common) -> Result<Report, Failure> {
    check_k(k, common)?;
    let a = AlgebraElement::parse(k, left).map_err(|e| Failure::Usage(format!("--left: {e}")))?;
    let b = AlgebraElement::parse(k, right).map_err(|e| Failure::Usage(format!("--right: {e}")))?;
    let product = a.multiply(&b)?;
    let terms: Vec<(String, String)> = product
        .terms()
        .map(|(d, c)| (d.to_string(), c.to_string()))
        .collect();
    let json_terms: Vec<Value> = terms
        .iter()
        .map(|(d, c)| json!({ "diagram": d, "coeff": c }))
        .collect();
    let rows = terms
        .iter()
        .map(|(d, c)| vec![d.clone(), c.clone()])
        .collect();
    Ok(Report::json(json!({
        "level": k,
        "left": a.to_string(),
        "right": b.to_string(),
        "product": product.to_string(),
        "terms": json_terms,
    }))
    .with_csv(vec!["diagram", "coeff"], rows))
}

fn paths(k: usize, lambda: &Partition, n: Option<i64>, common: &Common) -> Result<Report, Failure> {
    check_k(k, common)?;
    let v = vertex(lambda, k)?;
    let list = enumerate_paths_bounded(&v, common.max_k)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for t in &list {
        let content = strings(content_vector(t));
        let mut item = json!({ "path": t.to_string(), "content": content });
        let mut row = vec![t.to_string(), content.join(" ")];
        if let Some(n) = n {
            let residues = residue_vector(t, n);
            let permissible = is_permissible(t, n);
            item["residues"] = json!(residues.values);
            item["permissible"] = json!(permissible);
            row.push(residues.to_string());
            row.push(permissible.to_string());
        }
        items.push(item);
        rows.push(row);
    }
    let header = if n.is_some() {
        vec!["path", "content", "residues", "permissible"]
    } else {
        vec!["path", "content"]
    };
    Ok(
        Report::json(json!({ "vertex": vertex_json(&v), "count": list.len(), "paths": items }))
            .with_csv(header, rows),
    )
}

fn dims(k: usize, n: Option<i64>, common: &Common) -> Result<Report, Failure> {
    check_k(k, common)?;
    let table = DimensionTable::up_to(k)?;
    let mut simple = n.map(|n| SimpleDimensions::new(n, k)).transpose()?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for v in vertices_at_level(k) {
        let cell = table.get(&v).expect("in table");
        let mut item = json!({ "shape": v.shape, "level": k, "cell": cell });
        let mut row = vec![v.shape.to_string(), cell.to_string()];
        if let (Some(dims), Some(n)) = (simple.as_mut(), n) {
            let s = if common.verify {
                simple_dimension_verified(&v, n)?
            } else {
                dims.get(&v)?
            };
            item["simple"] = json!(s);
            item["radical"] = json!(cell - s);
            row.push(s.to_string());
            row.push((cell - s).to_string());
        }
        items.push(item);
        rows.push(row);
    }
    let header = if n.is_some() {
        vec!["shape", "cell", "simple", "radical"]
    } else {
        vec!["shape", "cell"]
    };
    Ok(Report::json(json!({ "level": k, "n": n, "rows": items })).with_csv(header, rows))
}

fn blocks(k: usize, n: i64, common: &Common) -> Result<Report, Failure> {
    check_k(k, common)?;
    let classes = linkage_classes(k, n);
    if common.verify && classes != linkage_classes_brute_force(k, n)? {
        return Err(Failure::Domain(format!(
            "linkage classes at k={k}, n={n} disagree with brute force"
        )));
    }
    let named: Vec<Vec<String>> = classes
        .iter()
        .map(|c| c.iter().map(|v| v.shape.to_string()).collect())
        .collect();
    let rows = named
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |s| vec![i.to_string(), s.clone()]))
        .collect();
    Ok(
        Report::json(json!({ "level": k, "n": n, "classes": named }))
            .with_csv(vec!["class", "shape"], rows),
    )
}

fn decomp(
    k: usize,
    n: i64,
    lambda: Option<&Partition>,
    common: &Common,
) -> Result<Report, Failure> {
    check_k(k, common)?;
    let cells = match lambda {
        Some(l) => vec![vertex(l, k)?],
        None => vertices_at_level(k),
    };
    let mut dims = SimpleDimensions::new(n, k)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for v in cells {
        let row = decomposition_row(&v, n);
        let cell = dims.cell(&v)?;
        let simple = dims.get(&v)?;
        let mut accounted = 0;
        let mut factors = Vec::new();
        for (w, m) in &row.factors {
            accounted += m * dims.get(w)?;
            factors.push(json!({ "shape": w.shape, "mult": m }));
            rows.push(vec![
                v.shape.to_string(),
                w.shape.to_string(),
                m.to_string(),
                cell.to_string(),
                simple.to_string(),
                (cell - simple).to_string(),
            ]);
        }
        if common.verify && accounted != cell {
            return Err(Failure::Domain(format!(
                "factors of {v} account for {accounted} of {cell} dimensions"
            )));
        }
        items.push(json!({
            "cell": vertex_json(&v),
            "factors": factors,
            "dims": { "cell": cell, "simple": simple, "radical": cell - simple },
        }));
    }
    Ok(
        Report::json(json!({ "level": k, "n": n, "rows": items })).with_csv(
            vec![
                "cell",
                "factor",
                "mult",
                "dim_cell",
                "dim_simple",
                "dim_radical",
            ],
            rows,
        ),
    )
}

fn simple_dim(k: usize, n: i64, lambda: &Partition, common: &Common) -> Result<Report, Failure> {
    check_k(k, common)?;
    let v = vertex(lambda, k)?;
    let dim = if common.verify {
        simple_dimension_verified(&v, n)?
    } else {
        SimpleDimensions::new(n, k)?.get(&v)?
    };
    Ok(Report::json(json!({ "dim": dim })).with_csv(vec!["dim"], vec![vec![dim.to_string()]]))
}

fn restrict(
    k: usize,
    lambda: &Partition,
    n: Option<i64>,
    common: &Common,
) -> Result<Report, Failure> {
    check_k(k, common)?;
    let v = vertex(lambda, k)?;
    let (module, summands) = match n {
        None => ("cell", restrict_cell(&v)?),
        Some(n) => ("simple", restrict_simple(&v, n)?),
    };
    let rows = summands
        .iter()
        .map(|w| vec![w.shape.to_string(), w.level.to_string()])
        .collect();
    Ok(Report::json(json!({
        "vertex": vertex_json(&v),
        "module": module,
        "n": n,
        "summands": summands.iter().map(vertex_json).collect::<Vec<_>>(),
    }))
    .with_csv(vec!["shape", "level"], rows))
}

fn permissible(
    n: i64,
    k: Option<usize>,
    lambda: Option<&Partition>,
    path: Option<&Path>,
    common: &Common,
) -> Result<Report, Failure> {
    if let Some(t) = path {
        check_k(t.len(), common)?;
        let ok = is_permissible(t, n);
        return Ok(
            Report::json(json!({ "path": t.to_string(), "n": n, "permissible": ok })).with_csv(
                vec!["path", "permissible"],
                vec![vec![t.to_string(), ok.to_string()]],
            ),
        );
    }
    let (Some(k), Some(lambda)) = (k, lambda) else {
        return Err(Failure::Usage(
            "permissible needs --path, or both --k and --lambda".into(),
        ));
    };
    check_k(k, common)?;
    let v = vertex(lambda, k)?;
    let list: Vec<Path> = enumerate_paths_bounded(&v, common.max_k)?
        .into_iter()
        .filter(|t| is_permissible(t, n))
        .collect();
    let names = strings(&list);
    let rows = names
        .iter()
        .map(|p| vec![p.clone(), "true".to_string()])
        .collect();
    Ok(Report::json(json!({
        "vertex": vertex_json(&v),
        "n": n,
        "position": position(&v, n).to_string(),
        "count": list.len(),
        "paths": names,
    }))
    .with_csv(vec!["path", "permissible"], rows))
}

fn check_n(n: usize, triple: &Triple, flag: &str) -> Result<(), Failure> {
    if n > triple.max_n {
        return Err(Failure::Resource(format!(
            "{flag} {n} exceeds --max-n {}",
            triple.max_n
        )));
    }
    Ok(())
}

fn kronecker(triple: &Triple, nmax: usize) -> Result<Report, Failure> {
    check_n(nmax, triple, "--nmax")?;
    let mut engine = KroneckerEngine::new(triple.max_n);
    let result = engine
        .kronecker_result(&triple.lambda, &triple.mu, &triple.nu, nmax)
        .map_err(|e| match e {
            Error::ResourceBound { requested, .. } => Failure::Resource(format!(
                "stable point n={requested} exceeds --max-n {}",
                triple.max_n
            )),
            e => e.into(),
        })?;
    let rows = result
        .sequence
        .iter()
        .map(|e| vec![e.n.to_string(), e.g.to_string(), e.valid.to_string()])
        .collect();
    Ok(
        Report::json(serde_json::to_value(&result).expect("serializable"))
            .with_csv(vec!["n", "g", "valid"], rows),
    )
}

fn stable(triple: &Triple) -> Result<Report, Failure> {
    let mut engine = KroneckerEngine::new(triple.max_n);
    let (g, n0) = engine
        .stable_kronecker(&triple.lambda, &triple.mu, &triple.nu)
        .map_err(|e| match e {
            Error::ResourceBound { requested, .. } => Failure::Resource(format!(
                "stable point n={requested} exceeds --max-n {}",
                triple.max_n
            )),
            e => e.into(),
        })?;
    Ok(Report::json(json!({
        "lambda": triple.lambda,
        "mu": triple.mu,
        "nu": triple.nu,
        "stable": g,
        "stable_at": n0,
    }))
    .with_csv(
        vec!["stable", "stable_at"],
        vec![vec![g.to_string(), n0.to_string()]],
    ))
}

fn monotone(triple: &Triple, nmax: usize) -> Result<Report, Failure> {
    check_n(nmax, triple, "--nmax")?;
    let mut engine = KroneckerEngine::new(triple.max_n);
    let report = engine
        .check_monotone(&triple.lambda, &triple.mu, &triple.nu, nmax)
        .map_err(|e| match e {
            Error::ResourceBound { requested, .. } => {
                Failure::Resource(format!("n={requested} exceeds --max-n {}", triple.max_n))
            }
            e => e.into(),
        })?;
    let r = &report.result;
    let rows = r
        .sequence
        .iter()
        .map(|e| vec![e.n.to_string(), e.g.to_string(), e.valid.to_string()])
        .collect();
    let mut out = Report::json(json!({
        "lambda": r.lambda,
        "mu": r.mu,
        "nu": r.nu,
        "pass": report.pass,
        "n": r.sequence.iter().map(|e| e.n).collect::<Vec<_>>(),
        "sequence": r.sequence.iter().map(|e| e.g).collect::<Vec<_>>(),
        "stable": r.stable,
        "stable_at": r.stable_at,
        "first_stable": report.first_stable,
        "violations": report.violations,
    }))
    .with_csv(vec!["n", "g", "valid"], rows);
    out.ok = report.pass;
    Ok(out)
}

fn graph_dot(k: usize, n: i64, common: &Common) -> Result<Report, Failure> {
    check_k(k, common)?;
    let dot = emit_dot(k, n)?;
    let mut report = Report::json(json!({ "level": k, "n": n, "dot": dot }));
    report.dot = Some(dot);
    Ok(report)
}

fn selftest() -> Result<Report, Failure> {
    let suites = run_selftest(SELFTEST_MAX_LEVEL, SELFTEST_MAX_N)?;
    let pass = suites.iter().all(|s| s.passed());
    let rows = suites
        .iter()
        .map(|s| {
            vec![
                s.name.clone(),
                s.checked.to_string(),
                s.failures.len().to_string(),
            ]
        })
        .collect();
    let mut report = Report::json(json!({
        "pass": pass,
        "max_k": SELFTEST_MAX_LEVEL,
        "max_n": SELFTEST_MAX_N,
        "suites": suites,
    }))
    .with_csv(vec!["suite", "checked", "failures"], rows);
    report.ok = pass;
    Ok(report)
}

fn run(command: &Command) -> Result<(String, bool), Failure> {
    let (verb, common, report) = match command {
        Command::Diagrams { k, common } => ("diagrams", common, diagrams(*k, common)),
        Command::Mult {
            k,
            left,
            right,
            common,
        } => ("mult", common, mult(*k, left, right, common)),
        Command::Paths {
            k,
            lambda,
            n,
            common,
        } => ("paths", common, paths(*k, lambda, *n, common)),
        Command::Dims { k, n, common } => ("dims", common, dims(*k, *n, common)),
        Command::Blocks { k, n, common } => ("blocks", common, blocks(*k, *n, common)),
        Command::Decomp {
            k,
            n,
            lambda,
            common,
        } => ("decomp", common, decomp(*k, *n, lambda.as_ref(), common)),
        Command::SimpleDim {
            k,
            n,
            lambda,
            common,
        } => ("simple-dim", common, simple_dim(*k, *n, lambda, common)),
        Command::Restrict {
            k,
            lambda,
            n,
            common,
        } => ("restrict", common, restrict(*k, lambda, *n, common)),
        Command::Permissible {
            n,
            k,
            lambda,
            path,
            common,
        } => (
            "permissible",
            common,
            permissible(*n, *k, lambda.as_ref(), path.as_ref(), common),
        ),
        Command::Kronecker {
            triple,
            nmax,
            common,
        } => ("kronecker", common, kronecker(triple, *nmax)),
        Command::Stable { triple, common } => ("stable", common, stable(triple)),
        Command::Monotone {
            triple,
            nmax,
            common,
        } => ("monotone", common, monotone(triple, *nmax)),
        Command::GraphDot { k, n, common } => ("graph-dot", common, graph_dot(*k, *n, common)),
        Command::Selftest { common } => ("selftest", common, selftest()),
    };
    let default = if verb == "graph-dot" {
        Format::Dot
    } else {
        Format::Json
    };
    let report = report?;
    let ok = report.ok;
    Ok((report.render(common.format.unwrap_or(default), verb)?, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(m) => (2, m),
                Failure::Domain(m) => (1, m),
                Failure::Resource(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
