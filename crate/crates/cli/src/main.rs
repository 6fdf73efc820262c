use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncspectra::closed_forms::{predict, standard_sweep, verify_many, PredictedValue, Quantity, Variant, DEFAULT_VERIFY_CAP};
use ncspectra::compare::{compare, frobenius_scan, ComparisonCase};
use ncspectra::error::Error;
use ncspectra::groups::{construct, GroupFamilySpec, FAMILY_TAGS};
use ncspectra::integral_families::{
    branch_sequence, merged_sequence, square_table, square_table_csv, square_witnesses, SquareWitness,
    SQUARE_TABLE_HEADER,
};
use ncspectra::ncgraph::{adjacency_matrix, build_graph};
use ncspectra::oracle::brute_force;
use ncspectra::spectra::{numeric_eigenvalues, EnergyValue, SpectrumKind, SpectrumMultiset};

#[derive(Parser, Debug)]
#[command(name = "ncspectra", version, about = "Spectra and energies of non-commuting graphs of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Config,
}

#[derive(Args, Debug)]
struct Config {
    /// Output format; `square-table` defaults to csv, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest group order handled by brute force.
    #[arg(long, global = true, default_value_t = DEFAULT_VERIFY_CAP)]
    cap: u128,
    /// Off-diagonal tolerance of the numeric eigensolver.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Prepend a header with the tool version.
    #[arg(long, global = true)]
    meta: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Family tags and their parameters.
    ListFamilies,
    /// Adjacency spectrum and energy.
    Spectrum(GroupArgs),
    /// Laplacian spectrum and Laplacian energy.
    Laplacian(GroupArgs),
    /// E, LE and the verdict.
    Energy(GroupArgs),
    /// E against LE by every available path.
    Compare(GroupArgs),
    /// Check closed forms against brute force.
    Verify(VerifyArgs),
    /// Terms n with (n-1)(5n-1) a perfect square.
    IntegralSeq {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// One of the three branches instead of the merged sequence.
        #[arg(long)]
        branch: Option<u8>,
    },
    /// The table of sequence terms and their square roots.
    #[command(alias = "table")]
    SquareTable {
        #[arg(long, default_value_t = 28)]
        rows: usize,
    },
    /// E against LE for Frobenius groups F_{p,q}.
    #[command(alias = "scan")]
    ScanFrobenius {
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// The non-commuting graph as an edge list or adjacency matrix.
    Export {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        edges: bool,
        #[arg(long)]
        matrix: bool,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    family: String,
    params: Vec<String>,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupFamilySpec, Error> {
        let spec = GroupFamilySpec::parse(&self.family, &self.params)?;
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Every family of the standard sweep.
    #[arg(long, conflicts_with = "family")]
    all: bool,
    #[arg(required_unless_present = "all")]
    family: Option<String>,
    /// Parameters; each may be a single value or an inclusive range `a..b`.
    params: Vec<String>,
}

/// Reported failures, by exit code.
enum Failure {
    BadArgs(String),
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::TooLarge { .. } | Error::NotApplicable(_) => Failure::Unsupported(e.to_string()),
            _ => Failure::BadArgs(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::BadArgs(e.to_string())
    }
}

struct Report {
    text: String,
    /// Set when every result was skipped.
    all_skipped: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, all_skipped: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => match emit(&cli.config, &report.text) {
            Ok(()) if report.all_skipped => {
                eprintln!("ncspectra: every result was skipped");
                ExitCode::from(3)
            }
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("ncspectra: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::BadArgs(msg)) => {
            eprintln!("ncspectra: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(msg)) => {
            eprintln!("ncspectra: {msg}");
            ExitCode::from(3)
        }
    }
}

fn emit(config: &Config, text: &str) -> io::Result<()> {
    match &config.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cfg = &cli.config;
    if cfg.cap < 6 {
        return Err(Failure::BadArgs(format!("--cap must be at least 6, got {}", cfg.cap)));
    }
    if !(cfg.tol > 0.0 && cfg.tol <= 1e-4) {
        return Err(Failure::BadArgs(format!("--tol must lie in (0, 1e-4], got {}", cfg.tol)));
    }
    let default = match cli.command {
        Command::SquareTable { .. } => Format::Csv,
        _ => Format::Text,
    };
    let format = cfg.format.unwrap_or(default);
    let body = match &cli.command {
        Command::ListFamilies => Report::ok(list_families(format)?),
        Command::Spectrum(g) => Report::ok(spectrum(&g.spec()?, SpectrumKind::Adjacency, cfg, format)?),
        Command::Laplacian(g) => Report::ok(spectrum(&g.spec()?, SpectrumKind::Laplacian, cfg, format)?),
        Command::Energy(g) => Report::ok(energies(&g.spec()?, cfg, format)?),
        Command::Compare(g) => Report::ok(cases(&[compare(&g.spec()?, cfg.cap)?], format)?),
        Command::Verify(v) => verify(v, cfg, format)?,
        Command::IntegralSeq { count, branch } => Report::ok(integral_seq(*count, *branch, format)?),
        Command::SquareTable { rows } => Report::ok(table(*rows, format)?),
        Command::ScanFrobenius { pmax } => Report::ok(cases(&frobenius_scan(*pmax, cfg.cap)?, format)?),
        Command::Export { group, edges, .. } => Report::ok(export(&group.spec()?, *edges, cfg, format)?),
    };
    Ok(Report { text: with_meta(cfg.meta, format, body.text), all_skipped: body.all_skipped })
}

fn with_meta(meta: bool, format: Format, body: String) -> String {
    if !meta {
        return body;
    }
    let version = env!("CARGO_PKG_VERSION");
    match format {
        Format::Json => {
            let data: Value = serde_json::from_str(&body).unwrap_or(Value::String(body));
            let mut s = serde_json::to_string_pretty(&json!({"meta": {"ncspectra": version}, "data": data})).unwrap();
            s.push('\n');
            s
        }
        _ => format!("# ncspectra {version}\n{body}"),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<String, Failure>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Failure::BadArgs(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r.into_iter().collect::<Vec<_>>()).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::BadArgs(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn list_families(format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Text => FAMILY_TAGS.iter().map(|(t, p, d)| format!("{t:<10} {p:<6} {d}\n")).collect(),
        Format::Json => pretty(&json!(FAMILY_TAGS
            .iter()
            .map(|(t, p, d)| json!({"tag": t, "params": p, "description": d}))
            .collect::<Vec<_>>())),
        Format::Csv => csv_rows(
            &["tag", "params", "description"],
            FAMILY_TAGS.iter().map(|(t, p, d)| [t.to_string(), p.to_string(), d.to_string()]),
        )?,
    })
}

/// Spectrum, its energy, and where they came from.
struct Spectral {
    spectrum: SpectrumMultiset,
    energy: EnergyValue,
    provenance: &'static str,
    /// Largest gap between the exact values and the numeric eigensolver.
    numeric_deviation: Option<f64>,
}

fn spectral(spec: &GroupFamilySpec, kind: SpectrumKind, cfg: &Config) -> Result<Spectral, Failure> {
    if spec.predicted_order() <= cfg.cap {
        let g = construct(spec)?;
        let b = brute_force(&g)?;
        let (spectrum, energy) = match kind {
            SpectrumKind::Adjacency => (b.adjacency, b.energy),
            SpectrumKind::Laplacian => (b.laplacian, b.laplacian_energy),
        };
        let mut numeric_deviation = None;
        if kind == SpectrumKind::Adjacency && b.method == ncspectra::oracle::OracleMethod::Dense {
            let m = adjacency_matrix(&build_graph(&g)?);
            let num = numeric_eigenvalues(&m, cfg.tol)?;
            numeric_deviation = spectrum.distance_to(&num.values);
        }
        return Ok(Spectral { spectrum, energy, provenance: "brute-force", numeric_deviation });
    }
    let (sq, eq) = match kind {
        SpectrumKind::Adjacency => (Quantity::Spectrum, Quantity::Energy),
        SpectrumKind::Laplacian => (Quantity::LaplacianSpectrum, Quantity::LaplacianEnergy),
    };
    let preds = predict(spec);
    let pick = |q: Quantity| {
        let mut found: Vec<_> = preds.iter().filter(|p| p.quantity == q).collect();
        found.sort_by_key(|p| p.variant != Variant::TraceCorrected);
        found.first().map(|p| p.value.clone())
    };
    match (pick(sq), pick(eq)) {
        (Some(PredictedValue::Spectrum(s)), Some(PredictedValue::Energy(e))) => {
            Ok(Spectral { spectrum: s, energy: e, provenance: "closed-form", numeric_deviation: None })
        }
        _ => Err(Error::TooLarge { order: spec.predicted_order(), cap: cfg.cap }.into()),
    }
}

fn spectrum(spec: &GroupFamilySpec, kind: SpectrumKind, cfg: &Config, format: Format) -> Result<String, Failure> {
    let s = spectral(spec, kind, cfg)?;
    let name = if kind == SpectrumKind::Adjacency { "E" } else { "LE" };
    Ok(match format {
        Format::Text => {
            let mut out = format!("{spec}\n{} spectrum: {}\n{name} = {}\n", kind.as_str(), s.spectrum, s.energy);
            if let Some(d) = s.numeric_deviation {
                out.push_str(&format!("numeric check: max deviation {d:.3e}\n"));
            }
            out.push_str(&format!("provenance: {}\n", s.provenance));
            out
        }
        Format::Json => {
            let mut v = json!({
                "group": spec.to_string(),
                "spectrum": s.spectrum.to_json(),
                name: s.energy.to_json(),
                "provenance": s.provenance,
            });
            if let Some(d) = s.numeric_deviation {
                v["numeric_deviation"] = json!(d);
            }
            pretty(&v)
        }
        Format::Csv => csv_rows(
            &["value", "multiplicity", "approx"],
            s.spectrum.entries().iter().map(|(v, m)| [v.to_string(), m.to_string(), format!("{:.12}", v.approx())]),
        )?,
    })
}

fn energies(spec: &GroupFamilySpec, cfg: &Config, format: Format) -> Result<String, Failure> {
    let a = spectral(spec, SpectrumKind::Adjacency, cfg)?;
    let l = spectral(spec, SpectrumKind::Laplacian, cfg)?;
    let verdict = ncspectra::spectra::compare_energies(&a.energy, &l.energy);
    Ok(match format {
        Format::Text => format!("{spec}\nE = {}\nLE = {}\nverdict: {verdict}\n", a.energy, l.energy),
        Format::Json => pretty(&json!({
            "group": spec.to_string(),
            "E": a.energy.to_json(),
            "LE": l.energy.to_json(),
            "verdict": verdict.as_str(),
            "provenance": a.provenance,
        })),
        Format::Csv => csv_rows(
            &["group", "E", "LE", "verdict"],
            [[spec.to_string(), a.energy.to_string(), l.energy.to_string(), verdict.to_string()]],
        )?,
    })
}

fn cases(cs: &[ComparisonCase], format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for c in cs {
                out.push_str(&format!("{}: E = {}, LE = {}, {} [{}]\n", c.group, c.e, c.le, c.verdict, c.provenance));
                for (k, v) in &c.conditions {
                    out.push_str(&format!("  {k}: {}\n", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())));
                }
                if let Some(claims) = &c.claims {
                    if let Some(v) = claims.verdict {
                        out.push_str(&format!("  claimed ({}): {v}\n", claims.source.as_str()));
                    }
                }
                for f in &c.flags {
                    out.push_str(&format!("  flag: {f}\n"));
                }
            }
            out
        }
        Format::Json => {
            let v: Vec<Value> = cs.iter().map(ComparisonCase::to_json).collect();
            pretty(&if v.len() == 1 { v[0].clone() } else { json!(v) })
        }
        Format::Csv => csv_rows(
            &["group", "E", "LE", "E_approx", "LE_approx", "verdict", "provenance", "flags"],
            cs.iter().map(|c| {
                [
                    c.group.clone(),
                    c.e.to_string(),
                    c.le.to_string(),
                    format!("{:.9}", c.e.approx()),
                    format!("{:.9}", c.le.approx()),
                    c.verdict.to_string(),
                    c.provenance.to_string(),
                    c.flags.join("; "),
                ]
            }),
        )?,
    })
}

/// `a` or `a..b`, inclusive.
fn expand(param: &str) -> Result<Vec<String>, Failure> {
    let Some((a, b)) = param.split_once("..") else {
        return Ok(vec![param.to_string()]);
    };
    let parse = |s: &str| s.parse::<u64>().map_err(|_| Failure::BadArgs(format!("bad range `{param}`")));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b || b - a > 10_000 {
        return Err(Failure::BadArgs(format!("bad range `{param}`")));
    }
    Ok((a..=b).map(|x| x.to_string()).collect())
}

fn verify(v: &VerifyArgs, cfg: &Config, format: Format) -> Result<Report, Failure> {
    let specs = if v.all {
        standard_sweep()
    } else {
        let family = v.family.as_deref().expect("required unless --all");
        let mut combos: Vec<Vec<String>> = vec![vec![]];
        for p in &v.params {
            let vals = expand(p)?;
            combos = combos
                .into_iter()
                .flat_map(|c| vals.iter().map(move |x| [c.clone(), vec![x.clone()]].concat()))
                .collect();
        }
        let mut specs = Vec::new();
        let mut first_err = None;
        for c in combos {
            match GroupFamilySpec::parse(family, &c).and_then(|s| s.validate().map(|_| s)) {
                Ok(s) => specs.push(s),
                Err(e) => first_err = first_err.or(Some(e)),
            }
        }
        if specs.is_empty() {
            return Err(first_err.expect("no combination parsed").into());
        }
        specs
    };
    let records = verify_many(&specs, cfg.cap);
    let all_skipped = records.iter().all(|r| r.is_skipped());
    let text = match format {
        Format::Text => records.iter().map(|r| r.to_markdown() + "\n").collect(),
        Format::Json => pretty(&json!(records.iter().map(|r| r.to_json()).collect::<Vec<_>>())),
        Format::Csv => csv_rows(
            &["group", "formula", "variant", "quantity", "status", "witness"],
            records.iter().flat_map(|r| {
                r.outcomes.iter().map(move |o| {
                    [
                        r.spec.to_string(),
                        o.id().as_str().to_string(),
                        o.variant().as_str().to_string(),
                        o.quantity().as_str().to_string(),
                        o.status.as_str().to_string(),
                        o.status.witness().unwrap_or_default().to_string(),
                    ]
                })
            }),
        )?,
    };
    Ok(Report { text, all_skipped })
}

fn integral_seq(count: usize, branch: Option<u8>, format: Format) -> Result<String, Failure> {
    let terms = match branch {
        Some(b) => branch_sequence(b, count)?,
        None => merged_sequence(count),
    };
    let rows: Vec<[String; 4]> = terms
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let (a, b) = match square_witnesses(n) {
                SquareWitness::Square(a, b) => (a.to_string(), b.to_string()),
                SquareWitness::NotSquare => (String::new(), String::new()),
            };
            [(i + 1).to_string(), n.to_string(), a, b]
        })
        .collect();
    Ok(match format {
        Format::Text => rows.iter().map(|[i, n, a, b]| format!("{i:>3}  {n}  {a}  {b}\n")).collect(),
        Format::Json => pretty(&json!(rows
            .iter()
            .map(|[i, n, a, b]| json!({"index": i.parse::<usize>().unwrap(), "n": n, "sqrt(n-1)": a, "sqrt(5n-1)": b}))
            .collect::<Vec<_>>())),
        Format::Csv => csv_rows(&["index", "n", "sqrt(n-1)", "sqrt(5n-1)"], rows)?,
    })
}

fn table(rows: usize, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Csv => square_table_csv(rows)?,
        Format::Text => {
            let mut out = SQUARE_TABLE_HEADER.join("  ") + "\n";
            for r in square_table(rows) {
                let half = r.half.map(|h| h.to_string()).unwrap_or_default();
                out.push_str(&format!("{}  {}  {}  {half}\n", r.n, r.sqrt_n_minus_1, r.sqrt_5n_minus_1));
            }
            out
        }
        Format::Json => pretty(&json!(square_table(rows)
            .iter()
            .map(|r| json!({
                "n": r.n.to_string(),
                "sqrt(n-1)": r.sqrt_n_minus_1.to_string(),
                "sqrt(5n-1)": r.sqrt_5n_minus_1.to_string(),
                "n/2": r.half.as_ref().map(|h| h.to_string()),
            }))
            .collect::<Vec<_>>())),
    })
}

fn export(spec: &GroupFamilySpec, edges: bool, cfg: &Config, format: Format) -> Result<String, Failure> {
    if spec.predicted_order() > cfg.cap {
        return Err(Error::TooLarge { order: spec.predicted_order(), cap: cfg.cap }.into());
    }
    let g = build_graph(&construct(spec)?)?;
    Ok(match (edges, format) {
        (true, Format::Json) => pretty(&json!({
            "group": spec.to_string(),
            "vertices": g.labels(),
            "edges": g.edge_list().iter().map(|&(u, v)| [g.labels()[u].clone(), g.labels()[v].clone()]).collect::<Vec<_>>(),
        })),
        (true, _) => g.edge_list_text(),
        (false, Format::Json) => pretty(&json!({
            "group": spec.to_string(),
            "vertices": g.labels(),
            "adjacency": (0..g.vertex_count())
                .map(|i| (0..g.vertex_count()).map(|j| u8::from(g.adjacent(i, j))).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })),
        (false, _) => g.matrix_csv()?,
    })
}
