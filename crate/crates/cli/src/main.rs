//! Batch front end: load a group and a preorder, run one pipeline, write
//! the result.
//!
//! Exit codes: 0 success, 2 bad input (schema, labels, preorder
//! conditions), 3 a mathematical check failed, 4 truncation could not be
//! certified, 5 I/O.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kostka_core::amod::HomCheck;
use kostka_core::builtin::{builtin_group, builtin_preorder, symmetric_rank, GROUP_NAMES};
use kostka_core::kostka::{
    block_ldl, blocks_for, is_hermitian, kostka_foulkes_charge, kostka_report, ldl_reconstructs, orthogonality, render_csv,
    render_text, trace_summaries, working_trunc, KostkaReport, MAX_CHARGE_SIZE,
};
use kostka_core::molien::{invariant_degrees, omega_matrix};
use kostka_core::scalars::RatFun;
use kostka_core::wgroup::{
    conjugate_character, load_group_file, load_preorder_file, parse_partition, partition_label, partitions, validate_malle,
    CharacterTable, Preorder, ReflectionGroup,
};
use kostka_core::KostkaError;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "kostka", version, about = "Graded Kostka matrices of small complex reflection groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Order, classes, degrees, character table and conjugation.
    Info(Common),
    /// Graded characters of the costandard modules and traces.
    Traces {
        #[command(flatten)]
        common: Common,
        /// Only this character (label or partition).
        #[arg(long)]
        chi: Option<String>,
    },
    /// Filtration matrices, block factorization and all checks.
    Kostka {
        #[command(flatten)]
        common: Common,
        /// Matrix to emit with `--format csv`.
        #[arg(long, default_value = "K")]
        matrix: String,
    },
    /// Block factorization of Ω alone.
    Ldl {
        #[command(flatten)]
        common: Common,
        /// Matrix to emit with `--format csv`: Omega, L or D.
        #[arg(long, default_value = "L")]
        matrix: String,
    },
    /// Kostka–Foulkes polynomials from the charge statistic.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, requires = "mu")]
        lambda: Option<String>,
        #[arg(long, requires = "lambda")]
        mu: Option<String>,
        /// Size of the partitions; defaults to the rank of `--group`.
        #[arg(long)]
        size: Option<usize>,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in group name or path to a group file.
    #[arg(long, default_value = "S3")]
    group: String,
    /// Built-in preorder name or path to a preorder file.
    #[arg(long, default_value = "springer")]
    preorder: String,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, default_value_t = 3)]
    buffer: usize,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Verify::Characters)]
    verify: Verify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verify {
    /// Graded characters only.
    Characters,
    /// Also explicit Hom computations between the modules.
    Full,
}

/// An error with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<KostkaError> for Failure {
    fn from(e: KostkaError) -> Self {
        let code = match &e {
            KostkaError::TruncationInsufficient { .. } => 4,
            KostkaError::Io(_) => 5,
            KostkaError::BasisIncomplete(_)
            | KostkaError::FactorizationFailed(_)
            | KostkaError::NotAUnit
            | KostkaError::DivisionByZero => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Run = std::result::Result<u8, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn load_group(src: &str) -> std::result::Result<(ReflectionGroup, CharacterTable), Failure> {
    let path = Path::new(src);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure { code: 5, msg: format!("{src}: {e}") })?;
        return load_group_file(&text).map_err(|e| input(format!("{src}: {e}")));
    }
    builtin_group(src).map_err(|_| {
        input(format!("group {src:?} is neither a file nor a built-in group ({})", GROUP_NAMES.join(", ")))
    })
}

fn load_order(src: &str, g: &ReflectionGroup, t: &CharacterTable) -> std::result::Result<Preorder, Failure> {
    let path = Path::new(src);
    let p = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure { code: 5, msg: format!("{src}: {e}") })?;
        load_preorder_file(g, t, &text).map_err(|e| input(format!("{src}: {e}")))?
    } else {
        builtin_preorder(src, g, t)?
    };
    validate_malle(&p, t)?;
    Ok(p)
}

fn trunc_for(c: &Common, g: &ReflectionGroup, t: &CharacterTable) -> std::result::Result<usize, Failure> {
    match c.trunc {
        Some(0) => Err(input("--trunc must be at least 1")),
        Some(n) => Ok(n),
        None => Ok(working_trunc(g, t)?),
    }
}

fn emit(c: &Common, text: &str) -> std::result::Result<(), Failure> {
    match &c.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure { code: 5, msg: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct InfoDoc {
    group: String,
    order: usize,
    dim_h: usize,
    degrees: Vec<usize>,
    classes: Vec<ClassDoc>,
    characters: Vec<CharDoc>,
}

#[derive(Serialize)]
struct ClassDoc {
    label: String,
    size: usize,
}

#[derive(Serialize)]
struct CharDoc {
    name: String,
    values: Vec<String>,
    conjugate: String,
}

fn cmd_info(c: &Common) -> Run {
    let (g, t) = load_group(&c.group)?;
    let degrees = invariant_degrees(&g, &t)?;
    let classes: Vec<ClassDoc> = t
        .class_labels()
        .iter()
        .zip(g.classes())
        .map(|(l, cl)| ClassDoc { label: l.clone(), size: cl.size })
        .collect();
    let characters = (0..t.len())
        .map(|chi| {
            Ok(CharDoc {
                name: t.name(chi).to_string(),
                values: t.row(chi).iter().map(|v| v.to_string()).collect(),
                conjugate: t.name(conjugate_character(&t, chi)?).to_string(),
            })
        })
        .collect::<kostka_core::Result<Vec<_>>>()?;
    let doc = InfoDoc { group: g.name().to_string(), order: g.order(), dim_h: g.dim_h(), degrees, classes, characters };
    let out = match c.format {
        Format::Json => json(&doc),
        Format::Csv | Format::Text => {
            let labels: Vec<String> = doc.classes.iter().map(|cl| format!("{} ({})", cl.label, cl.size)).collect();
            let names: Vec<String> = doc.characters.iter().map(|ch| ch.name.clone()).collect();
            let rows: Vec<Vec<String>> = doc.characters.iter().map(|ch| ch.values.clone()).collect();
            if c.format == Format::Csv {
                table_csv(&names, &labels, &rows)
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "group {}  order {}  dim h {}  degrees {:?}", doc.group, doc.order, doc.dim_h, doc.degrees);
                let _ = writeln!(s, "classes {}", doc.classes.len());
                s.push_str(&table_text(&names, &labels, &rows));
                let conj: Vec<String> =
                    doc.characters.iter().filter(|ch| ch.conjugate > ch.name).map(|ch| format!("{} <-> {}", ch.name, ch.conjugate)).collect();
                let _ = writeln!(s, "conjugation {}", if conj.is_empty() { "trivial".to_string() } else { conj.join(", ") });
                s
            }
        }
    };
    emit(c, &out)?;
    Ok(0)
}

/// Table with distinct row and column labels.
fn table_text(rows: &[String], cols: &[String], cells: &[Vec<String>]) -> String {
    let rw = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).chain([cols[j].chars().count()]).max().unwrap_or(0))
        .collect();
    let mut s = format!("{:rw$}", "");
    for (j, c) in cols.iter().enumerate() {
        let _ = write!(s, "  {c:<w$}", w = widths[j]);
    }
    s.push('\n');
    for (r, row) in rows.iter().zip(cells) {
        let _ = write!(s, "{r:<rw$}");
        for (j, e) in row.iter().enumerate() {
            let _ = write!(s, "  {e:<w$}", w = widths[j]);
        }
        s.push('\n');
    }
    s
}

fn table_csv(rows: &[String], cols: &[String], cells: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(cols.iter().cloned());
    w.write_record(&header).expect("in-memory write");
    for (r, row) in rows.iter().zip(cells) {
        let mut rec = vec![r.clone()];
        rec.extend(row.iter().cloned());
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// `grade k: decomposition` lines for one multiplicity vector.
fn grade_lines(t: &CharacterTable, mults: &[kostka_core::scalars::QSeries<kostka_core::scalars::Q>], top: usize) -> Vec<String> {
    (0..=top)
        .map(|k| {
            let terms: Vec<String> = mults
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.coeff(k).is_zero())
                .map(|(psi, s)| if s.coeff(k).is_one() { t.name(psi).to_string() } else { format!("{}*{}", s.coeff(k), t.name(psi)) })
                .collect();
            if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }
        })
        .collect()
}

fn cmd_traces(c: &Common, chi: Option<&str>) -> Run {
    let (g, t) = load_group(&c.group)?;
    let p = load_order(&c.preorder, &g, &t)?;
    let trunc = trunc_for(c, &g, &t)?;
    let chis = match chi {
        Some(l) => vec![t.resolve(&g, l).map_err(|_| input(format!("unknown character label {l:?}")))?],
        None => Vec::new(),
    };
    let sums = trace_summaries(&g, &t, &p, &chis, trunc, c.buffer)?;
    let mut structure_ok = sums.iter().all(|s| s.structure);
    let homs = if c.verify == Verify::Full {
        let h = orthogonality(&g, &t, &p, trunc, c.buffer)?;
        structure_ok &= theorem_checks_pass(&h);
        Some(h)
    } else {
        None
    };
    let out = match c.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                group: &'a str,
                preorder: Vec<Vec<String>>,
                trunc: usize,
                characters: Vec<String>,
                traces: &'a [kostka_core::kostka::TraceSummary],
                #[serde(skip_serializing_if = "Option::is_none")]
                hom_checks: Option<&'a Vec<HomCheck>>,
            }
            json(&Doc {
                group: g.name(),
                preorder: p.labels(&t),
                trunc,
                characters: t.names().to_vec(),
                traces: &sums,
                hom_checks: homs.as_ref(),
            })
        }
        Format::Csv => {
            let rows: Vec<String> = sums.iter().map(|s| s.chi.clone()).collect();
            let cols = vec!["trace".to_string(), "top".into(), "certified_at".into(), "structure".into()];
            let cells: Vec<Vec<String>> = sums
                .iter()
                .map(|s| {
                    vec![
                        grade_lines(&t, &s.trace, s.top).join("; "),
                        s.top.to_string(),
                        s.certified_at.to_string(),
                        s.structure.to_string(),
                    ]
                })
                .collect();
            table_csv(&rows, &cols, &cells)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group {}  trunc {}", g.name(), trunc);
            for sm in &sums {
                let _ = writeln!(
                    s,
                    "trace {}  top {}  certified finite at {}  structure {}",
                    sm.chi,
                    sm.top,
                    sm.certified_at,
                    if sm.structure { "ok" } else { "FAILED" }
                );
                let _ = writeln!(s, "  grades ({})", grade_lines(&t, &sm.trace, sm.top).join("; "));
                let shown = 4.min(trunc);
                let _ = writeln!(s, "  costandard to grade {shown}: ({})", grade_lines(&t, &sm.costandard, shown).join("; "));
            }
            if let Some(h) = &homs {
                s.push_str(&hom_text(h));
            }
            s
        }
    };
    emit(c, &out)?;
    Ok(if structure_ok { 0 } else { 3 })
}

fn theorem_checks_pass(h: &[HomCheck]) -> bool {
    h.iter().all(|c| c.passed)
}

fn hom_text(h: &[HomCheck]) -> String {
    let mut s = String::from("hom checks\n");
    for c in h {
        let _ = writeln!(
            s,
            "  {:<30} {} -> {}  {:?}  {}",
            c.rule.name(),
            c.source,
            c.target,
            c.dims,
            if c.passed { "ok" } else { "FAILED" }
        );
    }
    s
}

fn cmd_kostka(c: &Common, matrix: &str) -> Run {
    let (g, t) = load_group(&c.group)?;
    let p = load_order(&c.preorder, &g, &t)?;
    let trunc = trunc_for(c, &g, &t)?;
    let mut r: KostkaReport = kostka_report(&g, &t, &p, trunc, c.buffer)?;
    let mut ok = r.passed();
    if c.verify == Verify::Full {
        let h = orthogonality(&g, &t, &p, trunc, c.buffer)?;
        ok &= theorem_checks_pass(&h);
        r.hom_checks = Some(h);
    }
    let out = match c.format {
        Format::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&r.ordering, &r.matrix(matrix)?),
        Format::Text => r.to_text(),
    };
    emit(c, &out)?;
    if !ok {
        let mut why: Vec<String> = r.flags.failures().iter().map(|s| s.to_string()).collect();
        if r.oracle.as_ref().is_some_and(|o| !o.passed) {
            why.push("oracle".into());
        }
        if r.hom_checks.as_ref().is_some_and(|h| !theorem_checks_pass(h)) {
            why.push("hom checks".into());
        }
        eprintln!("kostka: checks failed: {}", why.join(", "));
        return Ok(3);
    }
    Ok(0)
}

fn cmd_ldl(c: &Common, matrix: &str) -> Run {
    let (g, t) = load_group(&c.group)?;
    let p = load_order(&c.preorder, &g, &t)?;
    let ord = p.ordering();
    let blocks = blocks_for(&p, &t)?;
    let omega = omega_matrix(&g, &t).select(&ord, &ord);
    let (l, d) = block_ldl(&omega, &blocks)?;
    let exact = ldl_reconstructs(&l, &d, &omega, &blocks.bar);
    let duality = is_hermitian(&omega, &blocks.bar);
    let labels: Vec<String> = ord.iter().map(|&i| t.name(i).to_string()).collect();
    let rows = |m: &kostka_core::linalg::Mat<RatFun>| -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
    };
    let out = match c.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                group: String,
                preorder: Vec<Vec<String>>,
                ordering: Vec<String>,
                #[serde(rename = "Omega")]
                omega: Vec<Vec<String>>,
                #[serde(rename = "L")]
                l: Vec<Vec<String>>,
                #[serde(rename = "D")]
                d: Vec<Vec<String>>,
                ldl_exact: bool,
                omega_duality: bool,
            }
            json(&Doc {
                group: g.name().to_string(),
                preorder: p.labels(&t),
                ordering: labels.clone(),
                omega: rows(&omega),
                l: rows(&l),
                d: rows(&d),
                ldl_exact: exact,
                omega_duality: duality,
            })
        }
        Format::Csv => {
            let m = match matrix {
                "Omega" => &omega,
                "L" => &l,
                "D" => &d,
                _ => return Err(input(format!("unknown matrix {matrix:?}; choose Omega, L or D"))),
            };
            render_csv(&labels, &rows(m))
        }
        Format::Text => {
            let mut s = String::new();
            for (name, m) in [("Omega", &omega), ("L", &l), ("D", &d)] {
                let _ = writeln!(s, "{name}");
                s.push_str(&render_text(&labels, &rows(m)));
                s.push('\n');
            }
            let _ = writeln!(s, "L·D·L^‡ = Omega  {}", if exact { "ok" } else { "FAILED" });
            let _ = writeln!(s, "Omega duality    {}", if duality { "ok" } else { "FAILED" });
            s
        }
    };
    emit(c, &out)?;
    Ok(if exact && duality { 0 } else { 3 })
}

fn partition_arg(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    parse_partition(s).ok_or_else(|| input(format!("{s:?} is not a partition")))
}

fn cmd_oracle(c: &Common, lambda: Option<&str>, mu: Option<&str>, size: Option<usize>) -> Run {
    if let (Some(l), Some(m)) = (lambda, mu) {
        let k = kostka_foulkes_charge(&partition_arg(l)?, &partition_arg(m)?)?;
        emit(c, &format!("{k}\n"))?;
        return Ok(0);
    }
    let n = match size.or_else(|| symmetric_rank(&c.group)) {
        Some(n) if (1..=MAX_CHARGE_SIZE).contains(&n) => n,
        Some(n) => return Err(input(format!("size {n} is outside 1..={MAX_CHARGE_SIZE}"))),
        None => return Err(input("give --size, --lambda/--mu, or a symmetric group")),
    };
    let parts = partitions(n);
    let labels: Vec<String> = parts.iter().map(|p| partition_label(p)).collect();
    let cells = parts
        .iter()
        .map(|l| parts.iter().map(|m| kostka_foulkes_charge(l, m).map(|k| k.to_string())).collect::<kostka_core::Result<Vec<_>>>())
        .collect::<kostka_core::Result<Vec<_>>>()?;
    let out = match c.format {
        Format::Json => json(&serde_json::json!({ "size": n, "partitions": labels, "K": cells })),
        Format::Csv => render_csv(&labels, &cells),
        Format::Text => render_text(&labels, &cells),
    };
    emit(c, &out)?;
    Ok(0)
}

fn configure_threads() {
    if let Some(n) = std::env::var("KOSTKA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Info(c) => cmd_info(c),
        Cmd::Traces { common, chi } => cmd_traces(common, chi.as_deref()),
        Cmd::Kostka { common, matrix } => cmd_kostka(common, matrix),
        Cmd::Ldl { common, matrix } => cmd_ldl(common, matrix),
        Cmd::Oracle { common, lambda, mu, size } => cmd_oracle(common, lambda.as_deref(), mu.as_deref(), *size),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("kostka: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
