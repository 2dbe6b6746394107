//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::codes::{self, Code, GreedyOrder};
use crate::editops::{self, EditScript, IsolationParams};
use crate::error::{Error, Result};
use crate::experiment::{self, TrendKind, TrendSpec};
use crate::extremal;
use crate::graph::{self, DeletionGraph};
use crate::lcsscs;
use crate::limits::Limits;
use crate::word::{self, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

const EXIT_HELP: &str = "\
Output: JSON on stdout (default) or CSV with --format csv; --out PATH writes it to a file.
Words are 0/1 strings; the empty word is \"\". Positions are 1-based.

Exit codes: 0 success, 1 input or usage error, 2 refused by a resource guard,
3 a verifier found a counterexample.";

#[derive(Parser, Debug)]
#[command(name = "delcode", version, about = "Binary words under insertions and deletions", after_help = EXIT_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: DELCODE_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// key=value file presetting format, threads, timing and guards.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Add runtime_ms to the output.
    #[arg(long, global = true)]
    timing: bool,
    /// Largest n for which {0,1}^n may be enumerated.
    #[arg(long, global = true)]
    max_enum_len: Option<usize>,
    /// Largest optimal set or code that may be materialized.
    #[arg(long, global = true)]
    max_set_size: Option<usize>,
    /// Largest estimated operation count for a census.
    #[arg(long, global = true)]
    max_census_ops: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Word predicates and constructors.
    #[command(subcommand)]
    Word(WordCmd),
    /// Edit scripts: apply, derive, compose, isolation.
    #[command(subcommand)]
    Script(ScriptCmd),
    /// All distinct longest common subsequences.
    #[command(
        after_help = "JSON: {\"kind\":\"LCS\",\"opt_length\":int,\"count\":int,\"strings\":[word]}"
    )]
    Lcs(PairArgs),
    /// All distinct shortest common supersequences.
    #[command(
        after_help = "JSON: {\"kind\":\"SCS\",\"opt_length\":int,\"count\":int,\"strings\":[word]}"
    )]
    Scs(PairArgs),
    /// Numbers of distinct LCS and SCS strings.
    #[command(after_help = "JSON: {\"m_lcs\":int,\"m_scs\":int,\"scs_len\":int}")]
    Mult(PairArgs),
    /// All minimal common supersequences.
    #[command(
        after_help = "JSON: {\"kind\":\"MCS\",\"opt_length\":null,\"count\":int,\"strings\":[word]}"
    )]
    Mcs(PairArgs),
    /// Injection from LCS's to SCS's, or its inverse.
    #[command(after_help = "JSON: {\"u\":word,\"v\":word,\"w\":word,\"y\":word}")]
    Phi(PhiArgs),
    /// The periodic extremal family and its closed forms.
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// The k-deletion graph.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Deletion codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Trend tables: exact counts against reference curves.
    #[command(
        after_help = "JSON: {\"experiment\":str,\"rows\":[{\"n\",\"k\",\"extra\"?,\"measured\",\"reference\",\"ratio\"}]}\n\
CSV columns depend on the kind:\n  triangles: n,k,measured,reference,ratio\n  \
good-triples: n,a,b,c,measured,reference,ratio,reference_alt,ratio_alt\n  \
unique-scs: n,k,pairs_at_distance_k,measured,reference,ratio\n  \
code-sizes: n,k,vt,greedy,ref_2n_over_n2k,ref_2n_over_nk,ref_2n_logn_over_n2k,vt_at_least_2n_over_n_plus_1\n\
With --out the CSV is written row by row and removed if a guard stops the run."
    )]
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

#[derive(Args, Debug)]
struct PhiArgs {
    #[arg(long)]
    u: String,
    #[arg(long)]
    v: String,
    /// LCS to map.
    #[arg(long, conflicts_with = "invert", required_unless_present = "invert")]
    w: Option<String>,
    /// SCS to map back.
    #[arg(long)]
    invert: Option<String>,
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    /// Whether all length-lambda windows are distinct.
    #[command(after_help = "JSON: {\"word\",\"length\",\"lambda\",\"nonrepeating\":bool}")]
    Nonrepeating {
        #[arg(long)]
        w: String,
        #[arg(long)]
        lambda: usize,
    },
    /// Number of lambda-repeating words of length n.
    #[command(after_help = "JSON: {\"n\",\"lambda\",\"count\"}")]
    CountRepeating {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// Subword at strictly increasing positions, e.g. 1,3,4.
    #[command(after_help = "JSON: {\"word\",\"positions\":[int],\"subword\"}")]
    Subword {
        #[arg(long)]
        w: String,
        #[arg(long, value_delimiter = ',')]
        positions: Vec<usize>,
    },
    /// Contiguous subword u_x..u_y.
    #[command(after_help = "JSON: {\"word\",\"x\",\"y\",\"subword\"}")]
    Subinterval {
        #[arg(long)]
        w: String,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Length-m prefix of www...
    #[command(after_help = "JSON: {\"word\",\"m\",\"prefix\"}")]
    Periodic {
        #[arg(long)]
        w: String,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ScriptCmd {
    /// Apply a script such as D@7,I0@4,D@2 (insertion at i goes after u_i).
    #[command(after_help = "JSON: {\"u\",\"script\",\"result\"}")]
    Apply {
        #[arg(long)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        script: String,
    },
    /// Minimal script turning u into v.
    #[command(after_help = "JSON: {\"u\",\"v\",\"script\",\"deletions\",\"insertions\"}")]
    Derive {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// One script equivalent to s1 followed by s2.
    #[command(after_help = "JSON: {\"u\",\"script\",\"result\"}")]
    Compose {
        #[arg(long)]
        u: String,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    /// lambda-isolated positions of a script on a length-n word.
    #[command(after_help = "JSON: {\"n\",\"lambda\",\"script\",\"isolated\":[int]}")]
    Isolated {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        script: String,
        #[arg(long)]
        lambda: usize,
    },
    /// Sampled check that isolated edits on nonrepeating words move them far.
    #[command(
        after_help = "JSON: census report {\"census\",\"parameters\",\"count\":counterexamples,\"checked\",\"reference_value\",\"passed\",\"notes\"?}. Exit 3 on a counterexample."
    )]
    Isolation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ExtremalCmd {
    /// Check distance and multiplicities of the extremal pairs for c = 1..c_max.
    #[command(
        after_help = "JSON: census report with rows {\"c\",\"u\",\"v\",\"d\",\"m_lcs\",\"m_scs\",\"binom_2c_c\",\"pass\"}. Exit 3 on failure."
    )]
    Verify {
        #[arg(long)]
        c_max: usize,
    },
    /// Closed forms against the generic computation on a grid.
    #[command(
        after_help = "JSON: census report; rows are the mismatching cells {\"a\",\"b\",\"ell_closed\",\"ell_bruteforce\",\"m_closed\",\"m_bruteforce\"}.\n\
CSV: every cell, columns a,b,ell_closed,ell_bruteforce,m_closed,m_bruteforce,match.\n\
Exit 3 if the length formula fails anywhere or the count formula fails for a >= 1, b >= 4 in the middle regime."
    )]
    ClosedForms {
        #[arg(long, default_value_t = 20)]
        a_max: usize,
        #[arg(long, default_value_t = 20)]
        b_max: usize,
    },
    /// The extremal pair for one c.
    #[command(after_help = "JSON: {\"c\",\"u\",\"v\"}")]
    Pair {
        #[arg(long)]
        c: usize,
    },
    /// Closed-form LCS length and count for ((10)^<a>, (0110)^<b>).
    #[command(after_help = "JSON: {\"a\",\"b\",\"ell\",\"m\"}")]
    Ell {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Vertex count, maximum degree, triangles and the independence bound.
    #[command(
        after_help = "JSON: {\"n\",\"k\",\"N\",\"edges\",\"max_degree\",\"triangles\",\"bollobas_bound\",\"triangle_floor_applied\"}"
    )]
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Ordered triples with d(u,v) <= a, d(v,w) <= b, d(w,u) <= c.
    #[command(after_help = "--n takes N or a range A..B.\n\
JSON: {\"rows\":[{\"n\",\"a\",\"b\",\"c\",\"count\",\"reference\",\"reference_alt\"}]}")]
    Triples {
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
    },
    /// Neighbors of a word.
    #[command(after_help = "JSON: {\"word\",\"k\",\"degree\",\"neighbors\":[word]}")]
    Neighbors {
        #[arg(long)]
        w: String,
        #[arg(long)]
        k: usize,
    },
    /// Whether two words are adjacent.
    #[command(after_help = "JSON: {\"u\",\"v\",\"k\",\"distance\",\"adjacent\"}")]
    Adjacent {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        k: usize,
    },
    /// Evaluate (N/10D)(log D - log(T/N)/2), T = 0 taken as 1.
    #[command(after_help = "JSON: {\"N\",\"max_degree\",\"triangles\",\"bollobas_bound\"}")]
    Bound {
        #[arg(long = "vertices")]
        vertices: u64,
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        triangles: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCmd {
    /// Varshamov-Tenengolts code.
    #[command(
        after_help = "JSON: {\"n\",\"k\",\"size\",\"construction\",\"words\":[word]}. --save writes the code file format."
    )]
    Vt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        residue: usize,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Greedy maximal code; order is lex, gray or random:SEED.
    #[command(
        after_help = "JSON: {\"n\",\"k\",\"size\",\"construction\",\"order\",\"words\":[word]}. --save writes the code file format."
    )]
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "lex")]
        order: String,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Validate a code file (header `n=.. k=.. size=.. construction=..`, one word per line).
    #[command(
        after_help = "JSON: {\"n\",\"k\",\"size\",\"construction\",\"valid\",\"maximal\"}. Exit 3 if invalid."
    )]
    Check {
        file: PathBuf,
        /// Also test maximality.
        #[arg(long)]
        maximal: bool,
    },
    /// Residue class sizes of the VT construction.
    #[command(after_help = "JSON: {\"n\",\"sizes\":[int],\"max\",\"pigeonhole_ok\"}")]
    VtSizes {
        #[arg(long)]
        n: usize,
    },
    /// Exact maximum code size, n <= 6.
    #[command(after_help = "JSON: {\"n\",\"k\",\"alpha\"}")]
    Alpha {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Ordered pairs at distance k with more than one SCS.
    #[command(
        after_help = "JSON: census report; count is the number of such pairs, checked the pairs at distance k."
    )]
    UniqueScs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// triangles, good-triples, unique-scs or code-sizes.
    kind: String,
    /// N or A..B.
    #[arg(long, value_parser = parse_range)]
    n: (usize, usize),
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad number '{t}'"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => num(s).map(|n| (n, n)),
    }
}

/// Settings gathered from the config file, then overridden by flags.
#[derive(Debug, Default)]
struct Settings {
    format: Option<Format>,
    threads: Option<usize>,
    timing: bool,
    limits: Limits,
}

fn read_config(path: &Path, s: &mut Settings) -> Result<()> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::input(format!("{}:{}: cannot read '{raw}'", path.display(), i + 1));
        let (key, value) = line.split_once('=').ok_or_else(bad)?;
        let (key, value) = (key.trim().replace('-', "_"), value.trim());
        match key.as_str() {
            "format" => s.format = Some(Format::from_str(value, true).map_err(|_| bad())?),
            "threads" => s.threads = Some(value.parse().map_err(|_| bad())?),
            "timing" => s.timing = value.parse().map_err(|_| bad())?,
            "max_enum_len" => s.limits.max_enum_len = value.parse().map_err(|_| bad())?,
            "max_set_size" => s.limits.max_set_size = value.parse().map_err(|_| bad())?,
            "max_census_ops" => s.limits.max_census_ops = value.parse().map_err(|_| bad())?,
            _ => {
                return Err(Error::input(format!(
                    "{}:{}: unknown key '{key}'",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(())
}

fn settings(cli: &Cli) -> Result<Settings> {
    let mut s = Settings::default();
    if let Some(p) = &cli.config {
        read_config(p, &mut s)?;
    }
    if cli.format.is_some() {
        s.format = cli.format;
    }
    if cli.threads.is_some() {
        s.threads = cli.threads;
    } else if s.threads.is_none() {
        if let Ok(v) = std::env::var("DELCODE_THREADS") {
            s.threads =
                Some(v.trim().parse().map_err(|_| {
                    Error::input(format!("DELCODE_THREADS is not a number: '{v}'"))
                })?);
        }
    }
    s.timing |= cli.timing;
    if let Some(v) = cli.max_enum_len {
        s.limits.max_enum_len = v;
    }
    if let Some(v) = cli.max_set_size {
        s.limits.max_set_size = v;
    }
    if let Some(v) = cli.max_census_ops {
        s.limits.max_census_ops = v;
    }
    if s.threads == Some(0) {
        return Err(Error::input("threads must be at least 1"));
    }
    Ok(s)
}

/// What a command produced.
struct Outcome {
    value: Value,
    /// Command-specific CSV, used instead of the generic rendering.
    csv: Option<String>,
    /// A verifier reported a counterexample.
    failed: bool,
    /// Output already written to `--out`.
    written: bool,
}

impl Outcome {
    fn of<T: Serialize>(v: T) -> Self {
        Outcome {
            value: serde_json::to_value(v).expect("serializable output"),
            csv: None,
            failed: false,
            written: false,
        }
    }
}

fn word(s: &str) -> Result<Word> {
    Word::parse(s)
}

fn script_on(u: &Word, text: &str) -> Result<EditScript> {
    let s = EditScript::parse(text, u.len())?;
    if !s.validate() {
        return Err(Error::input(format!(
            "'{text}' is not a valid script on a word of length {}",
            u.len()
        )));
    }
    Ok(s)
}

fn report_outcome(r: crate::report::CensusReport) -> Outcome {
    let failed = !r.ok();
    let mut o = Outcome::of(r);
    o.failed = failed;
    o
}

fn code_value(code: &Code) -> Value {
    json!({
        "n": code.n,
        "k": code.k,
        "size": code.len(),
        "construction": code.construction,
        "words": code.words,
    })
}

fn save_code(code: &Code, path: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, code.to_file_string())
            .map_err(|e| Error::input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn execute(cmd: &Command, s: &Settings, out: Option<&Path>) -> Result<Outcome> {
    let lim = &s.limits;
    Ok(match cmd {
        Command::Word(c) => match c {
            WordCmd::Nonrepeating { w, lambda } => {
                let x = word(w)?;
                Outcome::of(json!({
                    "word": x, "length": x.len(), "lambda": lambda,
                    "nonrepeating": x.is_lambda_nonrepeating(*lambda)?,
                }))
            }
            WordCmd::CountRepeating { n, lambda } => Outcome::of(json!({
                "n": n, "lambda": lambda,
                "count": word::count_lambda_repeating(*n, *lambda, lim)?,
            })),
            WordCmd::Subword { w, positions } => {
                let x = word(w)?;
                Outcome::of(
                    json!({"word": x, "positions": positions, "subword": x.subword(positions)?}),
                )
            }
            WordCmd::Subinterval { w, x, y } => {
                let u = word(w)?;
                Outcome::of(json!({"word": u, "x": x, "y": y, "subword": u.subinterval(*x, *y)?}))
            }
            WordCmd::Periodic { w, m } => {
                let u = word(w)?;
                Outcome::of(json!({"word": u, "m": m, "prefix": u.periodic_prefix(*m)?}))
            }
        },
        Command::Script(c) => match c {
            ScriptCmd::Apply { u, script } => {
                let u = word(u)?;
                let s = script_on(&u, script)?;
                Outcome::of(
                    json!({"u": u, "script": s.to_string(), "result": editops::apply(&u, &s)?}),
                )
            }
            ScriptCmd::Derive { u, v } => {
                let (u, v) = (word(u)?, word(v)?);
                let s = editops::script_from_pair(&u, &v);
                Outcome::of(json!({
                    "u": u, "v": v, "script": s.to_string(),
                    "deletions": s.deletions(), "insertions": s.insertions(),
                }))
            }
            ScriptCmd::Compose { u, s1, s2 } => {
                let u = word(u)?;
                let first = script_on(&u, s1)?;
                let mid = editops::apply(&u, &first)?;
                let second = script_on(&mid, s2)?;
                let s = editops::compose(&u, &first, &second)?;
                Outcome::of(
                    json!({"u": u, "script": s.to_string(), "result": editops::apply(&u, &s)?}),
                )
            }
            ScriptCmd::Isolated { n, script, lambda } => {
                let s = EditScript::parse(script, *n)?;
                let iso = editops::isolated_positions(&s, *lambda)?;
                Outcome::of(
                    json!({"n": n, "lambda": lambda, "script": s.to_string(), "isolated": iso}),
                )
            }
            ScriptCmd::Isolation {
                n,
                k,
                lambda,
                trials,
                seed,
            } => report_outcome(editops::verify_isolation_lemma(IsolationParams {
                n: *n,
                k: *k,
                lambda: *lambda,
                trials: *trials,
                seed: *seed,
            })?),
        },
        Command::Lcs(p) => Outcome::of(lcsscs::lcs_set_bounded(&word(&p.u)?, &word(&p.v)?, lim)?),
        Command::Scs(p) => Outcome::of(lcsscs::scs_set_bounded(&word(&p.u)?, &word(&p.v)?, lim)?),
        Command::Mcs(p) => Outcome::of(lcsscs::mcs_set_bounded(&word(&p.u)?, &word(&p.v)?, lim)?),
        Command::Mult(p) => {
            let (u, v) = (word(&p.u)?, word(&p.v)?);
            let m_lcs = lcsscs::lcs_set_bounded(&u, &v, lim)?.count;
            Outcome::of(json!({
                "m_lcs": m_lcs,
                "m_scs": lcsscs::scs_count(&u, &v),
                "scs_len": lcsscs::scs_len(&u, &v),
            }))
        }
        Command::Phi(p) => {
            let (u, v) = (word(&p.u)?, word(&p.v)?);
            let (w, y) = match (&p.w, &p.invert) {
                (Some(w), _) => {
                    let w = word(w)?;
                    let y = lcsscs::phi(&u, &v, &w)?;
                    (w, y)
                }
                (None, Some(y)) => {
                    let y = word(y)?;
                    (lcsscs::phi_invert(&u, &v, &y)?, y)
                }
                (None, None) => return Err(Error::input("give --w or --invert")),
            };
            Outcome::of(json!({"u": u, "v": v, "w": w, "y": y}))
        }
        Command::Extremal(c) => match c {
            ExtremalCmd::Verify { c_max } => {
                report_outcome(extremal::verify_extremal(*c_max, lim)?)
            }
            ExtremalCmd::ClosedForms { a_max, b_max } => {
                let report = extremal::verify_closed_forms(*a_max, *b_max, lim)?;
                let grid = extremal::closed_form_grid(*a_max, *b_max, lim)?;
                let mut csv =
                    String::from("a,b,ell_closed,ell_bruteforce,m_closed,m_bruteforce,match\n");
                for r in &grid {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        r.a,
                        r.b,
                        r.ell_closed,
                        r.ell_bruteforce,
                        r.m_closed,
                        r.m_bruteforce,
                        r.matches()
                    ));
                }
                let mut o = report_outcome(report);
                o.csv = Some(csv);
                o
            }
            ExtremalCmd::Pair { c } => {
                let p = extremal::ExtremalPair::new(*c)?;
                Outcome::of(json!({"c": p.c, "u": p.u, "v": p.v}))
            }
            ExtremalCmd::Ell { a, b } => Outcome::of(json!({
                "a": a, "b": b,
                "ell": extremal::ell(*a, *b)?,
                "m": extremal::m_closed(*a, *b)?,
            })),
        },
        Command::Graph(c) => match c {
            GraphCmd::Stats { n, k } => Outcome::of(DeletionGraph::new(*n, *k)?.stats(lim)?),
            GraphCmd::Triples { n, a, b, c } => {
                let mut rows = Vec::new();
                for m in n.0..=n.1 {
                    rows.push(json!({
                        "n": m, "a": a, "b": b, "c": c,
                        "count": graph::good_triple_census(m, *a, *b, *c, lim)?,
                        "reference": graph::triple_reference(m, *a, *b, *c),
                        "reference_alt": graph::triple_reference_alt(m, *a, *b, *c),
                    }));
                }
                Outcome::of(json!({ "rows": rows }))
            }
            GraphCmd::Neighbors { w, k } => {
                let u = word(w)?;
                let nb = DeletionGraph::new(u.len(), *k)?.neighborhood(&u, lim)?;
                Outcome::of(json!({"word": u, "k": k, "degree": nb.len(), "neighbors": nb}))
            }
            GraphCmd::Adjacent { u, v, k } => {
                let (u, v) = (word(u)?, word(v)?);
                let g = DeletionGraph::new(u.len(), *k)?;
                let adjacent = g.adjacent(&u, &v)?;
                Outcome::of(json!({
                    "u": u, "v": v, "k": k,
                    "distance": lcsscs::deletion_distance(&u, &v)?,
                    "adjacent": adjacent,
                }))
            }
            GraphCmd::Bound {
                vertices,
                max_degree,
                triangles,
            } => Outcome::of(json!({
                "N": vertices, "max_degree": max_degree, "triangles": triangles,
                "bollobas_bound": graph::bollobas_bound(*vertices, *max_degree, *triangles),
            })),
        },
        Command::Code(c) => match c {
            CodeCmd::Vt { n, residue, save } => {
                let code = codes::vt_code(*n, *residue, lim)?;
                save_code(&code, save)?;
                Outcome::of(code_value(&code))
            }
            CodeCmd::Greedy { n, k, order, save } => {
                let order: GreedyOrder = order.parse()?;
                let code = codes::greedy_code(*n, *k, order, lim)?;
                save_code(&code, save)?;
                let mut v = code_value(&code);
                v["order"] = json!(order.to_string());
                Outcome::of(v)
            }
            CodeCmd::Check { file, maximal } => {
                let text = fs::read_to_string(file)
                    .map_err(|e| Error::input(format!("{}: {e}", file.display())))?;
                let code = Code::parse_file(&text)?;
                let valid = codes::is_valid_code(&code)?;
                let mut v = json!({
                    "n": code.n, "k": code.k, "size": code.len(),
                    "construction": code.construction, "valid": valid,
                });
                if *maximal {
                    v["maximal"] = json!(codes::is_maximal(&code, lim)?);
                }
                let mut o = Outcome::of(v);
                o.failed = !valid;
                o
            }
            CodeCmd::VtSizes { n } => {
                let sizes = codes::vt_sizes(*n, lim)?;
                let max = *sizes.iter().max().expect("n >= 1");
                Outcome::of(json!({
                    "n": n, "sizes": sizes, "max": max,
                    "pigeonhole_ok": max * (*n as u64 + 1) >= 1u64 << n,
                }))
            }
            CodeCmd::Alpha { n, k } => Outcome::of(json!({
                "n": n, "k": k, "alpha": codes::independence_number(*n, *k)?,
            })),
            CodeCmd::UniqueScs { n, k } => report_outcome(codes::unique_scs_census(*n, *k, lim)?),
        },
        Command::Experiment(e) => {
            let kind: TrendKind = e.kind.parse()?;
            let mut spec = TrendSpec::new(kind, e.n.0, e.n.1, e.k);
            if e.a.is_some() || e.b.is_some() || e.c.is_some() {
                spec.abc = Some((e.a.unwrap_or(e.k), e.b.unwrap_or(e.k), e.c.unwrap_or(e.k)));
            }
            let csv_out = out.filter(|_| s.format != Some(Format::Json));
            let (rows, written) = match csv_out {
                Some(p) => (experiment::write_trends(&spec, lim, p)?, true),
                None => (experiment::experiment_trends(&spec, lim)?, false),
            };
            let mut o = Outcome::of(json!({"experiment": kind.to_string(), "rows": rows}));
            o.csv = Some(experiment::to_csv(kind, &rows));
            o.written = written;
            o
        }
    })
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => format!("\"{}\"", s.replace('"', "\"\"")),
        other => format!("\"{}\"", other.to_string().replace('"', "\"\"")),
    }
}

fn csv_table(rows: &[Value]) -> String {
    let mut keys: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !keys.contains(k) {
                    keys.push(k.clone());
                }
            }
        }
    }
    let mut s = keys.join(",");
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = keys
            .iter()
            .map(|k| csv_cell(r.get(k).unwrap_or(&Value::Null)))
            .collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Generic rendering: a `rows` table, a word list, or one flat row.
fn to_csv(v: &Value) -> String {
    if let Some(Value::Array(rows)) = v.get("rows") {
        if rows.iter().all(Value::is_object) && !rows.is_empty() {
            return csv_table(rows);
        }
    }
    for key in ["strings", "words", "neighbors"] {
        if let Some(Value::Array(ws)) = v.get(key) {
            let mut s = String::from("word\n");
            for w in ws {
                s.push_str(&csv_cell(w));
                s.push('\n');
            }
            return s;
        }
    }
    match v {
        Value::Object(m) => {
            let flat: Map<String, Value> = m
                .iter()
                .filter(|(k, _)| *k != "rows")
                .map(|(k, x)| (k.clone(), x.clone()))
                .collect();
            csv_table(&[Value::Object(flat)])
        }
        other => format!("{}\n", csv_cell(other)),
    }
}

fn render(o: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&o.value).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => o.csv.clone().unwrap_or_else(|| to_csv(&o.value)),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => EXIT_INPUT,
        Error::Resource(_) => EXIT_RESOURCE,
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };
    let fail = |stderr: &mut dyn Write, e: &Error| {
        let _ = writeln!(stderr, "error: {e}");
        exit_code(e)
    };
    let s = match settings(&cli) {
        Ok(s) => s,
        Err(e) => return fail(stderr, &e),
    };
    let format = s.format.unwrap_or(Format::Json);
    let out = cli.out.as_deref();
    let clock = Instant::now();
    let result = match s.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli.command, &s, out)),
            Err(e) => Err(Error::resource(format!("cannot start {t} threads: {e}"))),
        },
        None => execute(&cli.command, &s, out),
    };
    let mut outcome = match result {
        Ok(o) => o,
        Err(e) => return fail(stderr, &e),
    };
    if let Value::Object(m) = &mut outcome.value {
        m.remove("runtime_ms");
        if s.timing {
            m.insert(
                "runtime_ms".into(),
                json!(clock.elapsed().as_millis() as u64),
            );
        }
    }
    if !outcome.written {
        let text = render(&outcome, format);
        match out {
            Some(p) => {
                if let Err(e) = fs::write(p, text) {
                    return fail(stderr, &Error::input(format!("{}: {e}", p.display())));
                }
            }
            None => {
                let _ = stdout.write_all(text.as_bytes());
            }
        }
    }
    if outcome.failed {
        let _ = writeln!(stderr, "verification failed: counterexample found");
        return EXIT_VERIFICATION;
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("delcode").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("8..13"), Ok((8, 13)));
        assert_eq!(parse_range("8..=13"), Ok((8, 13)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert!(parse_range("9..3").is_err());
    }

    #[test]
    fn mult_example() {
        let (code, out, _) = call(&["mult", "--u", "1000", "--v", "0001"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["m_scs"], 1);
        assert_eq!(v["scs_len"], 5);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(call(&["lcs", "--u", "012", "--v", "0"]).0, EXIT_INPUT);
        assert_eq!(
            call(&["word", "count-repeating", "--n", "40", "--lambda", "3"]).0,
            EXIT_RESOURCE
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn csv_quotes_words() {
        let (code, out, _) = call(&["lcs", "--u", "10", "--v", "01", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "word\n\"0\"\n\"1\"\n");
    }

    #[test]
    fn timing_only_on_request() {
        let (_, plain, _) = call(&["extremal", "verify", "--c-max", "2"]);
        assert!(!plain.contains("runtime_ms"));
        let (_, timed, _) = call(&["extremal", "verify", "--c-max", "2", "--timing"]);
        assert!(timed.contains("runtime_ms"));
    }
}
