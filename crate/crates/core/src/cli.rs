//! Command-line front end. Exit codes: 0 success, 1 a checked identity or
//! cross-check failed, 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::arith::{format_rational, parse_rational, Rational};
use crate::chordal::{find_peo, is_chordal, IntMatrix, PeoResult};
use crate::cycletools::{
    carlitz_coefficients, check_r_rational, cycle_inverse_coefficients, cycle_inverse_series, cyclic_identities,
    debruijn, dixon_sides, kappa,
};
use crate::error::{Error, Result};
use crate::graph::{make_complete, make_cycle, make_empty, make_path, parse_graph_auto, Graph};
use crate::hornfit::horn_check;
use crate::identities::verify_identities;
use crate::nahm::{chordal_power_formula, solve_nahm};
use crate::poly::{delta_poly, independence_polynomial};
use crate::series::{pow_neg_s, sqrt_inv, TruncatedSeries};
use crate::tracemonoid::count_traces;

#[derive(Parser, Debug)]
#[command(
    name = "indepoly",
    version,
    about = "Independence polynomials, chordality and series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list or graph6 file
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Cycle C_n
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    /// Path L_n
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// Complete graph K_n
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Edgeless graph on n vertices
    #[arg(long, value_name = "N")]
    empty: Option<usize>,
}

impl GraphSource {
    fn load(&self) -> Result<Graph> {
        if let Some(path) = &self.graph {
            let text =
                fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
            return parse_graph_auto(&text);
        }
        match (self.cycle, self.path, self.complete, self.empty) {
            (Some(n), ..) => make_cycle(n),
            (_, Some(n), ..) => make_path(n),
            (_, _, Some(n), _) => make_complete(n),
            (.., Some(n)) => make_empty(n),
            _ => Err(Error::invalid("no graph given")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Binomial expansion of the polynomial
    Direct,
    /// Closed form for chordal graphs
    ClosedForm,
    /// Trace counting (s = 1 only)
    Traces,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the independence polynomial
    Indep {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        json: bool,
    },
    /// Decide chordality; prints an induced cycle otherwise
    Chordal {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Print a perfect elimination ordering
    Peo {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Expand I^{-s} on the box {0..N}^n
    Expand {
        #[command(flatten)]
        source: GraphSource,
        /// Exponent s, as "p" or "p/q"
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 3)]
        order: u32,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
        /// Compare every applicable method; exit 1 on disagreement
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Bounded-degree Horn test of the coefficients of 1/I
    HornCheck {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 6)]
        order: u32,
        /// Degree bound (default: number of vertices + 1)
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Nahm systems
    Nahm {
        #[command(subcommand)]
        command: NahmCommand,
    },
    /// Count traces with a given content
    Traces {
        #[command(flatten)]
        source: GraphSource,
        /// Letter multiplicities m1,m2,...
        #[arg(long, value_delimiter = ',')]
        content: Vec<u32>,
    },
    /// Cycle-graph identities
    Cycle {
        #[command(subcommand)]
        command: CycleCommand,
    },
    /// Run the identity suite and print a pass/fail table
    VerifyIdentities {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum NahmCommand {
    /// Solve 1 - z_i = x_i prod_j z_j^{a_ij}; prints z and D as JSON
    Solve {
        /// Whitespace-separated integer matrix, one row per line
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 3)]
        order: u32,
    },
}

#[derive(Subcommand, Debug)]
enum CycleCommand {
    /// Unsigned coefficients of 1/I_n
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        order: u32,
        #[arg(long)]
        json: bool,
    },
    /// Unsigned coefficients of Delta^{-1/2} (products of binomials)
    Carlitz {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        order: u32,
        #[arg(long)]
        json: bool,
    },
    /// De Bruijn number S(n, k)
    Debruijn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// Both sides of the Dixon-type identity
    Dixon {
        /// m1,m2,m3
        #[arg(long, value_delimiter = ',', num_args = 1)]
        m: Vec<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// All cycle identities for one n
    VerifyAll {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        order: u32,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::invalid(format!("write failed: {e}"))
}

fn print_series(out: &mut dyn Write, s: &TruncatedSeries, signed: bool, json: bool) -> Result<()> {
    if json {
        let j = serde_json::to_string_pretty(&s.to_json(signed)).expect("series JSON serializes");
        return writeln!(out, "{j}").map_err(io);
    }
    let view = if signed { s.clone() } else { s.unsigned_cm() };
    for (m, c) in view.nonzero() {
        let m: Vec<String> = m.iter().map(u32::to_string).collect();
        writeln!(out, "{:<16} {}", m.join(" "), format_rational(c)).map_err(io)?;
    }
    Ok(())
}

fn witness_line(w: &[usize]) -> String {
    let labels: Vec<String> = w.iter().map(usize::to_string).collect();
    format!("NO, induced C{}: {}", w.len(), labels.join(" "))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Indep { source, json } => {
            let p = independence_polynomial(&source.load()?);
            if json {
                let j = json!({ "nvars": p.nvars(), "terms": p.to_json() });
                writeln!(out, "{j}").map_err(io)?;
            } else {
                writeln!(out, "{p}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Chordal { source } => {
            match find_peo(&source.load()?) {
                PeoResult::Ordering(_) => writeln!(out, "YES"),
                PeoResult::Witness(w) => writeln!(out, "{}", witness_line(&w)),
            }
            .map_err(io)?;
            Ok(0)
        }
        Command::Peo { source } => {
            match find_peo(&source.load()?) {
                PeoResult::Ordering(o) => {
                    let o: Vec<String> = o.iter().map(usize::to_string).collect();
                    writeln!(out, "{}", o.join(" "))
                }
                PeoResult::Witness(w) => writeln!(out, "{}", witness_line(&w)),
            }
            .map_err(io)?;
            Ok(0)
        }
        Command::Expand {
            source,
            s,
            order,
            method,
            cross_check,
            json,
        } => expand(
            &source.load()?,
            &parse_rational(&s)?,
            order,
            method,
            cross_check,
            json,
            out,
        ),
        Command::HornCheck {
            source,
            order,
            degree,
            json,
        } => {
            let g = source.load()?;
            let d = degree.unwrap_or(g.vertex_count() as u32 + 1);
            let report = horn_check(&g, order, d)?;
            if json {
                let j = serde_json::to_string_pretty(&report.to_json()).expect("report JSON serializes");
                writeln!(out, "{j}").map_err(io)?;
            } else {
                for dir in &report.directions {
                    match dir {
                        crate::hornfit::DirectionResult::Fit {
                            direction,
                            degree,
                            p,
                            q,
                        } => {
                            writeln!(
                                out,
                                "direction {direction}: fit at degree {degree}: ({}) / ({})",
                                in_m(p),
                                in_m(q)
                            )
                        }
                        crate::hornfit::DirectionResult::Failure {
                            direction,
                            rank,
                            unknowns,
                            ..
                        } => writeln!(
                            out,
                            "direction {direction}: no fit (rank {rank} of {unknowns} unknowns)"
                        ),
                    }
                    .map_err(io)?;
                }
                writeln!(out, "{}", report.verdict()).map_err(io)?;
            }
            Ok(0)
        }
        Command::Nahm {
            command: NahmCommand::Solve { matrix, order },
        } => {
            let text = fs::read_to_string(&matrix)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", matrix.display())))?;
            let a = IntMatrix::parse(&text)?;
            let sol = solve_nahm(&a, order)?;
            let j = json!({
                "matrix": a.rows(),
                "N": order,
                "z": sol.z.iter().map(|z| z.to_json(true)).collect::<Vec<_>>(),
                "D": sol.d.to_json(true),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("JSON serializes")).map_err(io)?;
            Ok(0)
        }
        Command::Traces { source, content } => {
            let c = count_traces(&source.load()?, &content)?;
            writeln!(out, "{c}").map_err(io)?;
            Ok(0)
        }
        Command::Cycle { command } => cycle(command, out),
        Command::VerifyIdentities { json } => {
            let results = verify_identities();
            if json {
                let j = serde_json::to_string_pretty(&results).expect("JSON serializes");
                writeln!(out, "{j}").map_err(io)?;
            } else {
                for r in &results {
                    let mark = if r.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{:>2}  {mark}  {:<64} {}", r.id, r.name, r.detail).map_err(io)?;
                }
            }
            Ok(if results.iter().all(|r| r.passed) { 0 } else { 1 })
        }
    }
}

fn expand(
    g: &Graph,
    s: &Rational,
    order: u32,
    method: Method,
    cross_check: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let one = Rational::from_integer(1.into());
    let by_traces = |g: &Graph| -> Result<TruncatedSeries> {
        if *s != one {
            return Err(Error::invalid("the trace method only expands 1/I (s = 1)"));
        }
        let counts = TruncatedSeries::from_fn(g.vertex_count(), order, |m| {
            let c = count_traces(g, m).expect("content matches the graph");
            Rational::from_integer(BigInt::from(c))
        })?;
        Ok(counts.sign_flipped())
    };
    let compute = |m: Method| -> Result<TruncatedSeries> {
        match m {
            Method::Direct => pow_neg_s(&independence_polynomial(g), s, order),
            Method::ClosedForm => chordal_power_formula(g, s, order),
            Method::Traces => by_traces(g),
        }
    };
    let series = compute(method)?;
    if !cross_check {
        print_series(out, &series, true, json)?;
        return Ok(0);
    }
    let mut methods = vec![Method::Direct];
    if is_chordal(g) {
        methods.push(Method::ClosedForm);
    }
    if *s == one {
        methods.push(Method::Traces);
    }
    let mut agree = true;
    let reference = compute(Method::Direct)?;
    for &m in &methods[1..] {
        let same = compute(m)? == reference;
        agree &= same;
        writeln!(out, "{m:?} vs Direct: {}", if same { "agree" } else { "DISAGREE" }).map_err(io)?;
    }
    print_series(out, &series, true, json)?;
    Ok(if agree { 0 } else { 1 })
}

fn cycle(command: CycleCommand, out: &mut dyn Write) -> Result<i32> {
    match command {
        CycleCommand::Coeffs { n, order, json } => {
            print_series(out, &cycle_inverse_coefficients(n, order)?.sign_flipped(), false, json)?;
        }
        CycleCommand::Carlitz { n, order, json } => {
            print_series(out, &carlitz_coefficients(n, order)?.sign_flipped(), false, json)?;
        }
        CycleCommand::Debruijn { n, k, json } => {
            if n < 2 {
                return Err(Error::invalid("de Bruijn numbers need n >= 2"));
            }
            let s = debruijn(n, k);
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({ "n": n, "k": k, "S": s.to_string(), "kappa": kappa(n) })
                )
            } else {
                writeln!(out, "{s}")
            }
            .map_err(io)?;
        }
        CycleCommand::Dixon { m, k, json } => {
            let m: [u32; 3] = m
                .try_into()
                .map_err(|_| Error::invalid("--m takes exactly three values"))?;
            let (lhs, rhs) = dixon_sides(m, k)?;
            let ok = lhs == rhs;
            if json {
                let j =
                    json!({ "m": m, "k": k, "lhs": format_rational(&lhs), "rhs": format_rational(&rhs), "equal": ok });
                writeln!(out, "{j}")
            } else {
                writeln!(
                    out,
                    "lhs = {}  rhs = {}  {}",
                    format_rational(&lhs),
                    format_rational(&rhs),
                    if ok { "equal" } else { "DIFFERENT" }
                )
            }
            .map_err(io)?;
            return Ok(if ok { 0 } else { 1 });
        }
        CycleCommand::VerifyAll { n, order, json } => {
            let c = cyclic_identities(n, order)?;
            let delta = delta_poly(n)?;
            let carlitz = carlitz_coefficients(n, order)? == sqrt_inv(&delta, order)?.unsigned_cm();
            let inverse = cycle_inverse_coefficients(n, order)? == cycle_inverse_series(n, order)?.unsigned_cm();
            let r = check_r_rational(n, order)?;
            let rows = [
                ("transfer matrix trace and determinant", c.transfer),
                ("eigenvector (z_n, 1)", c.eigenvector),
                ("roots of X^2 - I X + v", c.roots),
                ("I = 1/u + uv", c.trace_sum),
                ("1/D = 1/u - uv", c.d_inverse),
                ("D^-2 = Delta", c.d_squared),
                ("Nahm residual", c.residual),
                ("Carlitz expansion", carlitz),
                ("inverse expansion", inverse),
                ("R rational form", r),
            ];
            let ok = rows.iter().all(|(_, b)| *b);
            if json {
                let map: serde_json::Map<String, serde_json::Value> =
                    rows.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                writeln!(out, "{}", serde_json::Value::Object(map))
            } else {
                rows.iter()
                    .try_for_each(|(name, b)| writeln!(out, "{}  {name}", if *b { "PASS" } else { "FAIL" }))
            }
            .map_err(io)?;
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Fitted polynomials live in the lattice variables `m_i`.
fn in_m(p: &crate::poly::MultiPoly) -> String {
    p.to_string().replace('x', "m")
}
