//! Command-line dispatcher.
//!
//! [`run_command`] captures all output so the binary, the tests and the
//! benches drive the same code path.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinatorics::IState;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::grading::{half, Grading};
use crate::homology::{self, homology_dims, predicted_dims, DgAlgebra, GradedPiece};
use crate::osz::{OsRecord, OszAlgebra};
use crate::phi::Phi;
use crate::render::render_ascii;
use crate::strands::{Ctx, GenRecord, StrandsAlgebra};
use crate::text::{self, CtxRecord};
use crate::verify::{self, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Parser, Debug)]
#[command(name = "strands", version, about = "Strands algebras, their quiver counterparts and the map between them, over F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CtxArgs {
    #[arg(long, value_enum, default_value = "A")]
    algebra: Algebra,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Comma-separated lines of S.
    #[arg(long, default_value = "")]
    s: String,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Emit JSON instead of tables.
    #[arg(long)]
    json: bool,
    /// Worker threads for sweeps.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the graded basis between idempotents.
    Basis {
        #[command(flatten)]
        ctx: CtxArgs,
        /// Left idempotent; all if omitted.
        #[arg(long)]
        x: Option<String>,
        /// Right idempotent; all if omitted.
        #[arg(long)]
        y: Option<String>,
        /// Per-line weight caps: one value or a comma list, halves allowed.
        #[arg(long, default_value = "2")]
        cap: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiply two elements.
    Mul {
        #[command(flatten)]
        ctx: CtxArgs,
        a: String,
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the differential.
    Diff {
        #[command(flatten)]
        ctx: CtxArgs,
        element: String,
        #[command(flatten)]
        common: Common,
    },
    /// Show the gradings of each term.
    Grade {
        #[command(flatten)]
        ctx: CtxArgs,
        element: String,
        #[command(flatten)]
        common: Common,
    },
    /// Homology of every graded piece under the caps.
    Homology {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long, default_value = "2")]
        cap: String,
        #[command(flatten)]
        common: Common,
    },
    /// Map an element of B into A.
    Phi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "")]
        s: String,
        element: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Random triples drawn at n = 3.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Run single-threaded.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Draw an element of A.
    Render {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "")]
        s: String,
        element: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure of a verification run, distinct from domain errors.
struct VerifyFailed(String);

enum Failure {
    Domain(Error),
    Verify(VerifyFailed),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CmdOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CmdOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CmdOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(()) => CmdOutput { code: 0, stdout: out, stderr: String::new() },
        Err(Failure::Verify(VerifyFailed(msg))) => CmdOutput { code: 3, stdout: out, stderr: msg },
        Err(Failure::Domain(e)) => {
            let code = if matches!(e, Error::Parameter(_)) { 2 } else { 1 };
            CmdOutput { code, stdout: out, stderr: format!("error: {e}\n") }
        }
    }
}

fn parse_list(src: &str) -> Result<Vec<usize>> {
    src.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::param(format!("'{t}' is not a nonnegative integer"))))
        .collect()
}

fn make_ctx(n: usize, k: usize, s: &str) -> Result<Ctx> {
    Ctx::new(n, k, &parse_list(s)?)
}

fn parse_state(ctx: &Ctx, src: &str) -> Result<IState> {
    let members = parse_list(src.trim_matches(|c| c == '{' || c == '}'))?;
    let x = IState::new(ctx.n(), &members)?;
    if x.len() != ctx.k() {
        return Err(Error::param(format!("{x} does not have {} elements", ctx.k())));
    }
    Ok(x)
}

/// A weight written as `2`, `3/2` or `1.5`, returned doubled.
fn parse_weight(t: &str) -> Result<u32> {
    let bad = || Error::param(format!("'{t}' is not a nonnegative half-integer"));
    if let Some((num, den)) = t.split_once('/') {
        let num: u32 = num.trim().parse().map_err(|_| bad())?;
        return match den.trim() {
            "1" => Ok(2 * num),
            "2" => Ok(num),
            _ => Err(bad()),
        };
    }
    if let Some((int, frac)) = t.split_once('.') {
        let int: u32 = int.parse().map_err(|_| bad())?;
        return match frac.trim_end_matches('0') {
            "" => Ok(2 * int),
            "5" => Ok(2 * int + 1),
            _ => Err(bad()),
        };
    }
    t.parse::<u32>().map(|w| 2 * w).map_err(|_| bad())
}

fn parse_caps(ctx: &Ctx, src: &str) -> Result<Vec<u32>> {
    let caps: Vec<u32> = src.split(',').map(|t| parse_weight(t.trim())).collect::<Result<_>>()?;
    match caps.len() {
        1 => Ok(vec![caps[0]; ctx.n()]),
        m if m == ctx.n() => Ok(caps),
        m => Err(Error::param(format!("{m} caps for n = {}", ctx.n()))),
    }
}

fn setup(common: &Common) {
    if let Some(jobs) = common.jobs {
        exec::set_jobs(jobs);
    }
}

/// Left-aligned columns separated by two spaces.
fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
}

fn json_line<T: Serialize>(out: &mut String, value: &T) -> Result<()> {
    let s = serde_json::to_string(value).map_err(|e| Error::Consistency(e.to_string()))?;
    let _ = writeln!(out, "{s}");
    Ok(())
}

fn weights(w2: &[i64]) -> String {
    w2.iter().map(|&w| half(w)).collect::<Vec<_>>().join(",")
}

fn unrefined(g: &Grading) -> String {
    g.unrefined
        .iter()
        .map(|&(t, b)| format!("{t}τ+{b}β"))
        .collect::<Vec<_>>()
        .join(",")
}

fn grading_row(label: String, g: &Grading) -> Vec<String> {
    vec![label, g.maslov.to_string(), weights(&g.refined2), unrefined(g), half(g.alex2)]
}

const GRADE_HEADER: [&str; 5] = ["element", "maslov", "w", "w_un", "alex"];

fn pairs_for(ctx: &Ctx, x: &Option<String>, y: &Option<String>) -> Result<Vec<(IState, IState)>> {
    let xs = match x {
        Some(src) => vec![parse_state(ctx, src)?],
        None => ctx.istates(),
    };
    let ys = match y {
        Some(src) => vec![parse_state(ctx, src)?],
        None => ctx.istates(),
    };
    Ok(xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| (*x, *y)))
        .filter(|(x, y)| !crate::combinatorics::far(x, y))
        .collect())
}

fn dims(d: &BTreeMap<i64, usize>) -> String {
    if d.is_empty() {
        "-".into()
    } else {
        d.iter().map(|(m, c)| format!("{m}:{c}")).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Serialize)]
struct HomologyJson {
    ctx: CtxRecord,
    pieces: BTreeMap<String, BTreeMap<i64, usize>>,
}

fn homology_rows<A: DgAlgebra>(alg: &A, pairs: &[(IState, IState)], cap2: &[u32]) -> Result<Vec<GradedPiece<A::Gen>>> {
    let per_pair = Exec::default().map(pairs.to_vec(), |(x, y)| homology::pieces(alg, &x, &y, cap2));
    let mut out = Vec::new();
    for p in per_pair {
        out.extend(p?);
    }
    Ok(out)
}

fn homology_report<A: DgAlgebra>(
    out: &mut String,
    alg: &A,
    ctx: &Ctx,
    pairs: &[(IState, IState)],
    cap2: &[u32],
    json: bool,
) -> Result<()> {
    let pieces = homology_rows(alg, pairs, cap2)?;
    if json {
        let pieces = pieces.iter().map(|p| (p.label(), homology_dims(p))).collect();
        return json_line(out, &HomologyJson { ctx: ctx.into(), pieces });
    }
    let rows: Vec<Vec<String>> = pieces
        .iter()
        .map(|p| {
            let w: Vec<i64> = p.w2.iter().map(|&w| w as i64).collect();
            vec![
                p.x.to_string(),
                p.y.to_string(),
                weights(&w),
                p.levels.values().map(Vec::len).sum::<usize>().to_string(),
                dims(&homology_dims(p)),
                dims(&predicted_dims(ctx, &p.x, &p.y, &p.w2)),
            ]
        })
        .collect();
    table(out, &["x", "y", "w", "rank", "H", "predicted"], &rows);
    Ok(())
}

fn dispatch(command: Command, out: &mut String) -> std::result::Result<(), Failure> {
    match command {
        Command::Basis { ctx: c, x, y, cap, common } => {
            setup(&common);
            let ctx = make_ctx(c.n, c.k, &c.s)?;
            let cap2 = parse_caps(&ctx, &cap)?;
            let pairs = pairs_for(&ctx, &x, &y)?;
            match c.algebra {
                Algebra::A => {
                    let alg = StrandsAlgebra::new(ctx);
                    let mut gens = Vec::new();
                    for (x, y) in &pairs {
                        gens.extend(alg.enumerate_basis(x, y, &cap2)?);
                    }
                    if common.json {
                        let terms: Vec<GenRecord> = gens.iter().map(GenRecord::from).collect();
                        json_line(out, &text::ElementJson { ctx: (&ctx).into(), terms })?;
                    } else {
                        let rows: Vec<_> =
                            gens.iter().map(|g| grading_row(text::format_strands_gen(g), &alg.grade(g))).collect();
                        table(out, &GRADE_HEADER, &rows);
                    }
                }
                Algebra::B => {
                    let alg = OszAlgebra::new(ctx);
                    let mut gens = Vec::new();
                    for (x, y) in &pairs {
                        gens.extend(alg.enumerate_basis(x, y, &cap2)?);
                    }
                    if common.json {
                        let terms: Vec<OsRecord> = gens.iter().map(OsRecord::from).collect();
                        json_line(out, &text::ElementJson { ctx: (&ctx).into(), terms })?;
                    } else {
                        let rows: Vec<_> =
                            gens.iter().map(|g| grading_row(text::format_os_gen(g), &alg.grade(g))).collect();
                        table(out, &GRADE_HEADER, &rows);
                    }
                }
            }
        }
        Command::Mul { ctx: c, a, b, common } => {
            let ctx = make_ctx(c.n, c.k, &c.s)?;
            match c.algebra {
                Algebra::A => {
                    let alg = StrandsAlgebra::new(ctx);
                    let e = alg.mul(&text::parse_strands(&alg, &a)?, &text::parse_strands(&alg, &b)?)?;
                    emit_strands(out, &ctx, &e, common.json)?;
                }
                Algebra::B => {
                    let alg = OszAlgebra::new(ctx);
                    let e = alg.mul(&text::parse_os(&alg, &a)?, &text::parse_os(&alg, &b)?)?;
                    emit_os(out, &ctx, &e, common.json)?;
                }
            }
        }
        Command::Diff { ctx: c, element, common } => {
            let ctx = make_ctx(c.n, c.k, &c.s)?;
            match c.algebra {
                Algebra::A => {
                    let alg = StrandsAlgebra::new(ctx);
                    let e = alg.diff(&text::parse_strands(&alg, &element)?);
                    emit_strands(out, &ctx, &e, common.json)?;
                }
                Algebra::B => {
                    let alg = OszAlgebra::new(ctx);
                    let e = alg.diff(&text::parse_os(&alg, &element)?);
                    emit_os(out, &ctx, &e, common.json)?;
                }
            }
        }
        Command::Grade { ctx: c, element, common } => {
            let ctx = make_ctx(c.n, c.k, &c.s)?;
            let graded: Vec<(String, Grading)> = match c.algebra {
                Algebra::A => {
                    let alg = StrandsAlgebra::new(ctx);
                    let e = text::parse_strands(&alg, &element)?;
                    e.iter().map(|g| (text::format_strands_gen(g), alg.grade(g))).collect()
                }
                Algebra::B => {
                    let alg = OszAlgebra::new(ctx);
                    let e = text::parse_os(&alg, &element)?;
                    e.iter().map(|g| (text::format_os_gen(g), alg.grade(g))).collect()
                }
            };
            if common.json {
                let list: Vec<_> = graded.iter().map(|(s, g)| (s.as_str(), g)).collect();
                json_line(out, &list)?;
            } else {
                let rows: Vec<_> = graded.into_iter().map(|(s, g)| grading_row(s, &g)).collect();
                table(out, &GRADE_HEADER, &rows);
            }
        }
        Command::Homology { ctx: c, x, y, cap, common } => {
            setup(&common);
            let ctx = make_ctx(c.n, c.k, &c.s)?;
            let cap2 = parse_caps(&ctx, &cap)?;
            let pairs = pairs_for(&ctx, &x, &y)?;
            match c.algebra {
                Algebra::A => homology_report(out, &StrandsAlgebra::new(ctx), &ctx, &pairs, &cap2, common.json)?,
                Algebra::B => homology_report(out, &OszAlgebra::new(ctx), &ctx, &pairs, &cap2, common.json)?,
            }
        }
        Command::Phi { n, k, s, element, common } => {
            let ctx = make_ctx(n, k, &s)?;
            let phi = Phi::new(ctx);
            let e = phi.phi_elem(&text::parse_os(&phi.b, &element)?);
            emit_strands(out, &ctx, &e, common.json)?;
        }
        Command::Verify { suite, n, samples, sequential, common } => {
            setup(&common);
            if n == 0 {
                return Err(Error::param("--n must be at least 1").into());
            }
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            let opts = verify::Options {
                n_max: n,
                exec: if sequential { Exec::Sequential } else { Exec::default() },
                seed: common.seed,
                samples,
            };
            let mut failed = Vec::new();
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for s in suites {
                let report = verify::run_suite(s, &opts);
                let status = if report.ok() { "PASS" } else { "FAIL" };
                rows.push(vec![s.name().to_string(), status.to_string(), report.checked.to_string(), report.failures.len().to_string()]);
                if !report.ok() {
                    failed.push(format!("{s}: {}", report.failures.join("\n  ")));
                }
                records.push(VerifyJson { suite: s.name(), ok: report.ok(), checked: report.checked, failures: report.failures });
            }
            if common.json {
                json_line(out, &records)?;
            } else {
                table(out, &["suite", "status", "checked", "failed"], &rows);
            }
            if !failed.is_empty() {
                return Err(Failure::Verify(VerifyFailed(failed.join("\n") + "\n")));
            }
        }
        Command::Render { n, k, s, element, common: _ } => {
            let ctx = make_ctx(n, k, &s)?;
            let alg = StrandsAlgebra::new(ctx);
            let e = text::parse_strands(&alg, &element)?;
            for (t, g) in e.iter().enumerate() {
                if t > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "{}", text::format_strands_gen(g));
                out.push_str(&render_ascii(g));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyJson {
    suite: &'static str,
    ok: bool,
    checked: usize,
    failures: Vec<String>,
}

fn emit_strands(out: &mut String, ctx: &Ctx, e: &crate::strands::StrandsElement, json: bool) -> Result<()> {
    if json {
        json_line(out, &text::strands_json(ctx, e))
    } else {
        let _ = writeln!(out, "{}", text::format_strands(e));
        Ok(())
    }
}

fn emit_os(out: &mut String, ctx: &Ctx, e: &crate::osz::OsElement, json: bool) -> Result<()> {
    if json {
        json_line(out, &text::os_json(ctx, e))
    } else {
        let _ = writeln!(out, "{}", text::format_os(e));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &str) -> CmdOutput {
        run_command(std::iter::once("strands").chain(args.split_whitespace()))
    }

    #[test]
    fn weights_parse() {
        assert_eq!(parse_weight("2").unwrap(), 4);
        assert_eq!(parse_weight("3/2").unwrap(), 3);
        assert_eq!(parse_weight("1.5").unwrap(), 3);
        assert_eq!(parse_weight("1.0").unwrap(), 2);
        assert!(parse_weight("1/3").is_err());
        assert!(parse_weight("-1").is_err());
    }

    #[test]
    fn basis_rows() {
        let out = run_command(["strands", "basis", "--algebra", "A", "--n", "1", "--k", "1", "--s", "", "--x", "0", "--y", "0", "--cap", "2"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout.lines().count(), 4, "{}", out.stdout);
        assert!(out.stdout.lines().nth(1).unwrap().starts_with("J{0}"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("basis --n 1").code, 2);
        assert_eq!(run("basis --n 1 --k 5").code, 2);
        assert_eq!(run("bogus").code, 2);
        assert_eq!(run("--help").code, 0);
        let out = run_command(["strands", "mul", "--n", "1", "--k", "1", "[9/0]_1 @ {1}", "J{1}"]);
        assert_eq!(out.code, 1, "{out:?}");
        assert!(out.stderr.contains("at byte 0"), "{}", out.stderr);
        assert_eq!(run("verify --suite nope --n 1").code, 2);
    }

    #[test]
    fn products_and_differentials() {
        let out = run_command(["strands", "mul", "--n", "1", "--k", "1", "[1/0]_1 @ {0}", "[0/1]_1 @ {1}"]);
        assert_eq!(out.stdout, "[2/0]_1 @ {0}\n");
        let out = run_command(["strands", "diff", "--n", "1", "--k", "2", "[2/2]_1 @ {0,1}"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let out = run_command(["strands", "phi", "--n", "1", "--k", "1", "U1 @ {0}->{0}"]);
        assert_eq!(out.stdout, "[2/0]_1 @ {0}\n");
        let out = run_command(["strands", "mul", "--algebra", "B", "--n", "1", "--k", "1", "@ {0}->{1}", "@ {1}->{0}"]);
        assert_eq!(out.stdout, "U1 @ {0}->{0}\n");
    }

    #[test]
    fn homology_table_matches_prediction() {
        let out = run("homology --algebra A --n 2 --k 1 --cap 2");
        assert_eq!(out.code, 0, "{}", out.stderr);
        for line in out.stdout.lines().skip(1) {
            let cells: Vec<&str> = line.split("  ").filter(|c| !c.is_empty()).collect();
            let n = cells.len();
            assert_eq!(cells[n - 2].trim(), cells[n - 1].trim(), "{line}");
        }
        let json = run("homology --algebra A --n 1 --k 1 --cap 1 --json");
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["ctx"]["n"], 1);
    }

    #[test]
    fn verify_and_render() {
        let out = run("verify --suite text --n 1");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("PASS"));
        let out = run_command(["strands", "render", "--n", "1", "--k", "1", "[1/0]_1 @ {0}"]);
        assert!(out.stdout.contains("Z1 |/"), "{}", out.stdout);
    }

    #[test]
    fn output_is_deterministic() {
        let a = run("basis --algebra B --n 2 --k 1 --s 1 --cap 3/2 --json");
        let b = run("basis --algebra B --n 2 --k 1 --s 1 --cap 3/2 --json");
        assert_eq!(a, b);
        assert_eq!(a.code, 0, "{}", a.stderr);
    }
}
