//! Command-line front end. Data goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::bijections::{self, grammar_enumerate, HeapClass};
use crate::heap_animal::{enumerate_bruteforce, AnimalStats, Heap, Lattice, PointAnimal};
use crate::lattice_path::{self, PathFamily, PathStats, StepWord};
use crate::multiset::{self, Multiset, MultisetFamily, MultisetStats};
use crate::render::{self, AnimalRepr, Format, Object};
use crate::series::ClosedForm;
use crate::table;
use crate::verify::{self, Suite, Toolkit};

#[derive(Debug, Parser)]
#[command(
    name = "multiset-animals",
    version,
    about = "Multisets, Grand-Dyck paths and directed animals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every object of a family, one token per line.
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Upper bound for multiset values (defaults to n).
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        count_only: bool,
    },
    /// Convert an object between representations.
    Map {
        #[arg(long, value_enum)]
        from: Repr,
        #[arg(long, value_enum)]
        to: Repr,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Statistics of an object and of its images under the bijections.
    Stats {
        #[arg(long, value_enum)]
        object: Repr,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Coefficients of a generating function, `n<TAB>value` for n >= 1.
    Series {
        #[arg(long)]
        name: String,
        #[arg(long)]
        order: usize,
    },
    /// Counts of n-multisets of [k] with no two consecutive integers.
    Table1 {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
    /// Run exhaustive verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Draw an object as ASCII art or SVG.
    Render {
        #[arg(long, value_enum)]
        object: RenderObject,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// How an animal token is read.
        #[arg(long, value_enum, default_value_t = AnimalReprArg::Heap)]
        repr: AnimalReprArg,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Multiset,
    MultisetStar,
    MultisetSuper,
    MultisetSuperStar,
    MultisetNoSingle,
    Dyck,
    DyckStar,
    GrandDyck,
    GrandDyckStar,
    GrandDyckUduFree,
    HeapT,
    HeapTs,
    HeapQ,
    HeapQs,
    AnimalTriangular,
    AnimalSquare,
    AnimalTriangularSub,
    AnimalSquareSub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Repr {
    Multiset,
    Path,
    Heap,
    Animal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bijections,
    Statistics,
    Counts,
    Series,
    Symmetry,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RenderObject {
    Animal,
    Path,
    Multiset,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AnimalReprArg {
    Heap,
    Points,
}

/// Failure of a command: a message and the exit code to return.
struct Failure(i32, String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = match command {
        Command::Enumerate {
            family,
            n,
            k,
            count_only,
        } => enumerate(family, n, k, count_only)?,
        Command::Map { from, to, input } => format!("{}\n", map(from, to, &input)?),
        Command::Stats {
            object,
            input,
            json,
        } => stats(object, &input, json)?,
        Command::Series { name, order } => {
            let form = ClosedForm::from_name(&name).map_err(|_| {
                usage(format!(
                    "unknown series {name:?}; expected one of {}",
                    ClosedForm::ALL.map(ClosedForm::name).join(", ")
                ))
            })?;
            form.expand(order).terms_text(1)
        }
        Command::Table1 { max_n, max_k } => {
            if max_n == 0 || max_k == 0 {
                return Err(usage("--max-n and --max-k must be at least 1"));
            }
            let t = table::table1(max_n, max_k);
            let mismatches = t.mismatches();
            if !mismatches.is_empty() {
                write_out(out, &t.to_string())?;
                return Err(Failure(1, mismatches.join("; ")));
            }
            t.to_string()
        }
        Command::Verify { suite, max_n, json } => {
            let report = run_verify(suite, max_n)?;
            let text = if json {
                format!(
                    "{}\n",
                    serde_json::to_string(&report).expect("serializable")
                )
            } else {
                report.to_string()
            };
            write_out(out, &text)?;
            return Ok(report.exit_code);
        }
        Command::Render {
            object,
            format,
            input,
            repr,
            output,
        } => {
            let object = match object {
                RenderObject::Animal => Object::Animal,
                RenderObject::Path => Object::Path,
                RenderObject::Multiset => Object::Multiset,
            };
            let format = match format {
                RenderFormat::Ascii => Format::Ascii,
                RenderFormat::Svg => Format::Svg,
            };
            let repr = match repr {
                AnimalReprArg::Heap => AnimalRepr::Heap,
                AnimalReprArg::Points => AnimalRepr::Points,
            };
            let doc = render::render(object, format, &input, repr).map_err(usage)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, doc)
                        .map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
                    String::new()
                }
                None => doc,
            }
        }
    };
    write_out(out, &text)?;
    Ok(0)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure(2, format!("write failed: {e}")))
}

fn run_verify(suite: SuiteArg, max_n: Option<usize>) -> Result<verify::VerifyReport, Failure> {
    let toolkit = Toolkit::default();
    let suite = match suite {
        SuiteArg::All => return Ok(verify::run_all(&toolkit, max_n)),
        SuiteArg::Bijections => Suite::Bijections,
        SuiteArg::Statistics => Suite::Statistics,
        SuiteArg::Counts => Suite::Counts,
        SuiteArg::Series => Suite::Series,
        SuiteArg::Symmetry => Suite::Symmetry,
    };
    let n = max_n.unwrap_or(suite.cap());
    if n == 0 || n > suite.cap() {
        return Err(usage(format!(
            "--max-n for {} must be between 1 and {}",
            suite.name(),
            suite.cap()
        )));
    }
    Ok(suite.run(&toolkit, n))
}

fn lines<T: ToString>(items: impl Iterator<Item = T>, count_only: bool) -> String {
    if count_only {
        format!("{}\n", items.count())
    } else {
        items.map(|x| format!("{}\n", x.to_string())).collect()
    }
}

fn enumerate(
    family: Family,
    n: usize,
    k: Option<u32>,
    count_only: bool,
) -> Result<String, Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let multisets = |f: MultisetFamily| {
        let k = k.unwrap_or(n as u32);
        if k == 0 {
            return Err(usage("--k must be at least 1"));
        }
        Ok(lines(multiset::enumerate(f, n, k), count_only))
    };
    let paths = |f: PathFamily| Ok(lines(lattice_path::enumerate(f, n), count_only));
    let heaps = |c: HeapClass| {
        grammar_enumerate(n, c)
            .map(|h| lines(h.into_iter(), count_only))
            .map_err(usage)
    };
    let animals = |lattice: Lattice, sub: bool| {
        enumerate_bruteforce(n, lattice, sub)
            .map(|a| lines(a.into_iter(), count_only))
            .map_err(usage)
    };
    match family {
        Family::Multiset => multisets(MultisetFamily::All),
        Family::MultisetStar => multisets(MultisetFamily::Star),
        Family::MultisetSuper => multisets(MultisetFamily::Superdiagonal),
        Family::MultisetSuperStar => multisets(MultisetFamily::SuperdiagonalStar),
        Family::MultisetNoSingle => multisets(MultisetFamily::NoSingleExceptK),
        Family::Dyck => paths(PathFamily::Dyck),
        Family::DyckStar => paths(PathFamily::DyckStar),
        Family::GrandDyck => paths(PathFamily::GrandDyck),
        Family::GrandDyckStar => paths(PathFamily::GrandDyckStar),
        Family::GrandDyckUduFree => paths(PathFamily::GrandDyckUduFree),
        Family::HeapT => heaps(HeapClass::T),
        Family::HeapTs => heaps(HeapClass::Ts),
        Family::HeapQ => heaps(HeapClass::Q),
        Family::HeapQs => heaps(HeapClass::Qs),
        Family::AnimalTriangular => animals(Lattice::Triangular, false),
        Family::AnimalSquare => animals(Lattice::Square, false),
        Family::AnimalTriangularSub => animals(Lattice::Triangular, true),
        Family::AnimalSquareSub => animals(Lattice::Square, true),
    }
}

/// One object in all four representations.
struct Views {
    multiset: Multiset,
    path: StepWord,
    heap: Heap,
    animal: PointAnimal,
}

fn views(from: Repr, input: &str) -> Result<Views, Failure> {
    let path = match from {
        Repr::Multiset => bijections::phi(&input.parse().map_err(usage)?),
        Repr::Path => input.parse().map_err(usage)?,
        Repr::Heap => bijections::psi_forward(&input.parse().map_err(usage)?).map_err(usage)?,
        Repr::Animal => {
            let a: PointAnimal = input.parse().map_err(usage)?;
            bijections::psi_forward(&a.to_heap()).map_err(usage)?
        }
    };
    let multiset = bijections::phi_inv(&path).map_err(usage)?;
    let heap = bijections::psi_inv(&path).map_err(usage)?;
    let animal = heap.to_animal();
    Ok(Views {
        multiset,
        path,
        heap,
        animal,
    })
}

fn map(from: Repr, to: Repr, input: &str) -> Result<String, Failure> {
    // Phi applies to any multiset, not only those with bound n.
    if (from, to) == (Repr::Multiset, Repr::Path) {
        let m: Multiset = input.parse().map_err(usage)?;
        return Ok(bijections::phi(&m).to_string());
    }
    if (from, to) == (Repr::Path, Repr::Multiset) {
        let p: StepWord = input.parse().map_err(usage)?;
        return Ok(bijections::phi_inv(&p).map_err(usage)?.to_string());
    }
    let v = views(from, input)?;
    Ok(match to {
        Repr::Multiset => v.multiset.to_string(),
        Repr::Path => v.path.to_string(),
        Repr::Heap => v.heap.to_string(),
        Repr::Animal => v.animal.to_string(),
    })
}

#[derive(Serialize)]
struct StatsReport {
    multiset: String,
    path: String,
    heap: String,
    animal: String,
    multiset_stats: MultisetStats,
    path_stats: PathStats,
    animal_stats: AnimalStats,
}

fn stats(object: Repr, input: &str, json: bool) -> Result<String, Failure> {
    let v = views(object, input)?;
    let report = StatsReport {
        multiset_stats: v.multiset.stats(),
        path_stats: v.path.height_stats().map_err(usage)?,
        animal_stats: v.heap.stats(),
        multiset: v.multiset.to_string(),
        path: v.path.to_string(),
        heap: v.heap.to_string(),
        animal: v.animal.to_string(),
    };
    let value = serde_json::to_value(&report).expect("serializable");
    if json {
        return Ok(format!("{value}\n"));
    }
    let mut out = String::new();
    flatten("", &value, &mut out);
    Ok(out)
}

/// `key<TAB>value` lines, with nested keys joined by dots.
fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                match v {
                    Value::Object(inner) if inner.keys().all(|k| k.parse::<i64>().is_ok()) => {
                        let cells: Vec<String> =
                            inner.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                        out.push_str(&format!("{key}\t{}\n", cells.join(" ")));
                    }
                    _ => flatten(&key, v, out),
                }
            }
        }
        Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push_str(&format!("{prefix}\t{}\n", cells.join(" ")));
        }
        Value::String(s) => out.push_str(&format!("{prefix}\t{s}\n")),
        other => out.push_str(&format!("{prefix}\t{other}\n")),
    }
}
