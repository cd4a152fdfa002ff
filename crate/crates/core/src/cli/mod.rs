//! The `qknot` command line: argument parsing, dispatch to the library,
//! output formatting and the on-disk result cache.
//!
//! Exit status is 0 on success, 1 when a computation fails or a verification
//! check does not pass, and 2 for usage errors (bad flags, out-of-range
//! parameters, unknown built-in names).

mod verify;

pub use verify::{run_suite, CheckOutcome, Suite};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::diagram::{builtin, parse_egd, EnhancedGaussDiagram, BUILTIN_NAMES};
use crate::error::Error;
use crate::jones::{colored_jones_with_workers, jones_h_series, kashaev_with_workers};
use crate::ohtsuki::{ohtsuki_series_with_workers, wrt_direct_check, wrt_theorem2_with_workers, JonesReference};
use crate::oracle::{builtin_word, evaluate_tangle, framing_factor, parse_tangle_word, TangleWord};
use crate::qarith::PolyInMu;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const SYNOPSIS: &str = "usage: qknot <verb> [--knot NAME | --file PATH] [--color MU] [--order N] \
[--level K] [--framing +1|-1] [--format text|json] [--workers N] [--cache DIR]";

#[derive(Parser, Debug)]
#[command(name = "qknot", version, about = "Exact quantum invariants of knots and of +-1 surgeries on them")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Colored Jones polynomial J'(mu), normalized so the unknot gives 1.
    Jones {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        color: i64,
    },
    /// Coefficients of h^0..h^N of the Jones function, as polynomials in mu.
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        order: i64,
    },
    /// Kashaev invariant at level K, reduced modulo Phi_K(q).
    Kashaev {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        level: i64,
    },
    /// Ohtsuki series of +-1 surgery on the knot, up to h^N.
    Ohtsuki {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_framing)]
        framing: i64,
        #[arg(long)]
        order: i64,
    },
    /// WRT invariant of +-1 surgery at odd level K, checked against the
    /// direct Gauss-sum ratio.
    Wrt {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_framing)]
        framing: i64,
        #[arg(long)]
        level: i64,
    },
    /// Brute-force evaluation of a 1-tangle word in the color-mu irrep.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        color: i64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Replace built-in diagrams by copies with a flipped blob.
        #[arg(long, hide = true)]
        corrupt_builtin: bool,
    },
    /// Parse and validate an EGD file, reporting linking coefficients,
    /// writhe and realizability warnings.
    Check {
        #[arg(value_name = "PATH")]
        path: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Built-in knot name.
    #[arg(long, conflicts_with = "file")]
    knot: Option<String>,
    /// EGD file (for `oracle`: a tangle word file).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Directory for memoized outputs.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_framing(s: &str) -> Result<i64, String> {
    match s {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("framing must be +1 or -1, got `{s}`")),
    }
}

/// Why a command stopped.
enum Failure {
    Usage(String),
    Computation(Error),
    /// Some verification check failed; carries the full report.
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let stream: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.verb) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n{SYNOPSIS}");
            EXIT_USAGE
        }
        Err(Failure::Computation(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
        Err(Failure::Checks(report)) => {
            let _ = out.write_all(report.as_bytes());
            EXIT_FAILURE
        }
    }
}

fn dispatch(verb: Verb) -> Outcome {
    match verb {
        Verb::Verify {
            suite,
            format,
            corrupt_builtin,
        } => {
            let outcomes = run_suite(suite, corrupt_builtin)?;
            let text = verify::render(&outcomes, format);
            if outcomes.iter().all(|o| o.pass) {
                Ok(text)
            } else {
                Err(Failure::Checks(text))
            }
        }
        Verb::Check { path, common } => check(path, &common),
        Verb::Oracle { common, color } => oracle(&common, color),
        other => cached(other),
    }
}

fn load_diagram(common: &Common) -> std::result::Result<EnhancedGaussDiagram, Failure> {
    match (&common.knot, &common.file) {
        (Some(name), None) => builtin(name).map_err(|_| {
            usage(format!("unknown built-in knot `{name}` (known: {})", BUILTIN_NAMES.join(", ")))
        }),
        (None, Some(path)) => Ok(parse_egd(&read(path)?)?),
        _ => Err(usage("exactly one of --knot or --file is required")),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn check_workers(common: &Common) -> std::result::Result<(), Failure> {
    if common.workers == 0 {
        return Err(usage("--workers must be at least 1"));
    }
    Ok(())
}

/// The verbs whose results may be memoized.
fn cached(verb: Verb) -> Outcome {
    let (common, params) = match &verb {
        Verb::Jones { common, color } => (common, format!("jones color={color}")),
        Verb::Series { common, order } => (common, format!("series order={order}")),
        Verb::Kashaev { common, level } => (common, format!("kashaev level={level}")),
        Verb::Ohtsuki { common, framing, order } => (common, format!("ohtsuki framing={framing} order={order}")),
        Verb::Wrt { common, framing, level } => (common, format!("wrt framing={framing} level={level}")),
        _ => unreachable!("handled by dispatch"),
    };
    check_workers(common)?;
    validate(&verb)?;
    let d = load_diagram(common)?;
    let key = cache_key(&d, &params, common.format);
    if let Some(dir) = &common.cache {
        if let Ok(hit) = fs::read_to_string(dir.join(&key)) {
            return Ok(hit);
        }
    }
    let text = compute(&verb, &d)?;
    if let Some(dir) = &common.cache {
        fs::create_dir_all(dir)
            .and_then(|_| fs::write(dir.join(&key), &text))
            .map_err(|e| usage(format!("cannot write cache in {}: {e}", dir.display())))?;
    }
    Ok(text)
}

fn validate(verb: &Verb) -> std::result::Result<(), Failure> {
    match verb {
        Verb::Jones { color, .. } if *color < 1 => Err(usage("--color must be at least 1")),
        Verb::Series { order, .. } | Verb::Ohtsuki { order, .. } if *order < 0 => {
            Err(usage("--order must be non-negative"))
        }
        Verb::Kashaev { level, .. } if *level < 1 => Err(usage("--level must be at least 1")),
        Verb::Wrt { level, .. } if *level < 1 || level % 2 == 0 => {
            Err(usage("--level must be an odd positive integer"))
        }
        _ => Ok(()),
    }
}

fn cache_key(d: &EnhancedGaussDiagram, params: &str, format: Format) -> String {
    let mut hasher = Sha256::new();
    hasher.update(d.to_egd_string().as_bytes());
    hasher.update(b"\0");
    hasher.update(params.as_bytes());
    hasher.update(format!("\0{format:?}").as_bytes());
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn json_line(v: Value) -> String {
    format!("{v}\n")
}

fn compute(verb: &Verb, d: &EnhancedGaussDiagram) -> Outcome {
    Ok(match verb {
        Verb::Jones { common, color } => {
            let p = colored_jones_with_workers(d, *color, common.workers)?;
            match common.format {
                Format::Text => format!("{p}\n"),
                Format::Json => json_line(json!({ "color": color, "value": p.to_json() })),
            }
        }
        Verb::Series { common, order } => {
            let coeffs = jones_h_series(d, *order as usize)?;
            match common.format {
                Format::Text => coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| format!("h^{k}: {c}\n"))
                    .collect(),
                Format::Json => json_line(json!({
                    "order": order,
                    "coefficients": coeffs.iter().map(poly_in_mu_json).collect::<Vec<_>>(),
                })),
            }
        }
        Verb::Kashaev { common, level } => {
            let p = kashaev_with_workers(d, *level, common.workers)?;
            match common.format {
                Format::Text => format!("{p}\n"),
                Format::Json => json_line(json!({ "level": level, "value": p.to_json() })),
            }
        }
        Verb::Ohtsuki { common, framing, order } => {
            let s = ohtsuki_series_with_workers(d, *framing, *order as usize, common.workers)?;
            match common.format {
                Format::Text => format!("{}\n", s.series),
                Format::Json => json_line(Value::Array(s.lambdas().iter().map(bigint_json).collect())),
            }
        }
        Verb::Wrt { common, framing, level } => {
            let z = wrt_theorem2_with_workers(d, *framing, *level, common.workers)?;
            let checked = if *level >= 3 {
                Some(wrt_direct_check(d, *framing, *level, &JonesReference::StateSum(d))?)
            } else {
                None
            };
            match common.format {
                Format::Text => {
                    let mut s = format!("{z}\n");
                    if let Some(c) = &checked {
                        s += &format!("verified modulo Phi_{}(u)\n", c.verification.modulus);
                    }
                    s
                }
                Format::Json => json_line(json!({
                    "level": level,
                    "framing": framing,
                    "value": z.to_json(),
                    "representative": checked.as_ref().map(|c| c.representative.to_json()),
                    "verified": checked.as_ref().map(|c| c.verification.holds),
                })),
            }
        }
        _ => unreachable!("handled by dispatch"),
    })
}

fn poly_in_mu_json(p: &PolyInMu) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(format!("{}/{}", c.numer(), c.denom())))
            .collect(),
    )
}

fn bigint_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(small) => json!(small),
        Err(_) => json!(n.to_string()),
    }
}

fn oracle(common: &Common, color: i64) -> Outcome {
    if color < 1 {
        return Err(usage("--color must be at least 1"));
    }
    let (word, name): (TangleWord, Option<&str>) = match (&common.knot, &common.file) {
        (Some(name), None) => (
            builtin_word(name).map_err(|_| usage(format!("no built-in tangle word `{name}`")))?,
            Some(name.as_str()),
        ),
        (None, Some(path)) => (parse_tangle_word(&read(path)?)?, None),
        _ => return Err(usage("exactly one of --knot or --file is required")),
    };
    let framed = evaluate_tangle(&word, color as usize)?;
    let value = framed.exact_div(&framing_factor(color, word.writhe()))?;
    let state_sum = match name.and_then(|n| builtin(n).ok()) {
        Some(d) => Some(colored_jones_with_workers(&d, color, common.workers)?),
        None => None,
    };
    if let Some(expected) = &state_sum {
        if *expected != value {
            return Err(Error::OracleMismatch(format!("tangle gives {value}, state sum gives {expected}")).into());
        }
    }
    Ok(match common.format {
        Format::Text => {
            let mut s = format!("framed: {framed}\nwrithe: {}\nJ': {value}\n", word.writhe());
            if state_sum.is_some() {
                s += "agrees with the state sum\n";
            }
            s
        }
        Format::Json => json_line(json!({
            "color": color,
            "writhe": word.writhe(),
            "framed": framed.to_json(),
            "value": value.to_json(),
            "state_sum_agrees": state_sum.map(|_| true),
        })),
    })
}

fn check(path: Option<PathBuf>, common: &Common) -> Outcome {
    let d = match (path.as_ref(), common.file.as_ref(), &common.knot) {
        (Some(p), None, None) | (None, Some(p), None) => parse_egd(&read(p)?)?,
        (None, None, Some(_)) => load_diagram(common)?,
        _ => return Err(usage("check takes exactly one file or --knot")),
    };
    let q = d.linking_coefficients()?;
    let warnings = d.warnings();
    Ok(match common.format {
        Format::Text => {
            let list: Vec<String> = q.iter().map(i64::to_string).collect();
            let mut s = format!("valid; writhe {}; q = [{}]\n", d.writhe(), list.join(", "));
            for w in &warnings {
                s += &format!("warning: {w}\n");
            }
            s
        }
        Format::Json => json_line(json!({
            "valid": true,
            "writhe": d.writhe(),
            "q": q,
            "warnings": warnings.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qknot(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qknot").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(qknot(&["jones", "--knot", "trefoil", "--color", "2"]), (0, "-q^-4 + q^-3 + q^-1\n".into(), String::new()));
        let (code, out, _) = qknot(&["ohtsuki", "--knot", "trefoil", "--framing", "+1", "--order", "3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert_eq!(v[0], 1);
        let (code, _, err) = qknot(&["wrt", "--knot", "trefoil", "--level", "4", "--framing", "-1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("odd"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(qknot(&[]).0, EXIT_USAGE);
        assert_eq!(qknot(&["jones", "--knot", "trefoil"]).0, EXIT_USAGE);
        assert_eq!(qknot(&["jones", "--knot", "trefoil", "--color", "0"]).0, EXIT_USAGE);
        assert_eq!(qknot(&["jones", "--knot", "nope", "--color", "2"]).0, EXIT_USAGE);
        assert_eq!(qknot(&["ohtsuki", "--knot", "trefoil", "--framing", "2", "--order", "1"]).0, EXIT_USAGE);
        assert_eq!(qknot(&["series", "--knot", "trefoil", "--order", "-1"]).0, EXIT_USAGE);
        assert_eq!(qknot(&["kashaev", "--knot", "trefoil", "--level", "3", "--workers", "0"]).0, EXIT_USAGE);
        assert_eq!(qknot(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn check_files() {
        let dir = tempfile::tempdir().unwrap();
        let good = write_temp(&dir, "t.egd", &builtin("trefoil").unwrap().to_egd_string());
        let (code, out, _) = qknot(&["check", &good]);
        assert_eq!(code, 0);
        assert_eq!(out, "valid; writhe 3; q = [1, -2, 1]\n");

        let dup = write_temp(&dir, "d.egd", "crossings 1\nsign 1 +1\nsequence 1o 1o\n");
        let (code, _, err) = qknot(&["check", &dup]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(err.contains("exactly once as overpass"), "{err}");

        let syntax = write_temp(&dir, "s.egd", "crossings 1\nsign 1 +2\n");
        let (_, _, err) = qknot(&["check", &syntax]);
        assert!(err.contains("line 2"), "{err}");

        let even = write_temp(&dir, "e.egd", "crossings 2\nsign 1 +1\nsign 2 +1\nsequence 1o 2o 1u 2u\n");
        let (code, out, err) = qknot(&["check", &even]);
        assert_eq!(code, EXIT_FAILURE, "{out}{err}");
        assert!(err.contains("not an integer"));
    }

    #[test]
    fn parity_warning_is_not_fatal() {
        let dir = tempfile::tempdir().unwrap();
        // Realizable chords but no blob: b + c is odd.
        let path = write_temp(&dir, "w.egd", "crossings 3\nsign 1 +1\nsign 2 +1\nsign 3 +1\nsequence 1o 2u 3o 1u 2o 3u\n");
        let (code, out, _) = qknot(&["check", &path]);
        assert_eq!(code, 0);
        assert!(out.contains("warning:") && out.contains("parity violates realizability"), "{out}");
    }

    #[test]
    fn cache_round_trip_and_workers() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().to_string_lossy().into_owned();
        let args = ["kashaev", "--knot", "figure8", "--level", "5", "--cache", &cache];
        let first = qknot(&args);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        assert_eq!(qknot(&args), first);
        let parallel = qknot(&["kashaev", "--knot", "figure8", "--level", "5", "--workers", "3"]);
        assert_eq!(parallel, first);
    }

    #[test]
    fn oracle_and_wrt() {
        let (code, out, _) = qknot(&["oracle", "--knot", "trefoil", "--color", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("agrees with the state sum"));
        let (code, out, _) = qknot(&["wrt", "--knot", "unknot", "--level", "3", "--framing", "+1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("1\n"), "{out}");
    }

    #[test]
    fn corrupted_oracle_suite_fails() {
        let (code, out, _) = qknot(&["verify", "--suite", "oracle", "--corrupt-builtin"]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(out.contains("FAIL oracle/trefoil: tangle word"));
        assert_eq!(qknot(&["verify", "--suite", "qarith"]).0, EXIT_OK);
    }
}
