//! Command-line front end: argument parsing, file I/O and JSON reports.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::caps::Caps;
use crate::cocycles::cocycle_space;
use crate::error::{Error, Result};
use crate::homology::rack_homology;
use crate::io::{load_group, load_rack, parse_cocycle, RackSource, ThetaSpec, ThrSpecFile, GroupSource};
use crate::nichols::{hilbert_series, quadratic_dims, symmetrizer_dims};
use crate::perm::Permutation;
use crate::rack::{AffineSpec, Rack};
use crate::thr::{thr_criteria, ThrRack};
use crate::typed::{is_type_d_class, is_type_d_homogeneous, is_type_d_rack, Status};
use crate::verify::verify_all;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "rackforge", version, about = "Exact computations with finite racks")]
pub struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RackInput {
    /// Rack file (JSON).
    pub rack: Option<PathBuf>,
    /// Group for a conjugacy-class rack: a built-in name or a group file.
    #[arg(long, requires = "class")]
    pub group: Option<String>,
    /// Representative of the conjugacy class, in cycle notation.
    #[arg(long, requires = "group")]
    pub class: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a rack and write it as JSON.
    Build {
        /// Conjugacy class: GROUP ELEMENT.
        #[arg(long, num_args = 2, value_names = ["GROUP", "ELEMENT"])]
        conj: Option<Vec<String>>,
        /// Affine rack on Z/m with T = t: M T.
        #[arg(long, num_args = 2, value_names = ["M", "T"], allow_hyphen_values = true)]
        affine: Option<Vec<i64>>,
        /// Affine rack on F_q with T = a (integer code): Q A.
        #[arg(long, num_args = 2, value_names = ["Q", "A"])]
        field: Option<Vec<i64>>,
        /// Twisted homogeneous rack over the group L (use with --t and --ell).
        #[arg(long, value_name = "L")]
        thr: Option<String>,
        #[arg(long, requires = "thr")]
        t: Option<usize>,
        #[arg(long, requires = "thr")]
        ell: Option<String>,
        /// Conjugating permutation defining theta (default: identity).
        #[arg(long, requires = "thr")]
        theta: Option<String>,
        /// Output file; the rack is embedded in the report otherwise.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a rack or conjugacy class is of type D.
    Typed {
        #[command(flatten)]
        input: RackInput,
        /// Exit with code 4 on an inconclusive verdict.
        #[arg(long)]
        strict: bool,
    },
    /// Integral rack homology.
    H2 {
        #[command(flatten)]
        input: RackInput,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Second cohomology with coefficients in Z/m.
    Cocycles {
        #[command(flatten)]
        input: RackInput,
        #[arg(long)]
        m: u64,
    },
    /// Hilbert series of a Nichols algebra B(X, q).
    Nichols {
        #[command(flatten)]
        input: RackInput,
        /// const:-1, const:E/M, chi, or a cocycle file.
        #[arg(long, default_value = "const:-1")]
        cocycle: String,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        /// Raise the component cap for large examples.
        #[arg(long)]
        long: bool,
        /// Also report symmetrizer ranks up to this degree.
        #[arg(long)]
        symmetrizer: Option<usize>,
        /// Also report quadratic-cover dimensions up to this degree.
        #[arg(long)]
        cover: Option<usize>,
    },
    /// Type-D criteria for a twisted homogeneous rack.
    Thr {
        /// Spec file: {"L": group, "t": 2, "theta": "id", "ell": "(0 1 2)"}.
        spec: PathBuf,
        /// Scan the whole rack when no criterion applies.
        #[arg(long)]
        scan: bool,
        #[arg(long)]
        strict: bool,
    },
    /// Recompute the bundled tables and compare.
    VerifyTables {
        /// Include the long rows.
        #[arg(long)]
        long: bool,
    },
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: Value,
    inputs_digest: String,
    engine_version: &'static str,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const CAP: i32 = 3;
    pub const INCONCLUSIVE: i32 = 4;
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::EnumerationOverflow { .. } => exit::CAP,
        Error::Io(_) | Error::Json(_) | Error::Parse(_) => exit::IO,
        _ => exit::VALIDATION,
    }
}

struct Outcome {
    command: Value,
    files: Vec<PathBuf>,
    result: Value,
    code: i32,
}

fn digest(command: &Value, files: &[PathBuf]) -> Result<String> {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(command)?);
    for f in files {
        h.update(std::fs::read(f)?);
    }
    Ok(hex::encode(h.finalize()))
}

fn load_input(input: &RackInput, caps: &Caps) -> Result<(Rack, Value, Vec<PathBuf>)> {
    match (&input.rack, &input.group, &input.class) {
        (Some(p), None, None) => Ok((load_rack(&p.to_string_lossy())?, json!({ "rack": p }), vec![p.clone()])),
        (None, Some(g), Some(c)) => {
            let x = RackSource::Conj { group: g.clone(), class: c.clone() }.build(caps)?;
            let files = group_files(g);
            Ok((x, json!({ "group": g, "class": c }), files))
        }
        _ => Err(Error::Parse("give a rack file or --group and --class".into())),
    }
}

fn group_files(g: &str) -> Vec<PathBuf> {
    let p = PathBuf::from(g);
    if p.exists() { vec![p] } else { Vec::new() }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn run_command(cmd: &Command, caps: &Caps) -> Result<Outcome> {
    let ok = |command: Value, files: Vec<PathBuf>, result: Value| Outcome { command, files, result, code: exit::OK };
    match cmd {
        Command::Build { conj, affine, field, thr, t, ell, theta, output } => {
            let (source, files) = match (conj, affine, field, thr) {
                (Some(c), None, None, None) => {
                    (RackSource::Conj { group: c[0].clone(), class: c[1].clone() }, group_files(&c[0]))
                }
                (None, Some(a), None, None) => {
                    let m = u64::try_from(a[0]).map_err(|_| Error::invalid("modulus must be positive"))?;
                    (RackSource::Affine(AffineSpec::Cyclic { m, t: a[1] }), Vec::new())
                }
                (None, None, Some(f), None) => {
                    let q = u64::try_from(f[0]).map_err(|_| Error::invalid("field size must be positive"))?;
                    (RackSource::Affine(AffineSpec::Field { q, a: f[1] }), Vec::new())
                }
                (None, None, None, Some(l)) => {
                    let group = if PathBuf::from(l).exists() {
                        serde_json::from_str(&std::fs::read_to_string(l)?)?
                    } else {
                        GroupSource::Named(l.clone())
                    };
                    let t = t.ok_or_else(|| Error::Parse("--thr needs --t".into()))?;
                    let spec = ThrSpecFile {
                        group,
                        t,
                        theta: match theta {
                            Some(c) => ThetaSpec::Conjugator { conjugator: c.clone() },
                            None => ThetaSpec::Named("id".into()),
                        },
                        ell: ell.clone().unwrap_or_else(|| "e".into()),
                    };
                    (RackSource::Thr(spec), group_files(l))
                }
                _ => return Err(Error::Parse("give exactly one of --conj, --affine, --field, --thr".into())),
            };
            let x = source.build(caps)?;
            let file = x.to_file();
            // Round trip through the serialized form before writing.
            let reloaded = Rack::from_file(serde_json::from_str(&serde_json::to_string(&file)?)?)?;
            if reloaded.table() != x.table() {
                return Err(Error::invalid("rack file does not round-trip"));
            }
            let mut result = json!({ "size": x.size(), "provenance": x.provenance() });
            match output {
                Some(p) => {
                    std::fs::write(p, serde_json::to_string_pretty(&file)? + "\n")?;
                    result["path"] = json!(p);
                }
                None => result["rack"] = to_value(&file)?,
            }
            Ok(ok(json!({ "build": source }), files, result))
        }
        Command::Typed { input, strict } => {
            let (verdict, command, files) = match (&input.rack, &input.group, &input.class) {
                (None, Some(g), Some(c)) => {
                    let group = load_group(g, caps)?;
                    let rep = Permutation::parse(c, group.degree())?;
                    (is_type_d_class(&group, &rep)?, json!({ "typed": { "group": g, "class": c } }), group_files(g))
                }
                _ => {
                    let (x, cmd, files) = load_input(input, caps)?;
                    (is_type_d_rack(&x), json!({ "typed": cmd }), files)
                }
            };
            let code = if *strict && verdict.status == Status::Inconclusive { exit::INCONCLUSIVE } else { exit::OK };
            Ok(Outcome { command, files, result: to_value(&verdict)?, code })
        }
        Command::H2 { input, degree } => {
            let (x, cmd, files) = load_input(input, caps)?;
            let h = rack_homology(&x, *degree, caps)?;
            Ok(ok(json!({ "h2": cmd, "degree": degree }), files, to_value(&h)?))
        }
        Command::Cocycles { input, m } => {
            let (x, cmd, files) = load_input(input, caps)?;
            let space = cocycle_space(&x, *m, caps)?;
            // The free rank of H₂ is the square of the number of orbits.
            let orbits = x.orbit_decomposition().len();
            let mut result = to_value(&space)?;
            result["torsion"] = to_value(&space.h2.without_free(*m, orbits * orbits))?;
            Ok(ok(json!({ "cocycles": cmd, "m": m }), files, result))
        }
        Command::Nichols { input, cocycle, max_degree, long, symmetrizer, cover } => {
            let caps = if *long { Caps { nichols_dim: caps.nichols_dim.max(200_000), ..caps.clone() } } else { caps.clone() };
            let (x, cmd, mut files) = load_input(input, &caps)?;
            let q = parse_cocycle(cocycle, &x)?;
            if PathBuf::from(cocycle).exists() {
                files.push(cocycle.into());
            }
            let r = hilbert_series(&x, &q, *max_degree, &caps)?;
            let mut result = to_value(&r)?;
            if let Some(n) = symmetrizer {
                result["symmetrizer_dims"] = json!(symmetrizer_dims(&x, &q, *n, &caps)?);
            }
            if let Some(n) = cover {
                result["quadratic_cover_dims"] = json!(quadratic_dims(&x, &q, *n, &caps)?);
            }
            let command = json!({ "nichols": cmd, "cocycle": cocycle, "max_degree": max_degree, "long": long,
                                  "symmetrizer": symmetrizer, "cover": cover });
            Ok(ok(command, files, result))
        }
        Command::Thr { spec, scan, strict } => {
            let file: ThrSpecFile = serde_json::from_str(&std::fs::read_to_string(spec)?)?;
            let s = file.to_spec(caps)?;
            let mut v = thr_criteria(&s, caps)?;
            if *scan && v.status == Status::Inconclusive {
                v = is_type_d_homogeneous(&ThrRack::new(&s, caps)?, "rack-scan");
            }
            let code = if *strict && v.status == Status::Inconclusive { exit::INCONCLUSIVE } else { exit::OK };
            let command = json!({ "thr": spec, "scan": scan });
            Ok(Outcome { command, files: vec![spec.clone()], result: to_value(&v)?, code })
        }
        Command::VerifyTables { long } => {
            let report = verify_all(caps, *long)?;
            let code = if report.failed == 0 { exit::OK } else { exit::VALIDATION };
            Ok(Outcome { command: json!({ "verify-tables": { "long": long } }), files: Vec::new(), result: to_value(&report)?, code })
        }
    }
}

/// Runs one invocation and prints its report; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = (|| -> Result<(String, i32)> {
        let caps = Caps::from_env()?;
        if let Some(n) = cli.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global()
                .map_err(|e| Error::invalid(e.to_string()))?;
        }
        let start = Instant::now();
        let out = run_command(&cli.command, &caps)?;
        let report = Report {
            schema_version: SCHEMA_VERSION,
            inputs_digest: digest(&out.command, &out.files)?,
            command: out.command,
            engine_version: env!("CARGO_PKG_VERSION"),
            result: out.result,
            timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
        };
        Ok((serde_json::to_string_pretty(&report)?, out.code))
    })();
    match outcome {
        Ok((text, code)) => {
            println!("{text}");
            code
        }
        Err(e) => {
            let err = json!({ "schema_version": SCHEMA_VERSION, "error": e.to_string() });
            eprintln!("{}", serde_json::to_string_pretty(&err).unwrap_or_default());
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("rackforge").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn arguments() {
        let c = parse(&["build", "--affine", "5", "-1"]);
        assert!(matches!(c.command, Command::Build { affine: Some(ref a), .. } if a == &vec![5, -1]));
        let c = parse(&["--jobs", "2", "typed", "--group", "S5", "--class", "(0 1 2 3)", "--strict"]);
        assert_eq!(c.jobs, Some(2));
        assert!(Cli::try_parse_from(["rackforge", "typed", "--group", "S5"]).is_err());
    }

    #[test]
    fn commands() {
        let caps = Caps::default();
        let c = parse(&["typed", "--group", "S5", "--class", "(0 1 2 3)"]);
        let out = run_command(&c.command, &caps).unwrap();
        assert_eq!(out.result["status"], "TYPE_D");
        let c = parse(&["h2", "--group", "S4", "--class", "(0 1)"]);
        let out = run_command(&c.command, &caps).unwrap();
        assert_eq!(out.result["betti"], 1);
        let c = parse(&["build", "--conj", "S5", "(0 1 2 3)"]);
        assert_eq!(run_command(&c.command, &caps).unwrap().result["size"], 30);
        let c = parse(&["build", "--thr", "A5", "--t", "2", "--ell", "e"]);
        assert_eq!(run_command(&c.command, &caps).unwrap().result["size"], 60);
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::CapExceeded { what: "x", size: 2, cap: 1 }), exit::CAP);
        assert_eq!(exit_code(&Error::invalid("x")), exit::VALIDATION);
        assert_eq!(exit_code(&Error::Parse("x".into())), exit::IO);
    }
}
