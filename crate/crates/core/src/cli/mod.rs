//! Command-line front end: JSON inputs, reports and verification suites.

pub mod input;
pub mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chains::normalized_chain_coalgebra;
use crate::exactalg::{HomologyGroup, Ring};
use crate::pi1::{
    complete_rewriting, enumerate_group_likes, fundamental_bialgebra, fundamental_presentation,
    local_homology, universal_cover, CobarContext, LocalSystem, DEFAULT_REWRITE_STEPS,
};
use crate::scoalg::free_coalgebra;
use crate::{Error, Result};
use input::{document_from_set, parse_group, parse_module, parse_space, read_document, SpaceInput};

/// Environment variable overriding the default rewriting step budget.
pub const STEPS_ENV: &str = "COBAR_REWRITE_STEPS";

#[derive(Parser, Debug)]
#[command(
    name = "simplicial-cobar",
    version,
    about = "Cobar constructions, fundamental bialgebras and universal covers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient ring: z, q or fp:<prime>.
    #[arg(long, global = true, default_value = "z")]
    pub ring: String,
    /// Truncation used when the input is a group.
    #[arg(long, global = true, default_value_t = 3)]
    pub truncation: usize,
    /// Rewriting step budget (default from COBAR_REWRITE_STEPS, else 20000).
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Homology of the normalized chains.
    Homology {
        input: String,
        /// Degree range such as `0..2` (inclusive).
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Presentation, completion and normal-form basis of H0 of the cobar construction.
    FundamentalAlgebra { input: String },
    /// Group-like elements up to a normal-form length bound.
    GroupLikes {
        input: String,
        #[arg(long, default_value_t = 3)]
        length_bound: usize,
    },
    /// Homology of the universal cover with its Brown certificate.
    UniversalCover { input: String },
    /// Homology with coefficients in a module over the fundamental algebra.
    LocalHomology {
        input: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Runs the invariant suites on the bundled fixtures.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Prints the nerve of a group as a simplicial-set document.
    Nerve { group: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Everything one invocation needs.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub ring: Ring,
    pub truncation: usize,
    pub steps: usize,
    pub format: Format,
}

impl JobSpec {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let steps = match cli.steps {
            Some(s) => s,
            None => match std::env::var(STEPS_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Input(format!("{STEPS_ENV}={v} is not a count")))?,
                Err(_) => DEFAULT_REWRITE_STEPS,
            },
        };
        Ok(JobSpec {
            command: cli.command,
            ring: Ring::parse(&cli.ring)?,
            truncation: cli.truncation,
            steps,
            format: cli.format,
        })
    }
}

/// Result of a run: exit code and what to print.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Ring(_) | Error::Dimension(_) | Error::Truncation(_) => EXIT_INPUT,
        Error::Infeasible(_) | Error::Budget(_) | Error::Rewriting(_) => EXIT_INFEASIBLE,
        Error::NotAComplex(_) | Error::InvalidTwisting(_) | Error::CheckFailed(_) => {
            EXIT_CHECK_FAILED
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::Ring(_) => "ring",
        Error::Dimension(_) => "dimension",
        Error::Truncation(_) => "truncation",
        Error::Infeasible(_) => "infeasible",
        Error::Budget(_) => "budget",
        Error::Rewriting(_) => "rewriting",
        Error::NotAComplex(_) => "not-a-complex",
        Error::InvalidTwisting(_) => "invalid-twisting",
        Error::CheckFailed(_) => "check-failed",
    }
}

/// Parses `a..b` or `a..=b` (both inclusive) or a single degree.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Input(format!("bad degree range `{s}`"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(s)?]),
    }
}

fn group_text(h: &HomologyGroup, ring: Ring) -> String {
    let free = match ring {
        Ring::Integers => "Z".to_string(),
        Ring::Rationals => "Q".to_string(),
        Ring::PrimeField(p) => format!("F{p}"),
    };
    let mut parts = Vec::new();
    match h.free_rank {
        0 => {}
        1 => parts.push(free),
        r => parts.push(format!("{free}^{r}")),
    }
    parts.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Serialize)]
struct HomologyEntry {
    degree: usize,
    free_rank: usize,
    torsion: Vec<String>,
    text: String,
}

fn homology_entries(degrees: &[usize], groups: &[HomologyGroup], ring: Ring) -> Vec<HomologyEntry> {
    degrees
        .iter()
        .zip(groups)
        .map(|(&degree, h)| HomologyEntry {
            degree,
            free_rank: h.free_rank,
            torsion: h.torsion.iter().map(|t| t.to_string()).collect(),
            text: group_text(h, ring),
        })
        .collect()
}

fn trust(truncation: usize) -> Value {
    json!({
        "truncation": truncation,
        "max_trusted_degree": truncation.saturating_sub(1),
        "statement": format!(
            "computed from simplices of dimension at most {truncation}; homology is exact in degrees 0..={}",
            truncation.saturating_sub(1)
        ),
    })
}

fn load(job: &JobSpec, path: &str) -> Result<SpaceInput> {
    parse_space(&read_document(path)?, job.truncation)
}

fn degrees_or_default(spec: &Option<String>, truncation: usize) -> Result<Vec<usize>> {
    let degrees = match spec {
        Some(s) => parse_degrees(s)?,
        None => (0..truncation).collect(),
    };
    if let Some(&k) = degrees.iter().find(|&&k| k >= truncation) {
        return Err(Error::Truncation(format!(
            "degree {k} needs truncation above {k}; input has truncation {truncation}"
        )));
    }
    Ok(degrees)
}

fn homology_lines(entries: &[HomologyEntry]) -> String {
    entries
        .iter()
        .map(|e| format!("H_{} = {}\n", e.degree, e.text))
        .collect()
}

/// A successful report: JSON body, text rendering and exit code.
struct Report {
    body: Value,
    text: String,
    code: i32,
}

fn execute(job: &JobSpec) -> Result<Report> {
    let ring = job.ring;
    match &job.command {
        Command::Homology { input, degrees } => {
            let s = load(job, input)?;
            let d = s.set.truncation();
            let degrees = degrees_or_default(degrees, d)?;
            let chains = normalized_chain_coalgebra(&free_coalgebra(&s.set, ring))?;
            let h = chains.dg.complex.homology(ring, &degrees)?;
            let entries = homology_entries(&degrees, &h, ring);
            let text = homology_lines(&entries);
            Ok(Report {
                body: json!({ "homology": entries, "trust": trust(d) }),
                text,
                code: EXIT_OK,
            })
        }
        Command::FundamentalAlgebra { input } => {
            let s = load(job, input)?;
            let fb = fundamental_bialgebra(&free_coalgebra(&s.set, ring), job.steps)?;
            let summary = fb.summary();
            let gl = fb.group_likes.summary(&fb.context);
            let matches = s.group.as_ref().map(|g| {
                fb.group_likes
                    .group()
                    .and_then(|h| h.find_isomorphism(g))
                    .is_some()
            });
            let mut text = format!(
                "generators: {}\nrelations: {}\nrules: {}\nrank: {}\nbasis: {}\ngroup-likes: {} ({})\n",
                summary.generators.join(", "),
                summary.relations.len(),
                summary.rules.len(),
                summary.rank,
                summary.basis.join(", "),
                gl.count,
                if gl.complete { "a group" } else { "not closed under inverses" },
            );
            if let Some(t) = &gl.table {
                text.push_str("table:\n");
                for row in t {
                    text.push_str(&format!("  {row:?}\n"));
                }
            }
            if let Some(m) = matches {
                text.push_str(&format!("isomorphic to the input group: {m}\n"));
            }
            let code = if matches == Some(false) {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            };
            Ok(Report {
                body: json!({
                    "algebra": summary,
                    "rewriting": fb.rewriting.summary(),
                    "group_likes": gl,
                    "isomorphic_to_input_group": matches,
                    "trust": trust(s.set.truncation()),
                }),
                text,
                code,
            })
        }
        Command::GroupLikes {
            input,
            length_bound,
        } => {
            let s = load(job, input)?;
            let ctx = CobarContext::new(&free_coalgebra(&s.set, ring))?;
            let rw = complete_rewriting(&fundamental_presentation(&ctx)?, job.steps)?;
            if !rw.is_complete() {
                return Err(Error::Budget(rw.summary().steps));
            }
            let gl = enumerate_group_likes(&ctx, &rw, *length_bound)?;
            let summary = gl.summary(&ctx);
            let mut text = format!(
                "{} group-like elements up to length {length_bound} ({}):\n",
                summary.count,
                if summary.complete {
                    "a group"
                } else {
                    "not closed under inverses"
                }
            );
            for e in &summary.elements {
                text.push_str(&format!("  {e}\n"));
            }
            Ok(Report {
                body: json!({ "length_bound": length_bound, "group_likes": summary, "rewriting": rw.summary() }),
                text,
                code: EXIT_OK,
            })
        }
        Command::UniversalCover { input } => {
            let s = load(job, input)?;
            let fb = fundamental_bialgebra(&free_coalgebra(&s.set, ring), job.steps)?;
            let cover = universal_cover(&fb)?;
            let d = s.set.truncation();
            let degrees: Vec<usize> = (0..d).collect();
            let entries = homology_entries(&degrees, &cover.homology()?, ring);
            let mut text = homology_lines(&entries);
            let ok = cover.certificate.agrees();
            text.push_str(&format!(
                "Brown certificate: {}\n",
                if ok { "agrees" } else { "MISMATCH" }
            ));
            if s.group.is_none() {
                text.push_str("note: the input is not known to be Kan; the cover is the twisted tensor product\n");
            }
            Ok(Report {
                body: json!({
                    "rank_of_fibre": fb.rank(),
                    "homology": entries,
                    "certificate": cover.certificate,
                    "input_is_nerve": s.group.is_some(),
                    "trust": trust(d),
                }),
                text,
                code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED },
            })
        }
        Command::LocalHomology {
            input,
            module,
            degrees,
        } => {
            let s = load(job, input)?;
            let d = s.set.truncation();
            let degrees = degrees_or_default(degrees, d)?;
            let ctx = CobarContext::new(&free_coalgebra(&s.set, ring))?;
            let edges = ctx.generator_labels().to_vec();
            let (rank, actions) = parse_module(&read_document(module)?, &edges, ring)?;
            let m = LocalSystem {
                ring,
                labels: (0..rank).map(|i| format!("m{i}")).collect(),
                actions,
            };
            let h = local_homology(&ctx, &m, &degrees)?;
            let entries = homology_entries(&degrees, &h, ring);
            let text = homology_lines(&entries);
            Ok(Report {
                body: json!({ "module_rank": rank, "homology": entries, "trust": trust(d) }),
                text,
                code: EXIT_OK,
            })
        }
        Command::Verify { suite } => {
            let checks = suites::run_suite(suite, job.steps)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!(
                    "{} [{}] {}: {}{}\n",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.suite,
                    c.subject,
                    c.name,
                    c.detail
                        .as_ref()
                        .map(|d| format!(" ({d})"))
                        .unwrap_or_default()
                ));
            }
            text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            Ok(Report {
                body: json!({ "checks": checks, "failed": failed }),
                text,
                code: if failed == 0 {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                },
            })
        }
        Command::Nerve { group } => {
            let g = parse_group(&read_document(group)?)?;
            let x = crate::sset::nerve_of_group(&g, job.truncation)?;
            let doc = serde_json::to_value(document_from_set(&x)).expect("set documents serialize");
            let text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
            Ok(Report {
                body: doc,
                text,
                code: EXIT_OK,
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Homology { .. } => "homology",
        Command::FundamentalAlgebra { .. } => "fundamental-algebra",
        Command::GroupLikes { .. } => "group-likes",
        Command::UniversalCover { .. } => "universal-cover",
        Command::LocalHomology { .. } => "local-homology",
        Command::Verify { .. } => "verify",
        Command::Nerve { .. } => "nerve",
    }
}

/// Runs one job. Output is deterministic for fixed inputs.
pub fn run(job: &JobSpec) -> Outcome {
    let name = command_name(&job.command);
    match execute(job) {
        Ok(r) => {
            let stdout = match job.format {
                Format::Text => r.text,
                Format::Json if matches!(job.command, Command::Nerve { .. }) => {
                    serde_json::to_string_pretty(&r.body).expect("json") + "\n"
                }
                Format::Json => {
                    let mut body = r.body;
                    body["command"] = json!(name);
                    body["ring"] = json!(job.ring.selector());
                    body["status"] = json!(if r.code == EXIT_OK {
                        "ok"
                    } else {
                        "check-failed"
                    });
                    serde_json::to_string_pretty(&body).expect("json") + "\n"
                }
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stdout = match job.format {
                Format::Json => {
                    let body = json!({
                        "command": name,
                        "status": "error",
                        "error": { "kind": error_kind(&e), "message": e.to_string() },
                    });
                    serde_json::to_string_pretty(&body).expect("json") + "\n"
                }
                Format::Text => String::new(),
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

/// Parses arguments, runs and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match JobSpec::from_cli(cli) {
        Ok(job) => run(&job),
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        main_with_args(std::iter::once("simplicial-cobar").chain(args.iter().copied()))
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("0..2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_degrees("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_degrees("2").unwrap(), vec![2]);
        assert!(parse_degrees("3..1").is_err());
    }

    #[test]
    fn fundamental_algebra_of_z2() {
        let o = run_args(&[
            "fundamental-algebra",
            "nerve_z2.json",
            "--ring",
            "z",
            "--format",
            "json",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["algebra"]["rank"], 2);
        assert_eq!(v["group_likes"]["count"], 2);
        assert_eq!(v["group_likes"]["table"], json!([[0, 1], [1, 0]]));
        let again = run_args(&[
            "fundamental-algebra",
            "nerve_z2.json",
            "--ring",
            "z",
            "--format",
            "json",
        ]);
        assert_eq!(o.stdout, again.stdout);
    }

    #[test]
    fn local_homology_with_sign() {
        let o = run_args(&[
            "local-homology",
            "nerve_z2.json",
            "--module",
            "sign.json",
            "--degrees",
            "0..2",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "H_0 = Z/2\nH_1 = 0\nH_2 = Z/2\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["homology", "bad_faces.json"]).code, EXIT_INPUT);
        assert_eq!(
            run_args(&["homology", "circle.json", "--degrees", "0..3"]).code,
            EXIT_INPUT
        );
        assert_eq!(
            run_args(&["fundamental-algebra", "circle.json"]).code,
            EXIT_INFEASIBLE
        );
        assert_eq!(
            run_args(&["fundamental-algebra", "s3.json", "--steps", "3"]).code,
            EXIT_INFEASIBLE
        );
        assert_eq!(
            run_args(&["homology", "circle.json", "--ring", "fp:4"]).code,
            EXIT_INPUT
        );
        let bad = r#"{"rank": 1, "action": {"(1)": [[2]]}}"#;
        let path = std::env::temp_dir().join("simplicial-cobar-bad-module.json");
        std::fs::write(&path, bad).unwrap();
        let o = run_args(&[
            "local-homology",
            "nerve_z2.json",
            "--module",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.code, EXIT_CHECK_FAILED, "{}", o.stderr);
    }

    #[test]
    fn nerve_command_matches_fixture() {
        let o = run_args(&["nerve", "z2.json", "--truncation", "3"]);
        assert_eq!(o.code, 0);
        let a: Value = serde_json::from_str(&o.stdout).unwrap();
        let b: Value = serde_json::from_str(input::fixture("nerve_z2.json").unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
