//! Command-line front end: `verify`, `derive`, `table` and `list`.
//!
//! [`run`] does all the work and returns what to print plus the exit code,
//! so the binary is a thin wrapper and tests can drive it in process.
//! Exit codes: 0 everything passed, 1 some check failed, 2 usage error.

pub mod args;
pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::Parser;
use symid_core::identities::{
    brute_force_oracle, derive_identity, expand_grid, render_key, run_grid, validate_degrees,
    IdentityRegistry, ParamName, ParamRanges, Verdict, MAX_N,
};
use symid_core::qcomb::{elem_geometric, q_binomial_row};
use symid_core::symfn::build_tables;
use symid_core::Error;

use args::{Cli, Command, DeriveArgs, Format, TableArgs, TableKind, VerifyArgs};
use report::{
    to_json, DeriveReport, DerivedTerm, InstanceRecord, RunConfig, RunSummary, TableEntry,
    TableReport, VerifyReport,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome {
            stderr: format!("error: {message}\n"),
            code: EXIT_USAGE,
            ..Default::default()
        }
    }

    fn from_error(err: Error) -> Self {
        Outcome {
            stderr: format!("error: {err}\n"),
            code: if err.is_usage() { EXIT_USAGE } else { EXIT_FAIL },
            ..Default::default()
        }
    }
}

/// Run the CLI on `args` (program name first). `env_workers` is the value of
/// `SYMID_WORKERS`, if set.
pub fn run<I, T>(args: I, env_workers: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Default::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    code: EXIT_PASS,
                    ..Default::default()
                }
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(&a, env_workers),
        Command::Derive(a) => cmd_derive(&a),
        Command::Table(a) => cmd_table(&a),
        Command::List => Ok(cmd_list()),
    };
    result.unwrap_or_else(Outcome::from_error)
}

fn resolve_workers(flag: Option<usize>, env: Option<&str>) -> Result<usize, String> {
    let workers = match (flag, env) {
        (Some(w), _) => w,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| format!("SYMID_WORKERS must be a positive integer, got `{v}`"))?,
        (None, None) => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if workers == 0 {
        return Err("worker count must be at least 1".into());
    }
    Ok(workers)
}

fn cmd_list() -> Outcome {
    let registry = IdentityRegistry::builtin();
    let mut out = String::new();
    for ident in registry.iter() {
        let params: Vec<_> = ident.params().iter().map(|p| p.as_str()).collect();
        let _ = writeln!(out, "{:<8} [{}] {}", ident.id(), params.join(","), ident.summary());
    }
    Outcome {
        stdout: out,
        ..Default::default()
    }
}

fn cmd_verify(a: &VerifyArgs, env_workers: Option<&str>) -> symid_core::Result<Outcome> {
    let registry = IdentityRegistry::builtin();
    let Some(identity) = registry.get(&a.identity) else {
        let known: Vec<_> = registry.ids().collect();
        return Ok(Outcome::usage(format!(
            "unknown identity `{}`; known: {}",
            a.identity,
            known.join(", ")
        )));
    };
    let workers = match resolve_workers(a.workers, env_workers) {
        Ok(w) => w,
        Err(msg) => return Ok(Outcome::usage(msg)),
    };

    let given = [
        (ParamName::N, &a.n),
        (ParamName::P, &a.p),
        (ParamName::Q, &a.q),
        (ParamName::R, &a.r),
        (ParamName::I, &a.i),
        (ParamName::Cutoff, &a.cutoff),
    ];
    let ranges: ParamRanges = given
        .iter()
        .filter_map(|(name, r)| r.as_ref().map(|r| (*name, r.0.clone())))
        .collect();

    let start = Instant::now();
    let plan = expand_grid(identity, &ranges)?;
    let reports = run_grid(identity, &plan.points, workers)?;
    let wall = start.elapsed();

    let instances: Vec<InstanceRecord> = reports
        .iter()
        .map(|r| InstanceRecord::from_report(r, a.timings))
        .collect();
    let mut summary = RunSummary::from_records(&instances, plan.skipped);
    if a.timings {
        summary.wall_ms = Some(wall.as_millis() as u64);
    }
    let code = if summary.failures == 0 { EXIT_PASS } else { EXIT_FAIL };

    let mut stderr = String::new();
    if plan.skipped > 0 {
        let _ = writeln!(
            stderr,
            "note: skipped {} grid point(s) outside the domain of {}",
            plan.skipped,
            identity.id()
        );
    }

    let stdout = match a.format {
        Format::Json => {
            let show = |r: &Option<args::Range>| r.as_ref().map(|r| r.to_string());
            let config = RunConfig {
                command: "verify".into(),
                identity: identity.id().into(),
                n: show(&a.n),
                p: show(&a.p),
                q: show(&a.q),
                r: show(&a.r),
                i: show(&a.i),
                cutoff: show(&a.cutoff),
                format: a.format.as_str().into(),
            };
            to_json(&VerifyReport {
                config,
                instances,
                summary,
            })
        }
        Format::Text => render_verify_text(&instances, &summary),
    };
    Ok(Outcome {
        stdout,
        stderr,
        code,
    })
}

fn render_verify_text(instances: &[InstanceRecord], summary: &RunSummary) -> String {
    let mut out = String::new();
    for rec in instances {
        let _ = write!(out, "{} {} {}", rec.verdict.to_string().to_uppercase(), rec.identity, rec.params);
        if let Some(d) = &rec.diff {
            let _ = write!(out, " diff: {d}");
        }
        if rec.verdict == Verdict::Fail {
            if let Some(n) = &rec.note {
                let _ = write!(out, " ({n})");
            }
        }
        if let Some(us) = rec.elapsed_us {
            let _ = write!(out, " [{us} us]");
        }
        out.push('\n');
    }
    let _ = write!(
        out,
        "total {} passes {} failures {} skipped {}",
        summary.total, summary.passes, summary.failures, summary.skipped
    );
    if let Some(ms) = summary.wall_ms {
        let _ = write!(out, " wall {ms} ms");
    }
    out.push('\n');
    out
}

fn cmd_derive(a: &DeriveArgs) -> symid_core::Result<Outcome> {
    if !(1..=MAX_N).contains(&a.n) {
        return Ok(Outcome::usage(format!("n must lie in 1..={MAX_N}")));
    }
    if !(2..=3).contains(&a.degrees.len()) {
        return Ok(Outcome::usage(format!(
            "derive takes 2 or 3 degrees, got {}",
            a.degrees.len()
        )));
    }
    validate_degrees("derive", a.n, &a.degrees)?;
    let n = a.n as usize;
    let degrees: Vec<usize> = a.degrees.iter().map(|&d| d as usize).collect();

    let derived = derive_identity(n, &degrees)?;
    let tables = build_tables(n)?;
    let agrees = derived.expand(&tables) == brute_force_oracle(n, &degrees)?;
    let verdict = if agrees { Verdict::Pass } else { Verdict::Fail };

    let stdout = match a.format {
        Format::Json => to_json(&DeriveReport {
            n,
            degrees: degrees.clone(),
            lhs: derived.render_lhs(),
            terms: derived
                .terms()
                .map(|(k, c)| DerivedTerm {
                    term: render_key(k),
                    coefficient: c.to_string(),
                })
                .collect(),
            verdict,
        }),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{}", derived.render());
            for (k, c) in derived.terms() {
                let _ = writeln!(out, "  {}: {}", render_key(k), c);
            }
            let _ = writeln!(out, "oracle: {verdict}");
            out
        }
    };
    Ok(Outcome {
        stdout,
        code: if agrees { EXIT_PASS } else { EXIT_FAIL },
        ..Default::default()
    })
}

fn cmd_table(a: &TableArgs) -> symid_core::Result<Outcome> {
    let min = if a.kind == TableKind::Qbinom { 0 } else { 1 };
    if !(min..=MAX_N).contains(&a.n) {
        return Ok(Outcome::usage(format!("n must lie in {min}..={MAX_N}")));
    }
    let n = a.n as usize;
    let (name, entries) = match a.kind {
        TableKind::Qbinom => (
            "qbinom",
            q_binomial_row(n)
                .iter()
                .enumerate()
                .map(|(k, g)| TableEntry {
                    label: format!("[{n},{k}]"),
                    value: g.render(),
                })
                .collect::<Vec<_>>(),
        ),
        TableKind::Esym => {
            let tables = build_tables(n)?;
            (
                "esym",
                (0..=n)
                    .map(|r| TableEntry {
                        label: format!("e{r}"),
                        value: tables.full.get(r).render(),
                    })
                    .collect(),
            )
        }
        TableKind::Geom => (
            "geom",
            (0..=n)
                .map(|p| {
                    Ok(TableEntry {
                        label: format!("e{p}(1..q^{})", n - 1),
                        value: elem_geometric(n, p)?.render(),
                    })
                })
                .collect::<symid_core::Result<Vec<_>>>()?,
        ),
    };
    let stdout = match a.format {
        Format::Json => to_json(&TableReport {
            table: name.into(),
            n,
            entries,
        }),
        Format::Text => entries
            .iter()
            .map(|e| format!("{} = {}\n", e.label, e.value))
            .collect(),
    };
    Ok(Outcome {
        stdout,
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symid(args: &str) -> Outcome {
        run(std::iter::once("symid").chain(args.split_whitespace()), Some("2"))
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(symid("verify --identity eq25 --n 2..4").code, EXIT_PASS);
        let failing = symid("verify --identity eq28 --n 5 --q 3");
        assert_eq!(failing.code, EXIT_FAIL);
        assert!(failing.stdout.contains("diff: -1"));
        assert_eq!(symid("verify --identity nosuch").code, EXIT_USAGE);
        assert_eq!(symid("verify --identity eq25").code, EXIT_USAGE);
        assert_eq!(symid("verify --identity eq25 --n 4 --p 2 --q 3").code, EXIT_USAGE);
        assert_eq!(symid("verify --identity eq12 --n 13").code, EXIT_USAGE);
        assert_eq!(symid("verify --identity eq12 --n 3 --q 2").code, EXIT_USAGE);
        assert_eq!(symid("verify --identity eq12 --n 3 --workers 0").code, EXIT_USAGE);
        assert_eq!(symid("bogus").code, EXIT_USAGE);
    }

    #[test]
    fn env_workers() {
        assert_eq!(resolve_workers(None, Some("3")), Ok(3));
        assert_eq!(resolve_workers(Some(5), Some("3")), Ok(5));
        assert!(resolve_workers(None, Some("many")).is_err());
        assert!(resolve_workers(None, None).unwrap() >= 1);
    }

    #[test]
    fn derive_outputs() {
        let out = symid("derive --n 3 --degrees 1,1");
        assert_eq!(out.code, EXIT_PASS);
        assert!(out.stdout.starts_with("sum_i e0^(i)*e0^(i) = 3*e0*e0\n"));
        assert!(out.stdout.ends_with("oracle: pass\n"));
        assert_eq!(symid("derive --n 3 --degrees 5,1").code, EXIT_USAGE);
        assert_eq!(symid("derive --n 3 --degrees 2").code, EXIT_USAGE);
    }

    #[test]
    fn tables() {
        let out = symid("table qbinom --n 4");
        assert!(out.stdout.contains("[4,2] = 1 + q + 2*q^2 + q^3 + q^4\n"));
        assert_eq!(symid("table qbinom --n 0").stdout, "[0,0] = 1\n");
        let esym = symid("table esym --n 3").stdout;
        assert_eq!(esym.lines().count(), 4);
        assert!(esym.contains("e3 = x1*x2*x3"));
        assert_eq!(symid("table esym --n 13").code, EXIT_USAGE);
        assert_eq!(symid("table esym --n 0").code, EXIT_USAGE);
    }
}
