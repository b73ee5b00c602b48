//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::ops::RangeInclusive;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::Instant;

use symid_cli::report::{to_json, DeriveReport, VerifyReport};
use symid_core::identities::{
    check_eq14, check_eq28, check_eq29, eq19_lhs, expand_grid, partial_fractions, run_grid,
    IdentityRegistry, IdentityReport, ParamName, ParamRanges, Side, Verdict,
};
use symid_core::polycore::{rf_equal, RationalFunctionPair, SparsePolynomial};
use symid_core::qcomb::binomial;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Run `id` over the given ranges (defaults elsewhere) and require every
/// instance to pass.
fn sweep(id: &str, ranges: &[(ParamName, RangeInclusive<i64>)]) -> Result<Vec<IdentityReport>, String> {
    let registry = IdentityRegistry::builtin();
    let ident = registry.get(id).ok_or(format!("{id} not registered"))?;
    let ranges: ParamRanges = ranges.iter().cloned().collect();
    let plan = expand_grid(ident, &ranges).map_err(|e| e.to_string())?;
    let reports = run_grid(ident, &plan.points, 4).map_err(|e| e.to_string())?;
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(format!(
            "{id} fails at {}: diff {}",
            bad.params(),
            bad.diff.as_deref().unwrap_or("?")
        ));
    }
    Ok(reports)
}

fn criterion_1() -> Outcome {
    let reports = sweep("eq12", &[(ParamName::N, 1..=8)])?;
    let expected: usize = (1..=8).map(|n| n + 1).sum();
    ensure(reports.len() == expected, || format!("{} instances, expected {expected}", reports.len()))?;
    Ok(format!("{} zero differences, N 1..8, p 1..N+1", reports.len()))
}

fn criterion_2() -> Outcome {
    let reports = sweep("eq25", &[(ParamName::N, 2..=7)])?;
    let expected: usize = (2..=7usize).map(|n| n * (n + 1) / 2).sum();
    ensure(reports.len() == expected, || format!("{} instances, expected {expected}", reports.len()))?;
    Ok(format!("{} exact polynomial equalities, N 2..7", reports.len()))
}

fn criterion_3() -> Outcome {
    let reports = sweep("eq19", &[(ParamName::N, 1..=8)])?;
    for n in 1..=8i64 {
        for p in 0..n {
            let at_one = eq19_lhs(n, p).eval_at_one();
            // q = 1 gives N C(N-1,p) = (N-p) C(N,p), the integer identity at p+1
            let int_lhs = binomial(n - 1, p) * n;
            let int_rhs = binomial(n, p) * (n - p);
            ensure(at_one == int_lhs && at_one == int_rhs, || {
                format!("q=1 value {at_one} at N={n} p={p} vs {int_lhs}, {int_rhs}")
            })?;
            let integer = check_eq14(n, p + 1).map_err(|e| e.to_string())?;
            ensure(integer.passed(), || format!("integer identity fails at N={n} p={}", p + 1))?;
        }
    }
    Ok(format!("{} q-polynomial equalities, q=1 matches the integer identity", reports.len()))
}

fn criterion_4() -> Outcome {
    let reports = sweep("eq16", &[(ParamName::N, 1..=6)])?;
    let expected: usize = (1..=6).map(|n| n * n).sum();
    ensure(reports.len() == expected, || format!("{} instances, expected {expected}", reports.len()))?;
    Ok(format!(
        "{} (N,p,i) points; exponent u(u-(p-i-1)) with prefactor q^((p-1)(p-2)/2)",
        reports.len()
    ))
}

fn criterion_5() -> Outcome {
    let pairs = sweep("derive2", &[(ParamName::N, 1..=6)])?;
    let triples = sweep("triple", &[(ParamName::N, 1..=6)])?;
    let expected: usize = (1..=6usize).map(|n| n * (n + 1) * (n + 2) / 6).sum();
    ensure(triples.len() == expected, || format!("{} triples, expected {expected}", triples.len()))?;
    Ok(format!(
        "{} pairs match the closed form, {} triples re-expand to the oracle",
        pairs.len(),
        triples.len()
    ))
}

fn criterion_6() -> Outcome {
    let pf2 = partial_fractions(2).map_err(|e| e.to_string())?;
    let v = pf2.vars().clone();
    let t1 = SparsePolynomial::var(&v, 1);
    let t2 = SparsePolynomial::var(&v, 2);
    let d = &t1 - &t2;
    let f1 = RationalFunctionPair::new(-&t1.pow(2), d.clone()).map_err(|e| e.to_string())?;
    let f2 = RationalFunctionPair::new(t2.pow(2), d).map_err(|e| e.to_string())?;
    ensure(rf_equal(pf2.coefficient(1), &f1).map_err(|e| e.to_string())?, || {
        format!("f1 = {}", pf2.coefficient(1).render())
    })?;
    ensure(rf_equal(pf2.coefficient(2), &f2).map_err(|e| e.to_string())?, || {
        format!("f2 = {}", pf2.coefficient(2).render())
    })?;
    ensure(pf2.verify().map_err(|e| e.to_string())?, || "order 2 relation fails".into())?;
    let pf3 = partial_fractions(3).map_err(|e| e.to_string())?;
    ensure(pf3.verify().map_err(|e| e.to_string())?, || "order 3 relation fails".into())?;
    Ok(format!(
        "f1 = {}, f2 = {}; order 3 relation holds",
        pf2.coefficient(1).render(),
        pf2.coefficient(2).render()
    ))
}

fn criterion_7() -> Outcome {
    let reports = sweep("eq29", &[(ParamName::N, 0..=10)])?;
    let worked = check_eq29(4, 2, 2).map_err(|e| e.to_string())?;
    let both_24 = worked.instance.lhs == Side::int(24) && worked.instance.rhs == Side::int(24);
    ensure(worked.passed() && both_24, || {
        format!(
            "N=4 p=2 q=2 gives {} and {}",
            worked.instance.lhs.render(),
            worked.instance.rhs.render()
        )
    })?;
    Ok(format!("{} integer equalities, N=4 p=2 q=2 gives 24 = 24", reports.len()))
}

fn criterion_8() -> Outcome {
    let printed = check_eq28(5, 3).map_err(|e| e.to_string())?;
    ensure(printed.verdict == Verdict::Fail, || "printed form unexpectedly holds at (5,3)".into())?;
    let diff = printed.diff.clone().unwrap_or_default();
    ensure(diff.trim_start_matches('-') == "1", || format!("difference {diff}, expected magnitude 1"))?;
    let corrected = sweep("eq28c", &[(ParamName::N, 1..=10)])?;
    let cli = symid_cli::run(["symid", "verify", "--identity", "eq28", "--n", "5", "--q", "3"], Some("1"));
    ensure(cli.code == 1 && cli.stdout.contains("FAIL eq28 n=5 q=3 diff: -1"), || {
        format!("cli exit {} output {:?}", cli.code, cli.stdout)
    })?;
    Ok(format!(
        "printed form fails at N=5 q=3 (lhs - rhs = {diff}), corrected form holds on {} points",
        corrected.len()
    ))
}

fn criterion_9() -> Outcome {
    let eq11 = sweep("eq11", &[(ParamName::N, 1..=4)])?;
    let eq24 = sweep("eq24", &[(ParamName::N, 1..=4)])?;
    let cutoffs_ok = eq11
        .iter()
        .chain(&eq24)
        .all(|r| r.params().cutoff == r.params().n.map(|n| n + 2));
    ensure(cutoffs_ok, || "a run did not use cutoff N+2".into())?;
    Ok(format!("{} single-parameter and {} two-parameter series relations", eq11.len(), eq24.len()))
}

fn symid(args: &[&str], workers_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symid"));
    cmd.args(args);
    match workers_env {
        Some(w) => cmd.env("SYMID_WORKERS", w),
        None => cmd.env_remove("SYMID_WORKERS"),
    };
    cmd.output().expect("symid binary runs")
}

fn criterion_10() -> Outcome {
    let code = |out: &Output| out.status.code();
    let cases: [(&[&str], i32); 6] = [
        (&["verify", "--identity", "eq25", "--n", "2..6"], 0),
        (&["verify", "--identity", "eq28", "--n", "5", "--q", "3"], 1),
        (&["verify", "--identity", "nosuch"], 2),
        (&["derive", "--n", "4", "--degrees", "2,2"], 0),
        (&["derive", "--n", "3", "--degrees", "4,1"], 2),
        (&["table", "qbinom", "--n", "13"], 2),
    ];
    for (args, want) in cases {
        let out = symid(args, None);
        ensure(code(&out) == Some(want), || format!("{args:?} exited {:?}, expected {want}", code(&out)))?;
    }

    let grid = ["verify", "--identity", "eq25", "--n", "2..6", "--format", "json"];
    let one = symid(&[&grid[..], &["--workers", "1"]].concat(), None).stdout;
    let many = symid(&[&grid[..], &["--workers", "8"]].concat(), None).stdout;
    let env = symid(&grid, Some("3")).stdout;
    ensure(one == many && one == env, || "output depends on worker count".into())?;

    let text = String::from_utf8(one).map_err(|e| e.to_string())?;
    let parsed: VerifyReport = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(to_json(&parsed) == text, || "verify JSON does not round-trip".into())?;
    ensure(parsed.summary.total == parsed.summary.passes + parsed.summary.failures, || {
        "summary counts inconsistent".into()
    })?;

    let failing = String::from_utf8(
        symid(&["verify", "--identity", "eq28", "--n", "1..6", "--format", "json"], Some("2")).stdout,
    )
    .map_err(|e| e.to_string())?;
    let parsed: VerifyReport = serde_json::from_str(&failing).map_err(|e| e.to_string())?;
    ensure(to_json(&parsed) == failing, || "failing-run JSON does not round-trip".into())?;

    let derived = String::from_utf8(
        symid(&["derive", "--n", "5", "--degrees", "3,2,2", "--format", "json"], None).stdout,
    )
    .map_err(|e| e.to_string())?;
    let parsed: DeriveReport = serde_json::from_str(&derived).map_err(|e| e.to_string())?;
    ensure(to_json(&parsed) == derived && parsed.verdict == Verdict::Pass, || {
        "derive JSON does not round-trip or is not verified".into()
    })?;

    Ok("exit codes 0/1/2, byte-identical JSON round trip, same output for 1, 3, 8 workers".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("sum of deleted e equals (N-p+1) e_{p-1}", criterion_1),
        ("pair identity for N 2..7", criterion_2),
        ("q-analogue sum and its q=1 reduction", criterion_3),
        ("deleted e at geometric arguments", criterion_4),
        ("derivation engine pairs and triples", criterion_5),
        ("partial fractions of order 2 and 3", criterion_6),
        ("binomial product identity for N <= 10", criterion_7),
        ("printed Pascal variant discrepancy", criterion_8),
        ("truncated series relations at cutoff N+2", criterion_9),
        ("CLI contract", criterion_10),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
