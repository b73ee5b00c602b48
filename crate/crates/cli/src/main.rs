use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_workers = std::env::var("SYMID_WORKERS").ok();
    let out = symid_cli::run(std::env::args_os(), env_workers.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
