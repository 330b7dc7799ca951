use std::process::ExitCode;

fn main() -> ExitCode {
    let out = uplab::cli::run(std::env::args_os());
    if !out.report.is_empty() {
        println!("{}", out.report);
    }
    ExitCode::from(out.code as u8)
}
