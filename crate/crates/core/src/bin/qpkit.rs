use std::process::ExitCode;

fn main() -> ExitCode {
    qpkit::cli::run(std::env::args_os())
}
