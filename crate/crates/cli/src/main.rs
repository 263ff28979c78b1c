use std::process::ExitCode;

fn main() -> ExitCode {
    kvassoc_cli::run(std::env::args_os())
}
