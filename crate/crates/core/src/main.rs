use std::process::ExitCode;

fn main() -> ExitCode {
    maxosc::cli::run()
}
