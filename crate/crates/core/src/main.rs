use std::process::ExitCode;

fn main() -> ExitCode {
    minisphere::cli::main()
}
