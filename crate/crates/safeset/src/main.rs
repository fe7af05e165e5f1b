use std::process::ExitCode;

fn main() -> ExitCode {
    safeset::cli::main()
}
