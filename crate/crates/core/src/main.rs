use std::process::ExitCode;

fn main() -> ExitCode {
    ising_partition::cli::main()
}
