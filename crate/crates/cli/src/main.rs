use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hofq_cli::main_from_env() as u8)
}
