use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (stdout, stderr, code) = idealcore::cli::main_with_args(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
