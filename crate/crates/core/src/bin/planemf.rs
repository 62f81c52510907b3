use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = planemf::cli::run(std::env::args_os());
    if code != planemf::cli::EXIT_USAGE && !out.starts_with("error:") {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    ExitCode::from(code as u8)
}
