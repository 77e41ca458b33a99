use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdin = std::io::stdin().lock();
    let mut stdout = std::io::stdout().lock();
    let out = bordered_magic::cli::main_with(std::env::args_os(), &mut stdin, &mut stdout);
    // a closed pipe downstream is not an error worth reporting
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
