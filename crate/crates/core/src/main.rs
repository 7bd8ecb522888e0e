use std::process::ExitCode;

fn main() -> ExitCode {
    let code = cleantext::cli::run_cli(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
