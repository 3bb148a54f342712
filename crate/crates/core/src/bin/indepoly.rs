use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = indepoly::cli::run(std::env::args_os(), &mut out);
    let _ = out.flush();
    ExitCode::from(code.clamp(0, 255) as u8)
}
