use std::io::{self, Write};

fn main() {
    let env = std::env::var(phmf_cli::THREADS_ENV).ok();
    let mut out = io::BufWriter::new(io::stdout());
    let code = phmf_cli::run(std::env::args_os(), env.as_deref(), &mut out);
    let _ = out.flush();
    std::process::exit(code);
}
