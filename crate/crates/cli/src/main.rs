use clap::Parser;

fn main() {
    let cli = match qp1qec_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { qp1qec_cli::exit::MALFORMED } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let tol = std::env::var(qp1qec_cli::TOLERANCE_ENV).ok();
    let code = qp1qec_cli::run(&cli, tol.as_deref(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
