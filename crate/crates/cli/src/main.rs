use clap::Parser;

fn main() {
    let cli = match cmlab_cli::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { cmlab_cli::error::EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(cmlab_cli::main_with(&cli));
}
