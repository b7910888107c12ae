fn main() {
    let stdout = std::io::stdout();
    let code = potgraph::cli::run_with(std::env::args_os(), &mut stdout.lock());
    std::process::exit(code);
}
