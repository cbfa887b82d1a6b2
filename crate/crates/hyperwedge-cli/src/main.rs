fn main() {
    let code = hyperwedge_cli::run(std::env::args_os(), std::env::vars(), &mut std::io::stdout().lock(), &mut std::io::stderr());
    std::process::exit(code);
}
