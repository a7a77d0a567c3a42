fn main() {
    let code = syzygies::cli::main_with_args(std::env::args(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
