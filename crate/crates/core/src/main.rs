fn main() {
    let code = hilbert_k3::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
