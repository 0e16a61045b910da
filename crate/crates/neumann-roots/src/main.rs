fn main() {
    let code = neumann_roots::cli::main_entry(std::env::args_os());
    std::process::exit(code);
}
