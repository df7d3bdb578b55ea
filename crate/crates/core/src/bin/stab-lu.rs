fn main() {
    std::process::exit(stab_lu::cli::run(std::env::args_os()));
}
