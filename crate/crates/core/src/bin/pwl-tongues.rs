fn main() {
    std::process::exit(pwl_tongues::cli::main());
}
