fn main() {
    std::process::exit(formcone_cli::main_with(std::env::args()));
}
