fn main() {
    std::process::exit(railchan::cli::main());
}
