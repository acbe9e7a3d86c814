fn main() {
    std::process::exit(conducting::cli::main_with_process_io());
}
