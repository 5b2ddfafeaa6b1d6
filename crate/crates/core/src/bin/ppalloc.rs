fn main() {
    std::process::exit(ppalloc::cli::run(std::env::args_os()));
}
