fn main() {
    std::process::exit(teardrop_cli::run(std::env::args_os()));
}
