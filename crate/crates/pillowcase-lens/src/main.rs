fn main() {
    std::process::exit(pillowcase_lens::run(std::env::args_os()));
}
