fn main() {
    std::process::exit(noulrich::run(std::env::args_os()));
}
