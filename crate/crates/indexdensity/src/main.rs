fn main() {
    std::process::exit(indexdensity::run_cli());
}
