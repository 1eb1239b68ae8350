fn main() {
    let seed = std::env::var(hopfcheck::SEED_ENV).ok();
    std::process::exit(hopfcheck::main_with(std::env::args_os(), seed));
}
