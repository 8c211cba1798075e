fn main() {
    std::process::exit(qdivisor::run());
}
