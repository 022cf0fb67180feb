fn main() {
    std::process::exit(tamedec::run());
}
