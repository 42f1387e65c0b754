fn main() {
    eprintln!("qdesk: not yet implemented");
    std::process::exit(2);
}
