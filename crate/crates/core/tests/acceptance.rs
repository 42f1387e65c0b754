// Placeholder until the library is complete; replaced by the real checks.
fn main() {
    println!("acceptance: suite not yet implemented");
    std::process::exit(1);
}
