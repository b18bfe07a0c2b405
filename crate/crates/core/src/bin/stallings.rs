fn main() {
    let out = stallings::cli::run(std::env::args());
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    std::process::exit(out.code);
}
