fn main() {
    let out = pericat::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    if !out.stdout.is_empty() && !out.stdout.ends_with('\n') {
        println!();
    }
    eprint!("{}", out.stderr);
    if !out.stderr.is_empty() && !out.stderr.ends_with('\n') {
        eprintln!();
    }
    std::process::exit(out.code);
}
