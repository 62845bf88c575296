use std::io::Write;

fn main() {
    let out = ajl_jones::cli::run_from(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.status);
}
