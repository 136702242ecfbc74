use std::io::Write;

fn main() {
    let out = gridbasis_cli::run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
