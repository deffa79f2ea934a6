use std::io;

fn main() {
    let seed = std::env::var("RC_SEED").ok();
    let code = hermrc::cli::run(std::env::args_os(), seed.as_deref(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
