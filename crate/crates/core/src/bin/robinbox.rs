use std::io;

fn main() {
    let code = robinbox::cli::run_with_args(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
