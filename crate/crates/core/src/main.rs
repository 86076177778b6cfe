use std::io::Write;

fn main() {
    let code = {
        let mut out = std::io::stdout().lock();
        let mut err = std::io::stderr().lock();
        let code = domsat::cli::run(std::env::args_os(), &mut out, &mut err);
        let _ = out.flush();
        code
    };
    std::process::exit(code);
}
