use std::io;

fn main() {
    let stdin = io::stdin();
    let code = tcw_cli::run(
        std::env::args_os(),
        tcw_cli::Streams { stdin: &mut stdin.lock(), stdout: &mut io::stdout().lock(), stderr: &mut io::stderr().lock() },
    );
    std::process::exit(code);
}
