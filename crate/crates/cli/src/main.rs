use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (code, out) = dgla_cli::run(&args);
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    std::process::exit(code);
}
