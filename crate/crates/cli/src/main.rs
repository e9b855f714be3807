use std::io::Write;

fn main() {
    let outcome = tannaka_cli::run(std::env::args_os());
    if outcome.code == 2 && !outcome.report.starts_with('{') {
        eprint!("{}", outcome.report);
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.report.as_bytes());
    }
    std::process::exit(outcome.code);
}
