use clap::Parser;
use polyreplay_cli::{run, Cli, EXIT_USAGE};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    // The replay pipelines recurse deeply on large determinants.
    let code = std::thread::Builder::new()
        .stack_size(64 << 20)
        .spawn(move || {
            let stdout = std::io::stdout();
            let stderr = std::io::stderr();
            run(cli, &mut stdout.lock(), &mut stderr.lock())
        })
        .expect("spawn main worker")
        .join()
        .unwrap_or(101);
    std::process::exit(code);
}
