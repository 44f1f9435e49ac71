use std::process::ExitCode;

fn main() -> ExitCode {
    // OMFAM_THREADS caps the parallelism of the internal enumeration; the
    // output is deterministic regardless.
    if let Ok(value) = std::env::var("OMFAM_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
    let out = omfam_cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}
