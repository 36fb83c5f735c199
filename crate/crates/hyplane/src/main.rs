use std::process::ExitCode;

fn main() -> ExitCode {
    // Optional cap on worker threads; tilings are deterministic for any
    // thread count.
    if let Ok(threads) = std::env::var("HYPLANE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    ExitCode::from(hyplane::cli_io::run_cli(std::env::args()) as u8)
}
