use argshift::cli;

fn main() {
    if let Ok(v) = std::env::var("ARGSHIFT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    std::process::exit(cli::run());
}
