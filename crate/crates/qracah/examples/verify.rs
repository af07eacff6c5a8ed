//! Runs every applicable residual suite on a config file.
//!
//! cargo run --example verify -- crates/qracah/configs/b.conf

use qracah::cli::suites::run_suites;
use qracah::cli::RunConfig;

fn main() -> qracah::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/a.conf"));
    let config = RunConfig::load(&path)?;
    let mut failed = 0;
    for r in run_suites(&config, &[])? {
        failed += usize::from(!r.pass());
        println!("{:<22} {:.3e} / {:.0e}", r.suite, r.max_residual, r.tolerance);
    }
    println!("{failed} failing");
    Ok(())
}
