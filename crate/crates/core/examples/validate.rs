//! Validation checks for the demo disk and the kite, as run by the CLI.

use nfduality::cli::config::RunConfig;
use nfduality::cli::validation_checks;
use std::path::Path;

fn main() -> nfduality::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in ["disk_dirichlet.conf", "kite_dirichlet.conf"] {
        let cfg = RunConfig::load(&dir.join(name))?;
        println!("{name} (hash {})", cfg.hash);
        for c in validation_checks(&cfg)? {
            println!("  {:<24} {:?}  {}", c.name, c.status, c.detail);
        }
    }
    Ok(())
}
