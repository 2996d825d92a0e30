//! Runs every built-in mixture scenario and prints its signature checks.
//!
//! Pass a directory to also write the curve files: `cargo run --example scenarios -- out/`.

use std::path::PathBuf;

use tradeoff_curves::scenario::{run_scenario, RunConfig, ScenarioName, ScenarioSpec};

fn main() -> tradeoff_curves::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    for name in ScenarioName::ALL {
        let cfg = RunConfig {
            out_dir: out.as_ref().map(|d| d.join(name.as_str())),
            ..RunConfig::default()
        };
        let run = run_scenario(&ScenarioSpec::builtin(name)?, &cfg, None)?;
        let s = &run.summary;
        println!(
            "{name}: alpha_1 {:.4}, TV {:.4}, alpha_inf {:.4}, beta_0 {:.4}",
            s.alpha_1, s.tv, s.alpha_inf, s.beta_0
        );
        for c in &s.checks {
            println!("  [{}] {} {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
    }
    Ok(())
}
