//! Reads VIC-module descriptions from JSON, runs the default operations and
//! writes an explicit form back out.
//!
//!     cargo run --example module_files -- crates/core/data/modules/std.json

use superrigid::cli::{self, Config, VicOp};
use superrigid::vic::{ExplicitModule, ModuleExpr, ModuleFile};

fn main() -> superrigid::error::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/modules");
    let mut paths: Vec<String> = std::env::args().skip(1).collect();
    if paths.is_empty() {
        paths = ["std.json", "projective_f2.json", "sum_zero_f2_explicit.json"]
            .iter()
            .map(|f| format!("{dir}/{f}"))
            .collect();
    }
    let config = Config::default();
    for path in &paths {
        let file = ModuleFile::from_json(&std::fs::read_to_string(path).expect("readable file"))?;
        let report = cli::cmd_vic_run(&file, &[VicOp::Verify, VicOp::Filtration, VicOp::Growth], &config)?;
        print!("{path}\n{}", cli::render_table(&report.to_value()));
        let explicit = ModuleFile {
            window: None,
            module: ModuleExpr::Explicit(ExplicitModule::from_module(&file.build(None)?)),
        };
        let text = serde_json::to_string(&explicit).expect("serializable");
        println!("explicit form: {} bytes\n", text.len());
    }
    Ok(())
}
