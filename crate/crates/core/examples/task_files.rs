//! Runs every task file under `examples/specs` and prints the reports.

use std::path::Path;

use exact_integral::harness::{run_spec, Overrides};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/specs");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .expect("specs directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for path in paths {
        let out = run_spec(&path, &Overrides::default());
        println!("== {} (exit {})", path.file_name().unwrap().to_string_lossy(), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
