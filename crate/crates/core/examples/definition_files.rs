// Loading a JSON definition file and producing the same report the `invk`
// binary prints.
//
// Run with `cargo run --example definition_files`.

use std::path::PathBuf;

use invk::cli::{cmd_pbw, cmd_validate, EnvArgs};
use invk::report::Verdict;

pub fn run_example() -> invk::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");

    let report = cmd_validate(&data.join("bad-antisym.json"))?;
    println!("{}", report.summary());
    assert_eq!(report.verdict, Verdict::Fail);

    let args = EnvArgs {
        file: data.join("heisenberg.json"),
        variant: None,
        k: "1/2".into(),
        degree: 3,
    };
    let report = cmd_pbw(&args)?;
    println!("{}", report.summary());
    assert_eq!(report.verdict, Verdict::Pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> invk::Result<()> {
    run_example()
}
