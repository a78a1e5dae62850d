//! The `tsgeval` command line driven in-process: preprocess a CSV, score the
//! test split against the train split, then read back the provenance record.
//!
//! Outputs go to a temporary directory.

use std::fs;
use std::process::ExitCode;

use tsgeval::cli::main_with_args;
use tsgeval::provenance::Provenance;

pub fn run_example() -> tsgeval::Result<Provenance> {
    let dir = tempfile::tempdir().expect("temporary directory");
    let root = dir.path();
    let csv = root.join("raw.csv");
    let mut text = String::from("a,b\n");
    for t in 0..300 {
        let x = t as f64 * std::f64::consts::TAU / 12.0;
        text.push_str(&format!("{},{}\n", x.sin(), (2.0 * x).cos()));
    }
    fs::write(&csv, text).expect("write csv");

    let prep = root.join("prep");
    let eval = root.join("eval");
    let run = |args: &[&str]| {
        let code = main_with_args(std::iter::once("tsgeval").chain(args.iter().copied()));
        assert_eq!(code, ExitCode::SUCCESS, "{args:?}");
    };
    run(&[
        "preprocess",
        "--input",
        csv.to_str().unwrap(),
        "--seq-len",
        "12",
        "--out",
        prep.to_str().unwrap(),
    ]);
    run(&[
        "evaluate",
        "--orig",
        prep.join("train.tsgt").to_str().unwrap(),
        "--gen",
        prep.join("test.tsgt").to_str().unwrap(),
        "--repeats",
        "1",
        "--out",
        eval.to_str().unwrap(),
    ]);
    println!(
        "{}",
        fs::read_to_string(eval.join("report.json")).expect("report")
    );
    Provenance::read_from(&eval)
}

fn main() -> tsgeval::Result<()> {
    let p = run_example()?;
    println!("{} inputs digested", p.inputs.len());
    Ok(())
}
