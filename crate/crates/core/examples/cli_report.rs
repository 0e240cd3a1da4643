// Driving the command-line front end in-process and reading its JSON report.

use cliffcat::cli::run;

pub fn run_example() -> cliffcat::Result<()> {
    let out = run(["cliffcat", "pipeline", "--group", "klein", "--kernel", "first", "--omega", "zero"]);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).expect("report is JSON");
    println!("exit code {}", out.code);
    println!("module categories: {}", report["results"]["classes"]);
    println!("extensions: {}", report["results"]["extensions"]["count"]);
    for c in report["checks"].as_array().unwrap() {
        println!("  {} {}", if c["pass"] == true { "pass" } else { "FAIL" }, c["name"]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
