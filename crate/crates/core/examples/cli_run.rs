//! Drives the command-line entry point in-process.
use std::ffi::OsString;

fn main() {
    let args = ["quasichar", "--no-cache", "eval", "crates/core/examples/braid.json", "--ideal", "6"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = quasichar::cli::run_with(args.iter().map(OsString::from), &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit {code}");
}
