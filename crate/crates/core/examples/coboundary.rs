//! Coboundary constituents of the Z[sqrt(-5)] example.
use quasichar::coboundary::coboundary_quasi_polynomial;
use quasichar::io::parse_arrangement;
use quasichar::Limits;

fn main() {
    let a = parse_arrangement(include_str!("zsqrtm5.json")).unwrap();
    let chi = coboundary_quasi_polynomial(&a, &Limits::default()).unwrap();
    println!("period {} (norm {})", chi.period(), chi.period().norm());
    for (k, f) in chi.constituents() {
        println!("  [{}] {}", k.label(), f.render("t", "x"));
    }
}
