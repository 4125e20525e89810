//! Characteristic quasi-polynomial of an integer arrangement, checked by counting.
use quasichar::arrangement::{characteristic_brute, characteristic_quasi_polynomial};
use quasichar::quasi::quasi_evaluate;
use quasichar::{Arrangement, Ideal, Limits};

fn main() {
    let a = Arrangement::integer(2, &[&[1, 1], &[1, -1]]).unwrap();
    let limits = Limits::default();
    let chi = characteristic_quasi_polynomial(&a, &limits).unwrap();
    println!("period {}", chi.period());
    for (k, f) in chi.constituents() {
        println!("  [{}] {}", k.label(), f.render("t"));
    }
    for q in 1..=8 {
        let i = Ideal::integer(q);
        println!("q = {q}: {} (brute {})", quasi_evaluate(&chi, &i).unwrap(), characteristic_brute(&a, &i, &limits).unwrap());
    }
}
