//! Tutte polynomial of the braid arrangement and its coboundary relation.
use quasichar::coboundary::{coboundary_quasi_polynomial, tutte_check, tutte_polynomial};
use quasichar::{Arrangement, Limits};

fn main() {
    let a = Arrangement::integer(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap();
    let limits = Limits::default();
    println!("T = {}", tutte_polynomial(&a, &limits).unwrap().render("x", "y"));
    let chi = coboundary_quasi_polynomial(&a, &limits).unwrap();
    let check = tutte_check(&a, &chi, &limits).unwrap();
    println!("{}\n{}\nholds: {}", check.lhs.render("x", "y"), check.rhs.render("x", "y"), check.holds());
}
