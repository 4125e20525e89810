//! Image code, dual and MacWilliams identity over Z/6.
use quasichar::codes::{dual_code, image_code, macwilliams_check, weight_enumerator, WeightMode};
use quasichar::{Arrangement, Ideal, Limits};

fn main() {
    let limits = Limits::default();
    let a = Arrangement::integer(2, &[&[1, 0], &[1, 3]]).unwrap();
    let c = image_code(&a, &Ideal::integer(6), &limits).unwrap();
    let d = dual_code(&c, &limits).unwrap();
    println!("#C = {}, #C^perp = {}", c.size(), d.size());
    println!("W_C = {}", weight_enumerator(&c, &WeightMode::Hamming).unwrap().render("x", "y"));
    println!("W_dual = {}", weight_enumerator(&d, &WeightMode::Hamming).unwrap().render("x", "y"));
    println!("MacWilliams: {}", macwilliams_check(&c, &limits).unwrap());
}
