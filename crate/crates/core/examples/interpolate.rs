//! Recover an integer polynomial from its values.
use num_bigint::BigInt;
use quasichar::poly::interpolate;
use quasichar::UniPoly;

fn main() {
    let p = UniPoly::from_i64(&[6, -5, 0, 1]);
    let samples: Vec<(BigInt, BigInt)> = (1..=5).map(|t| (BigInt::from(t), p.evaluate(&BigInt::from(t)))).collect();
    let q = interpolate(&samples, 3).expect("consistent samples");
    println!("{}", q.render("t"));
}
