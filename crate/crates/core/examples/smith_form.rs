//! Smith and Hermite forms of a small integer matrix.
use quasichar::linalg::{hermite_normal_form, smith_normal_form};
use quasichar::IntMatrix;

fn main() {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith_normal_form(&m);
    println!("elementary divisors: {:?}", s.elementary_divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    println!("U*M*V == D: {}", s.u.mul(&m).unwrap().mul(&s.v).unwrap() == s.d);
    let (h, _) = hermite_normal_form(&m);
    for r in h.row_vecs() {
        println!("{:?}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
}
