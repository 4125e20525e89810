//! Coboundary polynomial at a prime versus the weight enumerator of the row space.
use quasichar::coboundary::greene_check;
use quasichar::{Arrangement, Limits};

fn main() {
    let a = Arrangement::integer(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]).unwrap();
    for p in [2, 3, 5, 7] {
        println!("p = {p}: {:?}", greene_check(&a, p, &Limits::default()).unwrap());
    }
}
