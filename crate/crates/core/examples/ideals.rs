//! Ideals of Z[sqrt(-5)]: divisors, norms and a residue ring.
use quasichar::ring::{divisors, ideal_product, residue_ring};
use quasichar::{Ideal, RingElement, RingSpec};

fn main() {
    let ring = RingSpec::quadratic(-5).unwrap();
    let p = Ideal::from_generators(ring, &[RingElement::pair(2, 0), RingElement::pair(1, 1)]).unwrap();
    let q = Ideal::from_generators(ring, &[RingElement::pair(3, 0), RingElement::pair(1, 1)]).unwrap();
    let pq = ideal_product(&p, &q).unwrap();
    println!("p = {p}, q = {q}, pq = {pq}");
    println!("pq principal: {}", pq == Ideal::principal(ring, &RingElement::pair(1, 1)).unwrap());
    for d in divisors(&pq, 1_000_000).unwrap() {
        println!("  divisor {} of norm {}", d.label(), d.norm());
    }
    let r = residue_ring(&p, 1_000_000).unwrap();
    println!("O/p has {} elements: {:?}", r.cardinality(), r.elements().map(|x| r.render(x)).collect::<Vec<_>>());
}
