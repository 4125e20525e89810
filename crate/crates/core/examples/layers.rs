//! Poset of layers, its torsion subposets and a DOT rendering.
use quasichar::io::parse_arrangement;
use quasichar::layers::{build_layer_poset, check_lemmas};
use quasichar::Limits;

fn main() {
    let a = parse_arrangement(include_str!("zsqrtm5.json")).unwrap();
    let poset = build_layer_poset(&a, &Limits::default()).unwrap();
    for (i, z) in poset.layers().iter().enumerate() {
        println!("{i}: {} dim {} mu {}", poset.render_point(&z.representative), z.dim, poset.mobius(0, i));
    }
    for (k, members) in poset.torsion_table() {
        let size = members.iter().filter(|&&m| m).count();
        println!("[{}] {} layers: {}", k.label(), size, poset.constituent_from_poset(k).unwrap().render("t", "x"));
    }
    println!("lemmas: {}", check_lemmas(&poset).unwrap().passed());
    print!("{}", poset.to_dot());
}
