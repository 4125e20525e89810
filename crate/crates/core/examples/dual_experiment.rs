use quasichar::codes::dual_example_experiment;
use quasichar::Limits;

fn main() {
    for row in dual_example_experiment(&Limits::default()).unwrap() {
        println!(
            "q = {:2}  W = {:<22} W_dual = {:<10} star = dual: {}  ok: {}",
            row.q,
            row.image_enumerator.render("x", "y"),
            row.dual_enumerator.render("x", "y"),
            row.star == row.dual,
            row.passes()
        );
    }
}
