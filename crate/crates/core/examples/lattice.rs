//! Intersection lattice of the braid arrangement in dimension 4: flat counts,
//! Möbius values, the Poincaré polynomial, and modular flats with their
//! complements.
//!
//! Run with `cargo run --example lattice`.

use arrangements::catalog;
use arrangements::lattice::{is_modular, modular_complement, Lattice};
use arrangements::Result;

fn main() -> Result<()> {
    let a = catalog::braid(4);
    let lattice = Lattice::build(&a);
    println!("flats per rank: {:?}", lattice.counts());
    println!("poincare:       {:?}", lattice.poincare());

    for k in 0..=lattice.rank() {
        let mu: Vec<i64> = lattice
            .rank_level(k)
            .iter()
            .map(|&x| lattice.mobius(x))
            .collect();
        println!("mu on rank {k}:  {mu:?}");
    }

    println!("modular flats:");
    for f in lattice.flats() {
        if !is_modular(&a, &lattice, &f.hyps)? {
            continue;
        }
        let c = modular_complement(&a, &lattice, &f.hyps)?;
        println!(
            "  {:<14} rank {}  complement {:<10} restriction has {} hyperplanes",
            f.hyps.to_string(),
            f.rank,
            c.y.to_string(),
            c.restriction.restricted.len()
        );
    }
    Ok(())
}
