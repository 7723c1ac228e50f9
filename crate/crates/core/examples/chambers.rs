//! Real chambers of the braid arrangement in dimension 4 (after removing its
//! lineality space): walls, gallery distances, and walls as lc-bases.
//!
//! Run with `cargo run --example chambers`.

use arrangements::arrangement::essentialize;
use arrangements::chambers::{walls_report, ChamberComplex};
use arrangements::{catalog, Result};

fn main() -> Result<()> {
    let a = essentialize(&catalog::braid(4)).arrangement;
    let cx = ChamberComplex::new(&a)?;
    println!("{} chambers", cx.len());
    for (i, c) in cx.chambers().iter().enumerate().take(4) {
        println!(
            "  {c}  walls {}  distance from the first {}",
            cx.walls(i),
            cx.gallery_distance(0, i)
        );
    }
    for h in 0..a.len() {
        println!(
            "  hyperplane {} is {} steps from the first chamber",
            h + 1,
            cx.hyperplane_distance(h, 0)
        );
    }
    match cx.non_simplicial_chamber() {
        None => {
            let rep = walls_report(&cx)?;
            println!(
                "simplicial; walls are lc-bases: {}, adjacent rule: {} over {} pairs",
                rep.walls_are_lc_bases, rep.adjacent_rule, rep.adjacent_pairs
            );
        }
        Some(c) => println!("chamber {} is not simplicial", cx.chambers()[c]),
    }
    Ok(())
}
