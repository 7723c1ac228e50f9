//! k-formality of a formal arrangement and of a restriction of it that is
//! formal but not 3-formal.
//!
//! Run with `cargo run --example k_formality`.

use arrangements::catalog;
use arrangements::formality::pi2;
use arrangements::kformality::KFormality;
use arrangements::{Arrangement, Result};

fn describe(name: &str, a: &Arrangement) -> Result<()> {
    let mut kf = KFormality::new(a);
    println!(
        "{name}: {} hyperplanes, rank {}",
        a.len(),
        kf.lattice().rank()
    );
    for k in 0..=kf.lattice().rank() {
        println!("  dim R_{k} = {}", kf.rk_space(k)?.dim());
    }
    for (k, ok) in kf.profile()? {
        println!("  {k}-formal: {ok}");
    }
    match kf.totally_formal_witness()? {
        None => println!("  every localization is k-formal for all k"),
        Some((x, k)) => println!("  localization at {x} is not {k}-formal"),
    }
    Ok(())
}

fn main() -> Result<()> {
    let a = catalog::ex51();
    describe("ex51", &a)?;

    let b = catalog::ex51_restriction();
    describe("ex51 restricted to x2 = 0", &b)?;

    // Rank-3 flats built from two dependent triples, listed by the positions
    // of the triples inside the flat.
    let triples: Vec<_> = pi2(&b).flats;
    let mut kf = KFormality::new(&b);
    println!("  rank-3 flats and their rank-2 dependencies:");
    for &x in kf.lattice().rank_level(3).to_vec().iter() {
        let flat = kf.lattice().flat(x).hyps.clone();
        let inside: Vec<String> = triples
            .iter()
            .filter(|t| t.is_subset(&flat))
            .map(|t| {
                t.iter()
                    .map(|h| (flat.as_slice().binary_search(&h).unwrap() + 1).to_string())
                    .collect::<String>()
            })
            .collect();
        if inside.is_empty() {
            continue;
        }
        let r3 = kf.rk_space_at(&flat, 3)?.dim();
        println!("    {flat}  {}  dim R_3 = {r3}", inside.join(", "));
    }
    Ok(())
}
