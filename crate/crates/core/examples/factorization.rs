//! Nice partitions: search, the section swap that yields an lc-basis, and
//! addition-deletion on a small example.
//!
//! Run with `cargo run --example factorization`.

use arrangements::factorization::{
    addition_deletion_check, consequences, find_factorization, section_lc_basis, Partition,
};
use arrangements::lattice::Lattice;
use arrangements::{catalog, Arrangement, Result};

fn main() -> Result<()> {
    for (name, a) in [
        ("braid(4)", catalog::braid(4)),
        ("B_3", catalog::bn(3)),
        ("K_3", catalog::kn(3)),
        ("K_4", catalog::kn(4)),
    ] {
        let Some(p) = find_factorization(&a) else {
            println!("{name}: no factorization");
            continue;
        };
        let lattice = Lattice::build(&a);
        println!(
            "{name}: {p}, sizes {:?}, poincare {:?}, counts hold = {}",
            p.sizes(),
            lattice.poincare(),
            consequences(&lattice, &p).all_hold()
        );
        let s = section_lc_basis(&a, &p)?;
        let shown: Vec<usize> = s.section.iter().map(|h| h + 1).collect();
        println!("  section {shown:?} line-closes to everything");
        for (h, swaps) in &s.rounds {
            println!("  pulled in {} with {} swaps", h + 1, swaps.len());
        }
    }

    let plane = Arrangement::from_int_rows(2, &[&[1, 0], &[0, 1], &[1, 1]])?;
    for blocks in [&[&[0usize, 2][..], &[1][..]], &[&[0][..], &[1, 2][..]]] {
        let p = Partition::from_blocks(blocks);
        let r = addition_deletion_check(&plane, &p, 0)?;
        println!(
            "x, y, x+y with {p}: full {}, deletion {}, restriction {}",
            r.full, r.deletion, r.restriction
        );
    }
    Ok(())
}
