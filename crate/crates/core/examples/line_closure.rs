//! Line closure: lc-bases with their closure traces, and an arrangement that
//! is not line-closed.
//!
//! Run with `cargo run --example line_closure`.

use arrangements::line_closure::{
    find_lc_basis, is_line_closed_arrangement, verify_lc_basis, DEFAULT_LINE_CLOSED_CAP,
};
use arrangements::{catalog, Arrangement, HypSet, Result};

fn main() -> Result<()> {
    let a = catalog::ex51();
    let basis = HypSet::from_one_based(&[1, 2, 3, 4, 5]);
    let cert = verify_lc_basis(&a, &basis)?.expect("coordinate hyperplanes line-close to ex51");
    println!("ex51: {basis} is an lc-basis");
    for step in &cert.trace {
        println!(
            "  add {} through {} and {}",
            step.added + 1,
            step.pair.0 + 1,
            step.pair.1 + 1
        );
    }

    for n in 3..=5 {
        let k = catalog::kn(n);
        let c = find_lc_basis(&k).expect("coordinate hyperplanes");
        println!(
            "K_{n}: first lc-basis {} after {} steps",
            c.basis,
            c.trace.len()
        );
    }

    let generic = Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])?;
    let rep = is_line_closed_arrangement(&generic, DEFAULT_LINE_CLOSED_CAP)?;
    println!(
        "four generic planes: line-closed = {}, witness {:?}, {} line-closed sets visited",
        rep.line_closed,
        rep.witness.map(|w| w.to_string()),
        rep.visited
    );
    println!(
        "braid(4): line-closed = {}",
        is_line_closed_arrangement(&catalog::braid(4), DEFAULT_LINE_CLOSED_CAP)?.line_closed
    );
    Ok(())
}
