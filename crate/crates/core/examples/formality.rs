//! Relation spaces and formality: a formal arrangement, a non-formal one with
//! its witness relation, and the maps induced on relations by restricting to
//! a hyperplane.
//!
//! Run with `cargo run --example formality`.

use arrangements::catalog;
use arrangements::formality::{
    is_formal, pi2, relation_length, restriction_relation_maps, FormalityCertificate,
};
use arrangements::{HypSet, Result};

fn main() -> Result<()> {
    let a = catalog::ex51();
    let r = is_formal(&a);
    let p = pi2(&a);
    println!(
        "ex51: dim F = {}, dim F2 = {}, {} dependent triples, formal = {}",
        r.dim_f,
        r.dim_f2,
        p.flats.len(),
        r.formal
    );
    for f in &p.flats {
        println!("  dependent: {f}");
    }

    let local = catalog::ex51_localization();
    let r = is_formal(&local);
    println!("localization: formal = {}", r.formal);
    if let FormalityCertificate::Witness { relation } = &r.certificate {
        let shown: Vec<String> = relation.iter().map(ToString::to_string).collect();
        println!(
            "  relation [{}] of length {} is not a sum of short ones",
            shown.join(", "),
            relation_length(relation)
        );
    }

    let maps = restriction_relation_maps(&a, &HypSet::from_one_based(&[2]))?;
    println!(
        "restriction to x2 = 0: {} hyperplanes, F maps {}x{}",
        maps.restriction.restricted.len(),
        maps.psi1_tilde.rows(),
        maps.psi1_tilde.cols()
    );
    println!("  {:?}", maps.checks);
    Ok(())
}
