//! Reading an arrangement from text, then restricting, localizing and
//! essentializing it.
//!
//! Run with `cargo run --example restriction`.

use arrangements::arrangement::{essentialize, localization, restriction};
use arrangements::{Arrangement, HypSet, Result};

const TEXT: &str = "\
# x1 - x2, x1 - x3, x2 - x3, x1 - x4, x2 - x4, x3 - x4
dim 4
1 -1 0 0
1 0 -1 0
0 1 -1 0
1 0 0 -1
0 1 0 -1
0 0 1 -1
";

fn main() -> Result<()> {
    let a: Arrangement = TEXT.parse()?;
    println!(
        "{} hyperplanes, rank {}, essential {}",
        a.len(),
        a.rank(),
        a.is_essential()
    );

    let res = restriction(&a, &HypSet::from_one_based(&[1]))?;
    println!("restriction to the first hyperplane:\n{}", res.restricted);
    for k in 0..res.restricted.len() {
        let from: Vec<usize> = res.preimage(k).iter().map(|h| h + 1).collect();
        println!("  restricted hyperplane {} comes from {from:?}", k + 1);
    }

    let loc = localization(&a, &HypSet::from_one_based(&[1, 2]))?;
    let parents: Vec<usize> = loc.indices.iter().map(|h| h + 1).collect();
    println!("localization at 1 and 2 keeps {parents:?}");

    let e = essentialize(&a);
    println!("essentialized:\n{}", e.arrangement);
    Ok(())
}
