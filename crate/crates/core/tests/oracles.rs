//! Library results against brute-force oracles on small catalog entries.

mod common;

use arrangements::arrangement::essentialize;
use arrangements::chambers::{walls, ChamberComplex};
use arrangements::factorization::{find_factorization, is_factorization, Partition};
use arrangements::formality::{is_formal, pi2, relation_space};
use arrangements::kformality::KFormality;
use arrangements::lattice::{is_modular, Lattice};
use arrangements::line_closure::{is_line_closed_arrangement, lc, LineCloser};
use arrangements::{catalog, Arrangement, HypSet};
use common::*;

fn small() -> Vec<(String, Arrangement)> {
    entries()
        .into_iter()
        .filter(|(_, a)| a.len() <= 11)
        .collect()
}

#[test]
fn lattice_matches_subset_enumeration() {
    for (name, a) in small() {
        let lattice = Lattice::build(&a);
        assert_eq!(lattice.counts(), brute_counts(&a), "{name}");
        let flats: std::collections::BTreeSet<HypSet> =
            lattice.flats().iter().map(|f| f.hyps.clone()).collect();
        assert_eq!(flats, brute_flats(&a), "{name}");
    }
}

#[test]
fn poincare_matches_whitney_expansion() {
    for (name, a) in small() {
        assert_eq!(Lattice::build(&a).poincare(), brute_poincare(&a), "{name}");
    }
}

#[test]
fn modularity_matches_rank_identity() {
    // X is modular iff r(X) + r(Y) = r(X v Y) + r(X ^ Y) for every flat Y.
    for (name, a) in small().into_iter().filter(|(_, a)| a.len() <= 9) {
        let lattice = Lattice::build(&a);
        for x in lattice.flats() {
            let expected = lattice.flats().iter().all(|y| {
                let join = a.closure_set(&x.hyps.union(&y.hyps));
                let meet = x.hyps.intersection(&y.hyps);
                x.rank + y.rank == rank(&a, &join) + rank(&a, &meet)
            });
            assert_eq!(
                is_modular(&a, &lattice, &x.hyps).unwrap(),
                expected,
                "{name} {}",
                x.hyps
            );
        }
    }
}

#[test]
fn relation_spaces_match_short_relation_scan() {
    for (name, a) in entries().into_iter().filter(|(_, a)| a.len() <= 12) {
        assert_eq!(relation_space(&a).space, brute_f(&a), "{name}");
        assert_eq!(pi2(&a).image(), brute_f2(&a), "{name}");
        let r = is_formal(&a);
        assert_eq!(r.formal, brute_f2(&a).dim() == brute_f(&a).dim(), "{name}");
    }
}

#[test]
fn r2_is_the_relation_space() {
    for (name, a) in entries() {
        let mut kf = KFormality::new(&a);
        assert_eq!(
            kf.r2_as_relations().unwrap(),
            relation_space(&a).space,
            "{name}"
        );
        assert_eq!(kf.is_k_formal(2).unwrap(), is_formal(&a).formal, "{name}");
    }
}

#[test]
fn line_closure_matches_fixpoint() {
    for (name, a) in small().into_iter().filter(|(_, a)| a.len() <= 10) {
        let n = a.len();
        for m in (0u64..1 << n).step_by(7) {
            let b = subset(m, n);
            assert_eq!(lc(&a, &b).unwrap(), brute_lc(&a, &b), "{name} {b}");
        }
    }
}

#[test]
fn line_closed_matches_subset_scan() {
    let generic =
        Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
    let mut cases = small();
    cases.push(("generic4".into(), generic));
    for (name, a) in cases.into_iter().filter(|(_, a)| a.len() <= 10) {
        let n = a.len();
        let closer = LineCloser::new(&a);
        let line_closed: Vec<HypSet> = (0u64..1 << n)
            .map(|m| subset(m, n))
            .filter(|s| brute_lc(&a, s) == *s)
            .collect();
        for s in &line_closed {
            assert!(closer.is_line_closed_set(s));
        }
        let expected = line_closed.iter().all(|s| is_closed(&a, s));
        let rep = is_line_closed_arrangement(&a, 16).unwrap();
        assert_eq!(rep.line_closed, expected, "{name}");
        if expected {
            assert_eq!(rep.visited, line_closed.len(), "{name}");
        }
    }
}

#[test]
fn factorization_search_is_least_nice_partition() {
    let cases = [
        ("boolean:3", catalog::boolean(3)),
        ("braid:3", catalog::braid(3)),
        ("braid:4", catalog::braid(4)),
        ("kn:3", catalog::kn(3)),
        ("bn:2", catalog::bn(2)),
        (
            "plane3",
            Arrangement::from_int_rows(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap(),
        ),
    ];
    for (name, a) in cases {
        let r = a.rank();
        let least = set_partitions(a.len())
            .into_iter()
            .filter(|l| l.iter().max().map_or(0, |m| m + 1) == r)
            .map(|l| Partition::new(blocks_of(&l)))
            .find(|p| is_factorization(&a, p).unwrap().nice);
        assert_eq!(find_factorization(&a), least, "{name}");
    }
}

#[test]
fn chamber_counts_match_whitney() {
    for (name, a) in small().into_iter().filter(|(_, a)| a.rank() <= 4) {
        let e = essentialize(&a).arrangement;
        let cx = ChamberComplex::new(&e).unwrap();
        // r(A) = sum over B of (-1)^{|B| - r(B)}
        let expected: i64 = (0u64..1 << a.len())
            .map(|m| {
                let s = subset(m, a.len());
                if (s.len() + rank(&a, &s)).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .sum();
        assert_eq!(cx.len() as i64, expected, "{name}");
    }
}

#[test]
fn galleries_are_hamming_distances() {
    for a in [
        catalog::boolean(3),
        essentialize(&catalog::braid(4)).arrangement,
        catalog::bn(3),
    ] {
        let cx = ChamberComplex::new(&a).unwrap();
        let cs = cx.chambers();
        for i in 0..cx.len() {
            assert_eq!(&walls(&a, &cs[i]).unwrap(), cx.walls(i));
            for j in 0..cx.len() {
                assert_eq!(cx.gallery_distance(i, j), cs[i].separating(&cs[j]));
            }
            for h in 0..a.len() {
                assert_eq!(cx.hyperplane_distance(h, i) == 0, cx.walls(i).contains(h));
            }
        }
    }
}
