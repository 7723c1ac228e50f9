//! Catalog listing and brute-force oracles shared by the integration tests.
//! The oracles avoid the library's lattice, closure and relation machinery
//! and use only ranks of normal matrices.

#![allow(dead_code)]

use std::collections::BTreeSet;

use arrangements::linalg::{kernel_basis, Matrix, Scalar, Subspace};
use arrangements::{catalog, Arrangement, HypSet};
use num_traits::Zero;

pub fn entries() -> Vec<(String, Arrangement)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("boolean:{n}"), catalog::boolean(n)));
    }
    for n in 2..=5 {
        out.push((format!("braid:{n}"), catalog::braid(n)));
    }
    for n in 2..=4 {
        out.push((format!("bn:{n}"), catalog::bn(n)));
    }
    for n in 3..=5 {
        out.push((format!("kn:{n}"), catalog::kn(n)));
    }
    out.push(("ex51".into(), catalog::ex51()));
    out.push(("ex51_restriction".into(), catalog::ex51_restriction()));
    out.push(("ex51_localization".into(), catalog::ex51_localization()));
    out
}

pub fn subset(mask: u64, n: usize) -> HypSet {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn rank(a: &Arrangement, set: &HypSet) -> usize {
    a.normal_matrix(set).rank()
}

/// Flats as the maximal sets of each rank-level intersection: a subset is
/// closed when adding any hyperplane raises its rank.
pub fn brute_flats(a: &Arrangement) -> BTreeSet<HypSet> {
    let n = a.len();
    (0u64..1 << n)
        .map(|m| subset(m, n))
        .filter(|s| {
            let r = rank(a, s);
            (0..n)
                .filter(|&h| !s.contains(h))
                .all(|h| rank(a, &s.union(&HypSet::from_sorted(vec![h]))) > r)
        })
        .collect()
}

pub fn brute_counts(a: &Arrangement) -> Vec<usize> {
    let flats = brute_flats(a);
    let r = rank(a, &a.all());
    let mut counts = vec![0; r + 1];
    for f in &flats {
        counts[rank(a, f)] += 1;
    }
    counts
}

/// Whitney's subset expansion of the Poincaré polynomial.
pub fn brute_poincare(a: &Arrangement) -> Vec<u64> {
    let n = a.len();
    let r = rank(a, &a.all());
    let mut coeffs = vec![0i64; r + 1];
    for m in 0u64..1 << n {
        let s = subset(m, n);
        let k = rank(a, &s);
        // (-1)^{|B|} (-t)^{r(B)}
        let sign = if (s.len() + k).is_multiple_of(2) {
            1
        } else {
            -1
        };
        coeffs[k] += sign;
    }
    coeffs.into_iter().map(|c| c as u64).collect()
}

/// Span of all relations supported on at most three hyperplanes.
pub fn brute_f2(a: &Arrangement) -> Subspace {
    let n = a.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = HypSet::from_sorted(vec![i, j, k]);
                let local = kernel_basis(&a.normal_matrix(&s).transpose());
                for row in local.basis().row_iter() {
                    let mut v = vec![Scalar::zero(); n];
                    for (c, h) in row.iter().zip(s.iter()) {
                        v[h] = c.clone();
                    }
                    rows.push(v);
                }
            }
        }
    }
    Subspace::span(n, rows).unwrap()
}

/// Kernel of `e_H -> alpha_H`, computed from scratch.
pub fn brute_f(a: &Arrangement) -> Subspace {
    let cols = a.len();
    let rows: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|d| (0..cols).map(|h| a.normal(h)[d].clone()).collect())
        .collect();
    kernel_basis(&Matrix::from_rows(cols, rows).unwrap())
}

/// Line closure by fixpoint over all pairs, with rank tests only.
pub fn brute_lc(a: &Arrangement, b: &HypSet) -> HypSet {
    let mut cur = b.clone();
    loop {
        let mut next = cur.clone();
        for g in cur.iter() {
            for h in cur.iter().filter(|&h| h > g) {
                for x in 0..a.len() {
                    if rank(a, &[g, h, x].into_iter().collect()) == 2 {
                        next.insert(x);
                    }
                }
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn is_closed(a: &Arrangement, s: &HypSet) -> bool {
    let r = rank(a, s);
    (0..a.len())
        .filter(|&h| !s.contains(h))
        .all(|h| rank(a, &s.union(&HypSet::from_sorted(vec![h]))) > r)
}

/// All set partitions of `0..n` as restricted growth strings, in
/// lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        let open = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=open {
            cur.push(b);
            go(i + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

pub fn blocks_of(labels: &[usize]) -> Vec<HypSet> {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    (0..k)
        .map(|b| (0..labels.len()).filter(|&h| labels[h] == b).collect())
        .collect()
}
