//! Line closure, lc-bases and line-closed arrangements.

use crate::arrangement::{Arrangement, HypSet};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

/// Default bound on `|A|` for enumerating all line-closed subsets.
pub const DEFAULT_LINE_CLOSED_CAP: usize = 16;

/// One closure step: `added` lies on the rank-2 flat spanned by `pair`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub added: usize,
    pub pair: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcCertificate {
    pub basis: HypSet,
    pub trace: Vec<TraceStep>,
}

impl LcCertificate {
    /// Replays the trace from the basis and checks it reaches all of `a`.
    pub fn replay(&self, a: &Arrangement) -> bool {
        let mut have = self.basis.clone();
        for step in &self.trace {
            let (g, h) = step.pair;
            if !have.contains(g) || !have.contains(h) {
                return false;
            }
            let flat = a.closure_set(&[g, h].into_iter().collect());
            if !flat.contains(step.added) {
                return false;
            }
            have.insert(step.added);
        }
        have == a.all()
    }
}

/// Precomputed rank-2 flats through every pair of hyperplanes.
pub struct LineCloser {
    n: usize,
    pair_flat: Vec<Vec<usize>>,
    flats: Vec<HypSet>,
}

impl LineCloser {
    pub fn new(a: &Arrangement) -> Self {
        let n = a.len();
        let mut pair_flat = vec![vec![usize::MAX; n]; n];
        let mut flats: Vec<HypSet> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if pair_flat[i][j] != usize::MAX {
                    continue;
                }
                let f = a.closure_set(&HypSet::from_sorted(vec![i, j]));
                let id = flats.len();
                for x in f.iter() {
                    for y in f.iter() {
                        if x != y {
                            pair_flat[x][y] = id;
                        }
                    }
                }
                flats.push(f);
            }
        }
        LineCloser {
            n,
            pair_flat,
            flats,
        }
    }

    /// `A_{H_g cap H_h}`.
    pub fn pair_flat(&self, g: usize, h: usize) -> &HypSet {
        &self.flats[self.pair_flat[g][h]]
    }

    pub fn lc_traced(&self, b: &HypSet) -> (HypSet, Vec<TraceStep>) {
        let mut member = vec![false; self.n];
        let mut order: Vec<usize> = b.iter().collect();
        for &x in &order {
            member[x] = true;
        }
        let mut trace = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let h = order[i];
            for j in 0..i {
                let g = order[j];
                for x in self.pair_flat(g, h).iter() {
                    if !member[x] {
                        member[x] = true;
                        order.push(x);
                        trace.push(TraceStep {
                            added: x,
                            pair: (g.min(h), g.max(h)),
                        });
                    }
                }
            }
            i += 1;
        }
        (order.into_iter().collect(), trace)
    }

    pub fn lc(&self, b: &HypSet) -> HypSet {
        self.lc_traced(b).0
    }

    pub fn is_line_closed_set(&self, b: &HypSet) -> bool {
        b.iter().all(|g| {
            b.iter()
                .filter(|&h| h != g)
                .all(|h| self.pair_flat(g, h).is_subset(b))
        })
    }
}

pub fn lc(a: &Arrangement, b: &HypSet) -> Result<HypSet> {
    a.check_indices(b)?;
    Ok(LineCloser::new(a).lc(b))
}

/// `b` has `r(A)` independent hyperplanes and `lc(b) = A`.
pub fn verify_lc_basis(a: &Arrangement, b: &HypSet) -> Result<Option<LcCertificate>> {
    a.check_indices(b)?;
    let r = a.rank();
    if b.len() != r || a.rank_of(b) != r {
        return Ok(None);
    }
    let (closed, trace) = LineCloser::new(a).lc_traced(b);
    Ok((closed.len() == a.len()).then(|| LcCertificate {
        basis: b.clone(),
        trace,
    }))
}

/// The lexicographically first lc-basis, searching independent sets only.
pub fn find_lc_basis(a: &Arrangement) -> Option<LcCertificate> {
    let r = a.rank();
    let closer = LineCloser::new(a);
    let mut chosen = Vec::with_capacity(r);
    search(a, &closer, r, 0, &mut chosen, &Subspace::zero(a.dim()))
}

fn search(
    a: &Arrangement,
    closer: &LineCloser,
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    span: &Subspace,
) -> Option<LcCertificate> {
    if chosen.len() == r {
        let basis: HypSet = chosen.iter().copied().collect();
        let (closed, trace) = closer.lc_traced(&basis);
        return (closed.len() == a.len()).then_some(LcCertificate { basis, trace });
    }
    let need = r - chosen.len();
    for h in start..a.len() {
        if a.len() - h < need {
            break;
        }
        if span.contains(a.normal(h)).expect("ambient length") {
            continue;
        }
        let grown = span
            .sum(&Subspace::span(a.dim(), vec![a.normal(h).to_vec()]).expect("ambient length"))
            .expect("ambient length");
        chosen.push(h);
        if let Some(c) = search(a, closer, r, h + 1, chosen, &grown) {
            return Some(c);
        }
        chosen.pop();
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineClosedReport {
    pub line_closed: bool,
    /// A line-closed subset that is not closed.
    pub witness: Option<HypSet>,
    /// Number of line-closed subsets visited.
    pub visited: usize,
}

/// Enumerates the line-closed subsets in lectic order (next-closure) and
/// checks each is closed.
pub fn is_line_closed_arrangement(a: &Arrangement, cap: usize) -> Result<LineClosedReport> {
    let n = a.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: format!("line-closed enumeration over {n} hyperplanes"),
            limit: cap,
        });
    }
    let closer = LineCloser::new(a);
    let mut current = closer.lc(&HypSet::new());
    let mut visited = 0;
    loop {
        visited += 1;
        if !a.is_closed(&current) {
            return Ok(LineClosedReport {
                line_closed: false,
                witness: Some(current),
                visited,
            });
        }
        match next_closure(&closer, n, &current) {
            Some(next) => current = next,
            None => break,
        }
    }
    Ok(LineClosedReport {
        line_closed: true,
        witness: None,
        visited,
    })
}

fn next_closure(closer: &LineCloser, n: usize, current: &HypSet) -> Option<HypSet> {
    for i in (0..n).rev() {
        if current.contains(i) {
            continue;
        }
        let mut seed: HypSet = current.iter().filter(|&j| j < i).collect();
        let prefix = seed.clone();
        seed.insert(i);
        let candidate = closer.lc(&seed);
        if candidate.iter().filter(|&j| j < i).eq(prefix.iter()) {
            return Some(candidate);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn hs(v: &[usize]) -> HypSet {
        v.iter().copied().collect()
    }

    #[test]
    fn trivial_closures() {
        let a = catalog::ex51();
        assert_eq!(lc(&a, &HypSet::new()).unwrap(), HypSet::new());
        assert_eq!(lc(&a, &hs(&[4])).unwrap(), hs(&[4]));
        assert!(matches!(
            lc(&a, &hs(&[11])),
            Err(Error::InvalidIndex { .. })
        ));
    }

    #[test]
    fn ex51_coordinate_basis() {
        let a = catalog::ex51();
        let cert = verify_lc_basis(&a, &hs(&[0, 1, 2, 3, 4])).unwrap().unwrap();
        assert!(cert.replay(&a));
        assert_eq!(cert.trace.len(), 6);
        assert!(verify_lc_basis(&a, &hs(&[0, 1, 2, 3])).unwrap().is_none());
        let found = find_lc_basis(&a).unwrap();
        assert_eq!(found.basis, hs(&[0, 1, 2, 3, 4]));
    }

    #[test]
    fn boolean_whole_is_basis() {
        let a = catalog::boolean(4);
        assert!(verify_lc_basis(&a, &a.all()).unwrap().is_some());
    }

    #[test]
    fn concurrent_lines() {
        let a = Arrangement::from_int_rows(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let c = find_lc_basis(&a).unwrap();
        assert_eq!(c.basis, hs(&[0, 1]));
    }

    #[test]
    fn kn_boolean_subset() {
        for n in 3..=5 {
            let a = catalog::kn(n);
            let b = HypSet::range(n);
            assert_eq!(lc(&a, &b).unwrap(), a.all());
            assert_eq!(find_lc_basis(&a).unwrap().basis, b);
        }
    }

    #[test]
    fn generic_four_planes_not_line_closed() {
        let a = Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])
            .unwrap();
        let rep = is_line_closed_arrangement(&a, DEFAULT_LINE_CLOSED_CAP).unwrap();
        assert!(!rep.line_closed);
        let w = rep.witness.unwrap();
        assert_eq!(w.len(), 3);
        assert!(closer_is_line_closed(&a, &w));
        assert!(find_lc_basis(&a).is_none());
    }

    fn closer_is_line_closed(a: &Arrangement, b: &HypSet) -> bool {
        LineCloser::new(a).is_line_closed_set(b)
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(
            is_line_closed_arrangement(&catalog::bn(4), 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
