//! Nice partitions (factorizations): checking, searching, the section swap
//! algorithm producing an lc-basis, and addition-deletion verification.

use std::fmt;

use crate::arrangement::{restriction, Arrangement, HypSet};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::Subspace;
use crate::line_closure::LineCloser;

/// An ordered partition of the hyperplanes into blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<HypSet>,
}

impl Partition {
    pub fn new(blocks: Vec<HypSet>) -> Self {
        Partition { blocks }
    }

    pub fn from_blocks(blocks: &[&[usize]]) -> Self {
        Partition::new(blocks.iter().map(|b| b.iter().copied().collect()).collect())
    }

    pub fn blocks(&self) -> &[HypSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(HypSet::len).collect()
    }

    /// Checks the blocks are nonempty, disjoint and cover `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for (b, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition(format!("block {} is empty", b + 1)));
            }
            for h in block.iter() {
                if h >= n {
                    return Err(Error::InvalidIndex { index: h, len: n });
                }
                if std::mem::replace(&mut seen[h], true) {
                    return Err(Error::NotAPartition(format!(
                        "hyperplane {} appears twice",
                        h + 1
                    )));
                }
            }
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition(format!(
                "hyperplane {} is uncovered",
                h + 1
            )));
        }
        Ok(())
    }

    /// `indicator[h]` is the block containing `h`.
    pub fn indicator(&self, n: usize) -> Vec<usize> {
        let mut ind = vec![usize::MAX; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for h in block.iter() {
                ind[h] = b;
            }
        }
        ind
    }

    /// The nonempty blocks `pi_i cap S`.
    pub fn induced(&self, s: &HypSet) -> Vec<HypSet> {
        self.blocks
            .iter()
            .map(|b| b.intersection(s))
            .filter(|b| !b.is_empty())
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationFailure {
    /// A section with linearly dependent hyperplanes (one per block, in block order).
    DependentSection(Vec<usize>),
    /// A flat whose induced partition has no singleton block.
    NoSingleton(HypSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCheck {
    pub nice: bool,
    pub failure: Option<FactorizationFailure>,
}

/// First dependent section, by depth-first search over blocks with
/// dependency pruning.
pub fn dependent_section(a: &Arrangement, p: &Partition) -> Option<Vec<usize>> {
    fn go(
        a: &Arrangement,
        blocks: &[HypSet],
        span: &Subspace,
        picked: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let (first, rest) = blocks.split_first()?;
        for h in first.iter() {
            picked.push(h);
            if span.contains(a.normal(h)).expect("ambient length") {
                let mut w = picked.clone();
                w.extend(rest.iter().map(|b| b.as_slice()[0]));
                return Some(w);
            }
            let grown = span
                .sum(&Subspace::span(a.dim(), vec![a.normal(h).to_vec()]).expect("len"))
                .expect("len");
            if let Some(w) = go(a, rest, &grown, picked) {
                return Some(w);
            }
            picked.pop();
        }
        None
    }
    go(a, p.blocks(), &Subspace::zero(a.dim()), &mut Vec::new())
}

pub fn is_factorization(a: &Arrangement, p: &Partition) -> Result<FactorizationCheck> {
    p.validate(a.len())?;
    is_factorization_with(a, &Lattice::build(a), p)
}

pub fn is_factorization_with(
    a: &Arrangement,
    lattice: &Lattice,
    p: &Partition,
) -> Result<FactorizationCheck> {
    p.validate(a.len())?;
    if let Some(w) = dependent_section(a, p) {
        return Ok(FactorizationCheck {
            nice: false,
            failure: Some(FactorizationFailure::DependentSection(w)),
        });
    }
    for f in lattice.flats().iter().skip(1) {
        if !p.induced(&f.hyps).iter().any(|b| b.len() == 1) {
            return Ok(FactorizationCheck {
                nice: false,
                failure: Some(FactorizationFailure::NoSingleton(f.hyps.clone())),
            });
        }
    }
    Ok(FactorizationCheck {
        nice: true,
        failure: None,
    })
}

/// Consequences every factorization must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorizationConsequences {
    /// Number of blocks equals the rank.
    pub block_count: bool,
    /// `prod (1 + |pi_i| t)` is the Poincaré polynomial.
    pub poincare: bool,
    /// `r(X)` equals the number of blocks meeting `A_X`, for every flat.
    pub rank_count: bool,
}

impl FactorizationConsequences {
    pub fn all_hold(&self) -> bool {
        self.block_count && self.poincare && self.rank_count
    }
}

/// Coefficients of `prod (1 + s_i t)`.
pub fn product_polynomial(sizes: &[usize]) -> Vec<u64> {
    let mut poly = vec![1u64];
    for &s in sizes {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * s as u64;
        }
        poly = next;
    }
    poly
}

pub fn consequences(lattice: &Lattice, p: &Partition) -> FactorizationConsequences {
    FactorizationConsequences {
        block_count: p.len() == lattice.rank(),
        poincare: product_polynomial(&p.sizes()) == lattice.poincare(),
        rank_count: lattice
            .flats()
            .iter()
            .all(|f| p.induced(&f.hyps).len() == f.rank),
    }
}

/// The least factorization in the order of block labels assigned to
/// hyperplanes `1, 2, ...`, with blocks ordered by their minimum.
pub fn find_factorization(a: &Arrangement) -> Option<Partition> {
    find_factorization_with(a, &Lattice::build(a))
}

pub fn find_factorization_with(a: &Arrangement, lattice: &Lattice) -> Option<Partition> {
    let n = a.len();
    let r = lattice.rank();
    // Flats become checkable once their largest hyperplane is assigned.
    let mut complete_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, f) in lattice.flats().iter().enumerate().skip(1) {
        complete_at[f.hyps.last().expect("nonempty flat")].push(id);
    }
    let mut search = Search {
        a,
        lattice,
        r,
        complete_at,
        blocks: Vec::new(),
        label: vec![usize::MAX; n],
    };
    search.assign(0).then(|| {
        Partition::new(
            search
                .blocks
                .iter()
                .map(|b| b.iter().copied().collect())
                .collect(),
        )
    })
}

struct Search<'a> {
    a: &'a Arrangement,
    lattice: &'a Lattice,
    r: usize,
    complete_at: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
    label: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, h: usize) -> bool {
        let n = self.a.len();
        if h == n {
            return self.blocks.len() == self.r;
        }
        let open = self.blocks.len();
        for b in 0..=open.min(self.r.saturating_sub(1)) {
            let new_block = b == open;
            // Blocks still to be opened need hyperplanes of their own.
            let opened = open + new_block as usize;
            if n - h - 1 < self.r - opened {
                continue;
            }
            if new_block {
                self.blocks.push(Vec::new());
            }
            self.blocks[b].push(h);
            self.label[h] = b;
            if self.sections_through_independent(h, b) && self.flats_ok(h) && self.assign(h + 1) {
                return true;
            }
            self.blocks[b].pop();
            self.label[h] = usize::MAX;
            if new_block {
                self.blocks.pop();
            }
        }
        false
    }

    /// Every section through `h` of the current blocks is independent.
    fn sections_through_independent(&self, h: usize, b: usize) -> bool {
        let others: Vec<&Vec<usize>> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != b)
            .map(|(_, blk)| blk)
            .collect();
        let start = Subspace::span(self.a.dim(), vec![self.a.normal(h).to_vec()]).expect("len");
        self.independent_rec(&others, &start)
    }

    fn independent_rec(&self, blocks: &[&Vec<usize>], span: &Subspace) -> bool {
        let Some((first, rest)) = blocks.split_first() else {
            return true;
        };
        first.iter().all(|&g| {
            if span.contains(self.a.normal(g)).expect("len") {
                return false;
            }
            let grown = span
                .sum(&Subspace::span(self.a.dim(), vec![self.a.normal(g).to_vec()]).expect("len"))
                .expect("len");
            self.independent_rec(rest, &grown)
        })
    }

    fn flats_ok(&self, h: usize) -> bool {
        self.complete_at[h].iter().all(|&id| {
            let f = &self.lattice.flat(id).hyps;
            let mut counts = vec![0usize; self.blocks.len()];
            for x in f.iter() {
                counts[self.label[x]] += 1;
            }
            counts.contains(&1)
        })
    }
}

/// One step of the section swap: `incoming` replaces `outgoing` in `block`,
/// and `next` is the singleton of the induced partition on their rank-2 flat.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Swap {
    pub block: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub next: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionLcBasis {
    /// One hyperplane per block, in block order.
    pub section: Vec<usize>,
    /// Each improvement round: the hyperplane pulled in and the swaps made.
    pub rounds: Vec<(usize, Vec<Swap>)>,
}

struct Swapper<'a> {
    closer: LineCloser,
    indicator: Vec<usize>,
    p: &'a Partition,
}

impl Swapper<'_> {
    /// The hyperplane of the singleton block induced on the flat through
    /// `h` and `h2`, two members of one block.
    fn singleton(&self, h: usize, h2: usize) -> Result<usize> {
        if h == h2 {
            return Ok(h);
        }
        let flat = self.closer.pair_flat(h, h2);
        let singles: Vec<HypSet> = self
            .p
            .induced(flat)
            .into_iter()
            .filter(|b| b.len() == 1)
            .collect();
        match singles.as_slice() {
            [one] => Ok(one.as_slice()[0]),
            [] => Err(Error::NotAFactorization(format!(
                "no singleton block on the flat {flat}"
            ))),
            _ => Err(Error::Invariant(format!(
                "several singleton blocks on the rank-2 flat {flat}"
            ))),
        }
    }

    /// Starting from section `s` and hyperplane `h`, swap until the sequence
    /// of hyperplanes repeats; returns the final section.
    fn improve(&self, s: &[usize], h: usize) -> Result<(Vec<usize>, Vec<Swap>)> {
        let mut seen = vec![h];
        let mut current = h;
        let mut section = s.to_vec();
        let mut swaps = Vec::new();
        loop {
            let block = self.indicator[current];
            let outgoing = section[block];
            let next = self.singleton(current, outgoing)?;
            section[block] = current;
            if section
                .iter()
                .enumerate()
                .any(|(b, &x)| self.indicator[x] != b)
            {
                return Err(Error::Invariant("swap left the set of sections".into()));
            }
            swaps.push(Swap {
                block,
                incoming: current,
                outgoing,
                next,
            });
            if seen.contains(&next) {
                return Ok((section, swaps));
            }
            seen.push(next);
            current = next;
        }
    }
}

/// A section `S` of the factorization `p` with `lc(S) = A`.
pub fn section_lc_basis(a: &Arrangement, p: &Partition) -> Result<SectionLcBasis> {
    let check = is_factorization(a, p)?;
    if !check.nice {
        return Err(Error::NotAFactorization(format!("{:?}", check.failure)));
    }
    let swapper = Swapper {
        closer: LineCloser::new(a),
        indicator: p.indicator(a.len()),
        p,
    };
    let mut section: Vec<usize> = p.blocks().iter().map(|b| b.as_slice()[0]).collect();
    let mut rounds = Vec::new();
    loop {
        let closed = swapper.closer.lc(&section.iter().copied().collect());
        let Some(h) = (0..a.len()).find(|&h| !closed.contains(h)) else {
            break;
        };
        let (next, swaps) = swapper.improve(&section, h)?;
        let grown = swapper.closer.lc(&next.iter().copied().collect());
        if !closed.is_subset(&grown) || !grown.contains(h) {
            return Err(Error::Invariant(
                "swapped section does not line-close over S and H".into(),
            ));
        }
        rounds.push((h, swaps));
        section = next;
    }
    Ok(SectionLcBasis { section, rounds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditionDeletionReport {
    /// `pi` factors `A`.
    pub full: bool,
    /// `pi'` factors `A' = A minus H0`.
    pub deletion: bool,
    /// `rho` is bijective and `pi''` factors `A'' = A^{H0}`.
    pub restriction: bool,
    pub rho_bijective: bool,
    /// `pi_1 = {H0}`, so `pi'` loses a block.
    pub degenerate: bool,
}

struct Triple {
    deleted: Arrangement,
    deleted_partition: Partition,
    restricted: Arrangement,
    restricted_partition: Option<Partition>,
    rho_bijective: bool,
    degenerate: bool,
}

fn triple(a: &Arrangement, p: &Partition, h0: usize) -> Result<Triple> {
    p.validate(a.len())?;
    if h0 >= a.len() {
        return Err(Error::InvalidIndex {
            index: h0,
            len: a.len(),
        });
    }
    if !p.blocks().first().is_some_and(|b| b.contains(h0)) {
        return Err(Error::NotAPartition(format!(
            "hyperplane {} is not in the first block",
            h0 + 1
        )));
    }
    let keep: HypSet = (0..a.len()).filter(|&h| h != h0).collect();
    let deleted = a.subarrangement(&keep);
    let shift = |h: usize| if h > h0 { h - 1 } else { h };
    let deleted_partition = Partition::new(
        p.blocks()
            .iter()
            .map(|b| b.iter().filter(|&h| h != h0).map(shift).collect::<HypSet>())
            .filter(|b| !b.is_empty())
            .collect(),
    );
    let degenerate = p.blocks()[0].len() == 1;

    let res = restriction(a, &HypSet::from_sorted(vec![h0]))?;
    let first = &p.blocks()[0];
    let images: Vec<usize> = (0..a.len())
        .filter(|&h| !first.contains(h))
        .map(|h| res.trace[h].expect("only H0 contains H0"))
        .collect();
    let distinct: HypSet = images.iter().copied().collect();
    let rho_bijective = distinct.len() == images.len() && distinct.len() == res.restricted.len();
    let restricted_partition = rho_bijective.then(|| {
        Partition::new(
            p.blocks()[1..]
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|h| res.trace[h].expect("outside H0"))
                        .collect()
                })
                .collect(),
        )
    });
    Ok(Triple {
        deleted,
        deleted_partition,
        restricted: res.restricted,
        restricted_partition,
        rho_bijective,
        degenerate,
    })
}

/// Evaluates the three statements of addition-deletion for `(A, A', A'')`
/// and checks that no two of them hold without the third.
pub fn addition_deletion_check(
    a: &Arrangement,
    p: &Partition,
    h0: usize,
) -> Result<AdditionDeletionReport> {
    let t = triple(a, p, h0)?;
    let full = is_factorization(a, p)?.nice;
    let deletion = t.deleted_partition.len() == t.deleted.rank()
        && is_factorization(&t.deleted, &t.deleted_partition)?.nice;
    let restriction = match &t.restricted_partition {
        Some(pp) => is_factorization(&t.restricted, pp)?.nice,
        None => false,
    };
    let report = AdditionDeletionReport {
        full,
        deletion,
        restriction,
        rho_bijective: t.rho_bijective,
        degenerate: t.degenerate,
    };
    let truths = [full, deletion, restriction].iter().filter(|&&x| x).count();
    if p.len() == a.rank() && truths == 2 {
        return Err(Error::Invariant(format!(
            "two addition-deletion statements hold without the third: {report:?}"
        )));
    }
    Ok(report)
}

/// For a factorization with bijective `rho`, whether `pi'` and `pi''` are
/// nice. Both must be.
pub fn deletion_criterion(a: &Arrangement, p: &Partition, h0: usize) -> Result<(bool, bool)> {
    let t = triple(a, p, h0)?;
    let check = is_factorization(a, p)?;
    if !check.nice {
        return Err(Error::NotAFactorization(format!("{:?}", check.failure)));
    }
    let Some(pp) = t.restricted_partition else {
        return Err(Error::RestrictionNotBijective);
    };
    Ok((
        is_factorization(&t.deleted, &t.deleted_partition)?.nice,
        is_factorization(&t.restricted, &pp)?.nice,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::line_closure::verify_lc_basis;

    fn plane3() -> Arrangement {
        // x, y, x+y
        Arrangement::from_int_rows(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn boolean_singletons_nice() {
        let a = catalog::boolean(3);
        let p = Partition::from_blocks(&[&[0], &[1], &[2]]);
        assert!(is_factorization(&a, &p).unwrap().nice);
        assert_eq!(find_factorization(&a).unwrap(), p);
    }

    #[test]
    fn braid3_partition() {
        let a = catalog::braid(3);
        let p = Partition::from_blocks(&[&[0], &[1, 2]]);
        assert!(is_factorization(&a, &p).unwrap().nice);
        let found = find_factorization(&a).unwrap();
        let mut sizes = found.sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        assert!(consequences(&Lattice::build(&a), &found).all_hold());
    }

    #[test]
    fn k3_three_blocks_fail() {
        let a = catalog::kn(3);
        // All partitions into 3 blocks, via restricted growth strings.
        let n = a.len();
        let mut count = 0;
        let mut labels = vec![0usize; n];
        loop {
            let k = labels.iter().max().unwrap() + 1;
            if k == 3 {
                let blocks: Vec<HypSet> = (0..3)
                    .map(|b| (0..n).filter(|&h| labels[h] == b).collect())
                    .collect();
                assert!(!is_factorization(&a, &Partition::new(blocks)).unwrap().nice);
                count += 1;
            }
            // next restricted growth string
            let mut i = n - 1;
            loop {
                let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
                if i > 0 && labels[i] <= prefix_max {
                    labels[i] += 1;
                    for l in labels.iter_mut().skip(i + 1) {
                        *l = 0;
                    }
                    break;
                }
                if i == 0 {
                    break;
                }
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
        // Stirling number S(6, 3)
        assert_eq!(count, 90);
    }

    #[test]
    fn partition_validation() {
        let a = catalog::boolean(3);
        assert!(matches!(
            is_factorization(&a, &Partition::from_blocks(&[&[0], &[1]])),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            is_factorization(&a, &Partition::from_blocks(&[&[0, 1], &[1, 2]])),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            is_factorization(&a, &Partition::from_blocks(&[&[0, 1, 5]])),
            Err(Error::InvalidIndex { .. })
        ));
    }

    #[test]
    fn dependent_section_witness() {
        let a = plane3();
        let p = Partition::from_blocks(&[&[0, 1, 2]]);
        // single block: sections are single hyperplanes, so independent, but no singleton at T(A)
        let c = is_factorization(&a, &p).unwrap();
        assert_eq!(c.failure, Some(FactorizationFailure::NoSingleton(a.all())));
        let b = catalog::boolean(2);
        let p = Partition::from_blocks(&[&[0], &[1]]);
        assert!(dependent_section(&b, &p).is_none());
        let a3 = Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let p = Partition::from_blocks(&[&[0], &[1], &[2]]);
        assert_eq!(dependent_section(&a3, &p), Some(vec![0, 1, 2]));
    }

    #[test]
    fn section_swap_reaches_lc_basis() {
        for a in [
            catalog::boolean(3),
            catalog::braid(3),
            catalog::bn(3),
            catalog::braid(4),
        ] {
            let p = find_factorization(&a).unwrap();
            let s = section_lc_basis(&a, &p).unwrap();
            assert_eq!(s.section.len(), a.rank());
            let set: HypSet = s.section.iter().copied().collect();
            assert!(verify_lc_basis(&a, &set).unwrap().is_some());
        }
    }

    #[test]
    fn section_lc_rejects_non_factorization() {
        let a = catalog::kn(3);
        let p = Partition::from_blocks(&[&[0, 3], &[1, 4], &[2, 5]]);
        assert!(matches!(
            section_lc_basis(&a, &p),
            Err(Error::NotAFactorization(_))
        ));
    }

    #[test]
    fn addition_deletion_plane() {
        let a = plane3();
        let r = addition_deletion_check(&a, &Partition::from_blocks(&[&[0, 2], &[1]]), 0).unwrap();
        assert!(r.full && r.deletion && r.restriction && r.rho_bijective);

        let r = addition_deletion_check(&a, &Partition::from_blocks(&[&[0], &[1, 2]]), 0).unwrap();
        assert!(r.full);
        assert!(!r.deletion);
        assert!(!r.restriction);
        assert!(!r.rho_bijective);
        assert!(r.degenerate);
    }

    #[test]
    fn addition_deletion_boolean2() {
        let a = catalog::boolean(2);
        let r = addition_deletion_check(&a, &Partition::from_blocks(&[&[0], &[1]]), 0).unwrap();
        assert!(r.full && r.restriction && r.degenerate);
        assert!(r.deletion);
    }

    #[test]
    fn h0_outside_first_block() {
        let a = plane3();
        assert!(matches!(
            addition_deletion_check(&a, &Partition::from_blocks(&[&[0, 2], &[1]]), 1),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn deletion_criterion_examples() {
        let a = plane3();
        assert_eq!(
            deletion_criterion(&a, &Partition::from_blocks(&[&[0, 2], &[1]]), 0).unwrap(),
            (true, true)
        );
        let b = catalog::boolean(3);
        assert_eq!(
            deletion_criterion(&b, &Partition::from_blocks(&[&[0], &[1], &[2]]), 0).unwrap(),
            (true, true)
        );
        assert!(matches!(
            deletion_criterion(&a, &Partition::from_blocks(&[&[0], &[1, 2]]), 0),
            Err(Error::RestrictionNotBijective)
        ));
        let k3 = catalog::kn(3);
        assert!(matches!(
            deletion_criterion(
                &k3,
                &Partition::from_blocks(&[&[0, 3], &[1, 4], &[2, 5]]),
                0
            ),
            Err(Error::NotAFactorization(_))
        ));
    }

    #[test]
    fn product_polynomial_values() {
        assert_eq!(product_polynomial(&[1, 2]), vec![1, 3, 2]);
        assert_eq!(product_polynomial(&[]), vec![1]);
    }
}
