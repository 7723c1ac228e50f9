//! The intersection lattice: flats, Möbius function, Poincaré polynomial and
//! modular elements.

use std::collections::{BTreeSet, HashMap};

use crate::arrangement::{restriction, Arrangement, HypSet, Restriction};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

/// An element of the intersection lattice, identified by its closed index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub hyps: HypSet,
    pub subspace: Subspace,
    pub rank: usize,
}

impl Flat {
    /// `|A_X| > r(X)`.
    pub fn is_nontrivial(&self) -> bool {
        self.hyps.len() > self.rank
    }
}

/// The flat spanned by `s`.
pub fn closure(a: &Arrangement, s: &HypSet) -> Result<Flat> {
    a.check_indices(s)?;
    let hyps = a.closure_set(s);
    let subspace = a.intersection_of(&hyps);
    Ok(Flat {
        rank: a.dim() - subspace.dim(),
        hyps,
        subspace,
    })
}

/// All rank-2 flats, in lexicographic order of their index sets.
pub fn rank2_flats(a: &Arrangement) -> Vec<HypSet> {
    let mut out = BTreeSet::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if out.iter().any(|f: &HypSet| f.contains(i) && f.contains(j)) {
                continue;
            }
            out.insert(a.closure_set(&HypSet::from_sorted(vec![i, j])));
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct Lattice {
    flats: Vec<Flat>,
    by_rank: Vec<Vec<usize>>,
    index: HashMap<HypSet, usize>,
    mobius: Vec<i64>,
}

impl Lattice {
    pub fn build(a: &Arrangement) -> Lattice {
        Self::build_with_cap(a, usize::MAX).expect("no cap")
    }

    /// Breadth-first over ranks: every flat of rank `k + 1` is the closure of
    /// a rank-`k` flat plus one hyperplane.
    pub fn build_with_cap(a: &Arrangement, cap: usize) -> Result<Lattice> {
        let mut levels: Vec<BTreeSet<HypSet>> = vec![BTreeSet::from([HypSet::new()])];
        let mut total = 1;
        loop {
            let mut next = BTreeSet::new();
            for f in levels.last().expect("nonempty") {
                let span = a.span_of(f);
                let mut covered = f.clone();
                for h in 0..a.len() {
                    if covered.contains(h) {
                        continue;
                    }
                    let grown = span.sum(&Subspace::span(a.dim(), vec![a.normal(h).to_vec()])?)?;
                    let closed: HypSet = (0..a.len())
                        .filter(|&i| grown.contains(a.normal(i)).expect("lengths agree"))
                        .collect();
                    for i in closed.iter() {
                        covered.insert(i);
                    }
                    next.insert(closed);
                }
            }
            if next.is_empty() {
                break;
            }
            total += next.len();
            if total > cap {
                return Err(Error::CapExceeded {
                    what: "number of flats".into(),
                    limit: cap,
                });
            }
            levels.push(next);
        }

        let mut flats = Vec::with_capacity(total);
        let mut by_rank = Vec::with_capacity(levels.len());
        let mut index = HashMap::with_capacity(total);
        for (rank, level) in levels.into_iter().enumerate() {
            let mut ids = Vec::with_capacity(level.len());
            for hyps in level {
                let subspace = a.intersection_of(&hyps);
                debug_assert_eq!(a.dim() - subspace.dim(), rank);
                index.insert(hyps.clone(), flats.len());
                ids.push(flats.len());
                flats.push(Flat {
                    hyps,
                    subspace,
                    rank,
                });
            }
            by_rank.push(ids);
        }

        let mut mobius = vec![0i64; flats.len()];
        mobius[0] = 1;
        for x in 1..flats.len() {
            let s: i64 = (0..x)
                .filter(|&y| {
                    flats[y].rank < flats[x].rank && flats[y].hyps.is_subset(&flats[x].hyps)
                })
                .map(|y| mobius[y])
                .sum();
            mobius[x] = -s;
        }

        Ok(Lattice {
            flats,
            by_rank,
            index,
            mobius,
        })
    }

    /// Flats in canonical order: by rank, then lexicographically by index set.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    /// Ids of the flats of rank `k` (empty past the top).
    pub fn rank_level(&self, k: usize) -> &[usize] {
        self.by_rank.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_rank.iter().map(Vec::len).collect()
    }

    pub fn find(&self, hyps: &HypSet) -> Option<usize> {
        self.index.get(hyps).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// The center `T(A)`.
    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn mobius(&self, id: usize) -> i64 {
        self.mobius[id]
    }

    /// `x <= y` in the lattice order (reverse inclusion of subspaces).
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.flats[x].hyps.is_subset(&self.flats[y].hyps)
    }

    /// Flats of rank `k` lying below `y`, i.e. the rank-`k` flats of `A_Y`.
    pub fn below(&self, y: usize, k: usize) -> Vec<usize> {
        self.rank_level(k)
            .iter()
            .copied()
            .filter(|&x| self.le(x, y))
            .collect()
    }

    /// Coefficients of `sum_X |mu(X)| t^{r(X)}`.
    pub fn poincare(&self) -> Vec<u64> {
        self.by_rank
            .iter()
            .map(|ids| ids.iter().map(|&i| self.mobius[i].unsigned_abs()).sum())
            .collect()
    }

    fn require(&self, x: &HypSet) -> Result<usize> {
        self.find(x).ok_or(Error::NotAFlat)
    }
}

pub fn build_lattice(a: &Arrangement) -> Lattice {
    Lattice::build(a)
}

pub fn poincare_polynomial(a: &Arrangement) -> Vec<u64> {
    Lattice::build(a).poincare()
}

/// `X + Y` is a flat for every flat `Y`.
pub fn is_modular(a: &Arrangement, lattice: &Lattice, x: &HypSet) -> Result<bool> {
    let xid = lattice.require(x)?;
    let fx = lattice.flat(xid);
    for fy in lattice.flats() {
        let sum = fx.subspace.sum(&fy.subspace)?;
        let above = fx.hyps.intersection(&fy.hyps);
        if a.intersection_of(&above).dim() != sum.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Corank-one test: any two hyperplanes outside `A_X` are dependent with
/// some member of `A_X`.
pub fn is_modular_corank_one_pairwise(a: &Arrangement, x: &HypSet) -> bool {
    let outside: Vec<usize> = (0..a.len()).filter(|&i| !x.contains(i)).collect();
    for (n, &h1) in outside.iter().enumerate() {
        for &h2 in &outside[n + 1..] {
            let found = x
                .iter()
                .any(|h3| a.rank_of(&[h1, h2, h3].into_iter().collect()) == 2);
            if !found {
                return false;
            }
        }
    }
    true
}

/// A complement `Y` of a modular flat `X` and the bijection `A^Y -> A_X`,
/// `K -> X + K`.
#[derive(Clone, Debug)]
pub struct ModularComplement {
    pub y: HypSet,
    pub restriction: Restriction,
    /// `correspondence[k]` is the parent index of the hyperplane `X + K` for
    /// the `k`-th hyperplane `K` of `A^Y`.
    pub correspondence: Vec<usize>,
}

pub fn modular_complement(
    a: &Arrangement,
    lattice: &Lattice,
    x: &HypSet,
) -> Result<ModularComplement> {
    if !is_modular(a, lattice, x)? {
        return Err(Error::NotModular);
    }
    let r = lattice.rank();
    // Greedy basis H_1..H_q of X, then H_{q+1}..H_r completing it to T(A).
    let mut chosen = HypSet::new();
    for h in x.iter() {
        chosen.insert(h);
        if !a.is_independent(&chosen) {
            chosen.remove(h);
        }
    }
    let mut extra = HypSet::new();
    for h in 0..a.len() {
        if chosen.len() + extra.len() == r {
            break;
        }
        if chosen.contains(h) {
            continue;
        }
        let trial = chosen.union(&extra).union(&HypSet::from_sorted(vec![h]));
        if a.is_independent(&trial) {
            extra.insert(h);
        }
    }
    let y = a.closure_set(&extra);
    let q = a.rank_of(x);
    if a.rank_of(&y) != r - q || a.rank_of(&x.union(&y)) != r {
        return Err(Error::Invariant(
            "greedy complement is not complementary".into(),
        ));
    }

    let res = restriction(a, &y)?;
    let mut correspondence = Vec::with_capacity(res.restricted.len());
    for k in 0..res.restricted.len() {
        let witness = res.preimage(k)[0];
        let mut ks = y.clone();
        ks.insert(witness);
        let ksub = a.intersection_of(&ks);
        let hits: Vec<usize> = x
            .iter()
            .filter(|&h| a.hyperplanes()[h].contains_subspace(&ksub))
            .collect();
        if hits.len() != 1 {
            return Err(Error::Invariant(format!(
                "X + K is not a unique hyperplane of A_X ({} candidates)",
                hits.len()
            )));
        }
        correspondence.push(hits[0]);
    }
    let image: BTreeSet<usize> = correspondence.iter().copied().collect();
    if image.len() != correspondence.len() || image.len() != x.len() {
        return Err(Error::Invariant(
            "K -> X + K is not a bijection onto A_X".into(),
        ));
    }

    // Lattice isomorphism A^Y ~ A_X through the correspondence.
    let ly = Lattice::build(&res.restricted);
    let ax = a.subarrangement(x);
    let lx = Lattice::build(&ax);
    let position: HashMap<usize, usize> = x.iter().enumerate().map(|(p, h)| (h, p)).collect();
    if ly.counts() != lx.counts() {
        return Err(Error::Invariant(
            "A^Y and A_X have different flat counts".into(),
        ));
    }
    for f in ly.flats() {
        let mapped: HypSet = f
            .hyps
            .iter()
            .map(|k| position[&correspondence[k]])
            .collect();
        match lx.find(&mapped) {
            Some(id) if lx.flat(id).rank == f.rank => {}
            _ => {
                return Err(Error::Invariant(
                    "correspondence does not preserve the lattice".into(),
                ))
            }
        }
    }

    Ok(ModularComplement {
        y,
        restriction: res,
        correspondence,
    })
}
