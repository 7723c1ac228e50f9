//! Chambers of a real essential arrangement, their walls, galleries and
//! simpliciality.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::arrangement::{Arrangement, HypSet};
use crate::error::{Error, Result};
use crate::linalg::{dot, Scalar};
use crate::line_closure::verify_lc_basis;
use crate::lp::cone_point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn of(x: &Scalar) -> Option<Sign> {
        if x.is_positive() {
            Some(Sign::Plus)
        } else if x.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    fn orient(self, v: &[Scalar]) -> Vec<Scalar> {
        match self {
            Sign::Plus => v.to_vec(),
            Sign::Minus => v.iter().map(|x| -x).collect(),
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A chamber, given by the side of each hyperplane and an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<Sign>,
    pub witness: Vec<Scalar>,
}

impl Chamber {
    pub fn separating(&self, other: &Chamber) -> usize {
        self.signs
            .iter()
            .zip(&other.signs)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

fn require_essential(a: &Arrangement) -> Result<()> {
    if a.is_essential() {
        Ok(())
    } else {
        Err(Error::NotEssential {
            rank: a.rank(),
            dim: a.dim(),
        })
    }
}

/// All chambers, sorted by sign vector.
pub fn chambers(a: &Arrangement) -> Result<Vec<Chamber>> {
    require_essential(a)?;
    let dim = a.dim();
    let mut current = vec![Chamber {
        signs: Vec::new(),
        witness: vec![Scalar::zero(); dim],
    }];
    for h in 0..a.len() {
        let alpha = a.normal(h);
        let mut next = Vec::with_capacity(current.len() * 2);
        for c in current {
            let constraints: Vec<Vec<Scalar>> = c
                .signs
                .iter()
                .enumerate()
                .map(|(k, s)| s.orient(a.normal(k)))
                .collect();
            let known = Sign::of(&dot(alpha, &c.witness));
            for side in [Sign::Plus, Sign::Minus] {
                let witness = if known == Some(side) {
                    Some(c.witness.clone())
                } else {
                    let mut strict = constraints.clone();
                    strict.push(side.orient(alpha));
                    cone_point(dim, &[], &strict)
                };
                if let Some(w) = witness {
                    let mut signs = c.signs.clone();
                    signs.push(side);
                    next.push(Chamber { signs, witness: w });
                }
            }
        }
        current = next;
    }
    current.sort_by(|x, y| x.signs.cmp(&y.signs));
    Ok(current)
}

fn check_chamber(a: &Arrangement, c: &Chamber) -> Result<()> {
    let fits = c.signs.len() == a.len()
        && c.witness.len() == a.dim()
        && c.signs
            .iter()
            .enumerate()
            .all(|(k, s)| Sign::of(&dot(a.normal(k), &c.witness)) == Some(*s));
    if fits {
        Ok(())
    } else {
        Err(Error::ForeignChamber)
    }
}

/// `H` is a wall iff some point of `H` strictly satisfies every other sign.
pub fn walls(a: &Arrangement, c: &Chamber) -> Result<HypSet> {
    check_chamber(a, c)?;
    Ok((0..a.len())
        .filter(|&h| {
            let strict: Vec<Vec<Scalar>> = (0..a.len())
                .filter(|&k| k != h)
                .map(|k| c.signs[k].orient(a.normal(k)))
                .collect();
            cone_point(a.dim(), &[a.normal(h).to_vec()], &strict).is_some()
        })
        .collect())
}

/// Chambers with their walls and the adjacency graph.
pub struct ChamberComplex<'a> {
    a: &'a Arrangement,
    chambers: Vec<Chamber>,
    walls: Vec<HypSet>,
    index: HashMap<Vec<Sign>, usize>,
}

impl<'a> ChamberComplex<'a> {
    /// Walls come from facet points: for chambers `C, D` differing only at
    /// `H`, the segment between their witnesses meets `H` at a point strictly
    /// on the sides of `C` for every other hyperplane. A hyperplane whose
    /// sign flip is not a chamber bounds no facet.
    pub fn new(a: &'a Arrangement) -> Result<Self> {
        let chambers = chambers(a)?;
        let index: HashMap<Vec<Sign>, usize> = chambers
            .iter()
            .enumerate()
            .map(|(i, c)| (c.signs.clone(), i))
            .collect();
        let mut cx = ChamberComplex {
            a,
            chambers,
            walls: Vec::new(),
            index,
        };
        let mut walls = Vec::with_capacity(cx.len());
        for c in 0..cx.len() {
            let mut w = HypSet::new();
            for h in 0..a.len() {
                if let Some(d) = cx.across(c, h) {
                    let p = cx.facet_point(c, d, h);
                    if !cx.is_facet_point(c, h, &p) {
                        return Err(Error::Invariant("adjacent chambers share no facet".into()));
                    }
                    w.insert(h);
                }
            }
            walls.push(w);
        }
        cx.walls = walls;
        Ok(cx)
    }

    /// The point of `H_h` on the segment between the witnesses of `c` and `d`.
    pub fn facet_point(&self, c: usize, d: usize, h: usize) -> Vec<Scalar> {
        let (p, q) = (&self.chambers[c].witness, &self.chambers[d].witness);
        let alpha = self.a.normal(h);
        let (fp, fq) = (dot(alpha, p), dot(alpha, q));
        let t = &fp / (&fp - &fq);
        p.iter().zip(q).map(|(x, y)| x + &t * (y - x)).collect()
    }

    fn is_facet_point(&self, c: usize, h: usize, p: &[Scalar]) -> bool {
        let signs = &self.chambers[c].signs;
        (0..self.a.len()).all(|k| {
            let v = Sign::of(&dot(self.a.normal(k), p));
            if k == h {
                v.is_none()
            } else {
                v == Some(signs[k])
            }
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.a
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn walls(&self, c: usize) -> &HypSet {
        &self.walls[c]
    }

    pub fn find(&self, c: &Chamber) -> Result<usize> {
        self.index
            .get(&c.signs)
            .copied()
            .ok_or(Error::ForeignChamber)
    }

    /// The chamber across `h` from `c`, if the sign flip is a chamber.
    pub fn across(&self, c: usize, h: usize) -> Option<usize> {
        let mut signs = self.chambers[c].signs.clone();
        signs[h] = signs[h].flip();
        self.index.get(&signs).copied()
    }

    pub fn neighbours(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.a.len()).filter_map(move |h| self.across(c, h))
    }

    fn bfs(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for d in self.neighbours(c) {
                if dist[d] == usize::MAX {
                    dist[d] = dist[c] + 1;
                    queue.push_back(d);
                }
            }
        }
        dist
    }

    /// Length of a shortest gallery from `c` to `d`.
    pub fn gallery_distance(&self, c: usize, d: usize) -> usize {
        self.bfs(c)[d]
    }

    /// Length of a shortest gallery from `c` to a chamber having `h` as a wall.
    pub fn hyperplane_distance(&self, h: usize, c: usize) -> usize {
        let dist = self.bfs(c);
        (0..self.len())
            .filter(|&d| self.walls[d].contains(h))
            .map(|d| dist[d])
            .min()
            .expect("every hyperplane is a wall of some chamber")
    }

    /// The first chamber without exactly `r` independent walls.
    pub fn non_simplicial_chamber(&self) -> Option<usize> {
        let r = self.a.rank();
        (0..self.len()).find(|&c| {
            let w = &self.walls[c];
            w.len() != r || !self.a.is_independent(w)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialReport {
    pub simplicial: bool,
    pub witness: Option<Chamber>,
}

pub fn is_simplicial(a: &Arrangement) -> Result<SimplicialReport> {
    let cx = ChamberComplex::new(a)?;
    let witness = cx.non_simplicial_chamber().map(|c| cx.chambers[c].clone());
    Ok(SimplicialReport {
        simplicial: witness.is_none(),
        witness,
    })
}

pub fn gallery_distance(a: &Arrangement, c: &Chamber, d: &Chamber) -> Result<usize> {
    check_chamber(a, c)?;
    check_chamber(a, d)?;
    let cx = ChamberComplex::new(a)?;
    Ok(cx.gallery_distance(cx.find(c)?, cx.find(d)?))
}

pub fn hyperplane_distance(a: &Arrangement, h: usize, c: &Chamber) -> Result<usize> {
    if h >= a.len() {
        return Err(Error::InvalidIndex {
            index: h,
            len: a.len(),
        });
    }
    check_chamber(a, c)?;
    let cx = ChamberComplex::new(a)?;
    Ok(cx.hyperplane_distance(h, cx.find(c)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallsReport {
    /// `lc(W^C) = A` and `W^C` is an lc-basis for every chamber.
    pub walls_are_lc_bases: bool,
    /// On adjacent `C, D` with common wall `H`, for `H' != H` a wall of `D`:
    /// `H'` is a wall of `C` iff `|A_{H cap H'}| = 2`.
    pub adjacent_rule: bool,
    pub chambers: usize,
    pub adjacent_pairs: usize,
}

impl WallsReport {
    pub fn holds(&self) -> bool {
        self.walls_are_lc_bases && self.adjacent_rule
    }
}

pub fn verify_walls_lc_basis(a: &Arrangement) -> Result<WallsReport> {
    let cx = ChamberComplex::new(a)?;
    walls_report(&cx)
}

pub fn walls_report(cx: &ChamberComplex<'_>) -> Result<WallsReport> {
    if cx.non_simplicial_chamber().is_some() {
        return Err(Error::NotSimplicial);
    }
    let a = cx.a;
    let mut walls_are_lc_bases = true;
    for c in 0..cx.len() {
        if verify_lc_basis(a, cx.walls(c))?.is_none() {
            walls_are_lc_bases = false;
        }
    }
    let mut adjacent_rule = true;
    let mut adjacent_pairs = 0;
    for c in 0..cx.len() {
        for h in cx.walls(c).iter() {
            let d = cx
                .across(c, h)
                .ok_or_else(|| Error::Invariant("no chamber across a wall".into()))?;
            adjacent_pairs += 1;
            for h2 in cx.walls(d).iter().filter(|&x| x != h) {
                let pair = a.closure_set(&[h, h2].into_iter().collect());
                if cx.walls(c).contains(h2) != (pair.len() == 2) {
                    adjacent_rule = false;
                }
            }
        }
    }
    Ok(WallsReport {
        walls_are_lc_bases,
        adjacent_rule,
        chambers: cx.len(),
        adjacent_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::essentialize;
    use crate::catalog;
    use crate::linalg::qv;

    fn generic4() -> Arrangement {
        Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap()
    }

    #[test]
    fn boolean2_quadrants() {
        let a = catalog::boolean(2);
        let cs = chambers(&a).unwrap();
        assert_eq!(cs.len(), 4);
        assert_eq!(walls(&a, &cs[0]).unwrap(), a.all());
        let cx = ChamberComplex::new(&a).unwrap();
        assert_eq!(cx.gallery_distance(0, 3), 2);
    }

    #[test]
    fn braid3_walls() {
        let e = essentialize(&catalog::braid(3)).arrangement;
        let cx = ChamberComplex::new(&e).unwrap();
        assert_eq!(cx.len(), 6);
        // x1 > x2 > x3 has every sign +, for normals x1-x2, x1-x3, x2-x3.
        assert_eq!(cx.chambers()[0].to_string(), "+++");
        assert_eq!(cx.walls(0), &HypSet::from_sorted(vec![0, 2]));
        assert_eq!(cx.hyperplane_distance(1, 0), 1);
        assert_eq!(cx.hyperplane_distance(0, 0), 0);
    }

    #[test]
    fn non_essential_rejected() {
        assert!(matches!(
            chambers(&catalog::braid(3)),
            Err(Error::NotEssential { rank: 2, dim: 3 })
        ));
    }

    #[test]
    fn generic_four_planes() {
        let a = generic4();
        let cx = ChamberComplex::new(&a).unwrap();
        assert_eq!(cx.len(), 14);
        assert!((0..cx.len()).any(|c| cx.walls(c).len() == 4));
        let rep = is_simplicial(&a).unwrap();
        assert!(!rep.simplicial);
        assert!(matches!(
            verify_walls_lc_basis(&a),
            Err(Error::NotSimplicial)
        ));
    }

    #[test]
    fn foreign_chamber() {
        let a = catalog::boolean(2);
        let bogus = Chamber {
            signs: vec![Sign::Plus, Sign::Plus],
            witness: qv(&[-1, 1]),
        };
        assert!(matches!(walls(&a, &bogus), Err(Error::ForeignChamber)));
    }

    #[test]
    fn facet_points_agree_with_lp_walls() {
        for a in [
            catalog::boolean(3),
            essentialize(&catalog::braid(4)).arrangement,
            generic4(),
            catalog::kn(3),
        ] {
            let cx = ChamberComplex::new(&a).unwrap();
            for (i, c) in cx.chambers().iter().enumerate() {
                assert_eq!(&walls(&a, c).unwrap(), cx.walls(i));
            }
        }
    }

    #[test]
    fn simplicial_catalog() {
        for a in [
            catalog::boolean(3),
            essentialize(&catalog::braid(4)).arrangement,
        ] {
            assert!(is_simplicial(&a).unwrap().simplicial);
            let rep = verify_walls_lc_basis(&a).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
    }
}
