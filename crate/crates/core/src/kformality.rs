//! The recursive spaces `R_k(A)`, the maps `pi_k`, and k-formality.
//!
//! Everything lives inside one ambient arrangement `A`. A localization `A_X`
//! is identified with its closed index set, and the flats of `A_X` are the
//! flats of `A` below `X`, so a single lattice indexes every summand.
//!
//! Coordinates:
//! * `R_0(A_S) = T(A_S)^*` uses the dual of the RREF basis of `T(A_S)`.
//! * For `k >= 1`, `R_k(A_S)` is a subspace of
//!   `D_{k-1}(A_S) = (+)_{X in L_{k-1}(A_S)} R_{k-1}(A_X)`, whose coordinates
//!   concatenate the summand coordinates in canonical flat order. The stored
//!   basis is the RREF basis of that subspace, and vectors of `R_k(A_S)` are
//!   expressed through it.
//!
//! `j_{k-1}(Y)` copies summand blocks, since `R_{k-1}((A_Y)_X)` and
//! `R_{k-1}(A_X)` are the same memoized object.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use crate::arrangement::{Arrangement, HypSet};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{kernel_basis, Matrix, Scalar, Subspace};

#[derive(Clone, Debug)]
struct Summand {
    flat: usize,
    offset: usize,
    dim: usize,
}

#[derive(Debug)]
struct Level {
    summands: Vec<Summand>,
    total: usize,
    basis: Subspace,
}

impl Level {
    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn offset_of(&self, flat: usize) -> Option<usize> {
        self.summands
            .binary_search_by_key(&flat, |s| s.flat)
            .ok()
            .map(|i| self.summands[i].offset)
    }
}

/// Layout of the direct sum a space `R_k` lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RkCoordinates {
    pub k: usize,
    /// `(X, offset, dim R_{k-1}(A_X))` for `X` in `L_{k-1}`; empty for `k = 0`.
    pub summands: Vec<(HypSet, usize, usize)>,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RkSpace {
    pub coords: RkCoordinates,
    /// RREF basis; for `k = 0` this is the basis of `T(A)` in `V`.
    pub basis: Subspace,
}

impl RkSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

#[derive(Clone, Debug)]
pub struct PiK {
    /// `dim R_k(A) x sum_X dim R_k(A_X)`.
    pub matrix: Matrix,
    pub rank: usize,
    pub surjective: bool,
}

/// One analysis: an arrangement, its lattice and the memo of computed spaces.
pub struct KFormality<'a> {
    a: &'a Arrangement,
    lattice: Lattice,
    memo: HashMap<(usize, usize), Rc<Level>>,
}

impl<'a> KFormality<'a> {
    pub fn new(a: &'a Arrangement) -> Self {
        Self::with_lattice(a, Lattice::build(a))
    }

    pub fn with_lattice(a: &'a Arrangement, lattice: Lattice) -> Self {
        KFormality {
            a,
            lattice,
            memo: HashMap::new(),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.a
    }

    fn level(&mut self, s: usize, k: usize) -> Result<Rc<Level>> {
        if let Some(l) = self.memo.get(&(s, k)) {
            return Ok(l.clone());
        }
        let level = if k == 0 {
            Level {
                summands: Vec::new(),
                total: self.a.dim(),
                basis: self.a.intersection_of(&self.lattice.flat(s).hyps),
            }
        } else {
            let mut summands = Vec::new();
            let mut total = 0;
            for x in self.lattice.below(s, k - 1) {
                let dim = self.level(x, k - 1)?.dim();
                summands.push(Summand {
                    flat: x,
                    offset: total,
                    dim,
                });
                total += dim;
            }
            let pi = self.pi_matrix(s, k - 1)?;
            debug_assert_eq!(pi.cols(), total);
            Level {
                summands,
                total,
                basis: kernel_basis(&pi),
            }
        };
        let level = Rc::new(level);
        self.memo.insert((s, k), level.clone());
        Ok(level)
    }

    /// `i_k(Y): R_k(A_Y) -> R_k(A_S)` for `Y <= S`.
    pub fn inclusion(&mut self, y: usize, s: usize, k: usize) -> Result<Matrix> {
        if !self.lattice.le(y, s) {
            return Err(Error::Invariant("inclusion requires Y <= S".into()));
        }
        let ly = self.level(y, k)?;
        let ls = self.level(s, k)?;
        let mut m = Matrix::zeros(ls.dim(), ly.dim());
        if k == 0 {
            // Restrict a functional on T(A_Y) to T(A_S) <= T(A_Y).
            for (j, b) in ls.basis.basis().row_iter().enumerate() {
                let c = ly
                    .basis
                    .coordinates(b)?
                    .ok_or_else(|| Error::Invariant("T(A_S) not inside T(A_Y)".into()))?;
                for (i, x) in c.into_iter().enumerate() {
                    m.set(j, i, x);
                }
            }
            return Ok(m);
        }
        for (col, v) in ly.basis.basis().row_iter().enumerate() {
            let w = embed(&ly, &ls, v)?;
            let c = ls.basis.coordinates(&w)?.ok_or_else(|| {
                Error::Invariant(format!(
                    "j_{}(Y) does not map R_{k}(A_Y) into R_{k}(A)",
                    k - 1
                ))
            })?;
            for (row, x) in c.into_iter().enumerate() {
                m.set(row, col, x);
            }
        }
        Ok(m)
    }

    /// Matrix of `j_{k-1}(Y): D_{k-1}(A_Y) -> D_{k-1}(A_S)`, `k >= 1`.
    fn embedding(&mut self, y: usize, s: usize, k: usize) -> Result<Matrix> {
        let ly = self.level(y, k)?;
        let ls = self.level(s, k)?;
        let mut m = Matrix::zeros(ls.total, ly.total);
        for sm in &ly.summands {
            let off = ls
                .offset_of(sm.flat)
                .ok_or_else(|| Error::Invariant("summand of A_Y missing in A".into()))?;
            for t in 0..sm.dim {
                m.set(off + t, sm.offset + t, Scalar::from_integer(1.into()));
            }
        }
        Ok(m)
    }

    fn pi_matrix(&mut self, s: usize, k: usize) -> Result<Matrix> {
        let target = self.level(s, k)?.dim();
        let mut m = Matrix::zeros(target, 0);
        for x in self.lattice.below(s, k) {
            m = m.hstack(&self.inclusion(x, s, k)?)?;
        }
        Ok(m)
    }

    fn resolve(&self, flat: &HypSet) -> Result<usize> {
        self.lattice.find(flat).ok_or(Error::NotAFlat)
    }

    fn public_space(&mut self, s: usize, k: usize) -> Result<RkSpace> {
        let level = self.level(s, k)?;
        let summands = level
            .summands
            .iter()
            .map(|sm| (self.lattice.flat(sm.flat).hyps.clone(), sm.offset, sm.dim))
            .collect();
        Ok(RkSpace {
            coords: RkCoordinates {
                k,
                summands,
                total: level.total,
            },
            basis: level.basis.clone(),
        })
    }

    /// `R_k(A)`.
    pub fn rk_space(&mut self, k: usize) -> Result<RkSpace> {
        let top = self.lattice.top();
        self.public_space(top, k)
    }

    /// `R_k(A_X)` for the flat with index set `flat`.
    pub fn rk_space_at(&mut self, flat: &HypSet, k: usize) -> Result<RkSpace> {
        let s = self.resolve(flat)?;
        self.public_space(s, k)
    }

    fn pi_at(&mut self, s: usize, k: usize) -> Result<PiK> {
        let matrix = self.pi_matrix(s, k)?;
        let rank = matrix.rank();
        Ok(PiK {
            surjective: rank == matrix.rows(),
            rank,
            matrix,
        })
    }

    /// `pi_k(A): (+)_{X in L_k} R_k(A_X) -> R_k(A)`.
    pub fn pi_k(&mut self, k: usize) -> Result<PiK> {
        let top = self.lattice.top();
        self.pi_at(top, k)
    }

    pub fn pi_k_at(&mut self, flat: &HypSet, k: usize) -> Result<PiK> {
        let s = self.resolve(flat)?;
        self.pi_at(s, k)
    }

    fn k_formal_at(&mut self, s: usize, k: usize) -> Result<bool> {
        let r = self.lattice.flat(s).rank;
        if r <= 2 {
            return Ok(true);
        }
        for j in 2..=k.min(r - 1) {
            if !self.pi_at(s, j)?.surjective {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// k-formality for `k >= 2`; levels at or above the rank repeat the
    /// value at `r - 1`.
    pub fn is_k_formal(&mut self, k: usize) -> Result<bool> {
        let top = self.lattice.top();
        self.k_formal_at(top, k)
    }

    pub fn is_k_formal_at(&mut self, flat: &HypSet, k: usize) -> Result<bool> {
        let s = self.resolve(flat)?;
        self.k_formal_at(s, k)
    }

    /// `(k, k-formal)` for `k` in `2..=max(2, r - 1)`.
    pub fn profile(&mut self) -> Result<Vec<(usize, bool)>> {
        let r = self.lattice.rank();
        let mut out = Vec::new();
        let mut ok = true;
        for k in 2..=r.saturating_sub(1).max(2) {
            if ok && r > 2 {
                let top = self.lattice.top();
                ok = self.pi_at(top, k)?.surjective;
            }
            out.push((k, ok));
        }
        Ok(out)
    }

    /// Every localization is k-formal for every k. Returns the first failing
    /// flat, if any.
    pub fn totally_formal_witness(&mut self) -> Result<Option<(HypSet, usize)>> {
        for s in 0..self.lattice.len() {
            let r = self.lattice.flat(s).rank;
            for k in 2..r {
                if !self.pi_at(s, k)?.surjective {
                    return Ok(Some((self.lattice.flat(s).hyps.clone(), k)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_totally_formal(&mut self) -> Result<bool> {
        Ok(self.totally_formal_witness()?.is_none())
    }

    /// `pi_{k-1}(A_S) . j_{k-1}(Y) = i_{k-1}(Y) . pi_{k-1}(A_Y)` as matrices.
    pub fn diagram_commutes(&mut self, y: &HypSet, s: &HypSet, k: usize) -> Result<bool> {
        if k == 0 {
            return Err(Error::Invariant("the square exists for k >= 1".into()));
        }
        let (y, s) = (self.resolve(y)?, self.resolve(s)?);
        let lhs = self.pi_matrix(s, k - 1)?.mul(&self.embedding(y, s, k)?)?;
        let rhs = self
            .inclusion(y, s, k - 1)?
            .mul(&self.pi_matrix(y, k - 1)?)?;
        Ok(lhs == rhs)
    }

    /// `R_2(A)` rewritten as relations `sum c_H alpha_H = 0`. Each summand
    /// `R_1(A_H)` has the basis `alpha_H / lead(alpha_H)`.
    pub fn r2_as_relations(&mut self) -> Result<Subspace> {
        let r2 = self.rk_space(2)?;
        let n = self.a.len();
        let mut rows = Vec::new();
        for v in r2.basis.basis().row_iter() {
            let mut e = vec![Scalar::zero(); n];
            for (hyps, off, dim) in &r2.coords.summands {
                debug_assert_eq!((*dim, hyps.len()), (1, 1));
                let h = hyps.as_slice()[0];
                let lead = self
                    .a
                    .normal(h)
                    .iter()
                    .find(|x| !x.is_zero())
                    .expect("nonzero normal");
                e[h] = &v[*off] / lead;
            }
            rows.push(e);
        }
        Subspace::span(n, rows)
    }
}

fn embed(from: &Level, into: &Level, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut w = vec![Scalar::zero(); into.total];
    for sm in &from.summands {
        let off = into
            .offset_of(sm.flat)
            .ok_or_else(|| Error::Invariant("summand of A_Y missing in A".into()))?;
        w[off..off + sm.dim].clone_from_slice(&v[sm.offset..sm.offset + sm.dim]);
    }
    Ok(w)
}

pub fn rk_space(a: &Arrangement, k: usize) -> Result<RkSpace> {
    KFormality::new(a).rk_space(k)
}

pub fn pi_k(a: &Arrangement, k: usize) -> Result<PiK> {
    KFormality::new(a).pi_k(k)
}

pub fn is_k_formal(a: &Arrangement, k: usize) -> Result<bool> {
    KFormality::new(a).is_k_formal(k)
}

pub fn formality_profile(a: &Arrangement) -> Result<Vec<(usize, bool)>> {
    KFormality::new(a).profile()
}

pub fn is_totally_formal(a: &Arrangement) -> Result<bool> {
    KFormality::new(a).is_totally_formal()
}
