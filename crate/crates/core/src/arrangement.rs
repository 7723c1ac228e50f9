//! Central arrangements, their text format, localization, restriction and
//! essentialization.
//!
//! Hyperplanes are indexed from 0 inside the library. The text format and
//! the command line use 1-based indices in file order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    dot, is_zero_vec, kernel_basis, primitive_integer, qv, Matrix, Scalar, Subspace,
};

/// A sorted set of hyperplane indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypSet(Vec<usize>);

impl HypSet {
    pub fn new() -> Self {
        HypSet(Vec::new())
    }

    pub fn range(n: usize) -> Self {
        HypSet((0..n).collect())
    }

    pub fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        HypSet(v)
    }

    /// Parses a 1-based list like `1,3,6`.
    pub fn from_one_based(list: &[usize]) -> Self {
        list.iter().map(|&i| i.wrapping_sub(1)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn insert(&mut self, i: usize) -> bool {
        match self.0.binary_search(&i) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, i);
                true
            }
        }
    }

    pub fn remove(&mut self, i: usize) -> bool {
        match self.0.binary_search(&i) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &HypSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|x| it.any(|y| y == x))
    }

    pub fn union(&self, other: &HypSet) -> HypSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        HypSet(v)
    }

    pub fn intersection(&self, other: &HypSet) -> HypSet {
        HypSet(
            self.0
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        )
    }

    pub fn difference(&self, other: &HypSet) -> HypSet {
        HypSet(
            self.0
                .iter()
                .copied()
                .filter(|&i| !other.contains(i))
                .collect(),
        )
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl FromIterator<usize> for HypSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        HypSet(v)
    }
}

impl fmt::Display for HypSet {
    /// 1-based, e.g. `{1,3,6}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A linear hyperplane `ker(alpha)`, stored by its normalized normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Scalar>,
}

impl Hyperplane {
    /// Normalizes to a primitive integer vector with positive leading entry.
    pub fn new(normal: Vec<Scalar>) -> Option<Self> {
        if is_zero_vec(&normal) {
            return None;
        }
        Some(Hyperplane {
            normal: primitive_integer(&normal),
        })
    }

    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// True when the hyperplane contains every vector of `x`.
    pub fn contains_subspace(&self, x: &Subspace) -> bool {
        x.basis().row_iter().all(|b| dot(&self.normal, b).is_zero())
    }
}

/// A simple central arrangement in `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn new(dim: usize, normals: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut seen: HashMap<Hyperplane, usize> = HashMap::new();
        let mut hyperplanes = Vec::with_capacity(normals.len());
        for (i, n) in normals.into_iter().enumerate() {
            if n.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n.len(),
                });
            }
            let h = Hyperplane::new(n).ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("hyperplane {} has a zero normal", i + 1),
            })?;
            if let Some(j) = seen.insert(h.clone(), i) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("hyperplane {} duplicates hyperplane {}", i + 1, j + 1),
                });
            }
            hyperplanes.push(h);
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn from_int_rows(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(dim, rows.iter().map(|r| qv(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn normal(&self, i: usize) -> &[Scalar] {
        self.hyperplanes[i].normal()
    }

    pub fn all(&self) -> HypSet {
        HypSet::range(self.len())
    }

    pub fn check_indices(&self, set: &HypSet) -> Result<()> {
        match set.last() {
            Some(m) if m >= self.len() => Err(Error::InvalidIndex {
                index: m,
                len: self.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Rows are the normals of the chosen hyperplanes, in index order.
    pub fn normal_matrix(&self, set: &HypSet) -> Matrix {
        let rows = set.iter().map(|i| self.normal(i).to_vec()).collect();
        Matrix::from_rows(self.dim, rows).expect("normals have the ambient length")
    }

    /// `Ann(X)` for `X` the intersection of the chosen hyperplanes.
    pub fn span_of(&self, set: &HypSet) -> Subspace {
        Subspace::row_space(&self.normal_matrix(set))
    }

    /// The intersection subspace `X` of the chosen hyperplanes.
    pub fn intersection_of(&self, set: &HypSet) -> Subspace {
        if set.is_empty() {
            return Subspace::full(self.dim);
        }
        kernel_basis(&self.normal_matrix(set))
    }

    pub fn rank_of(&self, set: &HypSet) -> usize {
        self.span_of(set).dim()
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&self.all())
    }

    pub fn is_independent(&self, set: &HypSet) -> bool {
        self.rank_of(set) == set.len()
    }

    /// All hyperplanes containing the intersection of `set`.
    pub fn closure_set(&self, set: &HypSet) -> HypSet {
        let span = self.span_of(set);
        (0..self.len())
            .filter(|&i| {
                set.contains(i)
                    || span
                        .contains(self.normal(i))
                        .expect("ambient lengths agree")
            })
            .collect()
    }

    pub fn is_closed(&self, set: &HypSet) -> bool {
        &self.closure_set(set) == set
    }

    /// The sub-arrangement on `set`, in index order.
    pub fn subarrangement(&self, set: &HypSet) -> Arrangement {
        Arrangement {
            dim: self.dim,
            hyperplanes: set.iter().map(|i| self.hyperplanes[i].clone()).collect(),
        }
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl FromStr for Arrangement {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut normals = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let Some(d) = dim else {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("dim") {
                    return Err(perr("expected `dim <n>` header".into()));
                }
                let value = parts
                    .next()
                    .ok_or_else(|| perr("missing dimension".into()))?;
                if parts.next().is_some() {
                    return Err(perr("trailing tokens after dimension".into()));
                }
                dim = Some(
                    value
                        .parse()
                        .map_err(|_| perr(format!("invalid dimension `{value}`")))?,
                );
                continue;
            };
            let row: Vec<Scalar> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<Scalar>()
                        .map_err(|_| perr(format!("malformed rational `{tok}`")))
                })
                .collect::<Result<_>>()?;
            if row.len() != d {
                return Err(perr(format!("expected {d} entries, found {}", row.len())));
            }
            if is_zero_vec(&row) {
                return Err(perr("zero normal vector".into()));
            }
            normals.push((line_no, row));
        }
        let dim = dim.ok_or(Error::Parse {
            line: 0,
            message: "missing `dim <n>` header".into(),
        })?;
        let mut seen: HashMap<Hyperplane, usize> = HashMap::new();
        let mut hyperplanes = Vec::new();
        for (line, row) in normals {
            let h = Hyperplane::new(row).expect("checked nonzero");
            if let Some(prev) = seen.insert(h.clone(), line) {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "duplicate hyperplane (same as line {prev} after normalization)"
                    ),
                });
            }
            hyperplanes.push(h);
        }
        Ok(Arrangement { dim, hyperplanes })
    }
}

impl fmt::Display for Arrangement {
    /// Serializes to the text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for h in &self.hyperplanes {
            let cells: Vec<String> = h.normal.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The localization `A_X` together with the parent index of each member.
#[derive(Clone, Debug)]
pub struct Localization {
    pub arrangement: Arrangement,
    pub indices: Vec<usize>,
}

/// `A_X` for `X` the intersection of `hyps`.
pub fn localization(a: &Arrangement, hyps: &HypSet) -> Result<Localization> {
    a.check_indices(hyps)?;
    let closed = a.closure_set(hyps);
    Ok(Localization {
        arrangement: a.subarrangement(&closed),
        indices: closed.as_slice().to_vec(),
    })
}

/// The restriction `A^X` in coordinates of the RREF basis of `X`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub restricted: Arrangement,
    /// Rows form the chosen basis of `X`.
    pub basis: Matrix,
    /// The localization `A_X` as a closed index set of the parent.
    pub localized: HypSet,
    /// `trace[i]` is the restricted hyperplane cut out by parent hyperplane
    /// `i`, or `None` when `i` contains `X`.
    pub trace: Vec<Option<usize>>,
}

impl Restriction {
    /// True when no two parent hyperplanes cut the same trace.
    pub fn is_injective(&self) -> bool {
        self.restricted.len() + self.localized.len() == self.trace.len()
    }

    /// Parent hyperplanes whose trace is `k`.
    pub fn preimage(&self, k: usize) -> Vec<usize> {
        self.trace
            .iter()
            .enumerate()
            .filter_map(|(i, t)| (*t == Some(k)).then_some(i))
            .collect()
    }
}

/// Coordinates of the form `alpha` restricted to the subspace with the given basis.
pub fn restrict_form(alpha: &[Scalar], basis: &Matrix) -> Vec<Scalar> {
    basis.row_iter().map(|b| dot(alpha, b)).collect()
}

pub fn restriction(a: &Arrangement, hyps: &HypSet) -> Result<Restriction> {
    a.check_indices(hyps)?;
    let localized = a.closure_set(hyps);
    let x = a.intersection_of(&localized);
    let basis = x.basis().clone();
    let mut targets: HashMap<Hyperplane, usize> = HashMap::new();
    let mut restricted = Vec::new();
    let mut trace = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        if localized.contains(i) {
            trace.push(None);
            continue;
        }
        let h = Hyperplane::new(restrict_form(a.normal(i), &basis))
            .ok_or_else(|| Error::Invariant("hyperplane outside A_X vanishes on X".into()))?;
        let next = restricted.len();
        let k = *targets.entry(h.clone()).or_insert_with(|| {
            restricted.push(h);
            next
        });
        trace.push(Some(k));
    }
    Ok(Restriction {
        restricted: Arrangement {
            dim: x.dim(),
            hyperplanes: restricted,
        },
        basis,
        localized,
        trace,
    })
}

/// The arrangement induced on `V / T(A)`.
#[derive(Clone, Debug)]
pub struct Essentialization {
    pub arrangement: Arrangement,
    /// RREF basis of the span of all normals; new coordinates are taken
    /// with respect to these rows.
    pub row_basis: Subspace,
}

pub fn essentialize(a: &Arrangement) -> Essentialization {
    let span = a.span_of(&a.all());
    let hyperplanes = a
        .hyperplanes
        .iter()
        .map(|h| {
            let c = span
                .coordinates(h.normal())
                .expect("ambient lengths agree")
                .expect("normal lies in the span of all normals");
            Hyperplane::new(c).expect("nonzero normal has nonzero coordinates")
        })
        .collect();
    Essentialization {
        arrangement: Arrangement {
            dim: span.dim(),
            hyperplanes,
        },
        row_basis: span,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parse_boolean_plane() {
        let a: Arrangement = "dim 2\n1 0\n0 1\n".parse().unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn parse_comments_and_rationals() {
        let a: Arrangement = "# header\n dim 3 # ambient\n1/2 -1/3 0\n\n0 0 2 # z\n"
            .parse()
            .unwrap();
        assert_eq!(a.normal(0), &qv(&[3, -2, 0])[..]);
        assert_eq!(a.normal(1), &qv(&[0, 0, 1])[..]);
    }

    #[test]
    fn parse_errors() {
        let dup = "dim 2\n2 0\n1 0\n".parse::<Arrangement>().unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }), "{dup:?}");
        assert!(matches!(
            "dim 2\n0 0\n".parse::<Arrangement>(),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            "dim 2\n1 x\n".parse::<Arrangement>(),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            "dim 2\n1 1/0\n".parse::<Arrangement>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "1 0\n".parse::<Arrangement>(),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            "dim two\n".parse::<Arrangement>(),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            "".parse::<Arrangement>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "dim 2\n1 0 0\n".parse::<Arrangement>(),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn ex51_parses_from_text() {
        let text = catalog::ex51().to_string();
        let a: Arrangement = text.parse().unwrap();
        assert_eq!(a.len(), 11);
        assert_eq!(a.dim(), 5);
        assert_eq!(a, catalog::ex51());
    }

    #[test]
    fn localization_examples() {
        let b3 = catalog::boolean(3);
        let loc = localization(&b3, &HypSet::from_sorted(vec![0])).unwrap();
        assert_eq!(loc.indices, vec![0]);

        let a = catalog::ex51();
        let loc = localization(&a, &HypSet::from_one_based(&[1, 2, 4])).unwrap();
        // x1, x2, x4, x1+x2+x4
        assert_eq!(loc.indices, vec![0, 1, 3, 7]);
        assert!(matches!(
            localization(&a, &HypSet::from_sorted(vec![11])),
            Err(Error::InvalidIndex { .. })
        ));
    }

    #[test]
    fn restriction_examples() {
        let r = restriction(&catalog::boolean(3), &HypSet::from_sorted(vec![0])).unwrap();
        assert_eq!(r.restricted.dim(), 2);
        assert_eq!(r.restricted.len(), 2);
        assert_eq!(r.restricted.rank(), 2);
        assert!(r.is_injective());

        // braid(4) on x1 = x2: x1-x3 and x2-x3 merge, as do x1-x4 and x2-x4.
        let b4 = catalog::braid(4);
        let r = restriction(&b4, &HypSet::from_sorted(vec![0])).unwrap();
        assert_eq!(r.restricted.len(), 3);
        assert_eq!(r.trace[1], r.trace[3]);
        assert_eq!(r.trace[2], r.trace[4]);
        assert!(!r.is_injective());

        let full = restriction(&b4, &b4.all()).unwrap();
        assert!(full.restricted.is_empty());
        assert_eq!(full.restricted.dim(), 1);
    }

    #[test]
    fn essentialize_examples() {
        let b = catalog::boolean(3);
        assert_eq!(essentialize(&b).arrangement, b);
        let e = essentialize(&catalog::braid(3)).arrangement;
        assert_eq!(e.dim(), 2);
        assert_eq!(e.len(), 3);
        assert!(e.is_essential());
        let e = essentialize(&Arrangement::empty(4)).arrangement;
        assert_eq!(e.dim(), 0);
        assert!(e.is_empty());
    }

    #[test]
    fn hypset_ops() {
        let a: HypSet = [3, 1, 2].into_iter().collect();
        let b: HypSet = [1, 2].into_iter().collect();
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.to_string(), "{2,3,4}");
        assert_eq!(a.difference(&b).as_slice(), &[3]);
    }
}
