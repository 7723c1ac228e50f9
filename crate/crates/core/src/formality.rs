//! Relation spaces `F(A)`, `F_2(A)`, the map `pi_2`, and the maps between
//! relation spaces induced by restricting to a flat.
//!
//! A relation is a coefficient vector `c` indexed by hyperplanes with
//! `sum_H c_H alpha_H = 0`, where `alpha_H` is the normalized normal of `H`.

use num_traits::Zero;

use crate::arrangement::{restrict_form, restriction, Arrangement, HypSet, Restriction};
use crate::error::{Error, Result};
use crate::lattice::rank2_flats;
use crate::linalg::{kernel_basis, Matrix, Scalar, Subspace};

/// The kernel of `e_H -> alpha_H`, or a subspace of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpace {
    pub space: Subspace,
}

impl RelationSpace {
    pub fn ambient(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &Matrix {
        self.space.basis()
    }
}

/// Number of nonzero coefficients.
pub fn relation_length(v: &[Scalar]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// `F(A)`.
pub fn relation_space(a: &Arrangement) -> RelationSpace {
    relation_space_on(a, &a.all())
}

/// `i_X(F(A_X))` for `A_X` the sub-arrangement on `set`: relations supported
/// on `set`, written in the coordinates of the whole arrangement.
pub fn relation_space_on(a: &Arrangement, set: &HypSet) -> RelationSpace {
    let n = a.len();
    let local = kernel_basis(&a.normal_matrix(set).transpose());
    let rows = local
        .basis()
        .row_iter()
        .map(|row| {
            let mut v = vec![Scalar::zero(); n];
            for (c, h) in row.iter().zip(set.iter()) {
                v[h] = c.clone();
            }
            v
        })
        .collect();
    RelationSpace {
        space: Subspace::span(n, rows).expect("rows have the ambient length"),
    }
}

/// The matrix of `pi_2`: one block of rows per nontrivial rank-2 flat.
#[derive(Clone, Debug)]
pub struct Pi2Data {
    /// Nontrivial rank-2 flats, lexicographic.
    pub flats: Vec<HypSet>,
    pub matrix: Matrix,
    /// Index into `flats` for each row of `matrix`.
    pub row_flat: Vec<usize>,
    pub rank: usize,
}

impl Pi2Data {
    /// `F_2(A)`, the row space of the matrix.
    pub fn image(&self) -> Subspace {
        Subspace::row_space(&self.matrix)
    }
}

pub fn pi2(a: &Arrangement) -> Pi2Data {
    let flats: Vec<HypSet> = rank2_flats(a).into_iter().filter(|f| f.len() > 2).collect();
    let mut matrix = Matrix::zeros(0, a.len());
    let mut row_flat = Vec::new();
    for (fi, f) in flats.iter().enumerate() {
        let local = relation_space_on(a, f);
        for row in local.basis().row_iter() {
            matrix.push_row(row).expect("ambient length");
            row_flat.push(fi);
        }
    }
    let rank = matrix.rank();
    Pi2Data {
        flats,
        matrix,
        row_flat,
        rank,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalityCertificate {
    /// `F_2(A) = F(A)`, with the common basis.
    Formal { basis: Subspace },
    /// A relation in `F(A)` outside `F_2(A)`.
    Witness { relation: Vec<Scalar> },
}

#[derive(Clone, Debug)]
pub struct FormalityResult {
    pub formal: bool,
    pub dim_f: usize,
    pub dim_f2: usize,
    pub certificate: FormalityCertificate,
}

pub fn is_formal(a: &Arrangement) -> FormalityResult {
    let f = relation_space(a);
    let p = pi2(a);
    let f2 = p.image();
    if f2.dim() == f.dim() {
        return FormalityResult {
            formal: true,
            dim_f: f.dim(),
            dim_f2: f2.dim(),
            certificate: FormalityCertificate::Formal { basis: f.space },
        };
    }
    let relation = f
        .basis()
        .row_iter()
        .find(|row| !f2.contains(row).expect("ambient length"))
        .expect("F2 is a proper subspace of F")
        .to_vec();
    FormalityResult {
        formal: false,
        dim_f: f.dim(),
        dim_f2: f2.dim(),
        certificate: FormalityCertificate::Witness { relation },
    }
}

/// Outcome of the restriction-map checks. Each field is a theorem, so a
/// `false` means a bug.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapChecks {
    pub psi1_surjective: bool,
    pub diagram_commutes: bool,
    pub psi1_tilde_surjective: bool,
    pub image_containment: bool,
}

impl MapChecks {
    pub fn all_hold(&self) -> bool {
        self.psi1_surjective
            && self.diagram_commutes
            && self.psi1_tilde_surjective
            && self.image_containment
    }
}

#[derive(Clone, Debug)]
pub struct RestrictionMaps {
    pub restriction: Restriction,
    /// `K(A) -> K(A^Z)` in the coordinates `c_H alpha_H`, `c_K alpha_K`;
    /// shape `|A^Z| x |A|`.
    pub psi1: Matrix,
    /// `F(A) -> F(A^Z)` in the RREF bases of both relation spaces;
    /// shape `dim F(A^Z) x dim F(A)`.
    pub psi1_tilde: Matrix,
    pub checks: MapChecks,
}

/// Builds `psi_1` and the induced map on relation spaces for the flat `z`.
pub fn restriction_relation_maps(a: &Arrangement, z: &HypSet) -> Result<RestrictionMaps> {
    a.check_indices(z)?;
    if !a.is_closed(z) {
        return Err(Error::NotAFlat);
    }
    let res = restriction(a, z)?;
    let target = &res.restricted;
    let (n, m) = (a.len(), target.len());

    let mut psi1 = Matrix::zeros(m, n);
    for (h, t) in res.trace.iter().enumerate() {
        let Some(k) = *t else { continue };
        let image = restrict_form(a.normal(h), &res.basis);
        let normal_k = target.normal(k);
        let p = normal_k
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero normal");
        let lambda = &image[p] / &normal_k[p];
        if image.iter().zip(normal_k).any(|(x, y)| *x != &lambda * y) {
            return Err(Error::Invariant(
                "restricted form is not a multiple of its trace".into(),
            ));
        }
        psi1.set(k, h, lambda);
    }

    let psi1_surjective = psi1.rank() == m;

    // pi_1^Z . psi_1 = res . pi_1, checked on the basis e_H.
    let diagram_commutes = (0..n).all(|h| {
        let mut lhs = vec![Scalar::zero(); res.basis.rows()];
        for k in 0..m {
            let c = psi1.get(k, h);
            if c.is_zero() {
                continue;
            }
            for (x, y) in lhs.iter_mut().zip(target.normal(k)) {
                *x += c * y;
            }
        }
        lhs == restrict_form(a.normal(h), &res.basis)
    });

    let f = relation_space(a);
    let fz = relation_space(target);
    let mut psi1_tilde = Matrix::zeros(fz.dim(), f.dim());
    for (col, v) in f.basis().row_iter().enumerate() {
        let w = psi1.mul_vec(v)?;
        let coords = fz
            .space
            .coordinates(&w)?
            .ok_or_else(|| Error::Invariant("psi_1 does not map F(A) into F(A^Z)".into()))?;
        for (row, c) in coords.into_iter().enumerate() {
            psi1_tilde.set(row, col, c);
        }
    }
    let psi1_tilde_surjective = psi1_tilde.rank() == fz.dim();

    let f2z = pi2(target).image();
    let mut image_containment = true;
    for row in pi2(a).matrix.row_iter() {
        if !f2z.contains(&psi1.mul_vec(row)?)? {
            image_containment = false;
            break;
        }
    }

    Ok(RestrictionMaps {
        restriction: res,
        psi1,
        psi1_tilde,
        checks: MapChecks {
            psi1_surjective,
            diagram_commutes,
            psi1_tilde_surjective,
            image_containment,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::qv;

    #[test]
    fn relation_space_dims() {
        assert_eq!(relation_space(&catalog::boolean(4)).dim(), 0);
        assert_eq!(relation_space(&catalog::ex51()).dim(), 6);
        assert_eq!(relation_space(&catalog::kn(3)).dim(), 3);
    }

    #[test]
    fn relations_annihilate_forms() {
        let a = catalog::ex51();
        let f = relation_space(&a);
        let forms = a.normal_matrix(&a.all()).transpose();
        for row in f.basis().row_iter() {
            assert!(forms.mul_vec(row).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn boolean_pi2_is_empty() {
        let p = pi2(&catalog::boolean(4));
        assert_eq!(p.matrix.rows(), 0);
        assert_eq!(p.rank, 0);
        assert!(is_formal(&catalog::boolean(4)).formal);
    }

    #[test]
    fn ex51_localization_witness() {
        let r = is_formal(&catalog::ex51_localization());
        assert!(!r.formal);
        let FormalityCertificate::Witness { relation } = r.certificate else {
            panic!("expected witness");
        };
        // x1 + x2 + x4 - (x1+x2+x4)
        assert_eq!(relation, qv(&[1, 1, 1, -1]));
        assert_eq!(relation_length(&relation), 4);
    }

    #[test]
    fn rank_two_is_formal() {
        let a =
            Arrangement::from_int_rows(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2], &[1, 3]]).unwrap();
        assert!(is_formal(&a).formal);
    }

    #[test]
    fn boolean_restriction_maps_trivial() {
        let maps =
            restriction_relation_maps(&catalog::boolean(3), &HypSet::from_sorted(vec![0])).unwrap();
        assert_eq!(maps.psi1_tilde.rows(), 0);
        assert_eq!(maps.psi1_tilde.cols(), 0);
        assert!(maps.checks.all_hold());
    }

    #[test]
    fn center_restriction_maps_are_zero() {
        let a = catalog::braid(4);
        let maps = restriction_relation_maps(&a, &a.all()).unwrap();
        assert!(maps.restriction.restricted.is_empty());
        assert_eq!(maps.psi1.rows(), 0);
        assert_eq!(maps.psi1_tilde.rows(), 0);
        assert!(maps.checks.all_hold());
    }

    #[test]
    fn non_flat_is_rejected() {
        let a = catalog::ex51();
        assert!(matches!(
            restriction_relation_maps(&a, &HypSet::from_sorted(vec![0, 2])),
            Err(Error::NotAFlat)
        ));
    }
}
