//! Exact feasibility of linear systems over the rationals (phase-one simplex,
//! Bland's rule).

use num_traits::{One, Signed, Zero};

use crate::linalg::Scalar;

/// A row `coeffs . x (=|>=) rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub rhs: Scalar,
    pub equality: bool,
}

impl Constraint {
    pub fn eq(coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        Constraint {
            coeffs,
            rhs,
            equality: true,
        }
    }

    pub fn ge(coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        Constraint {
            coeffs,
            rhs,
            equality: false,
        }
    }

    pub fn holds(&self, x: &[Scalar]) -> bool {
        let lhs: Scalar = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        if self.equality {
            lhs == self.rhs
        } else {
            lhs >= self.rhs
        }
    }
}

/// A point satisfying every constraint, with free variables in `Q^dim`.
pub fn feasible_point(dim: usize, constraints: &[Constraint]) -> Option<Vec<Scalar>> {
    let m = constraints.len();
    let slacks: Vec<usize> = (0..m).filter(|&i| !constraints[i].equality).collect();
    // Columns: u (dim), v (dim), slacks, artificials, rhs. x = u - v.
    let n_struct = 2 * dim + slacks.len();
    let cols = n_struct + m + 1;
    let rhs = cols - 1;
    let mut t = vec![vec![Scalar::zero(); cols]; m + 1];
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), dim, "constraint length");
        let row = &mut t[i];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[dim + j] = -a;
        }
        if let Some(s) = slacks.iter().position(|&k| k == i) {
            row[2 * dim + s] = -Scalar::one();
        }
        row[rhs] = c.rhs.clone();
        if row[rhs].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        row[n_struct + i] = Scalar::one();
    }
    // Objective row: the sum of the artificials, written over the nonbasics.
    let (constraint_rows, objective) = t.split_at_mut(m);
    for (j, cell) in objective[0].iter_mut().enumerate() {
        if !(n_struct..n_struct + m).contains(&j) {
            *cell = constraint_rows.iter().map(|row| row[j].clone()).sum();
        }
    }
    let mut basis: Vec<usize> = (n_struct..n_struct + m).collect();

    while let Some(enter) = (0..n_struct).find(|&j| t[m][j].is_positive()) {
        let mut leave: Option<(usize, Scalar)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below by zero.
        let (p, _) = leave.expect("phase one is bounded");
        pivot(&mut t, p, enter);
        basis[p] = enter;
    }
    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![Scalar::zero(); dim];
    for (i, &b) in basis.iter().enumerate() {
        if b < dim {
            x[b] += &t[i][rhs];
        } else if b < 2 * dim {
            x[b - dim] -= &t[i][rhs];
        }
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Some(x)
}

fn pivot(t: &mut [Vec<Scalar>], p: usize, q: usize) {
    let inv = Scalar::one() / &t[p][q];
    for x in t[p].iter_mut() {
        *x *= &inv;
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// A point of the open cone `{x : eq . x = 0, g . x > 0}`; strict rows are
/// scaled to `g . x >= 1`, which loses nothing for a cone.
pub fn cone_point(
    dim: usize,
    equalities: &[Vec<Scalar>],
    strict: &[Vec<Scalar>],
) -> Option<Vec<Scalar>> {
    let mut cs: Vec<Constraint> = equalities
        .iter()
        .map(|e| Constraint::eq(e.clone(), Scalar::zero()))
        .collect();
    cs.extend(
        strict
            .iter()
            .map(|g| Constraint::ge(g.clone(), Scalar::one())),
    );
    feasible_point(dim, &cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qv};

    #[test]
    fn box_feasible() {
        let cs = vec![
            Constraint::ge(qv(&[1, 0]), q(2)),
            Constraint::ge(qv(&[-1, 0]), q(-5)),
            Constraint::eq(qv(&[1, 1]), q(0)),
        ];
        let x = feasible_point(2, &cs).unwrap();
        assert!(cs.iter().all(|c| c.holds(&x)));
    }

    #[test]
    fn contradictory() {
        let cs = vec![
            Constraint::ge(qv(&[1, 1]), q(1)),
            Constraint::ge(qv(&[-1, -1]), q(1)),
        ];
        assert!(feasible_point(2, &cs).is_none());
    }

    #[test]
    fn cones() {
        // x > 0, y > 0, x - y > 0
        let p = cone_point(2, &[], &[qv(&[1, 0]), qv(&[0, 1]), qv(&[1, -1])]).unwrap();
        assert!(p[0] > p[1] && p[1] > q(0));
        // x > y, y > z, z > x
        assert!(cone_point(3, &[], &[qv(&[1, -1, 0]), qv(&[0, 1, -1]), qv(&[-1, 0, 1])]).is_none());
        // on x = y with x + y > 0
        let p = cone_point(2, &[qv(&[1, -1])], &[qv(&[1, 1])]).unwrap();
        assert_eq!(p[0], p[1]);
    }

    #[test]
    fn empty_system() {
        assert_eq!(feasible_point(3, &[]), Some(vec![q(0); 3]));
    }
}
