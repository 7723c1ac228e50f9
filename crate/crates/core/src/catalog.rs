//! Built-in arrangements.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{q, Scalar};

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| q((i == j) as i64)).collect()
}

fn pair(n: usize, i: usize, j: usize, sign: i64) -> Vec<Scalar> {
    let mut v = unit(n, i);
    v[j] = q(sign);
    v
}

fn build(dim: usize, normals: Vec<Vec<Scalar>>) -> Arrangement {
    Arrangement::new(dim, normals).expect("builtin normals are distinct and nonzero")
}

/// Coordinate hyperplanes `x_1, ..., x_n`.
pub fn boolean(n: usize) -> Arrangement {
    build(n, (0..n).map(|i| unit(n, i)).collect())
}

/// `x_i - x_j` for `i < j`, in lexicographic order of `(i, j)`.
pub fn braid(n: usize) -> Arrangement {
    let mut normals = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            normals.push(pair(n, i, j, -1));
        }
    }
    build(n, normals)
}

/// Type B_n: `x_i`, then `x_i - x_j` and `x_i + x_j` for each `i < j`.
pub fn bn(n: usize) -> Arrangement {
    let mut normals: Vec<_> = (0..n).map(|i| unit(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            normals.push(pair(n, i, j, -1));
            normals.push(pair(n, i, j, 1));
        }
    }
    build(n, normals)
}

/// `B_n` without the braid hyperplanes: `x_i`, then `x_i + x_j` for `i < j`.
pub fn kn(n: usize) -> Arrangement {
    let mut normals: Vec<_> = (0..n).map(|i| unit(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            normals.push(pair(n, i, j, 1));
        }
    }
    build(n, normals)
}

/// Eleven hyperplanes in dimension 5 that are 4-formal while the
/// restriction to `x_2 = 0` is not 3-formal.
pub fn ex51() -> Arrangement {
    Arrangement::from_int_rows(
        5,
        &[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
            &[1, 0, 1, 0, 0],
            &[1, 0, 1, 0, 1],
            &[1, 1, 0, 1, 0],
            &[1, 1, 0, 1, 1],
            &[1, 1, 1, 0, 1],
            &[1, 1, 1, 1, 1],
        ],
    )
    .expect("valid")
}

/// The restriction of [`ex51`] to `x_2 = 0`, in its own printed coordinates.
pub fn ex51_restriction() -> Arrangement {
    Arrangement::from_int_rows(
        4,
        &[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[1, 0, 1, 0],
            &[1, 0, 1, 1],
            &[1, 1, 0, 0],
            &[1, 1, 0, 1],
            &[1, 1, 1, 1],
        ],
    )
    .expect("valid")
}

/// The localization of [`ex51`] at `x_1 = x_2 = x_4 = 0`.
pub fn ex51_localization() -> Arrangement {
    Arrangement::from_int_rows(
        5,
        &[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0],
            &[1, 1, 0, 1, 0],
        ],
    )
    .expect("valid")
}

pub const NAMES: &[&str] = &[
    "boolean",
    "braid",
    "bn",
    "kn",
    "ex51",
    "ex51_restriction",
    "ex51_localization",
];

pub fn builtin(name: &str, params: &[usize]) -> Result<Arrangement> {
    let invalid = |message: &str| Error::InvalidParams {
        name: name.to_string(),
        message: message.to_string(),
    };
    let one = || -> Result<usize> {
        match params {
            [n] if *n >= 1 => Ok(*n),
            [_] => Err(invalid("n must be at least 1")),
            _ => Err(invalid("expects exactly one parameter n")),
        }
    };
    let none = || -> Result<()> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(invalid("takes no parameters"))
        }
    };
    match name {
        "boolean" => one().map(boolean),
        "braid" => one().map(braid),
        "bn" => one().map(bn),
        "kn" => one().map(kn),
        "ex51" => none().map(|_| ex51()),
        "ex51_restriction" => none().map(|_| ex51_restriction()),
        "ex51_localization" => none().map(|_| ex51_localization()),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

/// Parses `name` or `name:n` (the part after `builtin:`).
pub fn parse_spec(spec: &str) -> Result<Arrangement> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let params = parts
        .map(|p| {
            p.parse::<usize>().map_err(|_| Error::InvalidParams {
                name: name.to_string(),
                message: format!("`{p}` is not a nonnegative integer"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    builtin(name, &params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn sizes() {
        assert_eq!(kn(3).len(), 6);
        assert_eq!(kn(3).dim(), 3);
        assert_eq!(ex51().len(), 11);
        assert_eq!(ex51().dim(), 5);
        assert_eq!(boolean(4).len(), 4);
        assert_eq!(boolean(4).rank(), 4);
        assert_eq!(bn(3).len(), 9);
        assert_eq!(braid(4).len(), 6);
        assert_eq!(braid(4).rank(), 3);
    }

    #[test]
    fn kn_is_bn_minus_braid() {
        for n in 1..=5 {
            let b: HashSet<_> = bn(n).hyperplanes().iter().cloned().collect();
            let a: HashSet<_> = braid(n).hyperplanes().iter().cloned().collect();
            let k: HashSet<_> = kn(n).hyperplanes().iter().cloned().collect();
            assert_eq!(k, &b - &a);
        }
    }

    #[test]
    fn builtin_parsing() {
        assert_eq!(parse_spec("boolean:3").unwrap(), boolean(3));
        assert_eq!(parse_spec("ex51").unwrap(), ex51());
        assert!(matches!(parse_spec("nope"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(
            parse_spec("braid:0"),
            Err(Error::InvalidParams { .. })
        ));
        assert!(matches!(
            parse_spec("braid"),
            Err(Error::InvalidParams { .. })
        ));
        assert!(matches!(
            parse_spec("ex51:2"),
            Err(Error::InvalidParams { .. })
        ));
    }
}
