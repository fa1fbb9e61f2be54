//! Small systems used across the test suite and handy for examples.

use crate::gram::GramMatrix;
use crate::scalar::Scalar;
use crate::system::RootSystem;

fn build(rows: Vec<Vec<Scalar>>, relations: Vec<Vec<Scalar>>) -> RootSystem {
    RootSystem::realize(GramMatrix::new(rows).unwrap(), relations).unwrap()
}

fn r(num: i64, den: i64) -> Scalar {
    Scalar::from_ratio(num, den)
}

/// A2: finite, no limit roots.
pub fn fin3() -> RootSystem {
    build(
        vec![vec![r(1, 1), r(-1, 2)], vec![r(-1, 2), r(1, 1)]],
        vec![],
    )
}

/// Affine dihedral: single limit root at the radical direction.
pub fn aff2() -> RootSystem {
    build(
        vec![vec![r(1, 1), r(-1, 1)], vec![r(-1, 1), r(1, 1)]],
        vec![],
    )
}

/// Indefinite dihedral with off-diagonal -3/2: two limit roots.
pub fn d15() -> RootSystem {
    build(
        vec![vec![r(1, 1), r(-3, 2)], vec![r(-3, 2), r(1, 1)]],
        vec![],
    )
}

/// Rank-3 universal system, all off-diagonal entries -2.
pub fn u3() -> RootSystem {
    let m = || r(-2, 1);
    build(
        vec![
            vec![r(1, 1), m(), m()],
            vec![m(), r(1, 1), m()],
            vec![m(), m(), r(1, 1)],
        ],
        vec![],
    )
}

/// Affine A2: rank 3, all bonds of order 3.
pub fn a2aff() -> RootSystem {
    let m = || r(-1, 2);
    build(
        vec![
            vec![r(1, 1), m(), m()],
            vec![m(), r(1, 1), m()],
            vec![m(), m(), r(1, 1)],
        ],
        vec![],
    )
}

/// Hyperbolic triangle group (3,3,4); one irrational Gram entry.
pub fn h334() -> RootSystem {
    let s = Scalar::Float(-(2f64.sqrt()) / 2.0);
    build(
        vec![
            vec![r(1, 1), r(-1, 2), r(-1, 2)],
            vec![r(-1, 2), r(1, 1), s.clone()],
            vec![r(-1, 2), s, r(1, 1)],
        ],
        vec![],
    )
}

/// Rank 4 with a linear dependence delta = alpha - beta + gamma;
/// ambient dimension 3.
pub fn quad() -> RootSystem {
    let row = [r(1, 1), r(-1, 1), r(-3, 1), r(-1, 1)];
    let rows = (0..4)
        .map(|i| (0..4).map(|j| row[(4 + j - i) % 4].clone()).collect())
        .collect();
    build(rows, vec![vec![r(1, 1), r(-1, 1), r(1, 1), r(-1, 1)]])
}
