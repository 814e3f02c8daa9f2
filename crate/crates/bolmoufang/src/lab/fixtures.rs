//! Small Cayley tables with known structural properties, used as ground
//! truth by the claim suites and throughout the tests.

use crate::magma::Magma;

/// Order-6 left alternative loop without two-sided inverses.
pub fn q1() -> Magma {
    Magma::from_rows(&[
        vec![0, 1, 2, 3, 4, 5],
        vec![1, 5, 0, 4, 2, 3],
        vec![2, 4, 5, 0, 3, 1],
        vec![3, 0, 4, 5, 1, 2],
        vec![4, 2, 3, 1, 5, 0],
        vec![5, 3, 1, 2, 0, 4],
    ])
    .expect("fixture table is well-formed")
}

/// Order-6 left, middle, and right nuclear square loop without two-sided
/// inverses.
pub fn q2() -> Magma {
    Magma::from_rows(&[
        vec![0, 1, 2, 3, 4, 5],
        vec![1, 5, 0, 4, 2, 3],
        vec![2, 4, 5, 0, 3, 1],
        vec![3, 0, 4, 5, 1, 2],
        vec![4, 3, 1, 2, 5, 0],
        vec![5, 2, 3, 1, 0, 4],
    ])
    .expect("fixture table is well-formed")
}

/// Order-3 magma with a two-sided neutral and two-sided inverses that
/// satisfies both M3 and M4 yet is not a loop.
pub fn m3m4_not_loop() -> Magma {
    Magma::from_rows(&[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]])
        .expect("fixture table is well-formed")
}

/// Order-3 groupoid (x·y = x−y mod 3) with a right neutral element and
/// two-sided inverses that satisfies the left Bol identity but is not a
/// loop.
pub fn right_neutral_lb_not_loop() -> Magma {
    Magma::from_rows(&[vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]])
        .expect("fixture table is well-formed")
}

/// The projection groupoid x·y = x on two elements: associative, every
/// element a right neutral, left inverses with respect to either, yet not a
/// group.
pub fn projection_table() -> Magma {
    Magma::from_rows(&[vec![0, 0], vec![1, 1]]).expect("fixture table is well-formed")
}
