//! Reference values printed for the two built-in lattices at `d = 1`, used by
//! [`verify_published`](crate::analysis::verify_published).

use crate::lattice::Builtin;
use crate::multilinear::Monomial;
use crate::scalar::rational;
use crate::{Polynomial, Rational};

pub const B3: [[u8; 8]; 8] = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 0, 1, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 1, 0, 1, 0, 0],
    [1, 1, 1, 0, 1, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 1, 1],
];

pub const B2: [[u8; 4]; 4] = [[1, 0, 0, 0], [1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 1]];

/// Printed coefficient vectors as `(numerator, denominator)` pairs.
const CUBIC_C_DA: [(i64, i64); 8] = [(1, 1), (-2, 1), (-1, 1), (0, 1), (2, 1), (0, 1), (-1, 1), (2, 1)];
const CUBIC_C_DB: [(i64, i64); 8] = [(0, 1), (0, 1), (1, 1), (1, 1), (-2, 1), (-2, 1), (-1, 1), (2, 1)];
const FCC_C_DA: [(i64, i64); 4] = [(1, 2), (-1, 1), (-1, 1), (2, 1)];
const FCC_C_DB: [(i64, i64); 4] = [(1, 2), (-1, 1), (0, 1), (0, 1)];

/// Printed in-plane tables at `d = 1`.
const CUBIC_DA: [(i64, i64); 8] = [(1, 1), (1, 1), (0, 1), (-1, 1), (-1, 1), (-1, 1), (0, 1), (1, 1)];
const CUBIC_DB: [(i64, i64); 8] = [(0, 1), (1, 1), (1, 1), (1, 1), (0, 1), (-1, 1), (-1, 1), (-1, 1)];
const FCC_DA: [(i64, i64); 4] = [(1, 2), (-1, 2), (-1, 2), (1, 2)];
const FCC_DB: [(i64, i64); 4] = [(1, 2), (1, 2), (-1, 2), (-1, 2)];

/// Printed polynomial forms: `(variables, numerator, denominator)` per term.
type Term = (&'static [usize], i64, i64);

const CUBIC_DA_PRINTED: &[Term] = &[
    (&[], 1, 1),
    (&[1], -2, 1),
    (&[2], -1, 1),
    (&[1, 2], 2, 1),
    (&[3, 1], -1, 1),
    (&[1, 2, 3], 2, 1),
];
const CUBIC_DB_PRINTED: &[Term] = &[
    (&[2], 1, 1),
    (&[3], 1, 1),
    (&[1, 2], -2, 1),
    (&[2, 3], -2, 1),
    (&[3, 1], -1, 1),
    (&[1, 2, 3], 2, 1),
];
const FCC_DA_PRINTED: &[Term] = &[(&[], 1, 2), (&[1], -1, 1), (&[2], -1, 1), (&[1, 2], 2, 1)];
const FCC_DB_PRINTED: &[Term] = &[(&[], 1, 2), (&[1], -1, 1)];

/// Everything printed for one built-in lattice.
#[derive(Debug, Clone)]
pub struct PublishedLattice {
    pub builtin: Builtin,
    pub basis: Vec<Vec<u8>>,
    pub delta_a: Vec<Rational>,
    pub delta_b: Vec<Rational>,
    pub c_da: Vec<Rational>,
    pub c_db: Vec<Rational>,
    pub printed_da: Polynomial,
    pub printed_db: Polynomial,
    pub per_turn_qubits: usize,
    pub degrees_of_freedom: usize,
    /// Items whose printed form is known not to match its own coefficient
    /// vector.
    pub known_discrepancies: &'static [&'static str],
}

fn vector(values: &[(i64, i64)]) -> Vec<Rational> {
    values.iter().map(|&(n, d)| rational(n, d)).collect()
}

fn printed(n: usize, terms: &[Term]) -> Polynomial {
    Polynomial::from_terms(
        n,
        terms
            .iter()
            .map(|&(vars, num, den)| (Monomial::from_vars(vars.iter().copied()), rational(num, den))),
    )
    .expect("printed terms use declared variables")
}

pub fn published(builtin: Builtin) -> PublishedLattice {
    match builtin {
        Builtin::CubicDiag => PublishedLattice {
            builtin,
            basis: B3.iter().map(|r| r.to_vec()).collect(),
            delta_a: vector(&CUBIC_DA),
            delta_b: vector(&CUBIC_DB),
            c_da: vector(&CUBIC_C_DA),
            c_db: vector(&CUBIC_C_DB),
            printed_da: printed(3, CUBIC_DA_PRINTED),
            printed_db: printed(3, CUBIC_DB_PRINTED),
            per_turn_qubits: 5,
            degrees_of_freedom: 18,
            known_discrepancies: &["printed polynomials"],
        },
        Builtin::Fcc => PublishedLattice {
            builtin,
            basis: B2.iter().map(|r| r.to_vec()).collect(),
            delta_a: vector(&FCC_DA),
            delta_b: vector(&FCC_DB),
            c_da: vector(&FCC_C_DA),
            c_db: vector(&FCC_C_DB),
            printed_da: printed(2, FCC_DA_PRINTED),
            printed_db: printed(2, FCC_DB_PRINTED),
            per_turn_qubits: 4,
            degrees_of_freedom: 12,
            known_discrepancies: &[],
        },
    }
}
