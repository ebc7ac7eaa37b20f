use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};
use crate::scalar::Field;

use super::{Monomial, MultilinearPolynomial};

/// Upper bound on `n` for state tables and basis matrices.
pub const MAX_TABLE_QUBITS: usize = 20;
/// Upper bound on `n` for dense exact elimination (a 2ⁿ×2ⁿ system).
pub const MAX_SOLVE_QUBITS: usize = 10;

fn check_qubits(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n == 0 || n > limit {
        return Err(Error::ResourceLimit {
            what,
            requested: n,
            limit,
        });
    }
    Ok(())
}

/// Convert a bit assignment (`bits[0]` is `q1`) into a variable mask.
pub fn assignment_mask(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Variable mask of the `row`-th computational basis state of `n` qubits,
/// reading `row` in binary with `q1` as the most significant bit.
pub fn row_mask(n: usize, row: u64) -> u64 {
    (1..=n)
        .filter(|i| (row >> (n - i)) & 1 == 1)
        .fold(0, |acc, i| acc | 1 << (i - 1))
}

/// The 2ⁿ computational basis states of `n` qubits in binary counting order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateTable {
    qubit_count: usize,
    rows: Vec<u64>,
}

impl StateTable {
    pub fn new(n: usize) -> Result<Self> {
        check_qubits(n, MAX_TABLE_QUBITS, "state table qubits")?;
        let rows = (0..1u64 << n).map(|r| row_mask(n, r)).collect();
        Ok(Self { qubit_count: n, rows })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Variable mask of row `r` (bit `i - 1` = `q_i`).
    pub fn mask(&self, r: usize) -> u64 {
        self.rows[r]
    }

    /// Row `r` as bits `q1..qn`.
    pub fn bits(&self, r: usize) -> Vec<bool> {
        let mask = self.rows[r];
        (0..self.qubit_count).map(|i| mask & (1 << i) != 0).collect()
    }

    pub fn masks(&self) -> &[u64] {
        &self.rows
    }
}

pub fn state_table(n: usize) -> Result<StateTable> {
    StateTable::new(n)
}

/// The 2ⁿ×2ⁿ 0/1 matrix of every monomial evaluated at every basis state.
///
/// Entries are computed on demand; rows follow [`StateTable`], columns follow
/// [`Monomial::all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMatrix {
    states: StateTable,
    columns: Vec<Monomial>,
}

impl BasisMatrix {
    pub fn new(n: usize) -> Result<Self> {
        let states = StateTable::new(n)?;
        Ok(Self {
            states,
            columns: Monomial::all(n),
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.states.qubit_count()
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column_order(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn states(&self) -> &StateTable {
        &self.states
    }

    pub fn entry(&self, r: usize, c: usize) -> u8 {
        u8::from(self.columns[c].is_satisfied_by(self.states.mask(r)))
    }

    pub fn row(&self, r: usize) -> Vec<u8> {
        (0..self.dim()).map(|c| self.entry(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.dim()).map(|r| self.row(r)).collect()
    }

    /// Materialise as a dense matrix over `T`; limited to
    /// [`MAX_SOLVE_QUBITS`].
    pub fn to_dense<T: Field>(&self) -> Result<DenseMatrix<T>> {
        check_qubits(self.qubit_count(), MAX_SOLVE_QUBITS, "dense basis qubits")?;
        Ok(DenseMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            if self.entry(r, c) == 1 {
                T::one()
            } else {
                T::zero()
            }
        }))
    }
}

pub fn basis_matrix(n: usize) -> Result<BasisMatrix> {
    BasisMatrix::new(n)
}

/// Coefficients `c` with `B_n · c = values`, in basis column order.
pub fn solve_coefficients<T: Field>(n: usize, values: &[T]) -> Result<Vec<T>> {
    check_qubits(n, MAX_SOLVE_QUBITS, "solver qubits")?;
    let expected = 1usize << n;
    if values.len() != expected {
        return Err(Error::Dimension {
            expected,
            got: values.len(),
        });
    }
    let b = BasisMatrix::new(n)?.to_dense::<T>()?;
    linalg::solve(&b, values)
}

/// The unique multilinear polynomial taking `values[r]` at state-table row `r`.
pub fn poly_from_values<T: Field>(n: usize, values: &[T]) -> Result<MultilinearPolynomial<T>> {
    let coeffs = solve_coefficients(n, values)?;
    Ok(MultilinearPolynomial::from_coefficients(n, &coeffs))
}

/// Eliminates `B_n` once and reuses `B_n⁻¹` for many right-hand sides.
#[derive(Debug, Clone)]
pub struct CoefficientSolver<T> {
    qubit_count: usize,
    inverse: DenseMatrix<T>,
    determinant: T,
}

impl<T: Field> CoefficientSolver<T> {
    pub fn new(n: usize) -> Result<Self> {
        check_qubits(n, MAX_SOLVE_QUBITS, "solver qubits")?;
        let b = BasisMatrix::new(n)?.to_dense::<T>()?;
        let red = linalg::invert(&b)?;
        Ok(Self {
            qubit_count: n,
            inverse: red.solution,
            determinant: red.determinant,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn inverse(&self) -> &DenseMatrix<T> {
        &self.inverse
    }

    pub fn determinant(&self) -> &T {
        &self.determinant
    }

    pub fn solve(&self, values: &[T]) -> Result<Vec<T>> {
        self.inverse.mul_vec(values)
    }

    pub fn poly_from_values(&self, values: &[T]) -> Result<MultilinearPolynomial<T>> {
        let coeffs = self.solve(values)?;
        Ok(MultilinearPolynomial::from_coefficients(self.qubit_count, &coeffs))
    }
}
