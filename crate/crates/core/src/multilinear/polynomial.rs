use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::basis::assignment_mask;
use super::Monomial;

/// Polynomial over 0/1 variables `q1..qn` with degree at most one per
/// variable.
///
/// Terms are kept sorted in basis column order and zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearPolynomial<T> {
    variable_count: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> MultilinearPolynomial<T> {
    pub fn zero(variable_count: usize) -> Self {
        Self {
            variable_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variable_count: usize, value: T) -> Self {
        Self::zero(variable_count).with_term(Monomial::ONE, value)
    }

    /// The polynomial `q_index`.
    pub fn var(variable_count: usize, index: usize) -> Self {
        assert!(
            index >= 1 && index <= variable_count,
            "q{index} outside 1..={variable_count}"
        );
        Self::zero(variable_count).with_term(Monomial::var(index), T::one())
    }

    /// Sum of `coeff * monomial` over `terms`; repeated monomials accumulate.
    pub fn from_terms(variable_count: usize, terms: impl IntoIterator<Item = (Monomial, T)>) -> Result<Self> {
        let mut p = Self::zero(variable_count);
        for (m, c) in terms {
            if m.max_var() > variable_count {
                return Err(Error::Dimension {
                    expected: variable_count,
                    got: m.max_var(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Build from a full coefficient vector in [`Monomial::all`] order.
    pub fn from_coefficients(variable_count: usize, coeffs: &[T]) -> Self {
        let columns = Monomial::all(variable_count);
        assert_eq!(columns.len(), coeffs.len(), "coefficient vector length");
        let mut p = Self::zero(variable_count);
        for (m, c) in columns.into_iter().zip(coeffs) {
            p.add_term(m, c.clone());
        }
        p
    }

    fn with_term(mut self, m: Monomial, c: T) -> Self {
        self.add_term(m, c);
        self
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(prev) => {
                let sum = prev + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &T)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: Monomial) -> T {
        self.terms.get(&m).cloned().unwrap_or_else(T::zero)
    }

    /// Highest monomial degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Full coefficient vector in basis column order over `variable_count`
    /// variables.
    pub fn coefficient_vector(&self) -> Vec<T> {
        Monomial::all(self.variable_count)
            .into_iter()
            .map(|m| self.coefficient(m))
            .collect()
    }

    /// Same polynomial viewed over `n ≥ variable_count` variables.
    pub fn with_variable_count(&self, n: usize) -> Self {
        assert!(n >= self.variable_count, "cannot drop variables");
        Self {
            variable_count: n,
            terms: self.terms.clone(),
        }
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<T> {
        if assignment.len() != self.variable_count {
            return Err(Error::Dimension {
                expected: self.variable_count,
                got: assignment.len(),
            });
        }
        Ok(self.evaluate_mask(assignment_mask(assignment)))
    }

    /// Evaluate at a variable mask (bit `i - 1` = `q_i`).
    pub fn evaluate_mask(&self, mask: u64) -> T {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_satisfied_by(mask))
            .fold(T::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.with_variable_count(self.variable_count.max(other.variable_count));
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, factor: &T) -> Self {
        if factor.is_zero() {
            return Self::zero(self.variable_count);
        }
        Self {
            variable_count: self.variable_count,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// Product with `q_i · q_i` reduced to `q_i`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.variable_count.max(other.variable_count));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(*mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Add for &MultilinearPolynomial<T> {
    type Output = MultilinearPolynomial<T>;
    fn add(self, rhs: Self) -> Self::Output {
        MultilinearPolynomial::add(self, rhs)
    }
}

impl<T: Scalar> Sub for &MultilinearPolynomial<T> {
    type Output = MultilinearPolynomial<T>;
    fn sub(self, rhs: Self) -> Self::Output {
        MultilinearPolynomial::sub(self, rhs)
    }
}

impl<T: Scalar> Mul for &MultilinearPolynomial<T> {
    type Output = MultilinearPolynomial<T>;
    fn mul(self, rhs: Self) -> Self::Output {
        MultilinearPolynomial::mul(self, rhs)
    }
}

impl<T: Scalar> Neg for &MultilinearPolynomial<T> {
    type Output = MultilinearPolynomial<T>;
    fn neg(self) -> Self::Output {
        self.scale(&-T::one())
    }
}

/// Canonical text form, e.g. `1 - 2*q1 - q2 + 2*q1*q2`.
impl<T: Scalar + fmt::Display> fmt::Display for MultilinearPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if m.is_constant() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}
