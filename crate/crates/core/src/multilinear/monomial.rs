use std::cmp::Ordering;
use std::fmt;

/// Largest variable index a [`Monomial`] can hold.
pub const MAX_VARIABLES: usize = 64;

/// Product of distinct qubit variables `q_i`, stored as a bit set.
///
/// Bit `i - 1` marks `q_i`. The empty set is the constant term. Because a set
/// cannot hold an index twice, `q_i² = q_i` holds by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// The single variable `q_index` (1-based).
    pub fn var(index: usize) -> Self {
        assert!(
            (1..=MAX_VARIABLES).contains(&index),
            "variable index {index} out of range"
        );
        Monomial(1 << (index - 1))
    }

    pub fn from_vars(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(Self::ONE, |acc, i| acc.mul(Self::var(i)))
    }

    pub fn from_mask(mask: u64) -> Self {
        Monomial(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_constant(self) -> bool {
        self.0 == 0
    }

    /// Largest variable index present, 0 for the constant.
    pub fn max_var(self) -> usize {
        MAX_VARIABLES - self.0.leading_zeros() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=MAX_VARIABLES).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    /// Sorted 1-based variable indices.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=MAX_VARIABLES).filter(move |i| mask & (1 << (i - 1)) != 0)
    }

    /// Multilinear product: the union of the variable sets.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        Monomial(self.0 | other.0)
    }

    /// Value at an assignment given as a variable mask (bit `i - 1` = `q_i`).
    pub fn is_satisfied_by(self, assignment: u64) -> bool {
        self.0 & assignment == self.0
    }

    /// All monomials over `n` variables in basis column order: by degree, then
    /// lexicographically by sorted index list.
    pub fn all(n: usize) -> Vec<Monomial> {
        assert!(n <= 30, "too many variables to list all monomials");
        let mut all: Vec<Monomial> = (0..1u64 << n).map(Monomial).collect();
        all.sort();
        all
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.vars().cmp(other.vars()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str("1");
        }
        let names: Vec<String> = self.vars().map(|i| format!("q{i}")).collect();
        f.write_str(&names.join("*"))
    }
}
