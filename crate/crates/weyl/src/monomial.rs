//! Exponent vectors for normally ordered operator monomials.

use std::cmp::Ordering;

/// A normally ordered operator monomial of a fixed arity `n`:
/// `n` multiplication-generator exponents followed by `n` derivative
/// exponents. `Monomial { gens: q, ders: p }` denotes the operator
/// `x^q ∂^p` — differentiate `p_k` times in every variable `k`, then
/// multiply by the product of the `x_k^{q_k}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    gens: Vec<u32>,
    ders: Vec<u32>,
}

impl Monomial {
    /// Panics if the two vectors differ in length or are empty.
    pub fn new(gens: Vec<u32>, ders: Vec<u32>) -> Self {
        assert!(!gens.is_empty(), "arity must be positive");
        assert_eq!(gens.len(), ders.len(), "exponent vectors must have equal length");
        Monomial { gens, ders }
    }

    /// The identity monomial (all exponents zero).
    pub fn constant(arity: usize) -> Self {
        Monomial::new(vec![0; arity], vec![0; arity])
    }

    /// `x_k` as a monomial.
    pub fn generator(arity: usize, k: usize) -> Self {
        assert!(k < arity);
        let mut m = Monomial::constant(arity);
        m.gens[k] = 1;
        m
    }

    /// `∂_k` as a monomial.
    pub fn derivative(arity: usize, k: usize) -> Self {
        assert!(k < arity);
        let mut m = Monomial::constant(arity);
        m.ders[k] = 1;
        m
    }

    pub fn arity(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_exp(&self, k: usize) -> u32 {
        self.gens[k]
    }

    pub fn der_exp(&self, k: usize) -> u32 {
        self.ders[k]
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn ders(&self) -> &[u32] {
        &self.ders
    }

    /// Total degree: the sum of all `2n` exponents.
    pub fn degree(&self) -> u32 {
        self.gens.iter().chain(&self.ders).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.gens.iter().chain(&self.ders).all(|&e| e == 0)
    }

    /// The full exponent vector, generators first.
    pub fn exponents(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(2 * self.gens.len());
        v.extend_from_slice(&self.gens);
        v.extend_from_slice(&self.ders);
        v
    }
}

/// Graded lexicographic order on the full exponent vector: ascending
/// total degree, ties broken so that the term with the larger leading
/// exponent comes first (`x` before `∂`, `x²∂` before `x∂²`). This is the
/// canonical storage and printing order; term layout never depends on
/// construction history.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.gens.cmp(&self.gens))
            .then_with(|| other.ders.cmp(&self.ders))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(gens: &[u32], ders: &[u32]) -> Monomial {
        Monomial::new(gens.to_vec(), ders.to_vec())
    }

    #[test]
    fn equality_requires_both_vectors() {
        assert_eq!(m(&[1], &[2]), m(&[1], &[2]));
        assert_ne!(m(&[1], &[2]), m(&[2], &[1]));
        assert_ne!(m(&[1, 0], &[2, 0]), m(&[1], &[2]));
    }

    #[test]
    fn graded_lex_sorts_by_degree_first() {
        // the three terms of 7d + 12xd^2 + 4x^2d^3 in print order
        let a = m(&[0], &[1]);
        let b = m(&[1], &[2]);
        let c = m(&[2], &[3]);
        assert!(a < b && b < c);
        // degree ties: the generator-heavy term comes first
        assert!(m(&[2], &[1]) < m(&[1], &[2]));
        assert!(m(&[1], &[0]) < m(&[0], &[1]));
        assert!(m(&[1, 0], &[0, 0]) < m(&[0, 1], &[0, 0]));
    }

    #[test]
    fn degree_sums_all_exponents() {
        assert_eq!(m(&[2, 0], &[3, 1]).degree(), 6);
        assert_eq!(Monomial::constant(3).degree(), 0);
        assert!(Monomial::constant(2).is_constant());
    }

    #[test]
    #[should_panic]
    fn rejects_mismatched_lengths() {
        Monomial::new(vec![1, 2], vec![1]);
    }
}
