//! Normal-form elements of the algebra and their ring arithmetic.
//!
//! A [`WeylElement`] is a finitely supported map from [`Monomial`] to
//! [`Coefficient`], always held in normal form: no zero coefficients, all
//! keys of the element's arity, terms stored in graded-lex order. Values
//! are immutable after construction and every operation is a pure function
//! of its inputs, so elements can be shared freely across threads.
//!
//! The term-pair expansion inside [`WeylElement::mul`] is data-parallel.
//! With the `parallel` feature (on by default) large products fan out over
//! rayon; coefficients are exact rationals, so the merged result is
//! bit-identical to the sequential one.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::coefficient::Coefficient;
use crate::error::WeylError;
use crate::kernels::ProductRule;
use crate::monomial::Monomial;

/// Term-pair count above which `mul` switches to the parallel expansion.
#[cfg(feature = "parallel")]
const PARALLEL_PAIR_THRESHOLD: usize = 64;

/// An element of the `n`-th Weyl algebra in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    arity: usize,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl WeylElement {
    /// The zero element: the empty term map.
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        WeylElement { arity, terms: BTreeMap::new() }
    }

    /// The multiplicative identity.
    pub fn one(arity: usize) -> Self {
        WeylElement::scalar(arity, Coefficient::one())
    }

    /// The scalar `c` embedded as `c·1`.
    pub fn scalar(arity: usize, c: Coefficient) -> Self {
        let mut out = WeylElement::zero(arity);
        if !c.is_zero() {
            out.terms.insert(Monomial::constant(arity), c);
        }
        out
    }

    /// The generator `x_k`.
    pub fn generator(arity: usize, k: usize) -> Self {
        WeylElement::monomial(Monomial::generator(arity, k), Coefficient::one())
    }

    /// The derivative `∂_k`.
    pub fn derivative(arity: usize, k: usize) -> Self {
        WeylElement::monomial(Monomial::derivative(arity, k), Coefficient::one())
    }

    /// A single-term element `c·m`.
    pub fn monomial(m: Monomial, c: Coefficient) -> Self {
        let mut out = WeylElement::zero(m.arity());
        if !c.is_zero() {
            out.terms.insert(m, c);
        }
        out
    }

    /// Normalizes a raw term list: sums coefficients of identical
    /// monomials and drops the ones that cancel. Every monomial must have
    /// the stated arity.
    pub fn from_terms(
        arity: usize,
        raw: impl IntoIterator<Item = (Monomial, Coefficient)>,
    ) -> Result<Self, WeylError> {
        let mut out = WeylElement::zero(arity);
        for (m, c) in raw {
            if m.arity() != arity {
                return Err(WeylError::ArityMismatch { left: arity, right: m.arity() });
            }
            out.accumulate(m, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(entry) => {
                *entry = &*entry + &c;
                if entry.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Coefficient> {
        self.terms.get(m)
    }

    /// `Some(c)` when the element is the scalar `c·1` (including zero).
    pub fn as_scalar(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Reconciles the arities of two operands: equal arities pass
    /// through, a scalar promotes to the other side's arity, anything
    /// else is an error.
    fn promote(a: &WeylElement, b: &WeylElement) -> Result<(WeylElement, WeylElement), WeylError> {
        if a.arity == b.arity {
            return Ok((a.clone(), b.clone()));
        }
        if let Some(c) = a.as_scalar() {
            return Ok((WeylElement::scalar(b.arity, c), b.clone()));
        }
        if let Some(c) = b.as_scalar() {
            return Ok((a.clone(), WeylElement::scalar(a.arity, c)));
        }
        Err(WeylError::ArityMismatch { left: a.arity, right: b.arity })
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        let (mut out, rhs) = WeylElement::promote(self, other)?;
        for (m, c) in rhs.terms {
            out.accumulate(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeylElement {
        self.scale(&Coefficient::from_integer(-1))
    }

    /// Scalar multiple. Exact, so scaling by zero yields the zero element.
    pub fn scale(&self, c: &Coefficient) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(self.arity);
        }
        WeylElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// The product under `rule`, dispatching to the parallel expansion for
    /// large term-pair counts when the `parallel` feature is enabled. The
    /// result is identical either way.
    pub fn mul(&self, other: &WeylElement, rule: &ProductRule) -> Result<WeylElement, WeylError> {
        let (a, b) = WeylElement::promote(self, other)?;
        #[cfg(feature = "parallel")]
        if a.terms.len() * b.terms.len() >= PARALLEL_PAIR_THRESHOLD {
            return Ok(mul_parallel_impl(&a, &b, rule));
        }
        Ok(mul_sequential_impl(&a, &b, rule))
    }

    /// The product computed strictly on the calling thread. Timed
    /// benchmark regions use this path.
    pub fn mul_sequential(
        &self,
        other: &WeylElement,
        rule: &ProductRule,
    ) -> Result<WeylElement, WeylError> {
        let (a, b) = WeylElement::promote(self, other)?;
        Ok(mul_sequential_impl(&a, &b, rule))
    }

    /// The product with the term-pair expansion always fanned out over
    /// rayon, regardless of size.
    #[cfg(feature = "parallel")]
    pub fn mul_parallel(
        &self,
        other: &WeylElement,
        rule: &ProductRule,
    ) -> Result<WeylElement, WeylError> {
        let (a, b) = WeylElement::promote(self, other)?;
        Ok(mul_parallel_impl(&a, &b, rule))
    }

    /// `self` raised to a nonnegative power; `k = 0` gives the identity.
    pub fn pow(&self, k: u32, rule: &ProductRule) -> Result<WeylElement, WeylError> {
        let mut out = WeylElement::one(self.arity);
        for _ in 0..k {
            out = out.mul(self, rule)?;
        }
        Ok(out)
    }

    /// Bernstein total degree: the maximum over terms of the sum of all
    /// `2n` exponents. `None` marks the zero element (degree minus
    /// infinity), which keeps the degree additive under multiplication.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Equality of normal forms. Operands of different arities compare
    /// unequal unless both are scalars, which promote.
    pub fn equal(&self, other: &WeylElement) -> bool {
        if self.arity == other.arity {
            return self == other;
        }
        match (self.as_scalar(), other.as_scalar()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

/// `[a, b] = ab − ba`.
pub fn commutator(
    a: &WeylElement,
    b: &WeylElement,
    rule: &ProductRule,
) -> Result<WeylElement, WeylError> {
    a.mul(b, rule)?.sub(&b.mul(a, rule)?)
}

/// An inner derivation `D(g) = gf − fg` for a fixed generator `f`.
/// Application is linear and satisfies the Leibniz law
/// `D(d₁d₂) = d₁D(d₂) + D(d₁)d₂`.
#[derive(Clone, Debug)]
pub struct Derivation {
    generator: WeylElement,
}

impl Derivation {
    pub fn new(generator: WeylElement) -> Self {
        Derivation { generator }
    }

    pub fn generator(&self) -> &WeylElement {
        &self.generator
    }

    pub fn apply(&self, g: &WeylElement, rule: &ProductRule) -> Result<WeylElement, WeylError> {
        commutator(g, &self.generator, rule)
    }
}

/// A seeded random element with at most `n_terms` terms (collisions
/// merge), exponents in `0..=max_exp`, and small nonzero integer
/// coefficients. The same seed always produces the same element.
pub fn random_element(seed: u64, n_terms: usize, max_exp: u32, arity: usize) -> WeylElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let gens: Vec<u32> = (0..arity).map(|_| rng.random_range(0..=max_exp)).collect();
        let ders: Vec<u32> = (0..arity).map(|_| rng.random_range(0..=max_exp)).collect();
        let magnitude = rng.random_range(1..=9i64);
        let coeff = if rng.random_bool(0.5) { magnitude } else { -magnitude };
        raw.push((Monomial::new(gens, ders), Coefficient::from_integer(coeff)));
    }
    WeylElement::from_terms(arity, raw).expect("arities are uniform")
}

fn expand_pair(
    arity: usize,
    m1: &Monomial,
    c1: &Coefficient,
    m2: &Monomial,
    c2: &Coefficient,
    rule: &ProductRule,
) -> Vec<(Monomial, Coefficient)> {
    // Generators of distinct variables commute, so the product of two
    // monomials factors through the univariate kernel one variable at a
    // time: exponent pairs concatenate, coefficients multiply.
    let mut acc: Vec<(Vec<u32>, Vec<u32>, Coefficient)> =
        vec![(Vec::with_capacity(arity), Vec::with_capacity(arity), c1 * c2)];
    for k in 0..arity {
        let factor = rule.kernel(m1.gen_exp(k), m1.der_exp(k), m2.gen_exp(k), m2.der_exp(k));
        let mut next = Vec::with_capacity(acc.len() * factor.len());
        for (gens, ders, coeff) in &acc {
            for (&(g, d), w) in &factor {
                let mut gens = gens.clone();
                let mut ders = ders.clone();
                gens.push(g);
                ders.push(d);
                next.push((gens, ders, coeff * w));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(gens, ders, coeff)| (Monomial::new(gens, ders), coeff))
        .collect()
}

fn mul_sequential_impl(a: &WeylElement, b: &WeylElement, rule: &ProductRule) -> WeylElement {
    let mut out = WeylElement::zero(a.arity);
    for (m1, c1) in &a.terms {
        for (m2, c2) in &b.terms {
            for (m, c) in expand_pair(a.arity, m1, c1, m2, c2, rule) {
                out.accumulate(m, c);
            }
        }
    }
    out
}

#[cfg(feature = "parallel")]
fn mul_parallel_impl(a: &WeylElement, b: &WeylElement, rule: &ProductRule) -> WeylElement {
    let pairs: Vec<(&Monomial, &Coefficient, &Monomial, &Coefficient)> = a
        .terms
        .iter()
        .flat_map(|(m1, c1)| b.terms.iter().map(move |(m2, c2)| (m1, c1, m2, c2)))
        .collect();
    let terms = pairs
        .par_iter()
        .fold(BTreeMap::new, |mut map: BTreeMap<Monomial, Coefficient>, (m1, c1, m2, c2)| {
            for (m, c) in expand_pair(a.arity, m1, c1, m2, c2, rule) {
                merge_term(&mut map, m, c);
            }
            map
        })
        .reduce(BTreeMap::new, |mut left, right| {
            for (m, c) in right {
                merge_term(&mut left, m, c);
            }
            left
        });
    WeylElement { arity: a.arity, terms }
}

#[cfg(feature = "parallel")]
fn merge_term(map: &mut BTreeMap<Monomial, Coefficient>, m: Monomial, c: Coefficient) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(entry) => {
            *entry = &*entry + &c;
            if entry.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(gens: &[u32], ders: &[u32]) -> Monomial {
        Monomial::new(gens.to_vec(), ders.to_vec())
    }

    fn c(n: i64) -> Coefficient {
        Coefficient::from_integer(n)
    }

    fn univariate(terms: &[(u32, u32, i64)]) -> WeylElement {
        WeylElement::from_terms(
            1,
            terms.iter().map(|&(g, d, v)| (m(&[g], &[d]), c(v))),
        )
        .unwrap()
    }

    #[test]
    fn normalize_collects_like_terms() {
        let e = WeylElement::from_terms(1, vec![(m(&[1], &[1]), c(2)), (m(&[1], &[1]), c(3))])
            .unwrap();
        assert_eq!(e, univariate(&[(1, 1, 5)]));
    }

    #[test]
    fn normalize_drops_cancellations() {
        let e = WeylElement::from_terms(1, vec![(m(&[0], &[1]), c(7)), (m(&[0], &[1]), c(-7))])
            .unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn normalize_rejects_mixed_arities() {
        let err = WeylElement::from_terms(1, vec![(m(&[1, 0], &[0, 0]), c(1))]).unwrap_err();
        assert_eq!(err, WeylError::ArityMismatch { left: 1, right: 2 });
    }

    #[test]
    fn add_has_identity_and_inverse() {
        let a = univariate(&[(2, 3, 4), (1, 2, 12), (0, 1, 7)]);
        assert_eq!(a.add(&WeylElement::zero(1)).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_matches_printed_three_term_sum() {
        // 7∂ + (4x²∂³ + 12x∂²) = {∂:7, x∂²:12, x²∂³:4}
        let lhs = univariate(&[(0, 1, 7)]);
        let rhs = univariate(&[(2, 3, 4), (1, 2, 12)]);
        let sum = lhs.add(&rhs).unwrap();
        assert_eq!(sum, univariate(&[(0, 1, 7), (1, 2, 12), (2, 3, 4)]));
    }

    #[test]
    fn mul_commutes_derivative_past_generator() {
        let d = WeylElement::derivative(1, 0);
        let x = WeylElement::generator(1, 0);
        let dx = d.mul(&x, &ProductRule::Weyl).unwrap();
        assert_eq!(dx, univariate(&[(1, 1, 1), (0, 0, 1)]));
    }

    #[test]
    fn mul_has_identity() {
        let a = random_element(11, 3, 2, 2);
        assert_eq!(a.mul(&WeylElement::one(2), &ProductRule::Weyl).unwrap(), a);
        assert_eq!(WeylElement::one(2).mul(&a, &ProductRule::Weyl).unwrap(), a);
    }

    #[test]
    fn mul_reproduces_ten_term_product() {
        // (1 + x∂ + 2∂³)(3 + 7∂ − 5x²∂²)
        let d1 = univariate(&[(0, 0, 1), (1, 1, 1), (0, 3, 2)]);
        let d2 = univariate(&[(0, 0, 3), (0, 1, 7), (2, 2, -5)]);
        let got = d1.mul(&d2, &ProductRule::Weyl).unwrap();
        let expected = univariate(&[
            (0, 0, 3),
            (0, 1, 7),
            (1, 1, 3),
            (1, 2, 7),
            (2, 2, -15),
            (0, 3, -54),
            (3, 3, -5),
            (0, 4, 14),
            (1, 4, -60),
            (2, 5, -10),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn pow_zero_is_identity() {
        let a = random_element(5, 3, 2, 1);
        assert_eq!(a.pow(0, &ProductRule::Weyl).unwrap(), WeylElement::one(1));
    }

    #[test]
    fn pow_of_euler_operator() {
        // (x∂)² = x²∂² + x∂
        let xd = WeylElement::monomial(m(&[1], &[1]), c(1));
        let got = xd.pow(2, &ProductRule::Weyl).unwrap();
        assert_eq!(got, univariate(&[(2, 2, 1), (1, 1, 1)]));
    }

    #[test]
    fn commutator_of_derivative_and_generator_is_one() {
        let d = WeylElement::derivative(1, 0);
        let x = WeylElement::generator(1, 0);
        assert_eq!(commutator(&d, &x, &ProductRule::Weyl).unwrap(), WeylElement::one(1));
        assert!(commutator(&x, &x, &ProductRule::Weyl).unwrap().is_zero());
    }

    #[test]
    fn commutator_of_derivative_cube() {
        // [∂³, x] = 3∂²
        let d3 = WeylElement::monomial(m(&[0], &[3]), c(1));
        let x = WeylElement::generator(1, 0);
        let got = commutator(&d3, &x, &ProductRule::Weyl).unwrap();
        assert_eq!(got, univariate(&[(0, 2, 3)]));
    }

    #[test]
    fn derivation_kills_its_generator() {
        let f = random_element(23, 3, 2, 2);
        let der = Derivation::new(f.clone());
        assert!(der.apply(&f, &ProductRule::Weyl).unwrap().is_zero());
    }

    #[test]
    fn derivation_by_x_maps_derivative_to_one() {
        let x = WeylElement::generator(1, 0);
        let d = WeylElement::derivative(1, 0);
        let der = Derivation::new(x);
        assert_eq!(der.apply(&d, &ProductRule::Weyl).unwrap(), WeylElement::one(1));
    }

    #[test]
    fn leibniz_law_on_random_triples() {
        let rule = ProductRule::Weyl;
        for seed in 0..20u64 {
            let f = random_element(3 * seed, 3, 2, 3);
            let d1 = random_element(3 * seed + 1, 3, 2, 3);
            let d2 = random_element(3 * seed + 2, 3, 2, 3);
            let der = Derivation::new(f);
            let lhs = der.apply(&d1.mul(&d2, &rule).unwrap(), &rule).unwrap();
            let rhs = d1
                .mul(&der.apply(&d2, &rule).unwrap(), &rule)
                .unwrap()
                .add(&der.apply(&d1, &rule).unwrap().mul(&d2, &rule).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "seed {seed}");
        }
    }

    #[test]
    fn degree_of_standard_form_element() {
        assert_eq!(WeylElement::one(1).degree(), Some(0));
        assert_eq!(univariate(&[(0, 1, 7), (1, 2, 12), (2, 3, 4)]).degree(), Some(5));
        assert_eq!(WeylElement::zero(2).degree(), None);
    }

    #[test]
    fn equality_promotes_scalars_across_arities() {
        let three_a = WeylElement::scalar(1, c(3));
        let three_b = WeylElement::scalar(4, c(3));
        assert!(three_a.equal(&three_b));
        assert!(!three_a.equal(&three_a.add(&WeylElement::one(1)).unwrap()));
        assert!(!WeylElement::generator(1, 0).equal(&WeylElement::generator(2, 0)));
    }

    #[test]
    fn scalar_promotion_in_arithmetic() {
        let a = random_element(7, 3, 2, 3);
        let five = WeylElement::scalar(1, c(5));
        let promoted = WeylElement::scalar(3, c(5));
        assert_eq!(a.add(&five).unwrap(), a.add(&promoted).unwrap());
        assert_eq!(a.mul(&five, &ProductRule::Weyl).unwrap(), a.scale(&c(5)));
        assert_eq!(five.mul(&a, &ProductRule::Weyl).unwrap(), a.scale(&c(5)));
    }

    #[test]
    fn random_element_is_deterministic() {
        assert_eq!(random_element(42, 3, 2, 3), random_element(42, 3, 2, 3));
        assert_eq!(random_element(42, 1, 2, 2).num_terms(), 1);
    }

    #[test]
    fn random_sweep_stays_in_normal_form() {
        for seed in 0..100u64 {
            let e = random_element(seed, 3, 2, 3);
            assert!(e.num_terms() <= 3);
            for (m, c) in e.terms() {
                assert_eq!(m.arity(), 3);
                assert!(!c.is_zero());
                assert!(m.gens().iter().chain(m.ders()).all(|&exp| exp <= 2));
            }
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_product_is_bit_identical() {
        for seed in 0..10u64 {
            let a = random_element(seed, 12, 3, 2);
            let b = random_element(seed + 1000, 12, 3, 2);
            for rule in [ProductRule::Weyl, ProductRule::Exponential] {
                assert_eq!(
                    a.mul_parallel(&b, &rule).unwrap(),
                    a.mul_sequential(&b, &rule).unwrap()
                );
            }
        }
    }
}
