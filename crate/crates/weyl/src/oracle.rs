//! Direct operator action on explicit test functions.
//!
//! This module is the product's independent witness. It never touches the
//! product kernels: an operator monomial is applied to a function by
//! literal differentiation and multiplication, term by term, so agreement
//! between `apply(a·b, f)` and `apply(a, apply(b, f))` is genuine evidence
//! that the normal-form product composes operators correctly.
//!
//! The function space is exponential-polynomial — finite sums of
//! `c · e^(m·x) · x^j` — which is closed under differentiation,
//! multiplication by any `x_k`, and multiplication by `e^(x_k)`. One space
//! therefore serves both the standard rule (where the `m` weights stay
//! zero and the space degenerates to polynomials) and the exponential
//! rule.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficient::Coefficient;
use crate::element::WeylElement;
use crate::error::WeylError;

/// One basis function `e^(m·x) · x^j`, keyed by the weight vector `m`
/// and the power vector `j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FuncKey {
    weights: Vec<u32>,
    powers: Vec<u32>,
}

impl FuncKey {
    pub fn new(weights: Vec<u32>, powers: Vec<u32>) -> Self {
        assert!(!weights.is_empty(), "arity must be positive");
        assert_eq!(weights.len(), powers.len());
        FuncKey { weights, powers }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }
}

/// A test function: a finite sum of `c · e^(m·x) · x^j` terms in `n`
/// variables, in normal form (nonzero coefficients, unique keys).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TestFunction {
    arity: usize,
    terms: BTreeMap<FuncKey, Coefficient>,
}

impl TestFunction {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        TestFunction { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Coefficient) -> Self {
        let mut out = TestFunction::zero(arity);
        out.insert(FuncKey::new(vec![0; arity], vec![0; arity]), c);
        out
    }

    /// The pure power product `x^powers`.
    pub fn poly(arity: usize, powers: Vec<u32>, c: Coefficient) -> Self {
        TestFunction::term(vec![0; arity], powers, c)
    }

    /// A single `c · e^(weights·x) · x^powers` term.
    pub fn term(weights: Vec<u32>, powers: Vec<u32>, c: Coefficient) -> Self {
        let key = FuncKey::new(weights, powers);
        let mut out = TestFunction::zero(key.weights.len());
        out.insert(key, c);
        out
    }

    pub fn from_terms(
        arity: usize,
        raw: impl IntoIterator<Item = (FuncKey, Coefficient)>,
    ) -> Self {
        let mut out = TestFunction::zero(arity);
        for (key, c) in raw {
            assert_eq!(key.weights.len(), arity, "key arity mismatch");
            out.insert(key, c);
        }
        out
    }

    fn insert(&mut self, key: FuncKey, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(entry) => {
                *entry = &*entry + &c;
                if entry.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FuncKey, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &TestFunction) -> TestFunction {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.insert(key.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> TestFunction {
        if c.is_zero() {
            return TestFunction::zero(self.arity);
        }
        TestFunction {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// One partial derivative in variable `k`, by the product rule:
    /// `∂_k(e^(m_k x_k) x_k^j) = m_k·(same) + j·(power lowered)`.
    pub fn differentiate(&self, k: usize) -> TestFunction {
        assert!(k < self.arity);
        let mut out = TestFunction::zero(self.arity);
        for (key, c) in &self.terms {
            let m = key.weights[k];
            if m > 0 {
                out.insert(key.clone(), c * &Coefficient::from(m));
            }
            let j = key.powers[k];
            if j > 0 {
                let mut lowered = key.clone();
                lowered.powers[k] = j - 1;
                out.insert(lowered, c * &Coefficient::from(j));
            }
        }
        out
    }

    /// Multiplication by `x_k`.
    pub fn mul_by_gen(&self, k: usize) -> TestFunction {
        assert!(k < self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(key, c)| {
                let mut raised = key.clone();
                raised.powers[k] += 1;
                (raised, c.clone())
            })
            .collect();
        TestFunction { arity: self.arity, terms }
    }

    /// Multiplication by `e^(x_k)`.
    pub fn mul_by_exp(&self, k: usize) -> TestFunction {
        assert!(k < self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(key, c)| {
                let mut raised = key.clone();
                raised.weights[k] += 1;
                (raised, c.clone())
            })
            .collect();
        TestFunction { arity: self.arity, terms }
    }

    /// Renders with the given coordinate names, e.g. `100*x^3` or
    /// `2*e^(2x)*x`.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.arity);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (key, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (k, &w) in key.weights.iter().enumerate() {
                match w {
                    0 => {}
                    1 => factors.push(format!("e^{}", names[k])),
                    _ => factors.push(format!("e^({}{})", w, names[k])),
                }
            }
            for (k, &p) in key.powers.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(names[k].clone()),
                    _ => factors.push(format!("{}^{}", names[k], p)),
                }
            }
            if i > 0 {
                out.push_str(if c.is_negative() { " -" } else { " +" });
            } else if c.is_negative() {
                out.push('-');
            }
            let magnitude = c.abs();
            if factors.is_empty() {
                out.push_str(&magnitude.to_string());
            } else {
                if !magnitude.is_one() {
                    out.push_str(&magnitude.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Default coordinate names for rendered functions: `x`, `x,y,z`, or
/// `x1..xn` above arity 3.
pub fn coordinate_names(arity: usize) -> Vec<String> {
    match arity {
        1 => vec!["x".to_string()],
        2 => vec!["x".to_string(), "y".to_string()],
        3 => vec!["x".to_string(), "y".to_string(), "z".to_string()],
        n => (1..=n).map(|k| format!("x{k}")).collect(),
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&coordinate_names(self.arity)))
    }
}

/// Applies a standard-rule element to a test function: the monomial
/// `x^q ∂^p` acts as `f ↦ x^q · (∂^p f)`.
pub fn apply_weyl(w: &WeylElement, f: &TestFunction) -> Result<TestFunction, WeylError> {
    if w.arity() != f.arity() {
        return Err(WeylError::ArityMismatch { left: w.arity(), right: f.arity() });
    }
    let mut out = TestFunction::zero(f.arity());
    for (mono, coeff) in w.terms() {
        let mut g = f.clone();
        for k in 0..f.arity() {
            for _ in 0..mono.der_exp(k) {
                g = g.differentiate(k);
            }
        }
        for k in 0..f.arity() {
            for _ in 0..mono.gen_exp(k) {
                g = g.mul_by_gen(k);
            }
        }
        out = out.add(&g.scale(coeff));
    }
    Ok(out)
}

/// Applies an exponential-rule element (arity 1 only): the monomial
/// `e^a ∂^b` acts as `f ↦ e^(a·x) · f⁽ᵇ⁾`.
pub fn apply_exponential(w: &WeylElement, f: &TestFunction) -> Result<TestFunction, WeylError> {
    if w.arity() != 1 {
        return Err(WeylError::ExponentialArity(w.arity()));
    }
    if f.arity() != 1 {
        return Err(WeylError::ExponentialArity(f.arity()));
    }
    let mut out = TestFunction::zero(1);
    for (mono, coeff) in w.terms() {
        let mut g = f.clone();
        for _ in 0..mono.der_exp(0) {
            g = g.differentiate(0);
        }
        for _ in 0..mono.gen_exp(0) {
            g = g.mul_by_exp(0);
        }
        out = out.add(&g.scale(coeff));
    }
    Ok(out)
}

/// A seeded random test function with at most `n_terms` terms, polynomial
/// exponents in `0..=max_power` per variable, and exponential weights in
/// `0..=max_weight` (pass 0 for a plain polynomial).
pub fn random_test_function(
    seed: u64,
    arity: usize,
    n_terms: usize,
    max_power: u32,
    max_weight: u32,
) -> TestFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = TestFunction::zero(arity);
    for _ in 0..n_terms {
        let weights: Vec<u32> = (0..arity).map(|_| rng.random_range(0..=max_weight)).collect();
        let powers: Vec<u32> = (0..arity).map(|_| rng.random_range(0..=max_power)).collect();
        let magnitude = rng.random_range(1..=9i64);
        let coeff = if rng.random_bool(0.5) { magnitude } else { -magnitude };
        out.insert(FuncKey::new(weights, powers), Coefficient::from_integer(coeff));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::random_element;
    use crate::kernels::ProductRule;
    use crate::monomial::Monomial;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_integer(n)
    }

    fn x_to(k: u32) -> TestFunction {
        TestFunction::poly(1, vec![k], c(1))
    }

    fn op(terms: &[(u32, u32, i64)]) -> WeylElement {
        WeylElement::from_terms(
            1,
            terms
                .iter()
                .map(|&(g, d, v)| (Monomial::new(vec![g], vec![d]), c(v))),
        )
        .unwrap()
    }

    #[test]
    fn derivative_of_square() {
        let d = WeylElement::derivative(1, 0);
        assert_eq!(apply_weyl(&d, &x_to(2)).unwrap(), x_to(1).scale(&c(2)));
    }

    #[test]
    fn euler_operator_eigenfunctions() {
        let euler = op(&[(1, 1, 1)]);
        for k in 0..6 {
            let f = x_to(k);
            assert_eq!(apply_weyl(&euler, &f).unwrap(), f.scale(&c(i64::from(k))));
        }
    }

    #[test]
    fn second_derivative_sandwich_on_cube() {
        // ∂²·x·∂·x² sends x³ to 100x³
        let rule = ProductRule::Weyl;
        let d = WeylElement::derivative(1, 0);
        let x = WeylElement::generator(1, 0);
        let w = d
            .pow(2, &rule)
            .unwrap()
            .mul(&x, &rule)
            .unwrap()
            .mul(&d, &rule)
            .unwrap()
            .mul(&x.pow(2, &rule).unwrap(), &rule)
            .unwrap();
        assert_eq!(apply_weyl(&w, &x_to(3)).unwrap(), x_to(3).scale(&c(100)));
    }

    #[test]
    fn exponential_generator_multiplies_by_exp() {
        let e = WeylElement::generator(1, 0);
        let f = x_to(1);
        let expected = TestFunction::term(vec![1], vec![1], c(1));
        assert_eq!(apply_exponential(&e, &f).unwrap(), expected);
    }

    #[test]
    fn exponential_action_of_second_derivative() {
        // (e + 2e∂ + e∂²) applied to the constant 1 gives e^x
        let w = op(&[(1, 0, 1), (1, 1, 2), (1, 2, 1)]);
        let one = TestFunction::constant(1, c(1));
        let expected = TestFunction::term(vec![1], vec![0], c(1));
        assert_eq!(apply_exponential(&w, &one).unwrap(), expected);
    }

    #[test]
    fn exponential_sandwich_matches_direct_differentiation() {
        // ∂e∂²e = 2e² + 5e²∂ + 4e²∂² + e²∂³: check the action on x^j
        // against e^(2x)(2f + 5f' + 4f'' + f''') computed by hand.
        let w = op(&[(2, 0, 2), (2, 1, 5), (2, 2, 4), (2, 3, 1)]);
        for j in 0..5u32 {
            let f = x_to(j);
            let mut expected = TestFunction::zero(1);
            let mut g = f.clone();
            for weight in [2i64, 5, 4, 1] {
                expected = expected.add(&g.scale(&c(weight)));
                g = g.differentiate(0);
            }
            expected = expected.mul_by_exp(0).mul_by_exp(0);
            assert_eq!(apply_exponential(&w, &f).unwrap(), expected, "j = {j}");
        }
    }

    #[test]
    fn action_is_linear_in_both_arguments() {
        let a = random_element(31, 3, 2, 2);
        let b = random_element(32, 3, 2, 2);
        let f = random_test_function(33, 2, 3, 3, 0);
        let g = random_test_function(34, 2, 3, 3, 0);
        let sum_ops = apply_weyl(&a.add(&b).unwrap(), &f).unwrap();
        assert_eq!(sum_ops, apply_weyl(&a, &f).unwrap().add(&apply_weyl(&b, &f).unwrap()));
        let sum_fns = apply_weyl(&a, &f.add(&g)).unwrap();
        assert_eq!(sum_fns, apply_weyl(&a, &f).unwrap().add(&apply_weyl(&a, &g).unwrap()));
    }

    #[test]
    fn commutator_acts_as_identity() {
        let rule = ProductRule::Weyl;
        let d = WeylElement::derivative(1, 0);
        let x = WeylElement::generator(1, 0);
        let bracket = crate::element::commutator(&d, &x, &rule).unwrap();
        for seed in 0..5 {
            let f = random_test_function(seed, 1, 3, 4, 0);
            assert_eq!(apply_weyl(&bracket, &f).unwrap(), f);
        }
    }

    #[test]
    fn composition_matches_product_on_samples() {
        let rule = ProductRule::Weyl;
        for seed in 0..25u64 {
            let a = random_element(seed, 3, 3, 2);
            let b = random_element(seed + 500, 3, 3, 2);
            let f = random_test_function(seed + 1000, 2, 3, 3, 0);
            let composed = apply_weyl(&a, &apply_weyl(&b, &f).unwrap()).unwrap();
            let product = apply_weyl(&a.mul(&b, &rule).unwrap(), &f).unwrap();
            assert_eq!(product, composed, "seed {seed}");
        }
    }

    #[test]
    fn renders_polynomials_readably() {
        assert_eq!(x_to(3).scale(&c(100)).to_string(), "100*x^3");
        assert_eq!(x_to(1).scale(&c(2)).to_string(), "2*x");
        assert_eq!(TestFunction::zero(1).to_string(), "0");
        assert_eq!(TestFunction::term(vec![1], vec![0], c(1)).to_string(), "e^x");
        let mixed = TestFunction::term(vec![2], vec![1], c(-3)).add(&x_to(2));
        assert_eq!(mixed.to_string(), "x^2 -3*e^(2x)*x");
    }
}
