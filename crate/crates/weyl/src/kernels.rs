//! Univariate product kernels.
//!
//! A kernel reduces the product of two normally ordered univariate
//! monomials, `(x^a ∂^b)(x^c ∂^d)`, back to normal form. Multivariate
//! products are assembled from the kernel one variable at a time, so the
//! kernel is the single point where a commutation relation enters the
//! algebra. Three kernels are built in:
//!
//! * [`weyl_kernel_closed`] — the closed-form expansion
//!   `Σ_r r!·C(b,r)·C(c,r)·x^{a+c-r}∂^{b+d-r}` (the default);
//! * [`weyl_kernel_recursive`] — the same relation derived by peeling one
//!   derivative at a time;
//! * [`exponential_kernel`] — the algebra generated by `{e, ∂}` with
//!   `∂e − e∂ = e`, where `e` acts as multiplication by `e^x`.
//!
//! Custom kernels can be registered through [`ProductRule::custom`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::coefficient::Coefficient;
use crate::error::WeylError;

/// Normal-form expansion of one univariate monomial product:
/// `(gen exponent, der exponent) → coefficient`.
pub type KernelTerms = BTreeMap<(u32, u32), Coefficient>;

fn single(gen: u32, der: u32) -> KernelTerms {
    let mut out = KernelTerms::new();
    out.insert((gen, der), Coefficient::one());
    out
}

fn accumulate(out: &mut KernelTerms, key: (u32, u32), value: Coefficient) {
    if value.is_zero() {
        return;
    }
    let entry = out.entry(key).or_insert_with(Coefficient::zero);
    *entry = &*entry + &value;
    if entry.is_zero() {
        out.remove(&key);
    }
}

/// `(x^a ∂^b)(x^c ∂^d)` in closed form:
/// `Σ_{r=0}^{min(b,c)} r!·C(b,r)·C(c,r) · x^{a+c-r} ∂^{b+d-r}`.
pub fn weyl_kernel_closed(a: u32, b: u32, c: u32, d: u32) -> KernelTerms {
    let mut out = KernelTerms::new();
    // r!·C(b,r)·C(c,r), updated incrementally: the step from r to r+1
    // multiplies by (b-r)(c-r)/(r+1), which is always exact.
    let mut weight = BigInt::one();
    for r in 0..=b.min(c) {
        out.insert((a + c - r, b + d - r), Coefficient::from(weight.clone()));
        weight = weight * BigInt::from(b - r) * BigInt::from(c - r) / BigInt::from(r + 1);
    }
    out
}

/// `(x^a ∂^b)(x^c ∂^d)` by the one-step recurrence
/// `kernel(a,b,c,d) = kernel(a,b-1,c,d+1) + c·kernel(a,b-1,c-1,d)`,
/// bottoming out when either `b = 0` or `c = 0`. Output is identical to
/// [`weyl_kernel_closed`] on every input; recursion depth is bounded by `b`.
pub fn weyl_kernel_recursive(a: u32, b: u32, c: u32, d: u32) -> KernelTerms {
    if b == 0 {
        return single(a + c, d);
    }
    if c == 0 {
        return single(a, b + d);
    }
    let mut out = weyl_kernel_recursive(a, b - 1, c, d + 1);
    let scale = Coefficient::from(c);
    for (key, value) in weyl_kernel_recursive(a, b - 1, c - 1, d) {
        accumulate(&mut out, key, &value * &scale);
    }
    out
}

/// `(e^a ∂^b)(e^c ∂^d)` in the algebra with `∂e = e∂ + e`:
/// `kernel(a,b,c,d) = kernel(a,b-1,c,d+1) + c·kernel(a,b-1,c,d)`.
/// Unlike the standard rule the generator exponent survives the second
/// branch — commuting `∂` past `e^c` reproduces `e^c` itself.
pub fn exponential_kernel(a: u32, b: u32, c: u32, d: u32) -> KernelTerms {
    if c == 0 {
        return single(a, b + d);
    }
    if b == 0 {
        return single(a + c, d);
    }
    let mut out = exponential_kernel(a, b - 1, c, d + 1);
    let scale = Coefficient::from(c);
    for (key, value) in exponential_kernel(a, b - 1, c, d) {
        accumulate(&mut out, key, &value * &scale);
    }
    out
}

type KernelFn = dyn Fn(u32, u32, u32, u32) -> KernelTerms + Send + Sync;

/// The per-variable commutation rule threaded through every product call.
///
/// Rules are immutable values; pick one per multiplication rather than
/// configuring global state.
#[derive(Clone)]
pub enum ProductRule {
    /// Standard Weyl relation via the closed form (the default).
    Weyl,
    /// Standard Weyl relation via the one-step recurrence.
    WeylRecursive,
    /// Generalized relation `∂e − e∂ = e`.
    Exponential,
    /// A user-supplied kernel, validated at construction.
    Custom {
        name: String,
        kernel: Arc<KernelFn>,
    },
}

impl ProductRule {
    /// Evaluates the rule's kernel on one univariate monomial pair.
    pub fn kernel(&self, a: u32, b: u32, c: u32, d: u32) -> KernelTerms {
        match self {
            ProductRule::Weyl => weyl_kernel_closed(a, b, c, d),
            ProductRule::WeylRecursive => weyl_kernel_recursive(a, b, c, d),
            ProductRule::Exponential => exponential_kernel(a, b, c, d),
            ProductRule::Custom { kernel, .. } => kernel(a, b, c, d),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            ProductRule::Weyl => "weyl",
            ProductRule::WeylRecursive => "weyl-recursive",
            ProductRule::Exponential => "exponential",
            ProductRule::Custom { name, .. } => name,
        }
    }

    /// Looks up a built-in rule by its CLI name.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "weyl" => Some(ProductRule::Weyl),
            "weyl-recursive" => Some(ProductRule::WeylRecursive),
            "exponential" => Some(ProductRule::Exponential),
            _ => None,
        }
    }

    /// Registers a custom kernel after checking the two bottoming
    /// identities on a small grid: with no derivative to commute the
    /// exponents must concatenate, `kernel(a,0,c,d) = x^{a+c}∂^d`, and with
    /// nothing to commute past they must merge, `kernel(a,b,0,d) = x^a∂^{b+d}`.
    pub fn custom<F>(name: impl Into<String>, kernel: F) -> Result<Self, WeylError>
    where
        F: Fn(u32, u32, u32, u32) -> KernelTerms + Send + Sync + 'static,
    {
        let name = name.into();
        for a in 0..4 {
            for other in 0..4 {
                for d in 0..4 {
                    let got = kernel(a, 0, other, d);
                    if got != single(a + other, d) {
                        return Err(WeylError::InvalidRule {
                            name,
                            reason: format!(
                                "kernel({a}, 0, {other}, {d}) must be x^{}∂^{d} alone",
                                a + other
                            ),
                        });
                    }
                    let got = kernel(a, other, 0, d);
                    if got != single(a, other + d) {
                        return Err(WeylError::InvalidRule {
                            name,
                            reason: format!(
                                "kernel({a}, {other}, 0, {d}) must be x^{a}∂^{} alone",
                                other + d
                            ),
                        });
                    }
                }
            }
        }
        Ok(ProductRule::Custom {
            name,
            kernel: Arc::new(kernel),
        })
    }
}

impl fmt::Debug for ProductRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ProductRule").field(&self.name()).finish()
    }
}
