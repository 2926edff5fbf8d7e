//! Sparse normal-form operator arithmetic for univariate and multivariate
//! Weyl algebras.
//!
//! The algebra of polynomial differential operators is generated by
//! multiplication operators `x_k` and derivatives `∂_k` with the relation
//! `∂x − x∂ = 1`. Every element has a unique standard form with all
//! multiplication generators to the left of all derivatives; this crate
//! stores elements as sparse term maps in that form, with exact rational
//! coefficients, and keeps them normalized through every operation.
//!
//! ```
//! use weyl::{commutator, ProductRule, WeylElement};
//!
//! let d = WeylElement::derivative(1, 0);
//! let x = WeylElement::generator(1, 0);
//! // ∂x = x∂ + 1, so [∂, x] = 1
//! let bracket = commutator(&d, &x, &ProductRule::Weyl).unwrap();
//! assert_eq!(bracket, WeylElement::one(1));
//! ```
//!
//! The commutation relation itself is pluggable: products are reduced one
//! variable at a time by a [`kernels::ProductRule`], and besides the two
//! standard-rule kernels there is an exponential rule (`∂e − e∂ = e`) and
//! room for user-supplied recurrences. Products are checked independently
//! by the [`oracle`] module, which applies operators to explicit test
//! functions by direct differentiation. The [`expr`] module holds the
//! parser, printers, and JSON format behind the command-line tool.

pub mod coefficient;
pub mod element;
pub mod error;
pub mod expr;
pub mod kernels;
pub mod monomial;
pub mod oracle;

pub use coefficient::Coefficient;
pub use element::{commutator, random_element, Derivation, WeylElement};
pub use error::WeylError;
pub use kernels::{
    exponential_kernel, weyl_kernel_closed, weyl_kernel_recursive, KernelTerms, ProductRule,
};
pub use monomial::Monomial;
