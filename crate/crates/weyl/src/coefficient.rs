//! Exact rational scalars.
//!
//! Every coefficient in the algebra is a ratio of arbitrary-precision
//! integers kept in lowest terms with a positive denominator, so equality
//! of elements is decidable and printing is reproducible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational scalar: the coefficient field of the algebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Coefficient(BigRational);

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient(BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient(BigRational::one())
    }

    /// Builds `numer / denom` reduced to lowest terms.
    ///
    /// Panics if `denom` is zero; use [`Coefficient::parse_literal`] for
    /// untrusted input.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        Coefficient(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: i64) -> Self {
        Coefficient(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Coefficient(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Parses an unsigned literal: an integer `"12"`, a fraction `"3/4"`,
    /// or a finite decimal `"2.5"` (converted exactly).
    pub fn parse_literal(text: &str) -> Result<Self, String> {
        if let Some((p, q)) = text.split_once('/') {
            let p: BigInt = p.parse().map_err(|_| format!("bad numerator {p:?}"))?;
            let q: BigInt = q.parse().map_err(|_| format!("bad denominator {q:?}"))?;
            if q.is_zero() {
                return Err("zero denominator".to_string());
            }
            return Ok(Coefficient(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = text.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("bad decimal literal {text:?}"));
            }
            let digits: BigInt = format!("{int}{frac}")
                .parse()
                .map_err(|_| format!("bad decimal literal {text:?}"))?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            return Ok(Coefficient(BigRational::new(digits, scale)));
        }
        let n: BigInt = text.parse().map_err(|_| format!("bad integer {text:?}"))?;
        Ok(Coefficient(BigRational::from_integer(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Coefficient(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_integer(n)
    }
}

impl From<u32> for Coefficient {
    fn from(n: u32) -> Self {
        Coefficient(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Coefficient {
    fn from(n: BigInt) -> Self {
        Coefficient(BigRational::from_integer(n))
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        Coefficient(&self.0 + &rhs.0)
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        Coefficient(&self.0 - &rhs.0)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        Coefficient(&self.0 * &rhs.0)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient(-&self.0)
    }
}

/// Renders `p` when integral, `p/q` otherwise.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
