//! Dense univariate polynomials over the integers in the indeterminate P.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::CoreError;

/// Exact rational scalar used by the delta-quotient exponent vectors.
pub type Rat = num_rational::BigRational;

/// Polynomial over Z, ascending coefficients, trailing zeros trimmed.
/// The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyZ::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        PolyZ::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyZ::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// c * P^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return PolyZ::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        PolyZ { coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return PolyZ::zero();
        }
        PolyZ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division; errors if `self` is not a multiple of `div`.
    /// Long division over Z[P] recovers the quotient of any exact division;
    /// a non-integral leading-coefficient quotient or a nonzero remainder
    /// means the division was inexact.
    pub fn exact_div(&self, div: &PolyZ) -> Result<PolyZ, CoreError> {
        if div.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(PolyZ::zero());
        }
        let dd = div.degree().unwrap();
        let lead = div.leading_coeff();
        let mut rem = self.coeffs.clone();
        let nd = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Err(CoreError::InexactDivision),
        };
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, &lead);
            if !r.is_zero() {
                return Err(CoreError::InexactDivision);
            }
            for (j, c) in div.coeffs.iter().enumerate().take(dd) {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(CoreError::InexactDivision);
        }
        Ok(PolyZ::new(quot))
    }

    /// Residue of the polynomial mod P, i.e. its constant term.
    pub fn residue_mod_p(&self) -> BigInt {
        self.constant_term()
    }
}

impl From<i64> for PolyZ {
    fn from(c: i64) -> Self {
        PolyZ::constant(BigInt::from(c))
    }
}

impl Add for &PolyZ {
    type Output = PolyZ;
    fn add(self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + rhs.coeff(k));
        }
        PolyZ::new(v)
    }
}

impl Sub for &PolyZ {
    type Output = PolyZ;
    fn sub(self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) - rhs.coeff(k));
        }
        PolyZ::new(v)
    }
}

impl Mul for &PolyZ {
    type Output = PolyZ;
    fn mul(self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PolyZ::new(v)
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        PolyZ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for PolyZ {
    /// Descending-degree pretty form, e.g. "P^4 - 2P^3 + 2P".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "P")?;
                    } else {
                        write!(f, "P^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
