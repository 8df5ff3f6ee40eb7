//! Arithmetic context: the base field size q, the chosen prime degree, the
//! level exponent r, and the derived scalar constants.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::ParamError;

/// Context (q, deg p, r) with |p| = q^deg_p derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldParams {
    q: u64,
    deg_p: u32,
    r: usize,
}

/// q = base^exp for a prime base, or None.
fn prime_power_split(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut n = q;
    let mut base = 0u64;
    for p in 2..=q {
        if n % p == 0 {
            base = p;
            break;
        }
        if p * p > n {
            base = n;
            break;
        }
    }
    let mut exp = 0u32;
    while n % base == 0 {
        n /= base;
        exp += 1;
    }
    (n == 1).then_some((base, exp))
}

impl FieldParams {
    pub fn new(q: u64, deg_p: u32, r: usize) -> Result<Self, ParamError> {
        if prime_power_split(q).is_none() {
            return Err(ParamError::NotPrimePower(q));
        }
        if deg_p < 1 {
            return Err(ParamError::BadDegP);
        }
        if r < 1 {
            return Err(ParamError::BadR { min: 1, got: r });
        }
        Ok(FieldParams { q, deg_p, r })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn deg_p(&self) -> u32 {
        self.deg_p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// |p| = q^deg_p.
    pub fn abs_p(&self) -> BigInt {
        BigInt::from(self.q).pow(self.deg_p)
    }

    /// Characteristic and extension degree of F_q.
    pub fn q_split(&self) -> (u64, u32) {
        prime_power_split(self.q).expect("validated at construction")
    }
}

/// The order constants (M, N):
/// M = (|p|^2 - 1)/(q^2 - 1);
/// N = (|p| - 1)/(q^2 - 1) for even deg p, (|p| - 1)/(q - 1) for odd.
/// Integrality is a theorem; a remainder would be an internal error.
pub fn derived_scalars(params: &FieldParams) -> (BigInt, BigInt) {
    let p = params.abs_p();
    let q = BigInt::from(params.q());
    let qsq = &q * &q - BigInt::one();
    let (m, rm) = num_integer::Integer::div_rem(&(&p * &p - BigInt::one()), &qsq);
    assert!(num_traits::Zero::is_zero(&rm), "M is not integral");
    let n_den = if params.deg_p() % 2 == 0 {
        qsq
    } else {
        &q - BigInt::one()
    };
    let (n, rn) = num_integer::Integer::div_rem(&(&p - BigInt::one()), &n_den);
    assert!(num_traits::Zero::is_zero(&rn), "N is not integral");
    (m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_validation() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            assert!(FieldParams::new(q, 1, 1).is_ok(), "q = {q}");
        }
        for q in [0, 1, 6, 10, 12, 15] {
            assert_eq!(
                FieldParams::new(q, 1, 1),
                Err(ParamError::NotPrimePower(q))
            );
        }
    }

    #[test]
    fn scalars_q3_deg1() {
        let p = FieldParams::new(3, 1, 2).unwrap();
        assert_eq!(derived_scalars(&p), (BigInt::one(), BigInt::one()));
    }

    #[test]
    fn scalars_q3_deg2() {
        let p = FieldParams::new(3, 2, 2).unwrap();
        assert_eq!(derived_scalars(&p), (BigInt::from(10), BigInt::one()));
    }

    #[test]
    fn scalars_q2_deg2() {
        let p = FieldParams::new(2, 2, 2).unwrap();
        assert_eq!(derived_scalars(&p), (BigInt::from(5), BigInt::one()));
    }

    #[test]
    fn scalars_integral_on_grid() {
        for q in [2u64, 3, 4, 5] {
            for deg_p in [1u32, 2] {
                for r in 1..=12 {
                    let p = FieldParams::new(q, deg_p, r).unwrap();
                    let (m, n) = derived_scalars(&p);
                    assert!(m >= n && n >= BigInt::one(), "q={q} deg={deg_p}");
                }
            }
        }
    }
}
