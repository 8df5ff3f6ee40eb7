//! Rational cuspidal divisors as integer vectors over the closed points
//! P_0..P_r. The point P_r plays the role of [inf], so the elementary
//! generators are C_i = P_i - deg(P_i) [inf].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cusps::enumerate_closed_points;
use crate::error::DivisorError;
use crate::params::FieldParams;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalDivisor {
    coeffs: Vec<BigInt>, // length r + 1
}

impl CuspidalDivisor {
    pub fn new(coeffs: Vec<BigInt>, params: &FieldParams) -> Result<Self, DivisorError> {
        if coeffs.len() != params.r() + 1 {
            return Err(DivisorError::BadLength {
                got: coeffs.len(),
                want: params.r() + 1,
            });
        }
        Ok(CuspidalDivisor { coeffs })
    }

    pub fn zero(params: &FieldParams) -> Self {
        CuspidalDivisor {
            coeffs: vec![BigInt::zero(); params.r() + 1],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add_scaled(&mut self, other: &CuspidalDivisor, scale: &BigInt) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += scale * b;
        }
    }
}

/// Sum of a_i deg(P_i); zero for every constructed generator.
pub fn weighted_degree(d: &CuspidalDivisor, params: &FieldParams) -> BigInt {
    let points = enumerate_closed_points(params);
    d.coeffs
        .iter()
        .zip(&points)
        .map(|(a, p)| a * &p.degree)
        .sum()
}

/// C_i = P_i - deg(P_i) [inf], for 0 <= i <= r - 1.
pub fn build_c(i: usize, params: &FieldParams) -> Result<CuspidalDivisor, DivisorError> {
    let r = params.r();
    if r < 2 || i > r - 1 {
        return Err(DivisorError::IndexOutOfRange { i, r });
    }
    let points = enumerate_closed_points(params);
    let mut coeffs = vec![BigInt::zero(); r + 1];
    coeffs[i] = BigInt::one();
    coeffs[r] = -points[i].degree.clone();
    Ok(CuspidalDivisor { coeffs })
}

/// D_0 = C_0 + (q - 1)(sum_{1 <= i <= floor(r/2)} C_i
///                    + sum_{floor(r/2)+1 <= i <= r-1} |p|^(2i-r) C_i).
/// At even r the boundary index i = r/2 belongs to the first sum; the second
/// sum would give it the same weight |p|^0 = 1, so the split is harmless.
pub fn build_d0(params: &FieldParams) -> Result<CuspidalDivisor, DivisorError> {
    let r = params.r();
    if r < 2 {
        return Err(DivisorError::IndexOutOfRange { i: 0, r });
    }
    let p = params.abs_p();
    let q1 = BigInt::from(params.q() - 1);
    let mut d = build_c(0, params)?;
    for i in 1..=r / 2 {
        d.add_scaled(&build_c(i, params)?, &q1);
    }
    for i in r / 2 + 1..r {
        let w = &q1 * p.pow((2 * i - r) as u32);
        d.add_scaled(&build_c(i, params)?, &w);
    }
    Ok(d)
}

/// D_{r-1}, the terminal generator, by the five-case definition (selected by
/// r mod 4, with r = 2 special).
pub fn build_dr1(params: &FieldParams) -> Result<CuspidalDivisor, DivisorError> {
    let r = params.r();
    if r < 2 {
        return Err(DivisorError::IndexOutOfRange { i: 0, r });
    }
    if r == 2 {
        return build_c(1, params);
    }
    let p = params.abs_p();
    let pw = |e: usize| p.pow(e as u32);
    let c = |i: usize| build_c(i, params);
    // C_i - |p| C_{i+1}
    let c_pair = |i: usize| -> Result<CuspidalDivisor, DivisorError> {
        let mut d = c(i)?;
        d.add_scaled(&c(i + 1)?, &-&p);
        Ok(d)
    };

    let mut d = c(r - 1)?;
    d.add_scaled(&c(1)?, &-(pw(r) - pw(r - 2)));
    // shared head: +(|p|^(r-1) - |p|^(r-2) - |p|^(r-2i+1) + |p|^(r-2i)) C_i
    let head_hi = if r % 2 == 1 { (r - 1) / 2 } else { r / 2 - 1 };
    for i in 2..=head_hi {
        let w = pw(r - 1) - pw(r - 2) - pw(r - 2 * i + 1) + pw(r - 2 * i);
        d.add_scaled(&c(i)?, &w);
    }
    match r % 4 {
        3 => {
            let half = (r - 1) / 2;
            for i in (r + 1) / 2..=r - 2 {
                let w = pw(i) - pw(half) + pw(i - half) - BigInt::one();
                d.add_scaled(&c_pair(i)?, &-w);
            }
        }
        0 => {
            let half = r / 2;
            for i in (half..=r - 2).filter(|i| i % 2 == 0) {
                let w = pw(i + 1) - BigInt::from(2) * pw(i) + pw(half) - pw(i - half + 1)
                    + BigInt::one();
                d.add_scaled(&c_pair(i)?, &w);
            }
            for i in (half + 1..=r - 3).filter(|i| i % 2 == 1) {
                let w = pw(i + 1) - pw(half) + pw(i - half + 1) - BigInt::one();
                d.add_scaled(&c_pair(i)?, &-w);
            }
        }
        1 => {
            let half = (r - 1) / 2;
            for i in ((r + 1) / 2..=r - 2).filter(|i| i % 2 == 1) {
                let w = BigInt::from(2) * pw(i + 1) - pw(i) - pw(half) + pw(i - half)
                    - BigInt::one();
                d.add_scaled(&c_pair(i)?, &-w);
            }
            for i in ((r + 3) / 2..=r - 3).filter(|i| i % 2 == 0) {
                let w = pw(i) - pw(half) + pw(i - half) - BigInt::one();
                d.add_scaled(&c_pair(i)?, &-w);
            }
        }
        2 => {
            let half = r / 2;
            for i in half..=r - 2 {
                let w = pw(i + 1) - pw(half) + pw(i - half + 1) - BigInt::one();
                d.add_scaled(&c_pair(i)?, &-w);
            }
        }
        _ => unreachable!(),
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u64, deg_p: u32, r: usize) -> FieldParams {
        FieldParams::new(q, deg_p, r).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn c1_q3_r2() {
        let d = build_c(1, &params(3, 1, 2)).unwrap();
        assert_eq!(d.coeffs(), &ints(&[0, 1, -1])[..]);
    }

    #[test]
    fn c0_any_params() {
        let d = build_c(0, &params(5, 2, 6)).unwrap();
        let mut want = vec![BigInt::zero(); 7];
        want[0] = BigInt::one();
        want[6] = BigInt::from(-1);
        assert_eq!(d.coeffs(), &want[..]);
    }

    #[test]
    fn c2_q3_r4() {
        let d = build_c(2, &params(3, 1, 4)).unwrap();
        assert_eq!(d.coeffs(), &ints(&[0, 0, 1, 0, -3])[..]);
    }

    #[test]
    fn c_index_out_of_range() {
        assert!(build_c(4, &params(3, 1, 4)).is_err());
        assert!(build_c(0, &params(3, 1, 1)).is_err());
    }

    #[test]
    fn d0_q3_r2() {
        // C_0 + 2 C_1 = (1, 2, -3)
        let d = build_d0(&params(3, 1, 2)).unwrap();
        assert_eq!(d.coeffs(), &ints(&[1, 2, -3])[..]);
    }

    #[test]
    fn d0_q3_r3() {
        // C_0 + 2 C_1 + 2*3 C_2 with deg(P_1) = deg(P_2) = 1
        let d = build_d0(&params(3, 1, 3)).unwrap();
        assert_eq!(d.coeffs(), &ints(&[1, 2, 6, -9])[..]);
    }

    #[test]
    fn dr1_r2_is_c1() {
        let p = params(3, 1, 2);
        assert_eq!(build_dr1(&p).unwrap(), build_c(1, &p).unwrap());
    }

    #[test]
    fn dr1_r7_c1_coefficient() {
        // coefficient of C_1 is -(P^7 - P^5); C_1 only touches coordinate 1
        let p = params(3, 1, 7);
        let d = build_dr1(&p).unwrap();
        let pp = BigInt::from(3);
        assert_eq!(d.coeffs()[1], -(pp.pow(7) - pp.pow(5)));
    }

    #[test]
    fn dr1_r6_pair_coefficient() {
        // coefficient of (C_3 - P C_4) is -(P^4 - P^3 + P - 1), visible at
        // coordinate 3 (nothing else in the definition touches it at r = 6)
        let p = params(2, 1, 6);
        let d = build_dr1(&p).unwrap();
        let pp = BigInt::from(2);
        assert_eq!(
            d.coeffs()[3],
            -(pp.pow(4) - pp.pow(3) + &pp - BigInt::one())
        );
    }

    #[test]
    fn generators_have_degree_zero() {
        for q in [2u64, 3, 4, 5] {
            for deg_p in [1u32, 2] {
                for r in 2..=12 {
                    let p = params(q, deg_p, r);
                    assert!(weighted_degree(&build_d0(&p).unwrap(), &p).is_zero());
                    assert!(weighted_degree(&build_dr1(&p).unwrap(), &p).is_zero());
                    for i in 0..r {
                        assert!(
                            weighted_degree(&build_c(i, &p).unwrap(), &p).is_zero()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zero_divisor_has_degree_zero() {
        let p = params(3, 1, 5);
        assert!(weighted_degree(&CuspidalDivisor::zero(&p), &p).is_zero());
    }
}
