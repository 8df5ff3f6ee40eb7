//! Closed-form sigma vectors: the piecewise formulas for the elementary
//! generators and the nine-case table for the terminal generator sigma(r-1).
//!
//! Every formula here is cross-validated against the Upsilon-pipeline oracle
//! (divisor -> integer exponents -> sigma) by the integration suite.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::EngineError;
use crate::params::FieldParams;
use crate::poly::PolyZ;

/// Which generator a sigma row describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenTag {
    /// D_0 (constant row, prefactor q - 1).
    D0,
    /// C_i for 1 <= i <= floor((r-1)/2).
    C(usize),
    /// C_i - |p| C_{i+1} for floor((r+1)/2) <= i <= r-2.
    CPair(usize),
    /// D_{r-1}.
    DrMinus1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaVector {
    pub entries: Vec<PolyZ>,
    pub generator_tag: GenTag,
    /// P-part of the denominator of the associated tensor factor.
    pub tensor_denom: PolyZ,
    /// Constant prefactor recorded separately (q - 1 for D_0, else 1).
    pub prefactor: BigInt,
}

/// Sum of c * P^e terms, accumulating repeated exponents.
fn terms(ts: &[(i64, usize)]) -> PolyZ {
    let top = ts.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let mut v = vec![BigInt::from(0); top + 1];
    for &(c, e) in ts {
        v[e] += BigInt::from(c);
    }
    PolyZ::new(v)
}

fn p_minus_1() -> PolyZ {
    PolyZ::from_i64(&[-1, 1])
}

/// sign * (P - 1)/2 * inner; the division by 2 is exact for every branch.
fn half_pm1(sign: i64, inner: PolyZ) -> PolyZ {
    let prod = &p_minus_1() * &inner;
    let signed = if sign < 0 { &PolyZ::zero() - &prod } else { prod };
    signed
        .exact_div(&PolyZ::from(2))
        .expect("branch numerators are even multiples of 2")
}

fn pm1_times(sign: i64, inner: PolyZ) -> PolyZ {
    let prod = &p_minus_1() * &inner;
    if sign < 0 {
        &PolyZ::zero() - &prod
    } else {
        prod
    }
}

/// |p|^a (P^2 - 1) as the tensor denominator of a generator of order
/// |p|^a M: clearing that order against (q^2 - 1) leaves exactly this
/// polynomial denominator.
fn tensor_denom_pow(a: usize) -> PolyZ {
    &PolyZ::monomial(BigInt::one(), a + 2) - &PolyZ::monomial(BigInt::one(), a)
}

/// sigma(i) for the generator index set {0} + {1..floor((r-1)/2)} +
/// {floor((r+1)/2)..r-2}; rejects indices outside it.
pub fn sigma_closed_form(i: usize, params: &FieldParams) -> Result<SigmaVector, EngineError> {
    let r = params.r();
    if r < 2 {
        return Err(EngineError::Param(crate::error::ParamError::BadR {
            min: 2,
            got: r,
        }));
    }
    let fl = (r - 1) / 2;
    let fu = (r + 1) / 2;
    if i == 0 {
        return Ok(SigmaVector {
            entries: vec![PolyZ::one(); r],
            generator_tag: GenTag::D0,
            tensor_denom: p_minus_1(),
            prefactor: BigInt::from(params.q() - 1),
        });
    }
    let ri = r as i64;
    if (1..=fl).contains(&i) {
        // (r-i)(P-1)^2 + P - 1 for k < i; ... + 2P - 1 at k = i;
        // (r-k)(P-1)^2 + P - 1 for k > i
        let ii = i as i64;
        let sq = |c: i64| terms(&[(c, 2), (-2 * c, 1), (c, 0)]);
        let entries = (0..r)
            .map(|k| {
                let ki = k as i64;
                if k < i {
                    &sq(ri - ii) + &terms(&[(1, 1), (-1, 0)])
                } else if k == i {
                    &sq(ri - ii) + &terms(&[(2, 1), (-1, 0)])
                } else {
                    &sq(ri - ki) + &terms(&[(1, 1), (-1, 0)])
                }
            })
            .collect();
        return Ok(SigmaVector {
            entries,
            generator_tag: GenTag::C(i),
            tensor_denom: tensor_denom_pow(r - i),
            prefactor: BigInt::one(),
        });
    }
    if (fu..=r.saturating_sub(2)).contains(&i) {
        // (P-1)^2 for k < i; P^2 - P + 1 at k = i; -P at k = i + 1; 0 after
        let entries = (0..r)
            .map(|k| {
                if k < i {
                    terms(&[(1, 2), (-2, 1), (1, 0)])
                } else if k == i {
                    terms(&[(1, 2), (-1, 1), (1, 0)])
                } else if k == i + 1 {
                    terms(&[(-1, 1)])
                } else {
                    PolyZ::zero()
                }
            })
            .collect();
        return Ok(SigmaVector {
            entries,
            generator_tag: GenTag::CPair(i),
            tensor_denom: tensor_denom_pow(i),
            prefactor: BigInt::one(),
        });
    }
    Err(EngineError::BadGenerator { i, r })
}

/// sigma(r-1): explicit tables for r = 2..6, the residue-class formulas for
/// r >= 7.
pub fn sigma_r_minus_1(params: &FieldParams) -> Result<SigmaVector, EngineError> {
    let r = params.r();
    if r < 2 {
        return Err(EngineError::Param(crate::error::ParamError::BadR {
            min: 2,
            got: r,
        }));
    }
    let entries: Vec<PolyZ> = match r {
        2 => vec![PolyZ::from_i64(&[-1, 1]), PolyZ::from_i64(&[0, 1])],
        3 => vec![
            PolyZ::from_i64(&[-2, 1, 3, -2]),
            PolyZ::from_i64(&[-1, 1, 2, -2]),
            PolyZ::from_i64(&[0, 1, 1, -1]),
        ],
        4 => vec![
            PolyZ::from_i64(&[-3, 3, 2, -2]),
            PolyZ::from_i64(&[-2, 3, 1, -2]),
            PolyZ::from_i64(&[-2, 2, 1, -1]),
            PolyZ::from_i64(&[0, 2, 0, -1]),
        ],
        5 => vec![
            PolyZ::from_i64(&[-3, 2, 4, -3]),
            PolyZ::from_i64(&[-2, 2, 3, -3]),
            PolyZ::from_i64(&[-2, 1, 3, -2]),
            PolyZ::from_i64(&[0, 1, 1, -2]),
            PolyZ::from_i64(&[0, 0, 1]),
        ],
        6 => vec![
            PolyZ::from_i64(&[-4, 4, 3, -3]),
            PolyZ::from_i64(&[-3, 4, 2, -3]),
            PolyZ::from_i64(&[-3, 3, 2, -2]),
            PolyZ::from_i64(&[-2, 3, 1, -2]),
            PolyZ::from_i64(&[-1, 2, 0, -1]),
            PolyZ::from_i64(&[0, 1]),
        ],
        _ => (0..r).map(|k| sigma_last_large(r, k)).collect(),
    };
    Ok(SigmaVector {
        entries,
        generator_tag: GenTag::DrMinus1,
        tensor_denom: tensor_denom_pow(0),
        prefactor: BigInt::one(),
    })
}

/// sigma(r-1)_k for r >= 7, case split on r mod 4.
fn sigma_last_large(r: usize, k: usize) -> PolyZ {
    let ri = r as i64;
    let ki = k as i64;
    match r % 4 {
        3 => {
            let (e1, e2, e3) = ((r - 3) / 2, (r - 1) / 2, (r + 1) / 2);
            if k == 0 {
                half_pm1(-1, terms(&[(5 - 3 * ri, 0), (ri - 1, 1), (2 * (ri - 1), 2), (ri - 3, e1), (-(ri + 1), e2)]))
            } else if k == 1 {
                half_pm1(-1, terms(&[(7 - 3 * ri, 0), (ri + 1, 1), (2 * (ri - 1), 2), (ri - 3, e1), (-(ri + 1), e2)]))
            } else if k == 2 {
                half_pm1(-1, terms(&[(7 - 3 * ri, 0), (ri - 1, 1), (2 * (ri - 2), 2), (ri - 3, e1), (-(ri + 1), e2)]))
            } else if k < (r - 1) / 2 {
                half_pm1(1, terms(&[(-2 * ki + 3 * ri - 3, 0), (-(ri - 1), 1), (2 * (ki - ri), 2), (-(ri - 3), e1), (ri + 1, e2)]))
            } else if k == (r - 1) / 2 {
                half_pm1(-1, terms(&[(-2 * (ri - 1), 0), (ri - 1, 1), (ri + 1, 2), (ri - 3, e1), (-(ri + 1), e2)]))
            } else if k == (r + 1) / 2 {
                half_pm1(-1, terms(&[(-2 * (ri - 3), 0), (ri - 1, 1), (ri - 1, 2), (ri - 3, e1), (-(ri - 1), e2)]))
            } else if k < r - 2 {
                pm1_times(1, terms(&[(-2 * (ki - ri + 1), 0), (ki - ri, 1), (ki - ri, 2), (ki - ri + 1, e1), (ri - ki, e2)]))
            } else if k == r - 2 {
                terms(&[(-2, 0), (4, 1), (-2, 3), (1, e1), (-3, e2), (2, e3)])
            } else {
                terms(&[(2, 1), (-1, 3), (-1, e2), (1, e3)])
            }
        }
        0 => {
            let (f1, f2, f3) = (r / 2 - 2, r / 2 - 1, r / 2);
            if k == 0 {
                half_pm1(-1, terms(&[(4 - 3 * ri, 0), (ri + 2, 1), (2 * (ri - 2), 2), (ri - 2, f1), (-(ri + 2), f2)]))
            } else if k == 1 {
                half_pm1(-1, terms(&[(-3 * (ri - 2), 0), (ri + 4, 1), (2 * (ri - 2), 2), (ri - 2, f1), (-(ri + 2), f2)]))
            } else if k == 2 {
                half_pm1(-1, terms(&[(-3 * (ri - 2), 0), (ri + 2, 1), (2 * (ri - 3), 2), (ri - 2, f1), (-(ri + 2), f2)]))
            } else if k < r / 2 - 1 {
                half_pm1(1, terms(&[(-2 * ki + 3 * ri - 2, 0), (-(ri + 2), 1), (2 * (ki - ri + 1), 2), (-(ri - 2), f1), (ri + 2, f2)]))
            } else if k == r / 2 - 1 {
                half_pm1(-1, terms(&[(-2 * ri, 0), (ri + 2, 1), (ri, 2), (ri - 2, f1), (-(ri + 2), f2)]))
            } else if k == r / 2 {
                half_pm1(-1, terms(&[(-2 * (ri - 1), 0), (ri, 1), (ri - 2, 2), (ri - 2, f1), (-ri, f2)]))
            } else if k < r - 2 {
                if (k - r / 2) % 2 == 1 {
                    pm1_times(1, terms(&[(-2 * (ki - ri + 1), 0), (ki - ri - 2, 1), (ki - ri, 2), (ki - ri + 1, f1), (ri - ki, f2)]))
                } else {
                    pm1_times(1, terms(&[(-2 * ki + 2 * ri - 1, 0), (ki - ri, 1), (ki - ri + 1, 2), (ki - ri + 1, f1), (ri - ki, f2)]))
                }
            } else if k == r - 2 {
                pm1_times(-1, terms(&[(-3, 0), (2, 1), (1, 2), (1, f1), (-2, f2)]))
            } else {
                terms(&[(3, 1), (-1, 2), (-1, 3), (-1, f2), (1, f3)])
            }
        }
        1 => {
            let (e1, e2, e3) = ((r - 3) / 2, (r - 1) / 2, (r + 1) / 2);
            if k == 0 {
                half_pm1(1, terms(&[(2 * (ri - 2), 0), (ri - 1, 1), (-3 * (ri - 1), 2), (-(ri - 3), e1), (ri + 1, e2)]))
            } else if k == 1 {
                half_pm1(-1, terms(&[(-2 * (ri - 3), 0), (-(ri - 3), 1), (3 * (ri - 1), 2), (ri - 3, e1), (-(ri + 1), e2)]))
            } else if k == 2 {
                half_pm1(-1, terms(&[(-2 * (ri - 3), 0), (-(ri - 1), 1), (3 * ri - 5, 2), (ri - 3, e1), (-(ri + 1), e2)]))
            } else if k < (r - 1) / 2 {
                half_pm1(1, terms(&[(-2 * (ki - ri + 1), 0), (ri - 1, 1), (2 * ki - 3 * ri + 1, 2), (-(ri - 3), e1), (ri + 1, e2)]))
            } else if k == (r - 1) / 2 {
                half_pm1(-1, terms(&[(-(ri - 1), 0), (-(ri - 1), 1), (2 * ri, 2), (ri - 3, e1), (-(ri + 1), e2)]))
            } else if k == (r + 1) / 2 {
                half_pm1(-1, terms(&[(-(ri - 5), 0), (-(ri - 5), 1), (2 * (ri - 1), 2), (ri - 3, e1), (-(ri - 1), e2)]))
            } else if k < r - 2 {
                if (k - (r + 3) / 2) % 2 == 1 {
                    pm1_times(1, terms(&[(-ki + ri - 2, 0), (-ki + ri - 2, 1), (2 * (ki - ri), 2), (ki - ri + 1, e1), (ri - ki, e2)]))
                } else {
                    pm1_times(1, terms(&[(-ki + ri - 1, 0), (ri - ki, 1), (2 * ki - 2 * ri + 1, 2), (ki - ri + 1, e1), (ri - ki, e2)]))
                }
            } else if k == r - 2 {
                pm1_times(-1, terms(&[(4, 2), (1, e1), (-2, e2)]))
            } else {
                terms(&[(2, 2), (-1, 3), (-1, e2), (1, e3)])
            }
        }
        2 => {
            let (f1, f2, f3) = (r / 2 - 2, r / 2 - 1, r / 2);
            if k == 0 {
                half_pm1(1, terms(&[(2 * (ri - 2), 0), (ri - 2, 1), (4 - 3 * ri, 2), (-(ri - 2), f1), (ri + 2, f2)]))
            } else if k == 1 {
                half_pm1(1, terms(&[(2 * (ri - 3), 0), (ri - 4, 1), (4 - 3 * ri, 2), (-(ri - 2), f1), (ri + 2, f2)]))
            } else if k == 2 {
                half_pm1(1, terms(&[(2 * (ri - 3), 0), (ri - 2, 1), (-3 * (ri - 2), 2), (-(ri - 2), f1), (ri + 2, f2)]))
            } else if k < r / 2 - 1 {
                half_pm1(1, terms(&[(-2 * (ki - ri + 1), 0), (ri - 2, 1), (2 * ki - 3 * ri + 2, 2), (-(ri - 2), f1), (ri + 2, f2)]))
            } else if k == r / 2 - 1 {
                half_pm1(1, terms(&[(ri, 0), (ri - 2, 1), (-2 * ri, 2), (-(ri - 2), f1), (ri + 2, f2)]))
            } else if k == r / 2 {
                half_pm1(1, terms(&[(ri - 2, 0), (ri - 4, 1), (-2 * (ri - 1), 2), (-(ri - 2), f1), (ri, f2)]))
            } else if k < r - 2 {
                pm1_times(1, terms(&[(-ki + ri - 1, 0), (-ki + ri - 2, 1), (2 * ki - 2 * ri + 1, 2), (ki - ri + 1, f1), (ri - ki, f2)]))
            } else if k == r - 2 {
                pm1_times(-1, terms(&[(-1, 0), (3, 2), (1, f1), (-2, f2)]))
            } else {
                terms(&[(1, 1), (1, 2), (-1, 3), (-1, f2), (1, f3)])
            }
        }
        _ => unreachable!(),
    }
}
