//! The Upsilon matrix, the g-map from degree-zero cuspidal divisors to
//! delta-quotient exponent vectors, integer-exponent clearing at a claimed
//! generator order, and the sigma oracle derived from the valuation pairing
//! min(k, j) - j.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::divisor::{weighted_degree, CuspidalDivisor};
use crate::error::{DeltaError, DivisorError};
use crate::params::FieldParams;

/// The (r+1) x (r+1) tridiagonal integer matrix of the g-map, with
/// m(j) := min(j, r - j) in the exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonMatrix {
    size: usize,
    entries: Vec<BigInt>, // row-major
}

impl UpsilonMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }
}

pub fn build_upsilon(params: &FieldParams) -> UpsilonMatrix {
    let r = params.r();
    let p = params.abs_p();
    let q1 = BigInt::from(params.q() - 1);
    let m = |j: usize| j.min(r - j);
    let size = r + 1;
    let mut entries = vec![BigInt::zero(); size * size];
    for i in 0..size {
        for j in 0..size {
            let v = if (i, j) == (0, 0) || (i, j) == (r, r) {
                &q1 * &p
            } else if (i, j) == (1, 0) || (i, j) == (r - 1, r) {
                -&q1
            } else if i == j && 1 <= i && i <= r - 1 {
                (&p * &p + BigInt::one()) * p.pow(m(j) as u32 - 1)
            } else if i.abs_diff(j) == 1 && j != 0 && j != r {
                -p.pow(m(j) as u32)
            } else {
                BigInt::zero()
            };
            entries[i * size + j] = v;
        }
    }
    UpsilonMatrix { size, entries }
}

/// Exponent vector (r_m) of the delta-quotient attached to a degree-zero
/// divisor, plus an optional cleared integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaQuotient {
    pub r_exps: Vec<BigRational>,
    pub cleared: Option<Vec<BigInt>>,
}

/// r_exps = Upsilon a / ((q - 1) |p|^(r-1) (|p|^2 - 1)); the entries sum to
/// zero (the delta-quotient condition).
pub fn g_map(d: &CuspidalDivisor, params: &FieldParams) -> Result<DeltaQuotient, DeltaError> {
    let wd = weighted_degree(d, params);
    if !wd.is_zero() {
        return Err(DivisorError::NonzeroDegree(wd.to_string()).into());
    }
    let p = params.abs_p();
    let den = BigInt::from(params.q() - 1)
        * p.pow(params.r() as u32 - 1)
        * (&p * &p - BigInt::one());
    let num = build_upsilon(params).mul_vec(d.coeffs());
    let r_exps: Vec<BigRational> = num
        .into_iter()
        .map(|n| BigRational::new(n, den.clone()))
        .collect();
    debug_assert!(r_exps.iter().sum::<BigRational>().is_zero());
    Ok(DeltaQuotient {
        r_exps,
        cleared: None,
    })
}

/// E = ord (q^2 - 1) Upsilon a / (|p|^(r-1) (|p|^2 - 1)), asserted integral.
/// E_j is (q - 1) times the integer exponent of the cleared delta-quotient.
/// A non-integral entry signals a wrong order (or a divisor outside the
/// generator family).
pub fn integer_exponents(
    d: &CuspidalDivisor,
    ord: &BigInt,
    params: &FieldParams,
) -> Result<Vec<BigInt>, DeltaError> {
    let p = params.abs_p();
    let q = BigInt::from(params.q());
    let scale = ord * (&q * &q - BigInt::one());
    let den = p.pow(params.r() as u32 - 1) * (&p * &p - BigInt::one());
    let num = build_upsilon(params).mul_vec(d.coeffs());
    num.into_iter()
        .enumerate()
        .map(|(index, n)| {
            let e = BigRational::new(n * &scale, den.clone());
            if e.is_integer() {
                Ok(e.to_integer())
            } else {
                Err(DeltaError::NonIntegral {
                    index,
                    value: e.to_string(),
                })
            }
        })
        .collect()
}

/// sigma_k = sum_j E_j (min(k, j) - j) for k = 0..r-1; the delta-image of the
/// class has p-exponent -sigma_k at coordinate k.
pub fn sigma_oracle(e: &[BigInt], params: &FieldParams) -> Vec<BigInt> {
    let r = params.r();
    assert_eq!(e.len(), r + 1, "exponent vector has length r + 1");
    (0..r)
        .map(|k| {
            e.iter()
                .enumerate()
                .map(|(j, ej)| ej * BigInt::from(k.min(j) as i64 - j as i64))
                .sum()
        })
        .collect()
}

/// Element of the tensor product Lambda (x) Q/Z: coordinates u_k over a common
/// positive denominator c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub coords: Vec<BigInt>,
    pub denom: BigInt,
}

impl TensorElement {
    pub fn new(coords: Vec<BigInt>, denom: BigInt) -> Self {
        assert!(denom.is_positive(), "denominator must be positive");
        TensorElement { coords, denom }
    }
}

/// Canonical form in Q/Z: coordinates reduced into [0, c), then the common
/// gcd of all coordinates and c divided out. Two elements are equal in the
/// tensor product iff their canonical forms agree.
pub fn tensor_normalize(raw: &TensorElement) -> TensorElement {
    let c = &raw.denom;
    let coords: Vec<BigInt> = raw
        .coords
        .iter()
        .map(|u| num_integer::Integer::mod_floor(u, c))
        .collect();
    let mut g = c.clone();
    for u in &coords {
        g = num_integer::Integer::gcd(&g, u);
    }
    if g.is_one() {
        return TensorElement {
            coords,
            denom: c.clone(),
        };
    }
    TensorElement {
        coords: coords.iter().map(|u| u / &g).collect(),
        denom: c / &g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{build_c, build_d0, CuspidalDivisor};
    use crate::params::derived_scalars;

    fn params(q: u64, deg_p: u32, r: usize) -> FieldParams {
        FieldParams::new(q, deg_p, r).unwrap()
    }

    #[test]
    fn upsilon_r1() {
        let p = params(3, 1, 1);
        let u = build_upsilon(&p);
        // [[(q-1)P, 1-q], [1-q, (q-1)P]]
        assert_eq!(u.get(0, 0), &BigInt::from(6));
        assert_eq!(u.get(0, 1), &BigInt::from(-2));
        assert_eq!(u.get(1, 0), &BigInt::from(-2));
        assert_eq!(u.get(1, 1), &BigInt::from(6));
    }

    #[test]
    fn upsilon_corners_and_tridiagonal() {
        for r in 2..=50 {
            let p = params(3, 1, r);
            let u = build_upsilon(&p);
            let pp = BigInt::from(3);
            assert_eq!(u.get(0, 0), &(BigInt::from(2) * &pp));
            assert_eq!(u.get(r, r), &(BigInt::from(2) * &pp));
            assert_eq!(u.get(1, 0), &BigInt::from(-2));
            assert_eq!(u.get(r - 1, r), &BigInt::from(-2));
            for i in 0..=r {
                for j in 0..=r {
                    if i.abs_diff(j) >= 2 {
                        assert!(u.get(i, j).is_zero(), "({i},{j}) at r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn g_map_zero_divisor() {
        let p = params(3, 1, 4);
        let g = g_map(&CuspidalDivisor::zero(&p), &p).unwrap();
        assert!(g.r_exps.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn g_map_d0_two_tail_coordinates() {
        // g(D_0) = (0, ..., 0, 1/(P-1), -1/(P-1))
        for (q, deg_p, r) in [(3u64, 1u32, 4usize), (2, 2, 5), (5, 1, 6)] {
            let p = params(q, deg_p, r);
            let g = g_map(&build_d0(&p).unwrap(), &p).unwrap();
            let pm1 = BigRational::from(p.abs_p() - BigInt::one());
            for k in 0..r - 1 {
                assert!(g.r_exps[k].is_zero(), "k={k}");
            }
            assert_eq!(g.r_exps[r - 1], pm1.recip());
            assert_eq!(g.r_exps[r], -pm1.recip());
        }
    }

    #[test]
    fn g_map_rejects_nonzero_degree() {
        let p = params(3, 1, 3);
        let bad = CuspidalDivisor::new(
            vec![
                BigInt::one(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
            ],
            &p,
        )
        .unwrap();
        assert!(g_map(&bad, &p).is_err());
    }

    #[test]
    fn g_map_sums_to_zero_over_generator_family() {
        for q in [2u64, 3, 4, 5] {
            for deg_p in [1u32, 2] {
                for r in 2..=9 {
                    let p = params(q, deg_p, r);
                    let mut divs = vec![build_d0(&p).unwrap()];
                    for i in 0..r {
                        divs.push(build_c(i, &p).unwrap());
                    }
                    for d in divs {
                        let g = g_map(&d, &p).unwrap();
                        assert!(g.r_exps.iter().sum::<BigRational>().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn integer_exponents_c2_r7() {
        // E(C_2) at ord = |p|^(r-2) M, r = 7: (0, -P, P^2+1, -P, 0, 0, P-1, P-P^2)
        let p = params(3, 1, 7);
        let (m, _) = derived_scalars(&p);
        let pp = BigInt::from(3);
        let ord = pp.pow(5) * m;
        let e = integer_exponents(&build_c(2, &p).unwrap(), &ord, &p).unwrap();
        let want: Vec<BigInt> = vec![
            0.into(),
            (-3).into(),
            10.into(),
            (-3).into(),
            0.into(),
            0.into(),
            2.into(),
            (3 - 9).into(),
        ];
        assert_eq!(e, want);
    }

    #[test]
    fn integer_exponents_d0_even_deg() {
        // ord = N, deg p even: E = (0, ..., 0, q-1, -(q-1))
        let p = params(3, 2, 5);
        let (_, n) = derived_scalars(&p);
        let e = integer_exponents(&build_d0(&p).unwrap(), &n, &p).unwrap();
        let mut want = vec![BigInt::zero(); 6];
        want[4] = BigInt::from(2);
        want[5] = BigInt::from(-2);
        assert_eq!(e, want);
    }

    #[test]
    fn integer_exponents_zero_divisor() {
        let p = params(3, 1, 4);
        let e = integer_exponents(&CuspidalDivisor::zero(&p), &BigInt::one(), &p).unwrap();
        assert!(e.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn integer_exponents_rejects_wrong_order() {
        // C_1 at ord = 1 is not integral for q=3, deg_p=1, r=7
        let p = params(3, 1, 7);
        let err = integer_exponents(&build_c(1, &p).unwrap(), &BigInt::one(), &p);
        assert!(matches!(err, Err(DeltaError::NonIntegral { .. })));
    }

    #[test]
    fn sigma_oracle_zero() {
        let p = params(3, 1, 5);
        let sig = sigma_oracle(&vec![BigInt::zero(); 6], &p);
        assert!(sig.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn sigma_oracle_c2_r7_first_coordinate() {
        // sigma_0 = 5P^2 - 9P + 4 at P = 3 -> 22
        let p = params(3, 1, 7);
        let (m, _) = derived_scalars(&p);
        let ord = BigInt::from(3).pow(5) * m;
        let e = integer_exponents(&build_c(2, &p).unwrap(), &ord, &p).unwrap();
        let sig = sigma_oracle(&e, &p);
        assert_eq!(sig[0], BigInt::from(5 * 9 - 9 * 3 + 4));
    }

    #[test]
    fn sigma_oracle_d0_constant() {
        // telescoping: sigma_k = q - 1 at every k (deg p even, ord = N)
        let p = params(3, 2, 6);
        let (_, n) = derived_scalars(&p);
        let e = integer_exponents(&build_d0(&p).unwrap(), &n, &p).unwrap();
        let sig = sigma_oracle(&e, &p);
        assert!(sig.iter().all(|x| x == &BigInt::from(2)));
    }

    #[test]
    fn tensor_normalize_zero() {
        let t = TensorElement::new(vec![BigInt::zero(); 3], BigInt::from(7));
        let n = tensor_normalize(&t);
        assert!(n.coords.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn tensor_normalize_scaled_is_zero() {
        // coords equal to the denominator vanish in Q/Z
        let t = TensorElement::new(vec![BigInt::from(6), BigInt::from(12)], BigInt::from(6));
        let n = tensor_normalize(&t);
        assert!(n.coords.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn tensor_normalize_two_presentations_of_d0() {
        // deg p odd: exponent (q+1) against denominator factor (q-1)
        // vs exponent (q-1) against factor (q+1); both are
        // q^2 - 1 mod (|p| - 1)
        let p = params(3, 1, 5);
        let pm1 = p.abs_p() - BigInt::one();
        let a = TensorElement::new(vec![BigInt::from(4 * 2)], pm1.clone());
        let b = TensorElement::new(vec![BigInt::from(2 * 4)], pm1);
        assert_eq!(tensor_normalize(&a), tensor_normalize(&b));
    }
}
