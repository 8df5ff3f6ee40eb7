//! Cusp representatives, cusp equivalence, and the closed cuspidal points
//! with their degrees and residue-field descriptors.
//!
//! All invariants depend on the chosen prime p only through |p|, so most of
//! the module works numerically. The exhaustive enumeration used by the
//! consistency tests picks a concrete p: the lexicographically least monic
//! irreducible of the requested degree over F_q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::ParamError;
use crate::params::FieldParams;

/// F_q arithmetic on element indices 0..q. Index digits in base `char_p` are
/// the coefficients of the residue polynomial over F_p.
#[derive(Clone, Debug)]
pub struct Gf {
    pub q: u64,
    char_p: u64,
    ext: u32,
    modulus: Vec<u64>, // monic irreducible over F_p when ext > 1, coeffs over F_p ascending
}

fn fp_poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let deg = modulus.len() - 1;
    for i in (deg..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate().take(deg) {
            let idx = i - deg + j;
            prod[idx] = (prod[idx] + c * (p - m) % p) % p;
        }
    }
    prod.truncate(deg.max(1));
    prod
}

/// Monic polynomial over F_p from its index: constant term = least digit.
fn fp_poly_from_index(n: u64, deg: usize, p: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(deg + 1);
    let mut n = n;
    for _ in 0..deg {
        v.push(n % p);
        n /= p;
    }
    v.push(1);
    v
}

fn fp_poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    // trial division by all monic polynomials of degree 1..=deg/2
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let g = fp_poly_from_index(idx, d, p);
            if fp_poly_divides_exactly(&g, f, p) {
                return false;
            }
        }
    }
    true
}

fn fp_poly_divides_exactly(g: &[u64], f: &[u64], p: u64) -> bool {
    // monic g; long-divide f by g over F_p and test zero remainder
    let mut rem: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() >= g.len() {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let k = rem.len() - 1 - dg;
            for (j, &c) in g.iter().enumerate() {
                let t = (lead * c) % p;
                let idx = k + j;
                rem[idx] = (rem[idx] + p - t) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl Gf {
    pub fn new(params: &FieldParams) -> Self {
        let (char_p, ext) = params.q_split();
        let modulus = if ext == 1 {
            vec![0, 1]
        } else {
            // least monic irreducible of degree ext over F_p, ordered by
            // coefficient index (constant term least significant)
            (0..char_p.pow(ext))
                .map(|n| fp_poly_from_index(n, ext as usize, char_p))
                .find(|f| fp_poly_is_irreducible(f, char_p))
                .expect("an irreducible of every degree exists")
        };
        Gf {
            q: params.q(),
            char_p,
            ext,
            modulus,
        }
    }

    fn digits(&self, x: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.ext as usize];
        let mut x = x;
        for d in v.iter_mut() {
            *d = x % self.char_p;
            x /= self.char_p;
        }
        v
    }

    fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.char_p + c)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.ext == 1 {
            return (a + b) % self.q;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + y) % self.char_p)
            .collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.ext == 1 {
            return (self.q - a) % self.q;
        }
        let da = self.digits(a);
        let neg: Vec<u64> = da.iter().map(|&x| (self.char_p - x) % self.char_p).collect();
        self.from_digits(&neg)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.ext == 1 {
            return (a * b) % self.q;
        }
        let prod = fp_poly_mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.char_p);
        self.from_digits(&prod)
    }
}

/// Polynomial over F_q (element indices), ascending, trailing zeros trimmed.
pub type GfPoly = Vec<u64>;

fn gf_trim(mut v: GfPoly) -> GfPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn gf_poly_scale(gf: &Gf, k: u64, a: &[u64]) -> GfPoly {
    gf_trim(a.iter().map(|&c| gf.mul(k, c)).collect())
}

pub fn gf_poly_mul(gf: &Gf, a: &[u64], b: &[u64]) -> GfPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = gf.add(out[i + j], gf.mul(x, y));
        }
    }
    gf_trim(out)
}

/// Remainder of a modulo monic m.
pub fn gf_poly_rem(gf: &Gf, a: &[u64], m: &[u64]) -> GfPoly {
    assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let mut rem: GfPoly = a.to_vec();
    while rem.len() >= m.len() {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let k = rem.len() - m.len();
            for (j, &c) in m.iter().enumerate() {
                let t = gf.mul(lead, c);
                rem[k + j] = gf.add(rem[k + j], gf.neg(t));
            }
        }
        rem.pop();
    }
    gf_trim(rem)
}

fn gf_poly_is_irreducible(gf: &Gf, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..gf.q.pow(d as u32) {
            let mut g: GfPoly = Vec::with_capacity(d + 1);
            let mut n = idx;
            for _ in 0..d {
                g.push(n % gf.q);
                n /= gf.q;
            }
            g.push(1);
            if gf_poly_rem(gf, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of the given degree over F_q.
pub fn least_irreducible(gf: &Gf, deg: u32) -> GfPoly {
    (0..gf.q.pow(deg))
        .map(|n| {
            let mut v: GfPoly = Vec::with_capacity(deg as usize + 1);
            let mut n = n;
            for _ in 0..deg {
                v.push(n % gf.q);
                n /= gf.q;
            }
            v.push(1);
            v
        })
        .find(|f| gf_poly_is_irreducible(gf, f))
        .expect("an irreducible of every degree exists")
}

/// Cusp representative [a; p^j]: height exponent j and the residue class a
/// modulo d = p^min(j, r-j), stored as a polynomial over F_q of degree
/// < deg(d). The class is 1 when d = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspRep {
    pub height_exp: usize,
    pub numerator_class: GfPoly,
}

/// Height exponents equal and k * a == a' mod d for some k in F_q^x.
pub fn cusp_equiv(c1: &CuspRep, c2: &CuspRep, params: &FieldParams) -> bool {
    if c1.height_exp != c2.height_exp {
        return false;
    }
    let j = c1.height_exp;
    let e = j.min(params.r() - j);
    if e == 0 {
        return true;
    }
    let gf = Gf::new(params);
    let p_poly = least_irreducible(&gf, params.deg_p());
    let mut d = vec![1u64];
    for _ in 0..e {
        d = gf_poly_mul(&gf, &d, &p_poly);
    }
    (1..params.q()).any(|k| {
        gf_poly_rem(&gf, &gf_poly_scale(&gf, k, &c1.numerator_class), &d)
            == gf_poly_rem(&gf, &c2.numerator_class, &d)
    })
}

/// Residue-field descriptor of a closed cuspidal point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueField {
    /// The base field K (the two rational cusp points).
    BaseK,
    /// The maximal real subfield K(p^e)+ of the e-th cyclotomic extension.
    MaxRealSubfield { e: usize },
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueField::BaseK => write!(f, "K"),
            ResidueField::MaxRealSubfield { e } => write!(f, "K(p^{e})+"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    pub index: usize,
    pub d_exp: usize,
    pub degree: BigInt,
    pub residue_field: ResidueField,
}

/// Degree of the closed point with d-exponent e: 1 when e = 0, otherwise
/// (|p|^e - |p|^(e-1))/(q - 1).
fn point_degree(e: usize, params: &FieldParams) -> BigInt {
    if e == 0 {
        return BigInt::one();
    }
    let p = params.abs_p();
    let num = p.pow(e as u32) - p.pow(e as u32 - 1);
    let (deg, rem) = num.div_rem(&BigInt::from(params.q() - 1));
    assert!(rem.is_zero(), "point degree is integral");
    deg
}

/// The r + 1 closed points indexed 0..=r; indices 0 and r are the two
/// K-rational points omega_0 and omega_inf.
pub fn enumerate_closed_points(params: &FieldParams) -> Vec<ClosedPoint> {
    let r = params.r();
    (0..=r)
        .map(|i| {
            let e = i.min(r - i);
            ClosedPoint {
                index: i,
                d_exp: e,
                degree: point_degree(e, params),
                residue_field: if e == 0 {
                    ResidueField::BaseK
                } else {
                    ResidueField::MaxRealSubfield { e }
                },
            }
        })
        .collect()
}

pub fn residue_field(point: &ClosedPoint) -> ResidueField {
    point.residue_field.clone()
}

/// Exhaustive count of cusp equivalence classes at each height: residues
/// coprime to p modulo d = p^e, quotiented by F_q^x scaling. Ground truth for
/// the closed-point degrees.
pub fn enumerate_cusp_classes(params: &FieldParams) -> Result<Vec<u64>, ParamError> {
    let r = params.r();
    let gf = Gf::new(params);
    let p_poly = least_irreducible(&gf, params.deg_p());
    let mut counts = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let e = i.min(r - i);
        if e == 0 {
            counts.push(1);
            continue;
        }
        let deg_d = e * params.deg_p() as usize;
        let total = gf.q.pow(deg_d as u32);
        let mut seen = vec![false; total as usize];
        let mut classes = 0u64;
        for idx in 0..total {
            if seen[idx as usize] {
                continue;
            }
            let mut a: GfPoly = Vec::with_capacity(deg_d);
            let mut n = idx;
            for _ in 0..deg_d {
                a.push(n % gf.q);
                n /= gf.q;
            }
            let a = gf_trim(a);
            if gf_poly_rem(&gf, &a, &p_poly).is_empty() {
                continue; // not coprime to p
            }
            classes += 1;
            for k in 1..gf.q {
                let b = gf_poly_scale(&gf, k, &a);
                let mut bidx = 0u64;
                for d in (0..deg_d).rev() {
                    bidx = bidx * gf.q + b.get(d).copied().unwrap_or(0);
                }
                seen[bidx as usize] = true;
            }
        }
        counts.push(classes);
    }
    Ok(counts)
}
