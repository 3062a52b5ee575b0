//! Finite field arithmetic for the classical `q-1` MOLS of order `q`, with
//! bundled irreducible polynomials for the supported prime powers.

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::mols::MolsSet;

/// GF(p^k) with elements `0..q` encoded base-`p` (digit `i` is the
/// coefficient of `x^i`).
pub struct Gf {
    pub q: usize,
    pub p: usize,
    pub k: usize,
    /// Monic modulus as coefficients `c_0..c_{k-1}` of
    /// `x^k + c_{k-1} x^{k-1} + ... + c_0`, empty for prime fields.
    modulus: Vec<usize>,
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// Bundled moduli: `(p, k, [c_0..c_{k-1}])`.
const MODULI: &[(usize, usize, &[usize])] = &[
    (2, 2, &[1, 1]),    // x^2 + x + 1
    (2, 3, &[1, 1, 0]), // x^3 + x + 1
    (3, 2, &[2, 1]),    // x^2 + x + 2
    (2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
    (5, 2, &[2, 0]),    // x^2 + 2
    (3, 3, &[1, 2, 0]), // x^3 + 2x + 1
];

fn factor_prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Polynomial arithmetic helpers over GF(p). Polynomials are digit vectors,
/// least significant first, no trailing zeros.
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len();
    let mut prod = vec![0usize; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce by x^k = -(c_{k-1} x^{k-1} + ... + c_0)
    for d in (k..prod.len()).rev() {
        let coef = prod[d];
        if coef == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &ci) in modulus.iter().enumerate() {
            let sub = (coef * ci) % p;
            prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn encode(digits: &[usize], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(mut v: usize, p: usize, k: usize) -> Vec<usize> {
    let mut digits = vec![0usize; k];
    for d in digits.iter_mut() {
        *d = v % p;
        v /= p;
    }
    digits
}

/// Trial-division irreducibility over GF(p): no monic factor of degree
/// `1..=deg/2`.
fn is_irreducible(modulus: &[usize], p: usize) -> bool {
    let k = modulus.len();
    // full coefficient vector of the monic modulus, degree k
    let mut full = modulus.to_vec();
    full.push(1);
    for deg in 1..=k / 2 {
        // iterate monic polynomials of this degree
        for idx in 0..p.pow(deg as u32) {
            let mut cand = decode(idx, p, deg);
            cand.push(1);
            // long division: remainder of full by cand (cand is monic)
            let mut rem = full.clone();
            while rem.len() >= cand.len() {
                let lead = *rem.last().unwrap();
                if lead != 0 {
                    let shift = rem.len() - cand.len();
                    for (i, &ci) in cand.iter().enumerate() {
                        let sub = (lead * ci) % p;
                        rem[shift + i] = (rem[shift + i] + p - sub) % p;
                    }
                }
                rem.pop();
            }
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Gf {
    pub fn new(q: usize) -> Result<Gf> {
        let (p, k) = factor_prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        let modulus: Vec<usize> = if k == 1 {
            Vec::new()
        } else {
            let entry = MODULI
                .iter()
                .find(|(mp, mk, _)| *mp == p && *mk == k)
                .ok_or(Error::UnsupportedOrder(q))?;
            assert!(
                is_irreducible(entry.2, p),
                "bundled modulus for GF({q}) is reducible"
            );
            entry.2.to_vec()
        };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                if k == 1 {
                    add[a * q + b] = ((a + b) % p) as u16;
                    mul[a * q + b] = ((a * b) % p) as u16;
                } else {
                    let da = decode(a, p, k);
                    let db = decode(b, p, k);
                    let sum: Vec<usize> =
                        da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                    add[a * q + b] = encode(&sum, p) as u16;
                    mul[a * q + b] = encode(&poly_mul_mod(&da, &db, &modulus, p), p) as u16;
                }
            }
        }
        Ok(Gf {
            q,
            p,
            k,
            modulus,
            add,
            mul,
        })
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }
}

/// Supported non-prime orders; primes are accepted directly.
pub const BUNDLED_PRIME_POWERS: &[usize] = &[4, 8, 9, 16, 25, 27];

/// The classical set of `q - 1` MOLS of order `q`: squares
/// `L_a(x, y) = x + a·y` for `a` ranging over the nonzero field elements.
pub fn field_mols(q: usize) -> Result<MolsSet> {
    let gf = Gf::new(q)?;
    let mut squares = Vec::with_capacity(q - 1);
    for a in 1..q {
        squares.push(LatinSquare::from_fn(q, |x, y| gf.add(x, gf.mul(a, y)))?);
    }
    MolsSet::new(squares)
}
