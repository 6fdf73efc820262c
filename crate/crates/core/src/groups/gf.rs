//! Finite fields GF(p^n) with elements packed as base-p digit strings.

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Conway polynomials for the fields the group constructions use, lowest
/// coefficient first.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
];

const MAX_FIELD_SIZE: u32 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    n: u32,
    size: u32,
    modulus: Vec<u32>,
    mul_table: Vec<u32>,
}

impl GaloisField {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameters(format!("field characteristic {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidParameters("field degree must be at least 1".into()));
        }
        let size = (p as u64).checked_pow(n).filter(|&s| s <= MAX_FIELD_SIZE as u64).ok_or_else(
            || Error::InvalidParameters(format!("GF({p}^{n}) exceeds {MAX_FIELD_SIZE} elements")),
        )? as u32;
        let modulus = CONWAY
            .iter()
            .find(|(cp, cn, _)| *cp == p && *cn == n)
            .map(|(_, _, m)| m.to_vec())
            .unwrap_or_else(|| first_irreducible(p, n));
        let mut field = GaloisField { p, n, size, modulus, mul_table: Vec::new() };
        let table = (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .map(|(a, b)| field.mul_slow(a, b))
            .collect();
        field.mul_table = table;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Defining polynomial, lowest coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.pack(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_table[(a * self.size + b) as usize]
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let n = self.n as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        // reduce by the monic modulus from the top
        for k in (n..2 * n).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate() {
                let idx = k - n + j;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..n].iter().map(|&d| d as u32).collect();
        self.pack(&digits)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius automorphism `x -> x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, self.size as u64 - 2))
    }

    /// Human-readable label, e.g. `g^2+2g+1` in terms of the generator `g`.
    pub fn label(&self, a: u32) -> String {
        if self.n == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut terms = Vec::new();
        for k in (0..self.n as usize).rev() {
            let c = d[k];
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && k > 0 { String::new() } else { c.to_string() };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}g"),
                _ => format!("{coef}g^{k}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn poly_rem_mod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm] as u64, p as u64 - 2, p as u64);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p as u64;
            let shift = r.len() - 1 - dm;
            for (j, &mc) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p as u64 - c) * mc as u64 % p as u64) % p as u64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|x| x as u32).collect()
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Monic polynomials of the given degree over Z_p, lowest coefficient first,
/// enumerated in increasing packed order.
fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |mut code| {
        let mut v: Vec<u32> = (0..degree)
            .map(|_| {
                let d = (code % p as u64) as u32;
                code /= p as u64;
                d
            })
            .collect();
        v.push(1);
        v
    })
}

/// Brute-force irreducibility: no monic factor of degree `1..=n/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let n = poly.len() as u32 - 1;
    (1..=n / 2).all(|d| monic_polys(p, d).all(|f| poly_rem_mod(poly, &f, p).iter().any(|&c| c != 0)))
}

fn first_irreducible(p: u32, n: u32) -> Vec<u32> {
    monic_polys(p, n).find(|f| f[0] != 0 && is_irreducible(f, p)).expect("irreducible polynomials exist")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_table_is_irreducible() {
        for (p, _, m) in CONWAY {
            assert!(is_irreducible(m, *p), "{m:?} over GF({p})");
        }
    }

    #[test]
    fn field_axioms_gf8_and_gf9() {
        for (p, n) in [(2, 3), (3, 2), (2, 2), (5, 1)] {
            let f = GaloisField::new(p, n).unwrap();
            let q = f.size();
            for a in 0..q {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inverse(a).unwrap()), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = GaloisField::new(2, 3).unwrap();
        let images: std::collections::HashSet<u32> = f.elements().map(|a| f.frobenius(a)).collect();
        assert_eq!(images.len(), 8);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }

    #[test]
    fn fallback_search_finds_irreducible() {
        let m = first_irreducible(11, 2);
        assert!(is_irreducible(&m, 11));
        let f = GaloisField::new(11, 2).unwrap();
        assert_eq!(f.size(), 121);
    }

    #[test]
    fn labels() {
        let f = GaloisField::new(2, 2).unwrap();
        let labels: Vec<String> = f.elements().map(|a| f.label(a)).collect();
        assert_eq!(labels, vec!["0", "1", "g", "g+1"]);
    }
}
