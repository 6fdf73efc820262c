//! Exact characteristic polynomials `det(xI - M)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::matrix::Matrix;
use crate::numtheory::is_prime;
use crate::poly::{IntPoly, Poly};
use crate::scalar::Ring;
use crate::IntegerMatrix;

/// Characteristic polynomial of an integer matrix, monic of degree `dim`.
pub type CharPoly = IntPoly;

/// Below this dimension Berkowitz over big integers is cheaper than the
/// modular route.
const BERKOWITZ_MAX_DIM: usize = 12;

/// Division-free characteristic polynomial (Berkowitz). Works over any
/// commutative ring, so it doubles as the reference implementation.
pub fn berkowitz<T: Ring>(m: &Matrix<T>) -> Poly<T> {
    let n = m.dim();
    if n == 0 {
        return Poly::one();
    }
    // coefficients of the leading principal minor's char poly, highest first
    let mut v = vec![T::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        let row: Vec<T> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut w: Vec<T> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let mut col = vec![T::one(), -m.get(r, r).clone()];
        for k in 0..r {
            let dot = row.iter().zip(&w).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            col.push(-dot);
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, j| acc + m.get(i, j).clone() * w[j].clone()))
                    .collect();
            }
        }
        let mut next = vec![T::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                *slot = slot.clone() + col[i - j].clone() * v[j].clone();
            }
        }
        v = next;
    }
    v.reverse();
    Poly::new(v)
}

/// Exact characteristic polynomial of an integer matrix.
///
/// Small matrices go through [`berkowitz`]; larger ones are reduced to
/// Hessenberg form modulo enough 31-bit primes to cover the Hadamard-type
/// coefficient bound, then lifted by CRT.
pub fn char_poly_exact(m: &IntegerMatrix) -> CharPoly {
    let n = m.dim();
    if n <= BERKOWITZ_MAX_DIM {
        return berkowitz(&m.map(|&x| BigInt::from(x)));
    }
    // |coeff| <= prod_i (1 + ||row_i||_2); work in log2 with headroom
    let bound_bits: f64 = (0..n)
        .map(|i| {
            let norm2: f64 = m.row(i).iter().map(|&x| (x as f64) * (x as f64)).sum();
            (1.0 + norm2.sqrt()).log2()
        })
        .sum::<f64>()
        + 8.0;
    let primes = crt_primes(bound_bits);
    let residues: Vec<Vec<u64>> = primes.par_iter().map(|&p| char_poly_mod(m, p)).collect();

    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for (p, res) in primes.iter().zip(&residues) {
        let pb = BigInt::from(*p);
        let inv = mod_inverse(&(&modulus % &pb), &pb);
        for (a, &r) in acc.iter_mut().zip(res) {
            // a + modulus * ((r - a) * inv mod p)
            let t = ((BigInt::from(r) - &*a) * &inv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= pb;
    }
    let half = &modulus >> 1;
    let coeffs: Vec<BigInt> = acc
        .into_iter()
        .map(|a| if a > half { a - &modulus } else { a })
        .collect();
    Poly::new(coeffs)
}

fn crt_primes(bits: f64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut total = 0.0;
    let mut p: u64 = (1 << 31) - 1;
    while total <= bits {
        if is_prime(p) {
            out.push(p);
            total += (p as f64).log2();
        }
        p -= 2;
    }
    out
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Characteristic polynomial modulo a prime `p < 2^31`, lowest degree first.
fn char_poly_mod(m: &IntegerMatrix, p: u64) -> Vec<u64> {
    let n = m.dim();
    let pi = p as i64;
    let mut h: Vec<u64> = m.as_slice().iter().map(|&x| x.rem_euclid(pi) as u64).collect();
    let at = |i: usize, j: usize| i * n + j;

    // similarity reduction to upper Hessenberg form
    for c in 1..n.saturating_sub(1) {
        let Some(piv) = (c..n).find(|&i| h[at(i, c - 1)] != 0) else { continue };
        if piv != c {
            for j in 0..n {
                h.swap(at(piv, j), at(c, j));
            }
            for i in 0..n {
                h.swap(at(i, piv), at(i, c));
            }
        }
        let inv = pow_mod(h[at(c, c - 1)], p - 2, p);
        for i in c + 1..n {
            let u = h[at(i, c - 1)] * inv % p;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[at(i, j)] = (h[at(i, j)] + (p - u) * h[at(c, j)]) % p;
            }
            for j in 0..n {
                h[at(j, c)] = (h[at(j, c)] + u * h[at(j, i)]) % p;
            }
        }
    }

    // p_k = (x - h_kk) p_{k-1} - sum_i h_ik (prod sub-diagonal) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut cur = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            cur[d + 1] = (cur[d + 1] + c) % p;
            cur[d] = (cur[d] + (p - h[at(k, k)]) * c) % p;
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = t * h[at(i + 1, i)] % p;
            if t == 0 {
                break;
            }
            let coef = t * h[at(i, k)] % p;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                cur[d] = (cur[d] + (p - coef) * c) % p;
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

/// Checks that `p` is a plausible characteristic polynomial for a matrix of
/// the given dimension.
pub fn is_char_poly_shape(p: &IntPoly, dim: usize) -> bool {
    p.degree() == dim && p.is_monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;

    #[test]
    fn all_ones_matrix() {
        let j3: IntegerMatrix = Matrix::all_ones(3);
        assert_eq!(char_poly_exact(&j3), int_poly(&[0, 0, -3, 1]));
    }

    #[test]
    fn berkowitz_two_by_two() {
        let m = Matrix::from_rows(vec![vec![1i64, 2], vec![3, 4]]).unwrap();
        assert_eq!(berkowitz(&m), Poly::new(vec![-2i64, -5, 1]));
    }

    #[test]
    fn modular_matches_berkowitz() {
        let m: IntegerMatrix = Matrix::from_fn(20, |i, j| ((i * 7 + j * 3) % 5) as i64 - 2);
        let exact = berkowitz(&m.map(|&x| BigInt::from(x)));
        assert_eq!(char_poly_exact(&m), exact);
    }

    #[test]
    fn modular_handles_zero_subdiagonal() {
        let m: IntegerMatrix = Matrix::from_fn(16, |i, j| if (i / 4) != (j / 4) { 1 } else { 0 });
        let exact = berkowitz(&m.map(|&x| BigInt::from(x)));
        assert_eq!(char_poly_exact(&m), exact);
    }
}
