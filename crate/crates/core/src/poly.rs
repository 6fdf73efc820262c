//! Dense univariate polynomials, coefficients stored lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: T) -> Self {
        Poly::new(vec![-r, T::one()])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut v = vec![T::zero(); degree + 1];
        v[degree] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            out.push(c.clone() * k.clone());
            k = k + T::one();
        }
        if !out.is_empty() {
            out.remove(0);
        }
        Poly::new(out)
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root 0.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Divides by `x - r` when the division is exact.
    pub fn deflate(&self, r: &T) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let mut q = vec![T::zero(); n - 1];
        let mut carry = T::zero();
        for k in (0..n).rev() {
            let v = self.coeffs[k].clone() + carry.clone() * r.clone();
            if k == 0 {
                return if v.is_zero() { Some(Poly::new(q)) } else { None };
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Exact division by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let (q, r) = self.div_rem_monic(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree();
        if self.coeffs.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![T::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            q[k - d] = c.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = rem[k - d + j].clone() - c.clone() * b.clone();
            }
        }
        rem.truncate(d);
        (Poly::new(q), Poly::new(rem))
    }
}

impl RatPoly {
    pub fn from_int(p: &IntPoly) -> Self {
        Poly::new(p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let lc = divisor.leading();
        let monic = divisor.monic();
        let (q, r) = self.div_rem_monic(&monic);
        (q.scale(&(BigRational::one() / lc)), r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Clears denominators and removes the content, leaving a primitive
    /// integer polynomial with positive leading coefficient.
    pub fn primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut p = Poly::new(ints.into_iter().map(|c| c / &content).collect::<Vec<_>>());
        if p.leading().is_negative() {
            p = p.neg();
        }
        p
    }
}

impl IntPoly {
    /// Squarefree decomposition (Yun): returns `(factor, multiplicity)` pairs
    /// with primitive integer factors of positive degree.
    pub fn squarefree_factors(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = RatPoly::from_int(self).monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.primitive_int(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

fn fmt_term<T: fmt::Display + Signed>(
    f: &mut fmt::Formatter<'_>,
    c: &T,
    k: usize,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    let unit = abs.is_one();
    match k {
        0 => write!(f, "{}", abs),
        1 if unit => write!(f, "x"),
        1 => write!(f, "{}x", abs),
        _ if unit => write!(f, "x^{}", k),
        _ => write!(f, "{}x^{}", abs, k),
    }
}

impl<T: Ring + fmt::Display + Signed> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, k, first)?;
            first = false;
        }
        Ok(())
    }
}

impl<T: Ring + fmt::Display + Signed> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Builds an integer polynomial from `i64` coefficients, lowest degree first.
pub fn int_poly(coeffs: &[i64]) -> IntPoly {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_eval() {
        let p = int_poly(&[-480, -324, -50, 1]);
        assert_eq!(p.to_string(), "x^3 - 50x^2 - 324x - 480");
        assert_eq!(p.eval(&BigInt::from(0)), BigInt::from(-480));
    }

    #[test]
    fn deflate_exact_and_inexact() {
        // (x + 2)(x - 3)
        let p = int_poly(&[-6, -1, 1]);
        assert_eq!(p.deflate(&BigInt::from(-2)), Some(int_poly(&[-3, 1])));
        assert_eq!(p.deflate(&BigInt::from(1)), None);
    }

    #[test]
    fn yun_on_known_product() {
        // x^2 (x + 2)^3 (x^2 - 6x - 24)
        let p = int_poly(&[0, 1])
            .pow(2)
            .mul(&int_poly(&[2, 1]).pow(3))
            .mul(&int_poly(&[-24, -6, 1]));
        let f = p.squarefree_factors();
        assert_eq!(
            f,
            vec![(int_poly(&[-24, -6, 1]), 1), (int_poly(&[0, 1]), 2), (int_poly(&[2, 1]), 3)]
        );
    }

    #[test]
    fn monic_division() {
        let p = int_poly(&[1, 0, 0, 1]); // x^3 + 1
        let (q, r) = p.div_rem_monic(&int_poly(&[1, 1]));
        assert_eq!(q, int_poly(&[1, -1, 1]));
        assert!(r.is_zero());
    }
}
