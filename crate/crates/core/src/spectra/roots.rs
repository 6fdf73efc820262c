//! Real root isolation with Sturm sequences over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{IntPoly, RatPoly};

/// Sign of `p(x)`, from the integer `b^n p(a/b)` with `x = a/b`, `b > 0`.
pub fn sign_at(p: &IntPoly, x: &BigRational) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let coeffs = p.coeffs();
    let Some((lead, rest)) = coeffs.split_last() else { return 0 };
    let mut acc = lead.clone();
    let mut bpow = BigInt::one();
    for c in rest.iter().rev() {
        bpow *= b;
        acc = acc * a + c * &bpow;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// `c p` as an integer polynomial for some rational `c > 0`.
fn positive_int_multiple(p: &RatPoly) -> IntPoly {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
    if content.is_zero() {
        return IntPoly::zero();
    }
    IntPoly::new(ints.into_iter().map(|c| c / &content).collect())
}

pub fn eval_rat(p: &IntPoly, x: &BigRational) -> BigRational {
    p.coeffs()
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let p0 = RatPoly::from_int(p);
        let p1 = p0.derivative();
        let mut seq = vec![p0, p1];
        while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > 0 {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(r.neg());
        }
        if seq.last().unwrap().is_zero() {
            seq.pop();
        }
        SturmChain { seq: seq.iter().map(positive_int_multiple).collect() }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<i8> = self.seq.iter().map(|p| sign_at(p, x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Strict upper bound on the absolute value of every root.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lead = BigRational::from_integer(p.leading().abs());
    let max = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| BigRational::from_integer(c.abs()) / &lead)
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    (max + BigRational::one()).ceil() + BigRational::one()
}

/// Picks a split point inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    let mut k = 2;
    loop {
        for j in 1..k {
            let c = lo + &width * BigRational::new(BigInt::from(j), BigInt::from(k));
            if sign_at(p, &c) != 0 {
                return c;
            }
        }
        k += 1;
    }
}

/// Isolating intervals `(lo, hi)` for the distinct real roots of a squarefree
/// polynomial, ascending. Endpoints are never roots.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<(BigRational, BigRational)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = split_point(p, &lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Outcome of narrowing an isolating interval.
pub enum Refined {
    Interval(BigRational, BigRational),
    Exact(BigRational),
}

/// Bisects an isolating interval of a simple root until it is no wider than
/// `width`.
pub fn refine(p: &IntPoly, lo: &BigRational, hi: &BigRational, width: &BigRational) -> Refined {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_lo = sign_at(p, &lo);
    let two = BigRational::from_integer(BigInt::from(2));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = sign_at(p, &mid);
        if s == 0 {
            return Refined::Exact(mid);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Refined::Interval(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;

    #[test]
    fn a5_cubic_has_three_real_roots() {
        let p = int_poly(&[-480, -324, -50, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
        let approx: Vec<f64> = roots
            .iter()
            .map(|(lo, hi)| {
                let Refined::Interval(a, b) = refine(&p, lo, hi, &BigRational::new(1.into(), (1u64 << 40).into()))
                else {
                    panic!("irrational roots")
                };
                num_traits::ToPrimitive::to_f64(&((a + b) / BigRational::from_integer(2.into()))).unwrap()
            })
            .collect();
        assert!((approx[2] - 55.94).abs() < 0.01, "{approx:?}");
    }

    #[test]
    fn integer_roots_are_found_exactly_or_isolated() {
        // (x-1)(x-2)(x+3)
        let p = int_poly(&[6, -7, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&int_poly(&[1, 0, 1])).is_empty());
    }
}
