//! Exact real algebraic numbers of the shapes that occur in these spectra:
//! rationals, quadratic surds and isolated roots of integer polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::roots::{eval_rat, isolate_real_roots, refine, Refined};
use crate::error::{Error, Result};
use crate::numtheory::{isqrt, squarefree_decompose};
use crate::poly::IntPoly;

/// Width, as a power of two, to which polynomial roots are bisected for
/// their float approximant.
const APPROX_BITS: u32 = 42;

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn dyadic(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn from_f64(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap_or_else(BigRational::zero)
}

/// Interval `[lo, hi]` around `sqrt(d)` of width `2^-bits`.
fn sqrt_enclosure(d: &BigInt, bits: u32) -> (BigRational, BigRational) {
    let scale = BigInt::one() << bits;
    let s = isqrt(&(d * &scale * &scale));
    let lo = BigRational::new(s.clone(), scale.clone());
    if &s * &s == d * &scale * &scale {
        return (lo.clone(), lo);
    }
    (lo, BigRational::new(s + 1, scale))
}

fn scale_interval(c: &BigRational, (lo, hi): (BigRational, BigRational)) -> (BigRational, BigRational) {
    let (a, b) = (c * lo, c * hi);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A real root of an irreducible-over-Q factor, pinned by index and an
/// isolating interval.
#[derive(Clone, Debug)]
pub struct PolyRoot {
    poly: IntPoly,
    index: usize,
    lo: BigRational,
    hi: BigRational,
    approx: f64,
}

impl PolyRoot {
    /// `(lo, hi)` must isolate the `index`-th real root (ascending) of the
    /// squarefree polynomial `poly`, with neither endpoint a root.
    pub fn new(poly: IntPoly, index: usize, lo: BigRational, hi: BigRational) -> Self {
        let mut root = PolyRoot { poly, index, lo, hi, approx: 0.0 };
        let (a, b) = root.enclosure(APPROX_BITS);
        root.approx = to_f64(&((a + b) / rat(2)));
        root
    }

    /// All real roots of a squarefree polynomial.
    pub fn all_of(poly: &IntPoly) -> Vec<PolyRoot> {
        isolate_real_roots(poly)
            .into_iter()
            .enumerate()
            .map(|(i, (lo, hi))| PolyRoot::new(poly.clone(), i, lo, hi))
            .collect()
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn error_bound(&self) -> f64 {
        to_f64(&dyadic(APPROX_BITS)) + self.approx.abs() * f64::EPSILON
    }

    /// Interval of width at most `2^-bits` containing the root.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        match refine(&self.poly, &self.lo, &self.hi, &dyadic(bits)) {
            Refined::Interval(a, b) => (a, b),
            Refined::Exact(x) => (x.clone(), x),
        }
    }

    /// Sign of the root, decided by narrowing until zero is excluded.
    pub fn signum(&self) -> i8 {
        let mut bits = 8;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            if lo.is_zero() && hi.is_zero() {
                return 0;
            }
            bits *= 2;
        }
    }

    /// The root scaled by a nonzero integer, as a root of
    /// `c^k p(x / c)`.
    pub fn scale_int(&self, c: &BigInt) -> PolyRoot {
        let k = self.poly.degree();
        let coeffs: Vec<BigInt> = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| a * num_traits::pow(c.clone(), k - i))
            .collect();
        let poly = IntPoly::new(coeffs);
        let cr = BigRational::from_integer(c.clone());
        let (lo, hi) = scale_interval(&cr, (self.lo.clone(), self.hi.clone()));
        let count = isolate_real_roots(&poly).len();
        let index = if c.is_positive() { self.index } else { count - 1 - self.index };
        PolyRoot { poly, index, lo, hi, approx: self.approx * to_f64(&cr) }
    }
}

impl PartialEq for PolyRoot {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.index == other.index
    }
}

/// An exact eigenvalue, or a flagged float when no exact form is kept.
#[derive(Clone, Debug)]
pub enum AlgebraicValue {
    Rational(BigRational),
    /// `a + b sqrt(d)` with `b != 0` and `d >= 2` squarefree.
    Surd { a: BigRational, b: BigRational, d: BigInt },
    PolyRoot(PolyRoot),
    /// Float with absolute error bound, used only where exactness was given up.
    Approx { value: f64, error: f64 },
}

/// Relative tolerance for merging float-only values.
pub const APPROX_MERGE_TOL: f64 = 1e-6;

impl PartialEq for AlgebraicValue {
    fn eq(&self, other: &Self) -> bool {
        use AlgebraicValue::*;
        match (self, other) {
            (Rational(x), Rational(y)) => x == y,
            (Surd { a, b, d }, Surd { a: a2, b: b2, d: d2 }) => a == a2 && b == b2 && d == d2,
            (PolyRoot(x), PolyRoot(y)) => x == y,
            (Approx { value: x, .. }, Approx { value: y, .. }) => {
                (x - y).abs() <= APPROX_MERGE_TOL * x.abs().max(y.abs()).max(1.0)
            }
            _ => false,
        }
    }
}

impl AlgebraicValue {
    pub fn int(n: i64) -> Self {
        AlgebraicValue::Rational(rat(n))
    }

    pub fn integer(n: BigInt) -> Self {
        AlgebraicValue::Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        AlgebraicValue::int(0)
    }

    /// `a + b sqrt(disc)`, normalized: squares are pulled out of `disc` and
    /// rational results collapse to `Rational`.
    pub fn surd(a: BigRational, b: BigRational, disc: BigInt) -> Result<Self> {
        if b.is_zero() || disc.is_zero() {
            return Ok(AlgebraicValue::Rational(a));
        }
        if disc.is_negative() {
            return Err(Error::Unsupported("square root of a negative number".into()));
        }
        let (s, d) = squarefree_decompose(&disc)
            .ok_or_else(|| Error::Unsupported(format!("cannot factor {disc} to normalize a surd")))?;
        let b = b * BigRational::from_integer(s);
        if d.is_one() {
            Ok(AlgebraicValue::Rational(a + b))
        } else {
            Ok(AlgebraicValue::Surd { a, b, d })
        }
    }

    /// Both roots of `c2 x^2 + c1 x + c0`, smaller first.
    pub fn quadratic_roots(c2: &BigInt, c1: &BigInt, c0: &BigInt) -> Result<[Self; 2]> {
        let disc = c1 * c1 - BigInt::from(4) * c2 * c0;
        let den = BigRational::from_integer(BigInt::from(2) * c2);
        let a = BigRational::from_integer(-c1) / &den;
        let b = BigRational::one() / &den;
        let x = AlgebraicValue::surd(a.clone(), -b.clone(), disc.clone())?;
        let y = AlgebraicValue::surd(a, b, disc)?;
        Ok(if x.approx() <= y.approx() { [x, y] } else { [y, x] })
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AlgebraicValue::Approx { .. })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            AlgebraicValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn approx(&self) -> f64 {
        match self {
            AlgebraicValue::Rational(r) => to_f64(r),
            AlgebraicValue::Surd { a, b, d } => to_f64(a) + to_f64(b) * d.to_f64().unwrap_or(f64::NAN).sqrt(),
            AlgebraicValue::PolyRoot(p) => p.approx(),
            AlgebraicValue::Approx { value, .. } => *value,
        }
    }

    pub fn error_bound(&self) -> f64 {
        match self {
            AlgebraicValue::Rational(_) | AlgebraicValue::Surd { .. } => 4.0 * f64::EPSILON * self.approx().abs(),
            AlgebraicValue::PolyRoot(p) => p.error_bound(),
            AlgebraicValue::Approx { error, .. } => *error,
        }
    }

    /// Rational interval containing the value; width at most about `2^-bits`
    /// for the exact kinds.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        match self {
            AlgebraicValue::Rational(r) => (r.clone(), r.clone()),
            AlgebraicValue::Surd { a, b, d } => {
                let extra = b.abs().to_integer().bits() as u32 + 1;
                let (lo, hi) = scale_interval(b, sqrt_enclosure(d, bits + extra));
                (a + lo, a + hi)
            }
            AlgebraicValue::PolyRoot(p) => p.enclosure(bits),
            AlgebraicValue::Approx { value, error } => (from_f64(value - error), from_f64(value + error)),
        }
    }

    /// Sign of the value; `None` only for floats whose bound straddles zero.
    pub fn signum(&self) -> Option<i8> {
        match self {
            AlgebraicValue::Rational(r) => Some(sign_of(r)),
            AlgebraicValue::Surd { a, b, d } => Some(surd_sign(a, b, d)),
            AlgebraicValue::PolyRoot(p) => Some(p.signum()),
            AlgebraicValue::Approx { value, error } => {
                if value.abs() > *error {
                    Some(if *value > 0.0 { 1 } else { -1 })
                } else {
                    None
                }
            }
        }
    }

    /// Product of two eigenvalues. The flag is set when the result had to be
    /// downgraded to a float.
    pub fn mul(&self, other: &Self) -> (Self, bool) {
        use AlgebraicValue::*;
        let exact = match (self, other) {
            (Rational(x), Rational(y)) => Some(Rational(x * y)),
            (Rational(r), Surd { a, b, d }) | (Surd { a, b, d }, Rational(r)) => {
                Some(if r.is_zero() { Rational(r.clone()) } else { Surd { a: a * r, b: b * r, d: d.clone() } })
            }
            (Surd { a, b, d }, Surd { a: a2, b: b2, d: d2 }) if d == d2 => {
                let ra = a * a2 + b * b2 * BigRational::from_integer(d.clone());
                let rb = a * b2 + a2 * b;
                AlgebraicValue::surd(ra, rb, d.clone()).ok()
            }
            (Rational(r), PolyRoot(p)) | (PolyRoot(p), Rational(r)) if r.is_integer() => Some(if r.is_zero() {
                Rational(r.clone())
            } else if r.is_one() {
                PolyRoot(p.clone())
            } else {
                PolyRoot(p.scale_int(&r.to_integer()))
            }),
            _ => None,
        };
        match exact {
            Some(v) => (v, false),
            None => {
                let (x, y) = (self.approx(), other.approx());
                let (ex, ey) = (self.error_bound(), other.error_bound());
                let value = x * y;
                let error = x.abs() * ey + y.abs() * ex + ex * ey + 4.0 * f64::EPSILON * value.abs();
                (Approx { value, error }, true)
            }
        }
    }

    /// Orders two values, narrowing enclosures as needed. Floats compare by
    /// value.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if !self.is_exact() || !other.is_exact() {
            return self.approx().partial_cmp(&other.approx()).unwrap_or(Ordering::Equal);
        }
        let mut bits = 32;
        loop {
            let (a_lo, a_hi) = self.enclosure(bits);
            let (b_lo, b_hi) = other.enclosure(bits);
            if a_hi < b_lo {
                return Ordering::Less;
            }
            if b_hi < a_lo {
                return Ordering::Greater;
            }
            if bits > 1 << 14 {
                return self.approx().partial_cmp(&other.approx()).unwrap_or(Ordering::Equal);
            }
            bits *= 2;
        }
    }

    /// JSON form: `{"kind": ..., fields..., "approx": f}`.
    pub fn to_json(&self) -> Value {
        match self {
            AlgebraicValue::Rational(r) => json!({"kind": "rational", "value": r.to_string(), "approx": self.approx()}),
            AlgebraicValue::Surd { a, b, d } => json!({
                "kind": "surd", "a": a.to_string(), "b": b.to_string(), "d": d.to_string(), "approx": self.approx()
            }),
            AlgebraicValue::PolyRoot(p) => json!({
                "kind": "polyroot",
                "poly": p.poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "index": p.index,
                "lo": p.lo.to_string(),
                "hi": p.hi.to_string(),
                "approx": p.approx,
            }),
            AlgebraicValue::Approx { value, error } => json!({"kind": "approx", "approx": value, "error": error}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| -> Result<&str> {
            v.get(k).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing string field `{k}`")))
        };
        let parse_rat = |k: &str| -> Result<BigRational> {
            field(k)?.parse().map_err(|_| Error::Parse(format!("bad rational in `{k}`")))
        };
        match v.get("kind").and_then(Value::as_str) {
            Some("rational") => Ok(AlgebraicValue::Rational(parse_rat("value")?)),
            Some("surd") => {
                let d: BigInt = field("d")?.parse().map_err(|_| Error::Parse("bad integer in `d`".into()))?;
                AlgebraicValue::surd(parse_rat("a")?, parse_rat("b")?, d)
            }
            Some("polyroot") => {
                let coeffs = v
                    .get("poly")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("missing `poly`".into()))?
                    .iter()
                    .map(|c| c.as_str().and_then(|s| s.parse::<BigInt>().ok()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Parse("bad polynomial coefficient".into()))?;
                let index = v
                    .get("index")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("missing `index`".into()))? as usize;
                Ok(AlgebraicValue::PolyRoot(PolyRoot::new(
                    IntPoly::new(coeffs),
                    index,
                    parse_rat("lo")?,
                    parse_rat("hi")?,
                )))
            }
            Some("approx") => Ok(AlgebraicValue::Approx {
                value: v.get("approx").and_then(Value::as_f64).unwrap_or(f64::NAN),
                error: v.get("error").and_then(Value::as_f64).unwrap_or(f64::NAN),
            }),
            _ => Err(Error::Parse("unknown eigenvalue kind".into())),
        }
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `a + b sqrt(d)`, comparing `a^2` against `b^2 d` when the terms
/// disagree.
pub fn surd_sign(a: &BigRational, b: &BigRational, d: &BigInt) -> i8 {
    let (sa, sb) = (sign_of(a), sign_of(b));
    if sa == 0 || sa == sb {
        return sb;
    }
    if sb == 0 {
        return sa;
    }
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn fmt_rat(r: &BigRational) -> String {
    r.to_string()
}

fn fmt_surd_part(b: &BigRational, d: &BigInt) -> String {
    if b.abs().is_one() {
        format!("sqrt({d})")
    } else if b.is_integer() {
        format!("{}*sqrt({d})", b.abs())
    } else if b.numer().abs().is_one() {
        format!("sqrt({d})/{}", b.denom())
    } else {
        format!("{}*sqrt({d})/{}", b.numer().abs(), b.denom())
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicValue::Rational(r) => write!(f, "{}", fmt_rat(r)),
            AlgebraicValue::Surd { a, b, d } => {
                let s = fmt_surd_part(b, d);
                if a.is_zero() {
                    write!(f, "{}{}", if b.is_negative() { "-" } else { "" }, s)
                } else {
                    write!(f, "{} {} {}", fmt_rat(a), if b.is_negative() { '-' } else { '+' }, s)
                }
            }
            AlgebraicValue::PolyRoot(p) => write!(f, "root{}[{}]~{:.6}", p.index, p.poly, p.approx),
            AlgebraicValue::Approx { value, error } => write!(f, "~{value:.9}(+-{error:.1e})"),
        }
    }
}

/// Formal sum `sum_d c_d sqrt(d)` over squarefree `d`; `d = 1` is the
/// rational part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum::default()
    }

    pub fn rational(r: BigRational) -> Self {
        let mut s = SurdSum::zero();
        s.add_term(BigInt::one(), r);
        s
    }

    pub fn int(n: i64) -> Self {
        SurdSum::rational(rat(n))
    }

    /// Adds `c sqrt(d)`; `d` must already be squarefree.
    pub fn add_term(&mut self, d: BigInt, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    /// Adds `c * v` for an exact rational or surd value.
    pub fn add_value(&mut self, v: &AlgebraicValue, c: &BigRational) -> bool {
        match v {
            AlgebraicValue::Rational(r) => self.add_term(BigInt::one(), r * c),
            AlgebraicValue::Surd { a, b, d } => {
                self.add_term(BigInt::one(), a * c);
                self.add_term(d.clone(), b * c);
            }
            _ => return false,
        }
        true
    }

    pub fn add(&self, other: &SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> SurdSum {
        let mut out = SurdSum::zero();
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * k);
        }
        out
    }

    pub fn neg(&self) -> SurdSum {
        self.scale(&rat(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.terms.iter()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    pub fn approx(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| to_f64(c) * d.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (d, c) in &self.terms {
            if d.is_one() {
                lo += c;
                hi += c;
                continue;
            }
            let extra = c.abs().to_integer().bits() as u32 + 1;
            let (a, b) = scale_interval(c, sqrt_enclosure(d, bits + extra));
            lo += a;
            hi += b;
        }
        (lo, hi)
    }

    /// Exact sign. Square roots of distinct squarefree integers are linearly
    /// independent over Q, so a nonzero formal sum is a nonzero number and
    /// narrowing terminates.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return sign_of(&r);
        }
        if self.terms.len() == 2 {
            if let Some(q) = self.terms.get(&BigInt::one()) {
                let (d, b) = self.terms.iter().find(|(d, _)| !d.is_one()).unwrap();
                return surd_sign(q, b, d);
            }
        }
        let mut bits = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            let body = if d.is_one() { fmt_rat(&c.abs()) } else { fmt_surd_part(c, d) };
            if first {
                write!(f, "{}{}", if c.is_negative() { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if c.is_negative() { '-' } else { '+' }, body)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Exact real roots of a monic squarefree integer polynomial.
///
/// Integer roots come out as rationals, quadratic factors with integer
/// coefficients as surds, and whatever is left as isolated roots.
pub fn roots_of_squarefree(f: &IntPoly) -> Result<Vec<AlgebraicValue>> {
    if !f.is_monic() {
        return Err(Error::Unsupported("root extraction expects a monic polynomial".into()));
    }
    let mut f = f.clone();
    let mut out = Vec::new();
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    for (lo, hi) in isolate_real_roots(&f) {
        let candidates = match refine(&f, &lo, &hi, &quarter) {
            Refined::Exact(x) => vec![x],
            Refined::Interval(a, b) => {
                let (a, b) = (a.ceil().to_integer(), b.floor().to_integer());
                num_iter_range(&a, &b).map(BigRational::from_integer).collect()
            }
        };
        for z in candidates.into_iter().filter(|z| z.is_integer()) {
            if let Some(q) = f.deflate(&z.to_integer()) {
                f = q;
                out.push(AlgebraicValue::Rational(z));
            }
        }
    }
    peel_quadratics(&mut f, &mut out)?;
    match f.degree() {
        0 => {}
        2 => out.extend(AlgebraicValue::quadratic_roots(&f.coeff(2), &f.coeff(1), &f.coeff(0))?),
        deg => {
            let roots = PolyRoot::all_of(&f);
            if roots.len() != deg {
                return Err(Error::Unsupported(format!("{f} has non-real roots")));
            }
            out.extend(roots.into_iter().map(AlgebraicValue::PolyRoot));
        }
    }
    Ok(out)
}

fn num_iter_range(a: &BigInt, b: &BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = a.clone();
    let end = b.clone();
    std::iter::from_fn(move || {
        if cur > end {
            None
        } else {
            let v = cur.clone();
            cur += 1;
            Some(v)
        }
    })
}

/// Splits off monic integer quadratic factors found by pairing numeric
/// roots.
fn peel_quadratics(f: &mut IntPoly, out: &mut Vec<AlgebraicValue>) -> Result<()> {
    'outer: while f.degree() >= 3 {
        let mids: Vec<BigRational> = isolate_real_roots(f)
            .into_iter()
            .map(|(lo, hi)| match refine(f, &lo, &hi, &dyadic(60)) {
                Refined::Interval(a, b) => (a + b) / rat(2),
                Refined::Exact(x) => x,
            })
            .collect();
        let tol = dyadic(20);
        for i in 0..mids.len() {
            for j in i + 1..mids.len() {
                let s = &mids[i] + &mids[j];
                let p = &mids[i] * &mids[j];
                let (sr, pr) = (s.round(), p.round());
                if (&s - &sr).abs() > tol.clone() || (&p - &pr).abs() > &tol * (pr.abs() + rat(1)) {
                    continue;
                }
                let q = IntPoly::new(vec![pr.to_integer(), -sr.to_integer(), BigInt::one()]);
                if let Some(rest) = f.div_exact_monic(&q) {
                    out.extend(AlgebraicValue::quadratic_roots(&q.coeff(2), &q.coeff(1), &q.coeff(0))?);
                    *f = rest;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(())
}

/// Value of `p` at a rational point, exposed for certificate checks.
pub fn eval_at(p: &IntPoly, x: &BigRational) -> BigRational {
    eval_rat(p, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;

    #[test]
    fn surd_normalization() {
        let v = AlgebraicValue::surd(rat(2), rat(1), BigInt::from(28)).unwrap();
        assert_eq!(v, AlgebraicValue::Surd { a: rat(2), b: rat(2), d: BigInt::from(7) });
        let w = AlgebraicValue::surd(rat(1), rat(1), BigInt::from(9)).unwrap();
        assert_eq!(w, AlgebraicValue::int(4));
    }

    #[test]
    fn surd_signs() {
        assert_eq!(surd_sign(&rat(3), &rat(-1), &BigInt::from(7)), 1);
        assert_eq!(surd_sign(&rat(2), &rat(-1), &BigInt::from(7)), -1);
        assert_eq!(surd_sign(&rat(-3), &rat(2), &BigInt::from(3)), 1);
    }

    #[test]
    fn quadratic_roots_of_a4_factor() {
        let [lo, hi] = AlgebraicValue::quadratic_roots(&1.into(), &(-6).into(), &(-24).into()).unwrap();
        assert_eq!(lo, AlgebraicValue::Surd { a: rat(3), b: rat(-1), d: BigInt::from(33) });
        assert_eq!(hi, AlgebraicValue::Surd { a: rat(3), b: rat(1), d: BigInt::from(33) });
    }

    #[test]
    fn roots_mixed_factor() {
        // (x - 4)(x^2 - 6x - 24)(x^3 - 50x^2 - 324x - 480)
        let f = int_poly(&[-4, 1]).mul(&int_poly(&[-24, -6, 1])).mul(&int_poly(&[-480, -324, -50, 1]));
        let roots = roots_of_squarefree(&f).unwrap();
        assert_eq!(roots.len(), 6);
        assert!(roots.contains(&AlgebraicValue::int(4)));
        assert_eq!(roots.iter().filter(|r| matches!(r, AlgebraicValue::Surd { .. })).count(), 2);
        assert_eq!(roots.iter().filter(|r| matches!(r, AlgebraicValue::PolyRoot(_))).count(), 3);
    }

    #[test]
    fn polyroot_scaling_negative() {
        let p = int_poly(&[-480, -324, -50, 1]);
        let roots = PolyRoot::all_of(&p);
        let scaled = roots[2].scale_int(&BigInt::from(-2));
        assert_eq!(scaled.index(), 0);
        assert!((scaled.approx() + 2.0 * roots[2].approx()).abs() < 1e-9);
        let (lo, hi) = scaled.enclosure(30);
        assert!(to_f64(&lo) < scaled.approx() && scaled.approx() < to_f64(&hi) + 1e-9);
    }

    #[test]
    fn surd_sum_sign_with_two_radicals() {
        // 4 sqrt(13) - 4 sqrt(5) - 8 > 0 ?  14.42 - 8.94 - 8 < 0
        let mut s = SurdSum::int(-8);
        s.add_term(BigInt::from(13), rat(4));
        s.add_term(BigInt::from(5), rat(-4));
        assert_eq!(s.signum(), -1);
    }

    #[test]
    fn json_round_trip() {
        let vals = vec![
            AlgebraicValue::int(-3),
            AlgebraicValue::surd(rat(1), rat(-3), BigInt::from(7)).unwrap(),
            AlgebraicValue::PolyRoot(PolyRoot::all_of(&int_poly(&[-480, -324, -50, 1]))[1].clone()),
        ];
        for v in vals {
            assert_eq!(AlgebraicValue::from_json(&v.to_json()).unwrap(), v);
        }
    }
}
