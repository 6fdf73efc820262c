//! Graph energy, Laplacian energy and their exact comparison.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use serde_json::{json, Value};

use super::algebraic::{to_f64, AlgebraicValue, PolyRoot, SurdSum};
use super::spectrum::{SpectrumKind, SpectrumMultiset};
use crate::error::{Error, Result};

/// Refinement cap, in bits, before a comparison is declared inconclusive.
const MAX_BITS: u32 = 4096;

/// `exact + sum c_i root_i + numeric`, where `numeric` carries an absolute
/// error bound and is zero whenever every eigenvalue was exact.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyValue {
    exact: SurdSum,
    roots: Vec<(PolyRoot, BigRational)>,
    numeric: f64,
    numeric_error: f64,
}

impl EnergyValue {
    pub fn exact(s: SurdSum) -> Self {
        EnergyValue { exact: s, roots: Vec::new(), numeric: 0.0, numeric_error: 0.0 }
    }

    pub fn rational(r: BigRational) -> Self {
        EnergyValue::exact(SurdSum::rational(r))
    }

    pub fn float(value: f64, error: f64) -> Self {
        EnergyValue { exact: SurdSum::zero(), roots: Vec::new(), numeric: value, numeric_error: error }
    }

    pub fn surd_part(&self) -> &SurdSum {
        &self.exact
    }

    pub fn roots(&self) -> &[(PolyRoot, BigRational)] {
        &self.roots
    }

    /// True when the value is a finite sum of rational multiples of square
    /// roots.
    pub fn is_closed_form(&self) -> bool {
        self.roots.is_empty() && !self.has_float()
    }

    /// True when some term had to be carried as a float.
    pub fn has_float(&self) -> bool {
        self.numeric != 0.0 || self.numeric_error != 0.0
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_closed_form() {
            self.exact.as_rational()
        } else {
            None
        }
    }

    fn add_root(&mut self, root: &PolyRoot, c: BigRational) {
        match self.roots.iter_mut().find(|(r, _)| r == root) {
            Some(e) => e.1 += c,
            None => self.roots.push((root.clone(), c)),
        }
        self.roots.retain(|(_, c)| !c.is_zero());
    }

    pub fn add(&self, other: &EnergyValue) -> EnergyValue {
        let mut out = self.clone();
        out.exact = out.exact.add(&other.exact);
        for (r, c) in &other.roots {
            out.add_root(r, c.clone());
        }
        out.numeric += other.numeric;
        out.numeric_error += other.numeric_error;
        out
    }

    pub fn neg(&self) -> EnergyValue {
        EnergyValue {
            exact: self.exact.neg(),
            roots: self.roots.iter().map(|(r, c)| (r.clone(), -c)).collect(),
            numeric: -self.numeric,
            numeric_error: self.numeric_error,
        }
    }

    pub fn sub(&self, other: &EnergyValue) -> EnergyValue {
        self.add(&other.neg())
    }

    pub fn approx(&self) -> f64 {
        self.exact.approx() + self.roots.iter().map(|(r, c)| r.approx() * to_f64(c)).sum::<f64>() + self.numeric
    }

    pub fn error_bound(&self) -> f64 {
        let roots: f64 = self.roots.iter().map(|(r, c)| r.error_bound() * to_f64(c).abs()).sum();
        roots + self.numeric_error + 8.0 * f64::EPSILON * self.approx().abs()
    }

    /// Rational interval containing the value.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let (mut lo, mut hi) = self.exact.enclosure(bits);
        for (r, c) in &self.roots {
            let extra = c.abs().to_integer().bits() as u32 + 1;
            let (a, b) = r.enclosure(bits + extra);
            let (a, b) = (c * a, c * b);
            if a <= b {
                lo += a;
                hi += b;
            } else {
                lo += b;
                hi += a;
            }
        }
        if self.has_float() {
            lo += BigRational::from_f64(self.numeric - self.numeric_error).unwrap_or_else(BigRational::zero);
            hi += BigRational::from_f64(self.numeric + self.numeric_error).unwrap_or_else(BigRational::zero);
        }
        (lo, hi)
    }

    /// Sign of the value; `None` when float error bounds or the refinement cap
    /// leave it undecided.
    pub fn signum(&self) -> Option<i8> {
        if self.is_closed_form() {
            return Some(self.exact.signum());
        }
        if self.roots.is_empty() && self.exact.is_zero() && !self.has_float() {
            return Some(0);
        }
        let mut bits = 32;
        while bits <= MAX_BITS {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Some(1);
            }
            if hi.is_negative() {
                return Some(-1);
            }
            if self.has_float() && self.roots.is_empty() {
                return None;
            }
            bits *= 2;
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({"approx": self.approx(), "error_bound": self.error_bound()});
        if !self.has_float() {
            obj["exact"] = json!(self.to_string());
        }
        if let Some(r) = self.as_rational() {
            obj["rational"] = json!(r.to_string());
        }
        obj
    }
}

impl fmt::Display for EnergyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.exact.is_zero() || (self.roots.is_empty() && !self.has_float()) {
            parts.push(self.exact.to_string());
        }
        for (r, c) in &self.roots {
            parts.push(format!("{c}*{}", AlgebraicValue::PolyRoot(r.clone())));
        }
        if self.has_float() {
            parts.push(format!("~{:.9}", self.numeric));
        }
        write!(f, "{}", parts.join(" + "))?;
        if !self.is_closed_form() {
            write!(f, " (~{:.6})", self.approx())?;
        }
        Ok(())
    }
}

/// Outcome of comparing E against LE.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Less,
    Equal,
    Greater,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Less => "E<LE",
            Verdict::Equal => "E=LE",
            Verdict::Greater => "E>LE",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// True for `E <= LE`.
    pub fn is_at_most(self) -> bool {
        matches!(self, Verdict::Less | Verdict::Equal)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn compare_energies(e: &EnergyValue, le: &EnergyValue) -> Verdict {
    match e.sub(le).signum() {
        Some(-1) => Verdict::Less,
        Some(0) => Verdict::Equal,
        Some(1) => Verdict::Greater,
        _ => Verdict::Inconclusive,
    }
}

fn mult(m: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(m))
}

/// Sum of `|lambda - shift|` over the spectrum.
fn absolute_deviation(s: &SpectrumMultiset, shift: &BigRational) -> EnergyValue {
    let mut out = EnergyValue::exact(SurdSum::zero());
    let shift_f = to_f64(shift);
    for (v, m) in s.entries() {
        let m_r = mult(*m);
        match v {
            AlgebraicValue::Rational(r) => out.exact.add_term(BigInt::from(1), (r - shift).abs() * m_r),
            AlgebraicValue::Surd { a, b, d } => {
                let sign = super::algebraic::surd_sign(&(a - shift), b, d);
                let c = m_r * BigRational::from_integer(BigInt::from(sign));
                out.exact.add_term(BigInt::from(1), (a - shift) * &c);
                out.exact.add_term(d.clone(), b * &c);
            }
            AlgebraicValue::PolyRoot(p) => {
                let sign = root_side(p, shift);
                let c = m_r * BigRational::from_integer(BigInt::from(sign));
                out.exact.add_term(BigInt::from(1), -(shift * &c));
                out.add_root(p, c);
            }
            AlgebraicValue::Approx { value, error } => {
                out.numeric += (value - shift_f).abs() * (*m as f64);
                out.numeric_error += error * (*m as f64);
            }
        }
    }
    out
}

/// Which side of a rational the (irrational) root lies on.
fn root_side(p: &PolyRoot, x: &BigRational) -> i8 {
    let mut bits = 16;
    loop {
        let (lo, hi) = p.enclosure(bits);
        if &lo > x {
            return 1;
        }
        if &hi < x {
            return -1;
        }
        if lo == hi {
            return 0;
        }
        bits *= 2;
    }
}

/// `E = sum |lambda|` over an adjacency spectrum.
pub fn energy(s: &SpectrumMultiset) -> Result<EnergyValue> {
    if s.kind() != SpectrumKind::Adjacency {
        return Err(Error::KindMismatch("adjacency"));
    }
    Ok(absolute_deviation(s, &BigRational::zero()))
}

/// `LE = sum |mu - 2|e|/|v||` over a Laplacian spectrum.
pub fn laplacian_energy(s: &SpectrumMultiset, edges: u128, vertices: u128) -> Result<EnergyValue> {
    if s.kind() != SpectrumKind::Laplacian {
        return Err(Error::KindMismatch("laplacian"));
    }
    if vertices == 0 {
        return Err(Error::InvalidParameters("graph has no vertices".into()));
    }
    Ok(absolute_deviation(s, &mean_degree(edges, vertices)))
}

pub fn mean_degree(edges: u128, vertices: u128) -> BigRational {
    BigRational::new(BigInt::from(2 * edges), BigInt::from(vertices))
}

/// E, LE, the mean degree and the verdict for one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub energy: EnergyValue,
    pub laplacian_energy: EnergyValue,
    pub mean_degree: BigRational,
    pub verdict: Verdict,
}

impl EnergyReport {
    pub fn new(adjacency: &SpectrumMultiset, laplacian: &SpectrumMultiset, edges: u128, vertices: u128) -> Result<Self> {
        let e = energy(adjacency)?;
        let le = laplacian_energy(laplacian, edges, vertices)?;
        let verdict = compare_energies(&e, &le);
        Ok(EnergyReport { energy: e, laplacian_energy: le, mean_degree: mean_degree(edges, vertices), verdict })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "E": self.energy.to_json(),
            "LE": self.laplacian_energy.to_json(),
            "mean_degree": self.mean_degree.to_string(),
            "verdict": self.verdict.as_str(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncgraph::MultipartiteShape;
    use crate::spectra::multipartite::{multipartite_adjacency_spectrum, multipartite_laplacian_spectrum};

    fn report(classes: &[(u128, u128)]) -> EnergyReport {
        let shape = MultipartiteShape::new(classes.iter().copied()).unwrap();
        EnergyReport::new(
            &multipartite_adjacency_spectrum(&shape).unwrap(),
            &multipartite_laplacian_spectrum(&shape).unwrap(),
            shape.edge_count(),
            shape.total_vertices(),
        )
        .unwrap()
    }

    #[test]
    fn octahedron_boundary_equality() {
        let r = report(&[(2, 3)]);
        assert_eq!(r.energy.as_rational(), Some(BigRational::from_integer(8.into())));
        assert_eq!(r.verdict, Verdict::Equal);
    }

    #[test]
    fn a4_values() {
        let r = report(&[(3, 1), (2, 4)]);
        assert_eq!(r.energy.to_string(), "6 + 2*sqrt(33)");
        assert_eq!(r.laplacian_energy.to_string(), "224/11");
        assert_eq!(r.verdict, Verdict::Less);
    }

    #[test]
    fn a5_uses_isolated_roots() {
        let r = report(&[(4, 6), (3, 5), (2, 10)]);
        assert!((r.energy.approx() - 111.89).abs() < 0.01, "{}", r.energy);
        assert_eq!(r.laplacian_energy.to_string(), "8580/59");
        assert_eq!(r.verdict, Verdict::Less);
    }

    #[test]
    fn kind_mismatch() {
        let shape = MultipartiteShape::new([(2, 3)]).unwrap();
        let l = multipartite_laplacian_spectrum(&shape).unwrap();
        assert_eq!(energy(&l), Err(Error::KindMismatch("adjacency")));
    }
}
