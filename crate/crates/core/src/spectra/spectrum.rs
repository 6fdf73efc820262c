//! Eigenvalue multisets and their exact invariants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::algebraic::{AlgebraicValue, PolyRoot, SurdSum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    Adjacency,
    Laplacian,
}

impl SpectrumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectrumKind::Adjacency => "adjacency",
            SpectrumKind::Laplacian => "laplacian",
        }
    }
}

/// Eigenvalues with multiplicities, sorted ascending, equal values merged.
#[derive(Clone, Debug)]
pub struct SpectrumMultiset {
    kind: SpectrumKind,
    entries: Vec<(AlgebraicValue, u128)>,
    flags: Vec<String>,
}

/// An exact power sum, or a float when some entry has no closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum PowerSum {
    Exact(SurdSum),
    Approx(f64),
}

impl PowerSum {
    pub fn approx(&self) -> f64 {
        match self {
            PowerSum::Exact(s) => s.approx(),
            PowerSum::Approx(x) => *x,
        }
    }

    pub fn is_exactly(&self, value: &BigRational) -> Option<bool> {
        match self {
            PowerSum::Exact(s) => Some(s.as_rational().as_ref() == Some(value)),
            PowerSum::Approx(_) => None,
        }
    }
}

impl SpectrumMultiset {
    pub fn new(kind: SpectrumKind) -> Self {
        SpectrumMultiset { kind, entries: Vec::new(), flags: Vec::new() }
    }

    pub fn from_entries(kind: SpectrumKind, entries: impl IntoIterator<Item = (AlgebraicValue, u128)>) -> Self {
        let mut s = SpectrumMultiset::new(kind);
        for (v, m) in entries {
            s.push(v, m);
        }
        s
    }

    /// Adds `mult` copies of `value`, merging with an equal entry.
    pub fn push(&mut self, value: AlgebraicValue, mult: u128) {
        if mult == 0 {
            return;
        }
        if let Some(e) = self.entries.iter_mut().find(|(v, _)| *v == value) {
            e.1 += mult;
            return;
        }
        let pos = self.entries.partition_point(|(v, _)| v.cmp_value(&value).is_lt());
        self.entries.insert(pos, (value, mult));
    }

    pub fn extend(&mut self, other: &SpectrumMultiset) {
        for (v, m) in &other.entries {
            self.push(v.clone(), *m);
        }
        for f in &other.flags {
            self.add_flag(f.clone());
        }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn entries(&self) -> &[(AlgebraicValue, u128)] {
        &self.entries
    }

    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    pub fn add_flag(&mut self, flag: impl Into<String>) {
        let flag = flag.into();
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
    }

    pub fn total(&self) -> u128 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, value: &AlgebraicValue) -> u128 {
        self.entries.iter().find(|(v, _)| v == value).map_or(0, |(_, m)| *m)
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|(v, _)| v.is_exact())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|(v, _)| v.as_integer().is_some())
    }

    /// Multiset equality of the exact forms.
    pub fn same_values(&self, other: &SpectrumMultiset) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().all(|(v, m)| other.multiplicity(v) == *m)
    }

    /// `sum mult * value^k` for `k` in {1, 2}. Isolated roots contribute
    /// exactly when every real root of their polynomial occurs with one
    /// common multiplicity (Newton's identities on the coefficients).
    pub fn power_sum(&self, k: u32) -> PowerSum {
        assert!(k == 1 || k == 2, "only first and second power sums are supported");
        let mut exact = SurdSum::zero();
        let mut groups: Vec<(&PolyRoot, u128, usize)> = Vec::new();
        for (v, m) in &self.entries {
            let mr = BigRational::from_integer(BigInt::from(*m));
            match v {
                AlgebraicValue::Rational(r) => {
                    let term = if k == 1 { r.clone() } else { r * r };
                    exact.add_term(BigInt::from(1), term * mr);
                }
                AlgebraicValue::Surd { a, b, d } => {
                    let dr = BigRational::from_integer(d.clone());
                    if k == 1 {
                        exact.add_term(BigInt::from(1), a * &mr);
                        exact.add_term(d.clone(), b * &mr);
                    } else {
                        exact.add_term(BigInt::from(1), (a * a + b * b * dr) * &mr);
                        exact.add_term(d.clone(), a * b * BigRational::from_integer(BigInt::from(2)) * &mr);
                    }
                }
                AlgebraicValue::PolyRoot(p) => match groups.iter_mut().find(|(q, _, _)| q.poly() == p.poly()) {
                    Some(g) if g.1 == *m => g.2 += 1,
                    Some(g) => g.1 = 0,
                    None => groups.push((p, *m, 1)),
                },
                AlgebraicValue::Approx { .. } => return PowerSum::Approx(self.approx_power_sum(k)),
            }
        }
        for (p, m, seen) in groups {
            let poly = p.poly();
            let deg = poly.degree();
            if m == 0 || seen != deg {
                return PowerSum::Approx(self.approx_power_sum(k));
            }
            let lead = BigRational::from_integer(poly.leading());
            let e1 = -BigRational::from_integer(poly.coeff(deg - 1)) / &lead;
            let e2 = if deg >= 2 { BigRational::from_integer(poly.coeff(deg - 2)) / &lead } else { BigRational::zero() };
            let s = if k == 1 { e1 } else { &e1 * &e1 - e2 * BigRational::from_integer(BigInt::from(2)) };
            exact.add_term(BigInt::from(1), s * BigRational::from_integer(BigInt::from(m)));
        }
        PowerSum::Exact(exact)
    }

    fn approx_power_sum(&self, k: u32) -> f64 {
        self.entries.iter().map(|(v, m)| v.approx().powi(k as i32) * (*m as f64)).sum()
    }

    /// Trace zero and `sum lambda^2 = 2|e|` for adjacency spectra; for
    /// Laplacian spectra the sum is `2|e|` and every value is non-negative.
    /// Returns the list of violated identities.
    pub fn check_invariants(&self, vertices: u128, edges: u128) -> Vec<String> {
        let mut bad = Vec::new();
        if self.total() != vertices {
            bad.push(format!("multiplicities sum to {} but there are {} vertices", self.total(), vertices));
        }
        let two_e = BigRational::from_integer(BigInt::from(2 * edges));
        let sum1 = self.power_sum(1);
        match self.kind {
            SpectrumKind::Adjacency => {
                match sum1.is_exactly(&BigRational::zero()) {
                    Some(false) => bad.push(format!("trace is {} instead of 0", fmt_power_sum(&sum1))),
                    None if sum1.approx().abs() > 1e-6 * vertices as f64 => {
                        bad.push(format!("trace is about {} instead of 0", sum1.approx()))
                    }
                    _ => {}
                }
                let sum2 = self.power_sum(2);
                match sum2.is_exactly(&two_e) {
                    Some(false) => bad.push(format!("sum of squares is {} instead of {}", fmt_power_sum(&sum2), two_e)),
                    None if (sum2.approx() - 2.0 * edges as f64).abs() > 1e-6 * (edges as f64).max(1.0) => {
                        bad.push(format!("sum of squares is about {}", sum2.approx()))
                    }
                    _ => {}
                }
            }
            SpectrumKind::Laplacian => {
                match sum1.is_exactly(&two_e) {
                    Some(false) => bad.push(format!("trace is {} instead of {}", fmt_power_sum(&sum1), two_e)),
                    None if (sum1.approx() - 2.0 * edges as f64).abs() > 1e-6 * (edges as f64).max(1.0) => {
                        bad.push(format!("trace is about {}", sum1.approx()))
                    }
                    _ => {}
                }
                if self.entries.iter().any(|(v, _)| v.signum() == Some(-1)) {
                    bad.push("negative Laplacian eigenvalue".into());
                }
                if self.multiplicity(&AlgebraicValue::zero()) == 0 {
                    bad.push("0 is missing from the Laplacian spectrum".into());
                }
            }
        }
        bad
    }

    /// Eigenvalue approximants expanded by multiplicity, ascending.
    pub fn approx_values(&self) -> Result<Vec<f64>> {
        let total = self.total();
        if total > 10_000_000 {
            return Err(Error::TooLarge { order: total, cap: 10_000_000 });
        }
        Ok(self
            .entries
            .iter()
            .flat_map(|(v, m)| std::iter::repeat(v.approx()).take(*m as usize))
            .collect())
    }

    /// Largest elementwise gap against a sorted float list of equal length.
    pub fn distance_to(&self, values: &[f64]) -> Option<f64> {
        let mine = self.approx_values().ok()?;
        if mine.len() != values.len() {
            return None;
        }
        Some(mine.iter().zip(values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(v, m)| {
                let mut obj = v.to_json();
                obj["mult"] = mult_json(*m);
                obj
            })
            .collect();
        json!({"kind": self.kind.as_str(), "entries": entries, "total": mult_json(self.total()), "flags": self.flags})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = match v.get("kind").and_then(Value::as_str) {
            Some("adjacency") => SpectrumKind::Adjacency,
            Some("laplacian") => SpectrumKind::Laplacian,
            _ => return Err(Error::Parse("spectrum kind must be adjacency or laplacian".into())),
        };
        let mut s = SpectrumMultiset::new(kind);
        for e in v.get("entries").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing entries".into()))? {
            let mult = match e.get("mult") {
                Some(Value::Number(n)) => n.as_u64().map(u128::from),
                Some(Value::String(s)) => s.parse().ok(),
                _ => None,
            }
            .ok_or_else(|| Error::Parse("bad multiplicity".into()))?;
            s.push(AlgebraicValue::from_json(e)?, mult);
        }
        if let Some(flags) = v.get("flags").and_then(Value::as_array) {
            for f in flags.iter().filter_map(Value::as_str) {
                s.add_flag(f);
            }
        }
        Ok(s)
    }
}

fn fmt_power_sum(p: &PowerSum) -> String {
    match p {
        PowerSum::Exact(s) => s.to_string(),
        PowerSum::Approx(x) => format!("~{x}"),
    }
}

/// Multiplicities beyond `u64` are written as decimal strings.
fn mult_json(m: u128) -> Value {
    match m.to_u64() {
        Some(x) => json!(x),
        None => json!(m.to_string()),
    }
}

impl Serialize for SpectrumMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpectrumMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        SpectrumMultiset::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for SpectrumMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.same_values(other)
    }
}

impl fmt::Display for SpectrumMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let body = v.to_string();
            let wrapped = if body.contains(' ') || body.starts_with('-') { format!("({body})") } else { body };
            write!(f, "{wrapped}^{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SpectrumMultiset {
        SpectrumMultiset::from_entries(
            SpectrumKind::Adjacency,
            [(AlgebraicValue::int(0), 3), (AlgebraicValue::int(-2), 2), (AlgebraicValue::int(4), 1)],
        )
    }

    #[test]
    fn merges_and_sorts() {
        let mut s = octahedron();
        s.push(AlgebraicValue::int(-2), 1);
        assert_eq!(s.entries()[0], (AlgebraicValue::int(-2), 3));
        assert_eq!(s.total(), 7);
    }

    #[test]
    fn invariants_of_octahedron() {
        assert!(octahedron().check_invariants(6, 12).is_empty());
        assert_eq!(octahedron().check_invariants(6, 11).len(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(octahedron().to_string(), "{(-2)^2, 0^3, 4^1}");
    }

    #[test]
    fn json_round_trip() {
        let s = octahedron();
        let text = serde_json::to_string(&s).unwrap();
        let back: SpectrumMultiset = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
