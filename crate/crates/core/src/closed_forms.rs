//! Closed-form spectra and energies for the group families, each checked
//! against the brute-force oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{construct, GroupFamilySpec, QuotientShape};
use crate::oracle::{brute_force, BruteForce};
use crate::spectra::{compare_energies, AlgebraicValue, EnergyValue, SpectrumKind, SpectrumMultiset, SurdSum, Verdict};

/// Default largest group order the verifier will build.
pub const DEFAULT_VERIFY_CAP: u128 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    V8nSpec,
    V8nE,
    SD8nOddSpec,
    SD8nOddE,
    SD8nEvenSpec,
    SD8nEvenE,
    ZpZpSpec,
    ZpZpE,
    FpqSpec,
    FpqE,
    HanakiAvSpec,
    HanakiAvE,
    HanakiApSpec,
    HanakiApE,
    D2mQuotientSpec,
    D2mQuotientE,
    M2rsOdd,
    M2rsEven,
    D2mOdd,
    D2mEven,
    Q4m,
    U6n,
    V8nLspec,
    V8nLE,
    SD8nOddLspec,
    SD8nOddLE,
    SD8nEvenLspec,
    SD8nEvenLE,
    FpqLE,
    D2mQuotientLE,
    M2rsLE,
    D2mLE,
    Q4mLE,
    ZpZpLE,
    HanakiAvLE,
    HanakiApLE,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    Spectrum,
    Energy,
    LaplacianSpectrum,
    LaplacianEnergy,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Spectrum => "spectrum",
            Quantity::Energy => "E",
            Quantity::LaplacianSpectrum => "laplacian spectrum",
            Quantity::LaplacianEnergy => "LE",
        }
    }
}

/// Printed form of a formula, or the variant repaired so that the adjacency
/// trace vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    AsPrinted,
    TraceCorrected,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::AsPrinted => "as-printed",
            Variant::TraceCorrected => "trace-corrected",
        }
    }
}

pub struct CatalogEntry {
    pub id: FormulaId,
    pub quantities: &'static [Quantity],
    pub anchor: &'static str,
}

use Quantity::{Energy as QE, LaplacianEnergy as QLE, LaplacianSpectrum as QL, Spectrum as QS};

const SPEC_E: &[Quantity] = &[QS, QE];

/// Every formula with its rendered statement.
pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: FormulaId::V8nSpec,
        quantities: &[QS],
        anchor: "spec(V_8n) = {(-2)^(2n-1), 0^(6n-3), ((2n-1) ± sqrt((2n-1)(10n-1)))^1}, n odd",
    },
    CatalogEntry { id: FormulaId::V8nE, quantities: &[QE], anchor: "E(V_8n) = 2(2n-1) + 2 sqrt((2n-1)(10n-1)), n odd" },
    CatalogEntry {
        id: FormulaId::SD8nOddSpec,
        quantities: &[QS],
        anchor: "spec(SD_8n) = {(-4)^(2n-1), 0^(7n-5), (2(n-1) ± 2 sqrt((5n-1)(n-1)))^1}, n odd",
    },
    CatalogEntry { id: FormulaId::SD8nOddE, quantities: &[QE], anchor: "E(SD_8n) = 2(n-1) + 4 sqrt((n-1)(5n-1)), n odd" },
    CatalogEntry {
        id: FormulaId::SD8nEvenSpec,
        quantities: &[QS],
        anchor: "spec(SD_8n) = {(-2)^(2n-1), 0^(6n-3), ((2n-1) ± sqrt((2n-1)(10n-1)))^1}, n even",
    },
    CatalogEntry {
        id: FormulaId::SD8nEvenE,
        quantities: &[QE],
        anchor: "E(SD_8n) = 2(2n-1) + 2 sqrt((2n-1)(10n-1)), n even",
    },
    CatalogEntry {
        id: FormulaId::ZpZpSpec,
        quantities: &[QS],
        anchor: "G/Z = Z_p x Z_p: spec = {(-(p-1)|Z|)^p, 0^((p+1)((p-1)|Z|-1)), (p(p-1)|Z|)^1}",
    },
    CatalogEntry { id: FormulaId::ZpZpE, quantities: &[QE], anchor: "G/Z = Z_p x Z_p: E = 2p(p-1)|Z|" },
    CatalogEntry {
        id: FormulaId::FpqSpec,
        quantities: &[QS],
        anchor: "spec(F_{p,q}) = {0^(pq-p-2), (-(q-1))^(p-1), ((a ± sqrt(a^2 + 4pa))/2)^1}, a = (p-1)(q-1)",
    },
    CatalogEntry { id: FormulaId::FpqE, quantities: &[QE], anchor: "E(F_{p,q}) = a + sqrt(a^2 + 4pa), a = (p-1)(q-1)" },
    CatalogEntry {
        id: FormulaId::HanakiAvSpec,
        quantities: &[QS],
        anchor: "spec(A(n,v)) = {0^(2^2n - 2^(n+1) + 1), (-2^n)^(2^n - 2), (2^n(2^n - 2))^1}",
    },
    CatalogEntry { id: FormulaId::HanakiAvE, quantities: &[QE], anchor: "E(A(n,v)) = 2^(n+1)(2^n - 2)" },
    CatalogEntry {
        id: FormulaId::HanakiApSpec,
        quantities: &[QS],
        anchor: "spec(A(n,p)) = {0^(p^3n - 2p^n - 1), (-(p^2n - p^n))^(p^n), (p^n(p^2n - p^n))^1}",
    },
    CatalogEntry { id: FormulaId::HanakiApE, quantities: &[QE], anchor: "E(A(n,p)) = 2p^2n(p^n - 1)" },
    CatalogEntry {
        id: FormulaId::D2mQuotientSpec,
        quantities: &[QS],
        anchor: "G/Z = D_2m, n = |Z|: spec = {0^(2nm-n-m-1), (-n)^(m-1), ((n(m-1) ± n sqrt((m-1)(5m-1)))/2)^1}",
    },
    CatalogEntry {
        id: FormulaId::D2mQuotientE,
        quantities: &[QE],
        anchor: "G/Z = D_2m, n = |Z|: E = n((m-1) + sqrt((m-1)(5m-1)))",
    },
    CatalogEntry {
        id: FormulaId::M2rsOdd,
        quantities: SPEC_E,
        anchor: "r odd: spec(M_2rs) = {0^(2sr-s-r-1), (-s)^(r-1), ((s(r-1) ± s sqrt((r-1)(5r-1)))/2)^1}, \
                 E = s((r-1) + sqrt((r-1)(5r-1)))",
    },
    CatalogEntry {
        id: FormulaId::M2rsEven,
        quantities: SPEC_E,
        anchor: "r even: spec(M_2rs) = {0^(2sr-2s-r/2-1), (-2s)^(r/2-1), (s(r/2-1) ± s sqrt((r/2-1)(5r/2-1)))^1}, \
                 E = s((r-2) + sqrt((r-2)(5r-2)))",
    },
    CatalogEntry {
        id: FormulaId::D2mOdd,
        quantities: SPEC_E,
        anchor: "m odd: spec(D_2m) = {0^(m-2), (-1)^(m-1), (((m-1) ± sqrt((m-1)(5m-1)))/2)^1}, \
                 E = (m-1) + sqrt((m-1)(5m-1))",
    },
    CatalogEntry {
        id: FormulaId::D2mEven,
        quantities: SPEC_E,
        anchor: "m even: spec(D_2m) = {0^(3m/2-3), (-2)^(m/2-1), ((m/2-1) ± sqrt((m/2-1)(5m/2-1)))^1}, \
                 E = (m-2) + sqrt((m-2)(5m-2))",
    },
    CatalogEntry {
        id: FormulaId::Q4m,
        quantities: SPEC_E,
        anchor: "spec(Q_4m) = {0^(3m-3), (-2)^(m-1), ((m-1) ± sqrt((m-1)(5m-1)))^1}, E = 2((m-1) + sqrt((m-1)(5m-1)))",
    },
    CatalogEntry {
        id: FormulaId::U6n,
        quantities: SPEC_E,
        anchor: "spec(U_6n) = {0^(5n-4), (-n)^2, (n ± n sqrt(7))^1}, E = 2n(1 + sqrt(7))",
    },
    CatalogEntry {
        id: FormulaId::V8nLspec,
        quantities: &[QL],
        anchor: "lspec(V_8n) = {0, (8n-4)^(2n), (4n)^(4n-3), (8n-2)^(2n)}, n odd",
    },
    CatalogEntry { id: FormulaId::V8nLE, quantities: &[QLE], anchor: "LE(V_8n) = 8n(8n^2-8n+3)/(4n-1), n odd" },
    CatalogEntry {
        id: FormulaId::SD8nOddLspec,
        quantities: &[QL],
        anchor: "lspec(SD_8n) = {0, (8n-8)^(3n), (4n)^(4n-5), (8n-4)^n}, n odd",
    },
    CatalogEntry { id: FormulaId::SD8nOddLE, quantities: &[QLE], anchor: "LE(SD_8n) = 8n(4n^2-10n+7)/(2n-1), n odd" },
    CatalogEntry {
        id: FormulaId::SD8nEvenLspec,
        quantities: &[QL],
        anchor: "lspec(SD_8n) = {0, (8n-4)^(2n), (4n)^(4n-3), (8n-2)^(2n)}, n even",
    },
    CatalogEntry { id: FormulaId::SD8nEvenLE, quantities: &[QLE], anchor: "LE(SD_8n) = 8n(8n^2-8n+3)/(4n-1), n even" },
    CatalogEntry {
        id: FormulaId::FpqLE,
        quantities: &[QLE],
        anchor: "LE(F_{p,q}) = (2p^2 a + 2p(q-1)^2)/(pq-1), a = (p-1)(q-1)",
    },
    CatalogEntry {
        id: FormulaId::D2mQuotientLE,
        quantities: &[QLE],
        anchor: "G/Z = D_2m, n = |Z|: LE = (2mn^2(m-1)(m-2) + 2mn(2m-1))/(2m-1)",
    },
    CatalogEntry {
        id: FormulaId::M2rsLE,
        quantities: &[QLE],
        anchor: "LE(M_2rs) = (2r(r-1)(r-2)s^2 + 2rs(2r-1))/(2r-1) for r odd, (rs^2(r-2)(r-4) + 2rs(r-1))/(r-1) for r even",
    },
    CatalogEntry {
        id: FormulaId::D2mLE,
        quantities: &[QLE],
        anchor: "LE(D_2m) = (2m(m-1)(m-2) + 2m(2m-1))/(2m-1) for m odd, (m(m-2)(m-4) + 2m(m-1))/(m-1) for m even",
    },
    CatalogEntry { id: FormulaId::Q4mLE, quantities: &[QLE], anchor: "LE(Q_4m) = (8m(m-1)(m-2) + 4m(2m-1))/(2m-1)" },
    CatalogEntry { id: FormulaId::ZpZpLE, quantities: &[QLE], anchor: "G/Z = Z_p x Z_p: LE = 2p(p-1)|Z|" },
    CatalogEntry { id: FormulaId::HanakiAvLE, quantities: &[QLE], anchor: "LE(A(n,v)) = 2^(2n+1) - 2^(n+2)" },
    CatalogEntry { id: FormulaId::HanakiApLE, quantities: &[QLE], anchor: "LE(A(n,p)) = 2(p^3n - p^2n)" },
];

impl FormulaId {
    pub const ALL: [FormulaId; 36] = [
        FormulaId::V8nSpec,
        FormulaId::V8nE,
        FormulaId::SD8nOddSpec,
        FormulaId::SD8nOddE,
        FormulaId::SD8nEvenSpec,
        FormulaId::SD8nEvenE,
        FormulaId::ZpZpSpec,
        FormulaId::ZpZpE,
        FormulaId::FpqSpec,
        FormulaId::FpqE,
        FormulaId::HanakiAvSpec,
        FormulaId::HanakiAvE,
        FormulaId::HanakiApSpec,
        FormulaId::HanakiApE,
        FormulaId::D2mQuotientSpec,
        FormulaId::D2mQuotientE,
        FormulaId::M2rsOdd,
        FormulaId::M2rsEven,
        FormulaId::D2mOdd,
        FormulaId::D2mEven,
        FormulaId::Q4m,
        FormulaId::U6n,
        FormulaId::V8nLspec,
        FormulaId::V8nLE,
        FormulaId::SD8nOddLspec,
        FormulaId::SD8nOddLE,
        FormulaId::SD8nEvenLspec,
        FormulaId::SD8nEvenLE,
        FormulaId::FpqLE,
        FormulaId::D2mQuotientLE,
        FormulaId::M2rsLE,
        FormulaId::D2mLE,
        FormulaId::Q4mLE,
        FormulaId::ZpZpLE,
        FormulaId::HanakiAvLE,
        FormulaId::HanakiApLE,
    ];

    pub fn as_str(self) -> &'static str {
        use FormulaId::*;
        match self {
            V8nSpec => "V8n_spec",
            V8nE => "V8n_E",
            SD8nOddSpec => "SD8n_odd_spec",
            SD8nOddE => "SD8n_odd_E",
            SD8nEvenSpec => "SD8n_even_spec",
            SD8nEvenE => "SD8n_even_E",
            ZpZpSpec => "ZpZp_spec",
            ZpZpE => "ZpZp_E",
            FpqSpec => "Fpq_spec",
            FpqE => "Fpq_E",
            HanakiAvSpec => "HanakiAv_spec",
            HanakiAvE => "HanakiAv_E",
            HanakiApSpec => "HanakiAp_spec",
            HanakiApE => "HanakiAp_E",
            D2mQuotientSpec => "D2mQuotient_spec",
            D2mQuotientE => "D2mQuotient_E",
            M2rsOdd => "M2rs_odd",
            M2rsEven => "M2rs_even",
            D2mOdd => "D2m_odd",
            D2mEven => "D2m_even",
            Q4m => "Q4m",
            U6n => "U6n",
            V8nLspec => "V8n_lspec",
            V8nLE => "V8n_LE",
            SD8nOddLspec => "SD8n_odd_lspec",
            SD8nOddLE => "SD8n_odd_LE",
            SD8nEvenLspec => "SD8n_even_lspec",
            SD8nEvenLE => "SD8n_even_LE",
            FpqLE => "Fpq_LE",
            D2mQuotientLE => "D2mQuotient_LE",
            M2rsLE => "M2rs_LE",
            D2mLE => "D2m_LE",
            Q4mLE => "Q4m_LE",
            ZpZpLE => "ZpZp_LE",
            HanakiAvLE => "HanakiAv_LE",
            HanakiApLE => "HanakiAp_LE",
        }
    }

    pub fn entry(self) -> &'static CatalogEntry {
        CATALOG.iter().find(|e| e.id == self).expect("every id has a catalog entry")
    }

    pub fn anchor(self) -> &'static str {
        self.entry().anchor
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown formula id {s:?}")))
    }
}

/// Parameters of `F_{p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusParams {
    pub p: u64,
    pub q: u64,
}

impl FrobeniusParams {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        GroupFamilySpec::Frobenius { p, q }.validate()?;
        Ok(FrobeniusParams { p, q })
    }

    /// `(p-1)(q-1)`
    pub fn alpha(&self) -> u64 {
        (self.p - 1) * (self.q - 1)
    }

    /// `a + sqrt(a^2 + 4pa)`
    pub fn energy(&self) -> EnergyValue {
        let a = self.alpha() as i128;
        surd_energy(rat(a), rat(1), a * a + 4 * self.p as i128 * a)
    }

    /// `(2p^2 a + 2p(q-1)^2)/(pq-1)`
    pub fn laplacian_energy(&self) -> EnergyValue {
        let (p, q, a) = (self.p as i128, self.q as i128, self.alpha() as i128);
        EnergyValue::rational(frac(2 * p * p * a + 2 * p * (q - 1) * (q - 1), p * q - 1))
    }
}

#[derive(Clone, Debug)]
pub enum PredictedValue {
    Spectrum(SpectrumMultiset),
    Energy(EnergyValue),
}

impl fmt::Display for PredictedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictedValue::Spectrum(s) => write!(f, "{s}"),
            PredictedValue::Energy(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Prediction {
    pub id: FormulaId,
    pub quantity: Quantity,
    pub variant: Variant,
    pub value: PredictedValue,
}

impl Prediction {
    pub fn to_json(&self) -> Value {
        let value = match &self.value {
            PredictedValue::Spectrum(s) => s.to_json(),
            PredictedValue::Energy(e) => e.to_json(),
        };
        json!({
            "id": self.id.as_str(),
            "quantity": self.quantity.as_str(),
            "variant": self.variant.as_str(),
            "anchor": self.id.anchor(),
            "value": value,
            "display": self.value.to_string(),
        })
    }
}

fn rat(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn surd(a: BigRational, b: BigRational, d: i128) -> Result<AlgebraicValue> {
    AlgebraicValue::surd(a, b, BigInt::from(d))
}

fn surd_energy(a: BigRational, b: BigRational, d: i128) -> EnergyValue {
    let mut s = SurdSum::zero();
    let v = surd(a, b, d).expect("energy discriminants are non-negative");
    s.add_value(&v, &BigRational::one());
    EnergyValue::exact(s)
}

fn int_energy(n: i128) -> EnergyValue {
    EnergyValue::rational(rat(n))
}

/// Builds a spectrum from `(value, multiplicity)` pairs; a negative printed
/// multiplicity makes the formula inapplicable at these parameters.
fn spectrum(kind: SpectrumKind, entries: Vec<(AlgebraicValue, i128)>) -> Result<SpectrumMultiset> {
    let mut s = SpectrumMultiset::new(kind);
    for (v, m) in entries {
        if m < 0 {
            return Err(Error::NotApplicable(format!("multiplicity {m} of {v} is negative at these parameters")));
        }
        s.push(v, m as u128);
    }
    Ok(s)
}

fn int_value(n: i128) -> AlgebraicValue {
    AlgebraicValue::integer(BigInt::from(n))
}

/// `{c ± e sqrt(d)}` with multiplicity one each.
fn pm(c: BigRational, e: BigRational, d: i128) -> Result<Vec<(AlgebraicValue, i128)>> {
    Ok(vec![(surd(c.clone(), -e.clone(), d)?, 1), (surd(c, e, d)?, 1)])
}

/// `G/Z(G)` type and `|Z(G)|` known from the family parameters.
pub fn quotient_data(spec: &GroupFamilySpec) -> Option<(QuotientShape, u64)> {
    use GroupFamilySpec::*;
    let dihedral = |m: u64, z: u64| {
        if m == 2 {
            (QuotientShape::ZpXZp(2), z)
        } else {
            (QuotientShape::Dihedral(2 * m), z)
        }
    };
    match *spec {
        Dihedral { m } if m >= 3 => Some(if m % 2 == 1 { dihedral(m, 1) } else { dihedral(m / 2, 2) }),
        Quaternion { m } if m >= 2 => Some(dihedral(m, 2)),
        SemiDihedral { n } if n >= 2 => Some(if n % 2 == 0 { dihedral(2 * n, 2) } else { dihedral(n, 4) }),
        V { n } if n % 2 == 1 => Some(dihedral(2 * n, 2)),
        QuasiDihedral { n } if n >= 4 => Some(dihedral(1 << (n - 2), 2)),
        M { r, s } if r >= 3 => Some(if r % 2 == 1 { dihedral(r, s) } else { dihedral(r / 2, 2 * s) }),
        U { n } if n >= 1 => Some(dihedral(3, n)),
        Frobenius { p, q: 2 } => Some(dihedral(p, 1)),
        HanakiV { n: 2 } => Some((QuotientShape::ZpXZp(2), 4)),
        HanakiP { n: 1, p } => Some((QuotientShape::ZpXZp(p as u64), p as u64)),
        Order16(_) => Some((QuotientShape::ZpXZp(2), 4)),
        DirectProduct(ref a, ref b) => match (a.as_ref(), b.as_ref()) {
            (g, Cyclic { n }) | (Cyclic { n }, g) => quotient_data(g).map(|(q, z)| (q, z * n)),
            _ => None,
        },
        _ => None,
    }
}

fn not_applicable(id: FormulaId, spec: &GroupFamilySpec) -> Error {
    Error::NotApplicable(format!("{id} does not apply to {spec}"))
}

/// Evaluates one formula at the parameters of `spec`.
pub fn evaluate(id: FormulaId, spec: &GroupFamilySpec) -> Result<Vec<Prediction>> {
    use FormulaId::*;
    use GroupFamilySpec as G;
    use SpectrumKind::{Adjacency as A, Laplacian as L};
    let na = || not_applicable(id, spec);
    let one = |quantity, value| Ok(vec![Prediction { id, quantity, variant: Variant::AsPrinted, value }]);
    let spec_e = |s: SpectrumMultiset, e: EnergyValue| {
        Ok(vec![
            Prediction { id, quantity: QS, variant: Variant::AsPrinted, value: PredictedValue::Spectrum(s) },
            Prediction { id, quantity: QE, variant: Variant::AsPrinted, value: PredictedValue::Energy(e) },
        ])
    };
    let adj = |s| PredictedValue::Spectrum(s);
    let en = |e| PredictedValue::Energy(e);

    // V_8n and SD_8n with n even share every formula.
    let v_like = |n: i128, which| -> Result<Vec<Prediction>> {
        match which {
            QS => {
                let mut e = vec![(int_value(-2), 2 * n - 1), (int_value(0), 6 * n - 3)];
                e.extend(pm(rat(2 * n - 1), rat(1), (2 * n - 1) * (10 * n - 1))?);
                one(QS, adj(spectrum(A, e)?))
            }
            QE => one(QE, en(surd_energy(rat(2 * (2 * n - 1)), rat(2), (2 * n - 1) * (10 * n - 1)))),
            QL => one(
                QL,
                adj(spectrum(
                    L,
                    vec![
                        (int_value(0), 1),
                        (int_value(8 * n - 4), 2 * n),
                        (int_value(4 * n), 4 * n - 3),
                        (int_value(8 * n - 2), 2 * n),
                    ],
                )?),
            ),
            QLE => one(QLE, en(EnergyValue::rational(frac(8 * n * (8 * n * n - 8 * n + 3), 4 * n - 1)))),
        }
    };

    match (id, spec) {
        (V8nSpec | V8nE | V8nLspec | V8nLE, G::V { n }) if n % 2 == 1 => {
            let q = match id {
                V8nSpec => QS,
                V8nE => QE,
                V8nLspec => QL,
                _ => QLE,
            };
            v_like(*n as i128, q)
        }
        (SD8nEvenSpec | SD8nEvenE | SD8nEvenLspec | SD8nEvenLE, G::SemiDihedral { n }) if n % 2 == 0 && *n >= 2 => {
            let q = match id {
                SD8nEvenSpec => QS,
                SD8nEvenE => QE,
                SD8nEvenLspec => QL,
                _ => QLE,
            };
            v_like(*n as i128, q)
        }
        (SD8nOddSpec, G::SemiDihedral { n }) if n % 2 == 1 && *n >= 3 => {
            let n = *n as i128;
            let roots = pm(rat(2 * (n - 1)), rat(2), (5 * n - 1) * (n - 1))?;
            let build = |neg4: i128| -> Result<SpectrumMultiset> {
                let mut e = vec![(int_value(-4), neg4), (int_value(0), 7 * n - 5)];
                e.extend(roots.clone());
                spectrum(A, e)
            };
            Ok(vec![
                Prediction { id, quantity: QS, variant: Variant::AsPrinted, value: adj(build(2 * n - 1)?) },
                Prediction { id, quantity: QS, variant: Variant::TraceCorrected, value: adj(build(n - 1)?) },
            ])
        }
        (SD8nOddE, G::SemiDihedral { n }) if n % 2 == 1 && *n >= 3 => {
            let n = *n as i128;
            let d = (n - 1) * (5 * n - 1);
            Ok(vec![
                Prediction {
                    id,
                    quantity: QE,
                    variant: Variant::AsPrinted,
                    value: en(surd_energy(rat(2 * (n - 1)), rat(4), d)),
                },
                Prediction {
                    id,
                    quantity: QE,
                    variant: Variant::TraceCorrected,
                    value: en(surd_energy(rat(4 * (n - 1)), rat(4), d)),
                },
            ])
        }
        (SD8nOddLspec, G::SemiDihedral { n }) if n % 2 == 1 && *n >= 3 => {
            let n = *n as i128;
            let e = vec![
                (int_value(0), 1),
                (int_value(8 * n - 8), 3 * n),
                (int_value(4 * n), 4 * n - 5),
                (int_value(8 * n - 4), n),
            ];
            one(QL, adj(spectrum(L, e)?))
        }
        (SD8nOddLE, G::SemiDihedral { n }) if n % 2 == 1 && *n >= 3 => {
            let n = *n as i128;
            one(QLE, en(EnergyValue::rational(frac(8 * n * (4 * n * n - 10 * n + 7), 2 * n - 1))))
        }
        (ZpZpSpec | ZpZpE | ZpZpLE, _) => {
            let Some((QuotientShape::ZpXZp(p), z)) = quotient_data(spec) else { return Err(na()) };
            let (p, z) = (p as i128, z as i128);
            match id {
                ZpZpSpec => {
                    let e = vec![
                        (int_value(-(p - 1) * z), p),
                        (int_value(0), (p + 1) * ((p - 1) * z - 1)),
                        (int_value(p * (p - 1) * z), 1),
                    ];
                    one(QS, adj(spectrum(A, e)?))
                }
                ZpZpE => one(QE, en(int_energy(2 * p * (p - 1) * z))),
                _ => one(QLE, en(int_energy(2 * p * (p - 1) * z))),
            }
        }
        (FpqSpec | FpqE | FpqLE, G::Frobenius { p, q }) => {
            let fp = FrobeniusParams::new(*p, *q)?;
            let (p, q, a) = (*p as i128, *q as i128, fp.alpha() as i128);
            match id {
                FpqSpec => {
                    let mut e = vec![(int_value(0), p * q - p - 2), (int_value(-(q - 1)), p - 1)];
                    e.extend(pm(frac(a, 2), frac(1, 2), a * a + 4 * p * a)?);
                    one(QS, adj(spectrum(A, e)?))
                }
                FpqE => one(QE, en(fp.energy())),
                _ => one(QLE, en(fp.laplacian_energy())),
            }
        }
        (HanakiAvSpec | HanakiAvE | HanakiAvLE, G::HanakiV { n }) if *n >= 2 => {
            let t = 1i128 << n;
            match id {
                HanakiAvSpec => {
                    let e = vec![(int_value(0), t * t - 2 * t + 1), (int_value(-t), t - 2), (int_value(t * (t - 2)), 1)];
                    one(QS, adj(spectrum(A, e)?))
                }
                HanakiAvE => one(QE, en(int_energy(2 * t * (t - 2)))),
                _ => one(QLE, en(int_energy(2 * t * t - 4 * t))),
            }
        }
        (HanakiApSpec | HanakiApE | HanakiApLE, G::HanakiP { n, p }) if *n >= 1 => {
            let t = (*p as i128).pow(*n);
            match id {
                HanakiApSpec => {
                    let e = vec![
                        (int_value(0), t * t * t - 2 * t - 1),
                        (int_value(-(t * t - t)), t),
                        (int_value(t * (t * t - t)), 1),
                    ];
                    one(QS, adj(spectrum(A, e)?))
                }
                HanakiApE => one(QE, en(int_energy(2 * t * t * (t - 1)))),
                _ => one(QLE, en(int_energy(2 * (t * t * t - t * t)))),
            }
        }
        (D2mQuotientSpec | D2mQuotientE | D2mQuotientLE, _) => {
            let Some((QuotientShape::Dihedral(order), z)) = quotient_data(spec) else { return Err(na()) };
            let (m, n) = ((order / 2) as i128, z as i128);
            let d = (m - 1) * (5 * m - 1);
            match id {
                D2mQuotientSpec => {
                    let mut e = vec![(int_value(0), 2 * n * m - n - m - 1), (int_value(-n), m - 1)];
                    e.extend(pm(frac(n * (m - 1), 2), frac(n, 2), d)?);
                    one(QS, adj(spectrum(A, e)?))
                }
                D2mQuotientE => one(QE, en(surd_energy(rat(n * (m - 1)), rat(n), d))),
                _ => one(
                    QLE,
                    en(EnergyValue::rational(frac(
                        2 * m * n * n * (m - 1) * (m - 2) + 2 * m * n * (2 * m - 1),
                        2 * m - 1,
                    ))),
                ),
            }
        }
        (M2rsOdd, G::M { r, s }) if r % 2 == 1 && *r >= 3 => {
            let (r, s) = (*r as i128, *s as i128);
            let d = (r - 1) * (5 * r - 1);
            let mut e = vec![(int_value(0), 2 * s * r - s - r - 1), (int_value(-s), r - 1)];
            e.extend(pm(frac(s * (r - 1), 2), frac(s, 2), d)?);
            spec_e(spectrum(A, e)?, surd_energy(rat(s * (r - 1)), rat(s), d))
        }
        (M2rsEven, G::M { r, s }) if r % 2 == 0 && *r >= 4 => {
            let (r, s) = (*r as i128, *s as i128);
            let h = r / 2;
            let mut e = vec![(int_value(0), 2 * s * r - 2 * s - h - 1), (int_value(-2 * s), h - 1)];
            e.extend(pm(rat(s * (h - 1)), rat(s), (h - 1) * (5 * h - 1))?);
            spec_e(spectrum(A, e)?, surd_energy(rat(s * (r - 2)), rat(s), (r - 2) * (5 * r - 2)))
        }
        (M2rsLE, G::M { r, s }) if *r >= 3 => {
            let (r, s) = (*r as i128, *s as i128);
            let le = if r % 2 == 1 {
                frac(2 * r * (r - 1) * (r - 2) * s * s + 2 * r * s * (2 * r - 1), 2 * r - 1)
            } else {
                frac(r * s * s * (r - 2) * (r - 4) + 2 * r * s * (r - 1), r - 1)
            };
            one(QLE, en(EnergyValue::rational(le)))
        }
        (D2mOdd, G::Dihedral { m }) if m % 2 == 1 && *m >= 3 => {
            let m = *m as i128;
            let d = (m - 1) * (5 * m - 1);
            let mut e = vec![(int_value(0), m - 2), (int_value(-1), m - 1)];
            e.extend(pm(frac(m - 1, 2), frac(1, 2), d)?);
            spec_e(spectrum(A, e)?, surd_energy(rat(m - 1), rat(1), d))
        }
        (D2mEven, G::Dihedral { m }) if m % 2 == 0 && *m >= 4 => {
            let m = *m as i128;
            let h = m / 2;
            let mut e = vec![(int_value(0), 3 * h - 3), (int_value(-2), h - 1)];
            e.extend(pm(rat(h - 1), rat(1), (h - 1) * (5 * h - 1))?);
            spec_e(spectrum(A, e)?, surd_energy(rat(m - 2), rat(1), (m - 2) * (5 * m - 2)))
        }
        (D2mLE, G::Dihedral { m }) if *m >= 3 => {
            let m = *m as i128;
            let le = if m % 2 == 1 {
                frac(2 * m * (m - 1) * (m - 2) + 2 * m * (2 * m - 1), 2 * m - 1)
            } else {
                frac(m * (m - 2) * (m - 4) + 2 * m * (m - 1), m - 1)
            };
            one(QLE, en(EnergyValue::rational(le)))
        }
        (Q4m, G::Quaternion { m }) if *m >= 2 => {
            let m = *m as i128;
            let d = (m - 1) * (5 * m - 1);
            let mut e = vec![(int_value(0), 3 * m - 3), (int_value(-2), m - 1)];
            e.extend(pm(rat(m - 1), rat(1), d)?);
            spec_e(spectrum(A, e)?, surd_energy(rat(2 * (m - 1)), rat(2), d))
        }
        (Q4mLE, G::Quaternion { m }) if *m >= 2 => {
            let m = *m as i128;
            let le = frac(8 * m * (m - 1) * (m - 2) + 4 * m * (2 * m - 1), 2 * m - 1);
            one(QLE, en(EnergyValue::rational(le)))
        }
        (U6n, G::U { n }) if *n >= 1 => {
            let n = *n as i128;
            let mut e = vec![(int_value(0), 5 * n - 4), (int_value(-n), 2)];
            e.extend(pm(rat(n), rat(n), 7)?);
            spec_e(spectrum(A, e)?, surd_energy(rat(2 * n), rat(2 * n), 7))
        }
        _ => Err(na()),
    }
}

/// Every applicable formula at the parameters of `spec`.
pub fn predict(spec: &GroupFamilySpec) -> Vec<Prediction> {
    FormulaId::ALL.iter().filter_map(|&id| evaluate(id, spec).ok()).flatten().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Confirmed,
    Refuted(String),
    CorrectedVariantConfirmed,
    Skipped(String),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::Refuted(_) => "refuted",
            Status::CorrectedVariantConfirmed => "corrected-variant-confirmed",
            Status::Skipped(_) => "skipped",
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Status::Refuted(w) | Status::Skipped(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_confirmed(&self) -> bool {
        matches!(self, Status::Confirmed | Status::CorrectedVariantConfirmed)
    }
}

#[derive(Clone, Debug)]
pub struct FormulaOutcome {
    pub prediction: Prediction,
    pub computed: String,
    pub status: Status,
}

impl FormulaOutcome {
    pub fn id(&self) -> FormulaId {
        self.prediction.id
    }

    pub fn variant(&self) -> Variant {
        self.prediction.variant
    }

    pub fn quantity(&self) -> Quantity {
        self.prediction.quantity
    }
}

/// Structural facts about the constructed group, checked against the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupChecks {
    pub order: usize,
    pub predicted_order: u128,
    pub center_order: usize,
    pub predicted_center_order: Option<u128>,
    pub quotient: QuotientShape,
    pub predicted_quotient: Option<QuotientShape>,
}

impl GroupChecks {
    pub fn consistent(&self) -> bool {
        self.order as u128 == self.predicted_order
            && self.predicted_center_order.map_or(true, |z| z == self.center_order as u128)
            && self.predicted_quotient.map_or(true, |q| q == self.quotient)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationRecord {
    pub spec: GroupFamilySpec,
    pub skipped: Option<String>,
    pub checks: Option<GroupChecks>,
    pub method: Option<&'static str>,
    pub vertices: u128,
    pub edges: u128,
    pub outcomes: Vec<FormulaOutcome>,
}

fn spectrum_status(pred: &SpectrumMultiset, computed: &SpectrumMultiset, bf: &BruteForce) -> Option<String> {
    if pred == computed {
        return None;
    }
    let mut witness = pred.check_invariants(bf.vertices, bf.edges);
    if witness.is_empty() {
        witness.push("differs from the computed spectrum".into());
    }
    Some(witness.join("; "))
}

fn energy_status(pred: &EnergyValue, computed: &EnergyValue) -> Option<String> {
    match compare_energies(pred, computed) {
        Verdict::Equal => None,
        Verdict::Inconclusive => Some(format!("could not separate {pred} from {computed}")),
        _ => Some(format!("{pred} (~{:.6}) differs from {computed} (~{:.6})", pred.approx(), computed.approx())),
    }
}

fn judge(pred: &Prediction, bf: &BruteForce) -> FormulaOutcome {
    let (computed, failure) = match (&pred.value, pred.quantity) {
        (PredictedValue::Spectrum(s), Quantity::Spectrum) => {
            (bf.adjacency.to_string(), spectrum_status(s, &bf.adjacency, bf))
        }
        (PredictedValue::Spectrum(s), Quantity::LaplacianSpectrum) => {
            (bf.laplacian.to_string(), spectrum_status(s, &bf.laplacian, bf))
        }
        (PredictedValue::Energy(e), Quantity::Energy) => (bf.energy.to_string(), energy_status(e, &bf.energy)),
        (PredictedValue::Energy(e), Quantity::LaplacianEnergy) => {
            (bf.laplacian_energy.to_string(), energy_status(e, &bf.laplacian_energy))
        }
        _ => (String::new(), Some("prediction kind does not match its quantity".into())),
    };
    let status = match (failure, pred.variant) {
        (Some(w), _) => Status::Refuted(w),
        (None, Variant::AsPrinted) => Status::Confirmed,
        (None, Variant::TraceCorrected) => Status::CorrectedVariantConfirmed,
    };
    FormulaOutcome { prediction: pred.clone(), computed, status }
}

/// The families and parameter ranges of the standard agreement sweep.
pub fn standard_sweep() -> Vec<GroupFamilySpec> {
    use GroupFamilySpec::*;
    let mut out: Vec<GroupFamilySpec> = [1, 3, 5, 7].into_iter().map(|n| V { n }).collect();
    out.extend((2..=8).map(|n| SemiDihedral { n }));
    out.extend((3..=20).map(|m| Dihedral { m }));
    out.extend((2..=12).map(|m| Quaternion { m }));
    for r in 3..=20u64 {
        out.extend((1..=60 / r).map(|s| M { r, s }));
    }
    out.extend((1..=8).map(|n| U { n }));
    for p in crate::numtheory::primes_up_to(100) {
        for q in crate::numtheory::primes_up_to(p - 1) {
            if (p - 1) % q == 0 && p * q <= 200 {
                out.push(Frobenius { p, q });
            }
        }
    }
    out.extend([HanakiV { n: 2 }, HanakiV { n: 3 }]);
    out.extend([HanakiP { n: 1, p: 2 }, HanakiP { n: 1, p: 3 }, HanakiP { n: 2, p: 2 }]);
    out
}

/// Builds the group, runs the brute-force oracle and judges every applicable
/// formula. Groups above `cap` are skipped.
pub fn verify(spec: &GroupFamilySpec, cap: u128) -> VerificationRecord {
    let mut rec = VerificationRecord {
        spec: spec.clone(),
        skipped: None,
        checks: None,
        method: None,
        vertices: 0,
        edges: 0,
        outcomes: Vec::new(),
    };
    let predictions = predict(spec);
    let skip = |mut rec: VerificationRecord, reason: String| {
        rec.outcomes = predictions
            .iter()
            .map(|p| FormulaOutcome { prediction: p.clone(), computed: String::new(), status: Status::Skipped(reason.clone()) })
            .collect();
        rec.skipped = Some(reason);
        rec
    };
    let order = spec.predicted_order();
    if order > cap {
        return skip(rec, Error::TooLarge { order, cap }.to_string());
    }
    let g = match construct(spec) {
        Ok(g) => g,
        Err(e) => return skip(rec, e.to_string()),
    };
    let bf = match brute_force(&g) {
        Ok(bf) => bf,
        Err(e) => return skip(rec, e.to_string()),
    };
    rec.checks = Some(GroupChecks {
        order: bf.order,
        predicted_order: order,
        center_order: bf.center_order,
        predicted_center_order: spec.predicted_center_order(),
        quotient: bf.quotient,
        predicted_quotient: quotient_data(spec).map(|(q, _)| q),
    });
    rec.method = Some(bf.method.as_str());
    rec.vertices = bf.vertices;
    rec.edges = bf.edges;
    rec.outcomes = predictions.iter().map(|p| judge(p, &bf)).collect();
    rec
}

/// [`verify`] over many groups in parallel; the output order follows the
/// input order.
pub fn verify_many(specs: &[GroupFamilySpec], cap: u128) -> Vec<VerificationRecord> {
    specs.par_iter().map(|s| verify(s, cap)).collect()
}

impl VerificationRecord {
    pub fn refuted(&self) -> impl Iterator<Item = &FormulaOutcome> {
        self.outcomes.iter().filter(|o| matches!(o.status, Status::Refuted(_)))
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    pub fn to_json(&self) -> Value {
        let outcomes: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id().as_str(),
                    "variant": o.variant().as_str(),
                    "quantity": o.quantity().as_str(),
                    "anchor": o.id().anchor(),
                    "status": o.status.as_str(),
                    "witness": o.status.witness(),
                    "predicted": o.prediction.value.to_string(),
                    "computed": o.computed,
                })
            })
            .collect();
        let checks = self.checks.as_ref().map(|c| {
            json!({
                "order": c.order,
                "center_order": c.center_order,
                "predicted_center_order": c.predicted_center_order.map(|z| z.to_string()),
                "quotient": quotient_str(c.quotient),
                "predicted_quotient": c.predicted_quotient.map(quotient_str),
                "consistent": c.consistent(),
            })
        });
        json!({
            "group": self.spec.to_string(),
            "args": self.spec.to_args(),
            "skipped": self.skipped,
            "method": self.method,
            "vertices": self.vertices.to_string(),
            "edges": self.edges.to_string(),
            "checks": checks,
            "formulas": outcomes,
        })
    }

    /// Markdown table with one row per formula variant.
    pub fn to_markdown(&self) -> String {
        let mut out = format!("### {} (`{}`)\n\n", self.spec, self.spec.to_args());
        if let Some(reason) = &self.skipped {
            out.push_str(&format!("skipped: {reason}\n\n"));
        }
        out.push_str("| formula | variant | anchor | status | witness |\n|---|---|---|---|---|\n");
        for o in &self.outcomes {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                o.id(),
                o.variant().as_str(),
                o.id().anchor().replace('|', "\\|"),
                o.status.as_str(),
                o.status.witness().unwrap_or("").replace('|', "\\|"),
            ));
        }
        out
    }
}

pub fn quotient_str(q: QuotientShape) -> String {
    match q {
        QuotientShape::ZpXZp(p) => format!("Z_{p} x Z_{p}"),
        QuotientShape::Dihedral(o) => format!("D_{o}"),
        QuotientShape::Other => "other".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum_of(spec: &GroupFamilySpec, id: FormulaId) -> String {
        match &evaluate(id, spec).unwrap()[0].value {
            PredictedValue::Spectrum(s) => s.to_string(),
            PredictedValue::Energy(e) => e.to_string(),
        }
    }

    #[test]
    fn catalog_covers_every_id() {
        assert_eq!(CATALOG.len(), FormulaId::ALL.len());
        for id in FormulaId::ALL {
            assert_eq!(id.entry().id, id);
            assert_eq!(id.as_str().parse::<FormulaId>().unwrap(), id);
        }
    }

    #[test]
    fn small_values() {
        let v8 = GroupFamilySpec::V { n: 1 };
        assert_eq!(spectrum_of(&v8, FormulaId::V8nSpec), "{(-2)^2, 0^3, 4^1}");
        assert_eq!(spectrum_of(&v8, FormulaId::V8nE), "8");
        assert_eq!(spectrum_of(&v8, FormulaId::V8nLE), "8");
        let f = GroupFamilySpec::Frobenius { p: 3, q: 2 };
        assert_eq!(spectrum_of(&f, FormulaId::FpqE), "2 + 2*sqrt(7)");
        assert_eq!(spectrum_of(&f, FormulaId::FpqLE), "42/5");
        let h = GroupFamilySpec::HanakiP { n: 1, p: 2 };
        assert_eq!(spectrum_of(&h, FormulaId::HanakiApSpec), "{(-2)^2, 0^3, 4^1}");
        assert_eq!(spectrum_of(&h, FormulaId::HanakiApLE), "8");
        let u = GroupFamilySpec::U { n: 2 };
        assert_eq!(spectrum_of(&u, FormulaId::U6n), "{(2 - 2*sqrt(7))^1, (-2)^2, 0^6, (2 + 2*sqrt(7))^1}");
        let d8 = GroupFamilySpec::Dihedral { m: 4 };
        assert_eq!(spectrum_of(&d8, FormulaId::D2mEven), "{(-2)^2, 0^3, 4^1}");
        assert_eq!(spectrum_of(&d8, FormulaId::D2mLE), "8");
    }

    #[test]
    fn mismatched_family_is_not_applicable() {
        let d6 = GroupFamilySpec::Dihedral { m: 3 };
        assert!(matches!(evaluate(FormulaId::V8nE, &d6), Err(Error::NotApplicable(_))));
        assert!(matches!(evaluate(FormulaId::SD8nOddE, &GroupFamilySpec::SemiDihedral { n: 2 }), Err(_)));
    }

    #[test]
    fn v24_all_confirmed() {
        let rec = verify(&GroupFamilySpec::V { n: 3 }, DEFAULT_VERIFY_CAP);
        let ids: Vec<_> = rec.outcomes.iter().filter(|o| o.status == Status::Confirmed).map(|o| o.id()).collect();
        for id in [FormulaId::V8nSpec, FormulaId::V8nE, FormulaId::V8nLspec, FormulaId::V8nLE] {
            assert!(ids.contains(&id), "{id} not confirmed: {}", rec.to_markdown());
        }
        assert_eq!(rec.refuted().count(), 0, "{}", rec.to_markdown());
    }

    #[test]
    fn sd24_odd_variants() {
        let rec = verify(&GroupFamilySpec::SemiDihedral { n: 3 }, DEFAULT_VERIFY_CAP);
        let refuted: Vec<_> = rec.refuted().map(|o| (o.id(), o.variant())).collect();
        assert_eq!(
            refuted,
            vec![(FormulaId::SD8nOddSpec, Variant::AsPrinted), (FormulaId::SD8nOddE, Variant::AsPrinted)]
        );
        let trace = rec.refuted().next().unwrap().status.witness().unwrap().to_string();
        assert!(trace.contains("trace is -12"), "{trace}");
        let corrected = rec.outcomes.iter().filter(|o| o.status == Status::CorrectedVariantConfirmed).count();
        assert_eq!(corrected, 2);
    }

    #[test]
    fn frobenius_21_confirmed() {
        let rec = verify(&GroupFamilySpec::Frobenius { p: 7, q: 3 }, DEFAULT_VERIFY_CAP);
        assert!(rec.outcomes.iter().any(|o| o.id() == FormulaId::FpqLE && o.status == Status::Confirmed));
        assert!(rec.outcomes.iter().any(|o| o.id() == FormulaId::FpqE && o.status == Status::Confirmed));
        assert_eq!(rec.refuted().count(), 0);
    }

    #[test]
    fn cap_skips() {
        let rec = verify(&GroupFamilySpec::Dihedral { m: 10 }, 6);
        assert!(rec.is_skipped());
        assert!(rec.outcomes.iter().all(|o| matches!(o.status, Status::Skipped(_))));
    }
}
