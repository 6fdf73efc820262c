use std::fmt;

use super::gf::GaloisField;
use super::perm::{alternating_group, symmetric_group};
use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, multiplicative_order};

/// Largest group order the constructors will build.
pub const MAX_GROUP_ORDER: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order16Group {
    /// `<x, y : x^8 = y^2 = 1, yxy = x^5>`
    M16,
    /// `<x, y : x^4 = y^4 = 1, yxy^-1 = x^-1>`
    Z4SemiZ4,
    /// `D_8 * Z_4`, central product over the common `Z_2`.
    D8CentralZ4,
    /// `<x, y : x^4 = y^4 = 1, xy = y^-1 x^-1, xy^-1 = y x^-1>`
    Sg16_3,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupFamilySpec {
    /// `D_2m`, order `2m`.
    Dihedral { m: u64 },
    /// `Q_4m`, order `4m`.
    Quaternion { m: u64 },
    /// `SD_8n`, order `8n`.
    SemiDihedral { n: u64 },
    /// `QD_{2^n}`, order `2^n`.
    QuasiDihedral { n: u32 },
    /// `V_8n`, order `8n`.
    V { n: u64 },
    /// `M_2rs = <a, b : a^r = b^2s = 1, bab^-1 = a^-1>`, order `2rs`.
    M { r: u64, s: u64 },
    /// `U_6n = <a, b : a^2n = b^3 = 1, a^-1 b a = b^-1>`, order `6n`.
    U { n: u64 },
    /// `Z_p : Z_q`, order `pq`.
    Frobenius { p: u64, q: u64 },
    /// Unitriangular group over `GF(2^n)` twisted by the Frobenius map, order `2^2n`.
    HanakiV { n: u32 },
    /// Unitriangular group over `GF(p^n)`, order `p^3n`.
    HanakiP { n: u32, p: u32 },
    Alternating { n: u64 },
    Symmetric { n: u64 },
    SL23,
    /// `Z_5 : Z_4` with `y^-1 x y = x^2`.
    Sz2,
    Cyclic { n: u64 },
    DirectProduct(Box<GroupFamilySpec>, Box<GroupFamilySpec>),
    Order16(Order16Group),
}

/// Family tags with their parameter names, as accepted by [`GroupFamilySpec::parse`].
pub const FAMILY_TAGS: &[(&str, &str, &str)] = &[
    ("d2m", "m", "dihedral group D_2m"),
    ("q4m", "m", "dicyclic group Q_4m"),
    ("sd8n", "n", "semidihedral group SD_8n"),
    ("qd2n", "n", "quasidihedral group QD_2^n"),
    ("v8n", "n", "V_8n"),
    ("m2rs", "r s", "metacyclic group M_2rs"),
    ("u6n", "n", "U_6n"),
    ("frobenius", "p q", "Frobenius group F_{p,q}"),
    ("hanaki-v", "n", "Hanaki group A(n,v) over GF(2^n)"),
    ("hanaki-p", "n p", "Hanaki group A(n,p) over GF(p^n)"),
    ("alt", "n", "alternating group A_n"),
    ("sym", "n", "symmetric group S_n"),
    ("sl23", "", "SL(2,3)"),
    ("sz2", "", "Suzuki group Sz(2)"),
    ("cyclic", "n", "cyclic group Z_n"),
    ("product", "A B", "direct product, factors written tag:param:..."),
    ("m16", "", "M_16"),
    ("z4z4", "", "Z_4 : Z_4"),
    ("d8z4", "", "central product D_8 * Z_4"),
    ("sg16-3", "", "SmallGroup(16,3)"),
];

fn num<T: std::str::FromStr>(tag: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("{tag}: cannot parse parameter `{s}`")))
}

impl GroupFamilySpec {
    /// Parses a family tag and its positional parameters.
    pub fn parse<S: AsRef<str>>(tag: &str, params: &[S]) -> Result<Self> {
        let p: Vec<&str> = params.iter().map(|s| s.as_ref()).collect();
        let want = |k: usize| -> Result<()> {
            if p.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("{tag} takes {k} parameter(s), got {}", p.len())))
            }
        };
        let spec = match tag {
            "d2m" => {
                want(1)?;
                GroupFamilySpec::Dihedral { m: num(tag, p[0])? }
            }
            "q4m" => {
                want(1)?;
                GroupFamilySpec::Quaternion { m: num(tag, p[0])? }
            }
            "sd8n" => {
                want(1)?;
                GroupFamilySpec::SemiDihedral { n: num(tag, p[0])? }
            }
            "qd2n" => {
                want(1)?;
                GroupFamilySpec::QuasiDihedral { n: num(tag, p[0])? }
            }
            "v8n" => {
                want(1)?;
                GroupFamilySpec::V { n: num(tag, p[0])? }
            }
            "m2rs" => {
                want(2)?;
                GroupFamilySpec::M { r: num(tag, p[0])?, s: num(tag, p[1])? }
            }
            "u6n" => {
                want(1)?;
                GroupFamilySpec::U { n: num(tag, p[0])? }
            }
            "frobenius" => {
                want(2)?;
                GroupFamilySpec::Frobenius { p: num(tag, p[0])?, q: num(tag, p[1])? }
            }
            "hanaki-v" => {
                want(1)?;
                GroupFamilySpec::HanakiV { n: num(tag, p[0])? }
            }
            "hanaki-p" => {
                want(2)?;
                GroupFamilySpec::HanakiP { n: num(tag, p[0])?, p: num(tag, p[1])? }
            }
            "alt" => {
                want(1)?;
                GroupFamilySpec::Alternating { n: num(tag, p[0])? }
            }
            "sym" => {
                want(1)?;
                GroupFamilySpec::Symmetric { n: num(tag, p[0])? }
            }
            "cyclic" => {
                want(1)?;
                GroupFamilySpec::Cyclic { n: num(tag, p[0])? }
            }
            "product" => {
                want(2)?;
                let factor = |s: &str| {
                    let mut it = s.split(':');
                    let t = it.next().unwrap_or_default();
                    let rest: Vec<&str> = it.collect();
                    GroupFamilySpec::parse(t, &rest)
                };
                GroupFamilySpec::DirectProduct(Box::new(factor(p[0])?), Box::new(factor(p[1])?))
            }
            "sl23" | "sz2" | "m16" | "z4z4" | "d8z4" | "sg16-3" => {
                want(0)?;
                match tag {
                    "sl23" => GroupFamilySpec::SL23,
                    "sz2" => GroupFamilySpec::Sz2,
                    "m16" => GroupFamilySpec::Order16(Order16Group::M16),
                    "z4z4" => GroupFamilySpec::Order16(Order16Group::Z4SemiZ4),
                    "d8z4" => GroupFamilySpec::Order16(Order16Group::D8CentralZ4),
                    _ => GroupFamilySpec::Order16(Order16Group::Sg16_3),
                }
            }
            _ => return Err(Error::Parse(format!("unknown family `{tag}`"))),
        };
        Ok(spec)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            GroupFamilySpec::Dihedral { .. } => "d2m",
            GroupFamilySpec::Quaternion { .. } => "q4m",
            GroupFamilySpec::SemiDihedral { .. } => "sd8n",
            GroupFamilySpec::QuasiDihedral { .. } => "qd2n",
            GroupFamilySpec::V { .. } => "v8n",
            GroupFamilySpec::M { .. } => "m2rs",
            GroupFamilySpec::U { .. } => "u6n",
            GroupFamilySpec::Frobenius { .. } => "frobenius",
            GroupFamilySpec::HanakiV { .. } => "hanaki-v",
            GroupFamilySpec::HanakiP { .. } => "hanaki-p",
            GroupFamilySpec::Alternating { .. } => "alt",
            GroupFamilySpec::Symmetric { .. } => "sym",
            GroupFamilySpec::SL23 => "sl23",
            GroupFamilySpec::Sz2 => "sz2",
            GroupFamilySpec::Cyclic { .. } => "cyclic",
            GroupFamilySpec::DirectProduct(..) => "product",
            GroupFamilySpec::Order16(Order16Group::M16) => "m16",
            GroupFamilySpec::Order16(Order16Group::Z4SemiZ4) => "z4z4",
            GroupFamilySpec::Order16(Order16Group::D8CentralZ4) => "d8z4",
            GroupFamilySpec::Order16(Order16Group::Sg16_3) => "sg16-3",
        }
    }

    pub fn params(&self) -> Vec<String> {
        use GroupFamilySpec::*;
        match self {
            Dihedral { m } | Quaternion { m } => vec![m.to_string()],
            SemiDihedral { n } | V { n } | U { n } | Alternating { n } | Symmetric { n } | Cyclic { n } => {
                vec![n.to_string()]
            }
            QuasiDihedral { n } | HanakiV { n } => vec![n.to_string()],
            M { r, s } => vec![r.to_string(), s.to_string()],
            Frobenius { p, q } => vec![p.to_string(), q.to_string()],
            HanakiP { n, p } => vec![n.to_string(), p.to_string()],
            DirectProduct(a, b) => vec![a.factor_arg(), b.factor_arg()],
            SL23 | Sz2 | Order16(_) => vec![],
        }
    }

    fn factor_arg(&self) -> String {
        std::iter::once(self.tag().to_string()).chain(self.params()).collect::<Vec<_>>().join(":")
    }

    /// Tag and parameters as a command line fragment, e.g. `frobenius 7 3`.
    pub fn to_args(&self) -> String {
        std::iter::once(self.tag().to_string()).chain(self.params()).collect::<Vec<_>>().join(" ")
    }

    pub fn predicted_order(&self) -> u128 {
        use GroupFamilySpec::*;
        match *self {
            Dihedral { m } => 2 * m as u128,
            Quaternion { m } => 4 * m as u128,
            SemiDihedral { n } | V { n } => 8 * n as u128,
            QuasiDihedral { n } => 1u128.checked_shl(n).unwrap_or(u128::MAX),
            M { r, s } => 2 * r as u128 * s as u128,
            U { n } => 6 * n as u128,
            Frobenius { p, q } => p as u128 * q as u128,
            HanakiV { n } => 1u128.checked_shl(2 * n).unwrap_or(u128::MAX),
            HanakiP { n, p } => (p as u128).checked_pow(3 * n).unwrap_or(u128::MAX),
            Alternating { n } => (1..=n as u128).product::<u128>() / if n >= 2 { 2 } else { 1 },
            Symmetric { n } => (1..=n as u128).product(),
            SL23 => 24,
            Sz2 => 20,
            Cyclic { n } => n as u128,
            DirectProduct(ref a, ref b) => a.predicted_order().saturating_mul(b.predicted_order()),
            Order16(_) => 16,
        }
    }

    /// `|Z(G)|` where the family determines it.
    pub fn predicted_center_order(&self) -> Option<u128> {
        use GroupFamilySpec::*;
        match *self {
            Dihedral { m } if m >= 3 => Some(if m % 2 == 0 { 2 } else { 1 }),
            Quaternion { m } if m >= 2 => Some(2),
            SemiDihedral { n } if n >= 2 => Some(if n % 2 == 0 { 2 } else { 4 }),
            V { n } if n % 2 == 1 => Some(2),
            M { r, s } if r >= 3 => Some(if r % 2 == 0 { 2 * s as u128 } else { s as u128 }),
            U { n } => Some(n as u128),
            Frobenius { .. } => Some(1),
            HanakiV { n } => Some(1 << n),
            HanakiP { n, p } => Some((p as u128).pow(n)),
            QuasiDihedral { .. } => Some(2),
            Sz2 | SL23 => Some(if matches!(self, SL23) { 2 } else { 1 }),
            Order16(_) => Some(4),
            Cyclic { n } => Some(n as u128),
            DirectProduct(ref a, ref b) => Some(a.predicted_center_order()? * b.predicted_center_order()?),
            _ => None,
        }
    }

    /// Checks the family's parameter constraints.
    pub fn validate(&self) -> Result<()> {
        use GroupFamilySpec::*;
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match *self {
            Dihedral { m } if m < 2 => bad(format!("D_2m needs m >= 2, got {m}")),
            Quaternion { m } if m < 2 => bad(format!("Q_4m needs m >= 2, got {m}")),
            SemiDihedral { n } | V { n } | U { n } if n < 1 => bad("n must be positive".into()),
            QuasiDihedral { n } if n < 4 => bad(format!("QD_2^n needs n >= 4, got {n}")),
            M { r, s } if r < 3 || s < 1 => bad(format!("M_2rs needs r >= 3 and s >= 1, got r={r}, s={s}")),
            Frobenius { p, q } => {
                if !is_prime(p) || !is_prime(q) {
                    bad(format!("F_{{p,q}} needs primes, got p={p}, q={q}"))
                } else if (p - 1) % q != 0 {
                    bad(format!("q={q} does not divide p-1={}", p - 1))
                } else {
                    Ok(())
                }
            }
            HanakiV { n } if n < 2 => bad(format!("A(n,v) needs n >= 2, got {n}")),
            HanakiP { n, p } if n < 1 || !is_prime(p as u64) => {
                bad(format!("A(n,p) needs prime p and n >= 1, got n={n}, p={p}"))
            }
            Cyclic { n } if n < 1 => bad("Z_n needs n >= 1".into()),
            DirectProduct(ref a, ref b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupFamilySpec::*;
        match self {
            Dihedral { m } => write!(f, "D_{}", 2 * m),
            Quaternion { m } => write!(f, "Q_{}", 4 * m),
            SemiDihedral { n } => write!(f, "SD_{}", 8 * n),
            QuasiDihedral { n } => write!(f, "QD_{}", 1u128 << n),
            V { n } => write!(f, "V_{}", 8 * n),
            M { r, s } => write!(f, "M_{}(r={r},s={s})", 2 * r * s),
            U { n } => write!(f, "U_{}", 6 * n),
            Frobenius { p, q } => write!(f, "F_{{{p},{q}}}"),
            HanakiV { n } => write!(f, "A({n},v)"),
            HanakiP { n, p } => write!(f, "A({n},{p})"),
            Alternating { n } => write!(f, "A_{n}"),
            Symmetric { n } => write!(f, "S_{n}"),
            SL23 => write!(f, "SL(2,3)"),
            Sz2 => write!(f, "Sz(2)"),
            Cyclic { n } => write!(f, "Z_{n}"),
            DirectProduct(a, b) => write!(f, "{a} x {b}"),
            Order16(Order16Group::M16) => write!(f, "M_16"),
            Order16(Order16Group::Z4SemiZ4) => write!(f, "Z_4:Z_4"),
            Order16(Order16Group::D8CentralZ4) => write!(f, "D_8*Z_4"),
            Order16(Order16Group::Sg16_3) => write!(f, "SG(16,3)"),
        }
    }
}

fn power_label(g: &str, e: u64) -> String {
    match e {
        0 => String::new(),
        1 => g.to_string(),
        _ => format!("{g}^{e}"),
    }
}

fn word_label(parts: &[(&str, u64)]) -> String {
    let s: String = parts.iter().map(|&(g, e)| power_label(g, e)).collect();
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// `<x, y : x^m = 1, y^k = x^t, y x y^-1 = x^u>` on normal forms `x^i y^j`.
fn metacyclic(name: String, m: u64, k: u64, u: u64, t: u64, gens: (&str, &str)) -> Result<FiniteGroup> {
    let pow_u: Vec<u64> = (0..k).scan(1 % m, |acc, _| {
        let v = *acc;
        *acc = *acc * u % m;
        Some(v)
    }).collect();
    if (pow_u[k as usize - 1] * u) % m != 1 % m || (u * t) % m != t % m {
        return Err(Error::InvalidParameters(format!("{name}: inconsistent metacyclic data")));
    }
    let elements: Vec<(u64, u64)> = (0..m).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    FiniteGroup::from_elements(
        name,
        elements,
        |&(i1, j1), &(i2, j2)| {
            let wrap = if j1 + j2 >= k { t } else { 0 };
            ((i1 + pow_u[j1 as usize] * i2 + wrap) % m, (j1 + j2) % k)
        },
        |&(i, j)| word_label(&[(gens.0, i), (gens.1, j)]),
    )
}

/// `x^i y^j` with `x` of order `m`, `y` of order 4, `y x = x^-1 y^-1` and
/// `y^-1 x = x^-1 y`.
fn twisted(name: String, m: u64, gens: (&str, &str)) -> Result<FiniteGroup> {
    let elements: Vec<(u64, u64)> = (0..m).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
    FiniteGroup::from_elements(
        name,
        elements,
        |&(i1, j1), &(i2, j2)| {
            let i = if j1 % 2 == 0 { (i1 + i2) % m } else { (i1 + m - i2) % m };
            (i, (j1 + j2 + 2 * i2 * (j1 % 2)) % 4)
        },
        |&(i, j)| word_label(&[(gens.0, i), (gens.1, j)]),
    )
}

/// Frobenius group `Z_p : Z_q` with `b^-1 a b = a^u`.
pub fn frobenius_with_action(p: u64, q: u64, u: u64) -> Result<FiniteGroup> {
    if multiplicative_order(u, p) != Some(q) {
        return Err(Error::InvalidParameters(format!("{u} does not have order {q} modulo {p}")));
    }
    let u_inv = (1..p).find(|&x| x * u % p == 1).expect("unit modulo a prime");
    metacyclic(format!("F_{{{p},{q}}}"), p, q, u_inv, 0, ("a", "b"))
}

fn cyclic(n: u64) -> Result<FiniteGroup> {
    FiniteGroup::from_elements(format!("Z_{n}"), (0..n).collect(), |a, b| (a + b) % n, |&a| word_label(&[("z", a)]))
}

fn hanaki_v(n: u32) -> Result<FiniteGroup> {
    let f = GaloisField::new(2, n)?;
    let elements: Vec<(u32, u32)> = f.elements().flat_map(|a| f.elements().map(move |b| (a, b))).collect();
    FiniteGroup::from_elements(
        format!("A({n},v)"),
        elements,
        |&(a, b), &(a2, b2)| (f.add(a, a2), f.add(f.add(b, b2), f.mul(f.frobenius(a), a2))),
        |&(a, b)| format!("U({},{})", f.label(a), f.label(b)),
    )
}

fn hanaki_p(n: u32, p: u32) -> Result<FiniteGroup> {
    let f = GaloisField::new(p, n)?;
    let q = f.size();
    let elements: Vec<(u32, u32, u32)> =
        (0..q).flat_map(|a| (0..q).flat_map(move |b| (0..q).map(move |c| (a, b, c)))).collect();
    FiniteGroup::from_elements(
        format!("A({n},{p})"),
        elements,
        |&(a, b, c), &(a2, b2, c2)| (f.add(a, a2), f.add(f.add(b, b2), f.mul(c, a2)), f.add(c, c2)),
        |&(a, b, c)| format!("V({},{},{})", f.label(a), f.label(b), f.label(c)),
    )
}

fn sl23() -> Result<FiniteGroup> {
    let mut elements = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    if (a * d + 3 - (b * c) % 3) % 3 == 1 {
                        elements.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    FiniteGroup::from_elements(
        "SL(2,3)",
        elements,
        |x, y| {
            [
                (x[0] * y[0] + x[1] * y[2]) % 3,
                (x[0] * y[1] + x[1] * y[3]) % 3,
                (x[2] * y[0] + x[3] * y[2]) % 3,
                (x[2] * y[1] + x[3] * y[3]) % 3,
            ]
        },
        |m| format!("[{},{};{},{}]", m[0], m[1], m[2], m[3]),
    )
}

/// `x^i y^j c^k` with `D_8 = <x, y>`, `c` central of order 4 and `c^2 = x^2`;
/// encoded with `c` reduced to its class modulo `<x^2>`.
fn d8_central_z4() -> Result<FiniteGroup> {
    let elements: Vec<(u64, u64, u64)> =
        (0..4).flat_map(|i| (0..2).flat_map(move |j| (0..2).map(move |k| (i, j, k)))).collect();
    FiniteGroup::from_elements(
        "D_8*Z_4",
        elements,
        |&(i1, j1, k1), &(i2, j2, k2)| {
            let i = if j1 == 0 { i1 + i2 } else { i1 + 4 - i2 };
            let carry = if k1 + k2 >= 2 { 2 } else { 0 };
            ((i + carry) % 4, (j1 + j2) % 2, (k1 + k2) % 2)
        },
        |&(i, j, k)| word_label(&[("x", i), ("y", j), ("c", k)]),
    )
}

fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let elements: Vec<(usize, usize)> = (0..a.order()).flat_map(|i| (0..b.order()).map(move |j| (i, j))).collect();
    FiniteGroup::from_elements(
        format!("{} x {}", a.name(), b.name()),
        elements,
        |&(i1, j1), &(i2, j2)| (a.mul(i1, i2), b.mul(j1, j2)),
        |&(i, j)| format!("({},{})", a.label(i), b.label(j)),
    )
}

/// Builds the group named by `spec` from its normal-form product rule.
pub fn construct(spec: &GroupFamilySpec) -> Result<FiniteGroup> {
    use GroupFamilySpec::*;
    spec.validate()?;
    let order = spec.predicted_order();
    if order > MAX_GROUP_ORDER {
        return Err(Error::TooLarge { order, cap: MAX_GROUP_ORDER });
    }
    let name = spec.to_string();
    let g = match *spec {
        Dihedral { m } => metacyclic(name, m, 2, m - 1, 0, ("a", "b"))?,
        Quaternion { m } => metacyclic(name, 2 * m, 2, 2 * m - 1, m, ("b", "a"))?,
        SemiDihedral { n } => metacyclic(name, 4 * n, 2, 2 * n - 1, 0, ("a", "b"))?,
        QuasiDihedral { n } => {
            let m = 1u64 << (n - 1);
            metacyclic(name, m, 2, (1u64 << (n - 2)) - 1, 0, ("a", "b"))?
        }
        V { n } => twisted(name, 2 * n, ("a", "b"))?,
        M { r, s } => metacyclic(name, r, 2 * s, r - 1, 0, ("a", "b"))?,
        U { n } => metacyclic(name, 3, 2 * n, 2, 0, ("b", "a"))?,
        Frobenius { p, q } => {
            let u = (2..p)
                .find(|&u| multiplicative_order(u, p) == Some(q))
                .ok_or_else(|| Error::InvalidParameters(format!("no element of order {q} modulo {p}")))?;
            frobenius_with_action(p, q, u)?
        }
        HanakiV { n } => hanaki_v(n)?,
        HanakiP { n, p } => hanaki_p(n, p)?,
        Alternating { n } => alternating_group(n)?,
        Symmetric { n } => symmetric_group(n)?,
        SL23 => sl23()?,
        Sz2 => metacyclic(name, 5, 4, 3, 0, ("x", "y"))?,
        Cyclic { n } => cyclic(n)?,
        DirectProduct(ref a, ref b) => direct_product(&construct(a)?, &construct(b)?)?,
        Order16(Order16Group::M16) => metacyclic(name, 8, 2, 5, 0, ("x", "y"))?,
        Order16(Order16Group::Z4SemiZ4) => metacyclic(name, 4, 4, 3, 0, ("x", "y"))?,
        Order16(Order16Group::D8CentralZ4) => d8_central_z4()?,
        Order16(Order16Group::Sg16_3) => twisted(name, 4, ("x", "y"))?,
    };
    if g.order() as u128 != order {
        return Err(Error::InvalidParameters(format!("{spec}: built order {} instead of {order}", g.order())));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: GroupFamilySpec) -> FiniteGroup {
        construct(&spec).unwrap()
    }

    /// Evaluates a word given as `(generator index, exponent)` pairs.
    fn word(grp: &FiniteGroup, gens: &[usize], w: &[(usize, i64)]) -> usize {
        w.iter().fold(grp.identity(), |acc, &(k, e)| {
            let base = if e < 0 { grp.inverse(gens[k]) } else { gens[k] };
            grp.mul(acc, grp.power(base, e.unsigned_abs()))
        })
    }

    #[test]
    fn v8n_relations() {
        for n in [1, 3, 5] {
            let grp = g(GroupFamilySpec::V { n });
            let (a, b) = (grp.find("a").unwrap(), grp.find("b").unwrap());
            let gens = [a, b];
            assert_eq!(grp.element_order(a) as u64, 2 * n);
            assert_eq!(grp.element_order(b), 4);
            assert_eq!(word(&grp, &gens, &[(1, 1), (0, 1)]), word(&grp, &gens, &[(0, -1), (1, -1)]));
            assert_eq!(word(&grp, &gens, &[(1, -1), (0, 1)]), word(&grp, &gens, &[(0, -1), (1, 1)]));
            grp.check_axioms().unwrap();
            assert_eq!(grp.center().len(), 2);
        }
    }

    #[test]
    fn sg16_3_relations() {
        let grp = g(GroupFamilySpec::Order16(Order16Group::Sg16_3));
        let (x, y) = (grp.find("x").unwrap(), grp.find("y").unwrap());
        let gens = [x, y];
        assert_eq!(grp.element_order(x), 4);
        assert_eq!(grp.element_order(y), 4);
        assert_eq!(word(&grp, &gens, &[(0, 1), (1, 1)]), word(&grp, &gens, &[(1, -1), (0, -1)]));
        assert_eq!(word(&grp, &gens, &[(0, 1), (1, -1)]), word(&grp, &gens, &[(1, 1), (0, -1)]));
        grp.check_axioms().unwrap();
        assert_eq!(grp.center().len(), 4);
    }

    #[test]
    fn order16_relations() {
        let m16 = g(GroupFamilySpec::Order16(Order16Group::M16));
        let (x, y) = (m16.find("x").unwrap(), m16.find("y").unwrap());
        assert_eq!(m16.element_order(x), 8);
        assert_eq!(m16.mul(m16.mul(y, x), y), m16.power(x, 5));

        let z = g(GroupFamilySpec::Order16(Order16Group::Z4SemiZ4));
        let (x, y) = (z.find("x").unwrap(), z.find("y").unwrap());
        assert_eq!((z.element_order(x), z.element_order(y)), (4, 4));
        assert_eq!(z.mul(z.mul(y, x), z.inverse(y)), z.inverse(x));

        let d = g(GroupFamilySpec::Order16(Order16Group::D8CentralZ4));
        let (x, y, c) = (d.find("x").unwrap(), d.find("y").unwrap(), d.find("c").unwrap());
        assert_eq!((d.element_order(x), d.element_order(y), d.element_order(c)), (4, 2, 4));
        assert_eq!(d.mul(d.mul(y, x), y), d.inverse(x));
        assert_eq!(d.mul(c, c), d.mul(x, x));
        assert!(d.center().contains(&c));
        for grp in [&m16, &z, &d] {
            grp.check_axioms().unwrap();
            assert_eq!(grp.center().len(), 4);
        }
    }

    #[test]
    fn semidihedral_and_quasidihedral_agree_at_16() {
        let sd = g(GroupFamilySpec::SemiDihedral { n: 2 });
        let qd = g(GroupFamilySpec::QuasiDihedral { n: 4 });
        assert_eq!(sd.labels(), qd.labels());
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(sd.mul(a, b), qd.mul(a, b));
            }
        }
    }

    #[test]
    fn sz2_and_sl23() {
        let sz = g(GroupFamilySpec::Sz2);
        let (x, y) = (sz.find("x").unwrap(), sz.find("y").unwrap());
        assert_eq!(sz.mul(sz.mul(sz.inverse(y), x), y), sz.power(x, 2));
        assert_eq!(sz.center().len(), 1);
        let sl = g(GroupFamilySpec::SL23);
        sl.check_axioms().unwrap();
        assert_eq!(sl.center().len(), 2);
    }

    #[test]
    fn frobenius_is_dihedral_for_q2() {
        let f = g(GroupFamilySpec::Frobenius { p: 3, q: 2 });
        let d = g(GroupFamilySpec::Dihedral { m: 3 });
        let mut fo: Vec<usize> = (0..6).map(|x| f.element_order(x)).collect();
        let mut dorders: Vec<usize> = (0..6).map(|x| d.element_order(x)).collect();
        fo.sort();
        dorders.sort();
        assert_eq!(fo, dorders);
    }

    #[test]
    fn rejections() {
        assert!(construct(&GroupFamilySpec::Frobenius { p: 7, q: 5 }).is_err());
        assert!(construct(&GroupFamilySpec::Frobenius { p: 9, q: 2 }).is_err());
        assert!(construct(&GroupFamilySpec::HanakiV { n: 1 }).is_err());
        assert!(matches!(construct(&GroupFamilySpec::Cyclic { n: 20000 }), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn hanaki_orders_and_centers() {
        let a = g(GroupFamilySpec::HanakiV { n: 2 });
        assert_eq!(a.order(), 16);
        assert_eq!(a.center().len(), 4);
        let b = g(GroupFamilySpec::HanakiP { n: 1, p: 3 });
        assert_eq!(b.order(), 27);
        assert_eq!(b.center().len(), 3);
    }

    #[test]
    fn parse_round_trip() {
        for text in ["d2m 5", "m2rs 3 2", "frobenius 7 3", "product d2m:3 cyclic:3", "sg16-3", "hanaki-p 2 2"] {
            let mut it = text.split(' ');
            let tag = it.next().unwrap();
            let params: Vec<&str> = it.collect();
            let spec = GroupFamilySpec::parse(tag, &params).unwrap();
            assert_eq!(spec.to_args(), text);
        }
        assert!(GroupFamilySpec::parse("nope", &["1"]).is_err());
        assert!(GroupFamilySpec::parse("d2m", &["x"]).is_err());
    }

    #[test]
    fn labels_have_no_spaces() {
        for spec in [
            GroupFamilySpec::V { n: 3 },
            GroupFamilySpec::HanakiV { n: 2 },
            GroupFamilySpec::Alternating { n: 4 },
            GroupFamilySpec::DirectProduct(Box::new(GroupFamilySpec::Dihedral { m: 3 }), Box::new(GroupFamilySpec::Cyclic { n: 3 })),
        ] {
            assert!(g(spec).labels().iter().all(|l| !l.contains(' ')));
        }
    }
}
