//! Integers `n` with `(n-1)(5n-1)` a perfect square, and the integral complete
//! multipartite graphs built from them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer as _, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::GroupFamilySpec;
use crate::ncgraph::MultipartiteShape;
use crate::numtheory::{exact_sqrt, fibonacci, lucas};
use crate::poly::{IntPoly, Poly};
use crate::spectra::class_poly;
use crate::spectra::roots::{isolate_real_roots, refine, Refined};

const BRANCH_SEEDS: [(i64, i64); 3] = [(1, 65), (2, 442), (10, 3026)];
const MERGED_SEEDS: [i64; 6] = [1, 2, 10, 65, 442, 3026];

/// One branch of `n_{i+2} = 322 n_{i+1} - n_i - 192`; `branch` is 1, 2 or 3.
pub fn branch_sequence(branch: u8, count: usize) -> Result<Vec<BigInt>> {
    let &(a, b) = BRANCH_SEEDS
        .get((branch as usize).wrapping_sub(1))
        .ok_or_else(|| Error::InvalidParameters(format!("branch must be 1, 2 or 3, got {branch}")))?;
    let mut out = vec![BigInt::from(a), BigInt::from(b)];
    while out.len() < count {
        let k = out.len();
        let next = BigInt::from(322) * &out[k - 1] - &out[k - 2] - 192;
        out.push(next);
    }
    out.truncate(count);
    Ok(out)
}

/// `n_{i+6} = 322 n_{i+3} - n_i - 192` from the six seeds.
pub fn merged_sequence(count: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = MERGED_SEEDS.iter().map(|&x| BigInt::from(x)).collect();
    while out.len() < count {
        let k = out.len();
        let next = BigInt::from(322) * &out[k - 3] - &out[k - 6] - 192;
        out.push(next);
    }
    out.truncate(count);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareWitness {
    /// `(sqrt(n-1), sqrt(5n-1))`
    Square(BigInt, BigInt),
    NotSquare,
}

pub fn square_witnesses(n: &BigInt) -> SquareWitness {
    if n < &BigInt::one() {
        return SquareWitness::NotSquare;
    }
    match (exact_sqrt(&(n - 1)), exact_sqrt(&(BigInt::from(5) * n - 1))) {
        (Some(a), Some(b)) => SquareWitness::Square(a, b),
        _ => SquareWitness::NotSquare,
    }
}

/// For even `n` with `(n-1)(5n-1)` square: `m = n/2` and the integer root of
/// `(2m-1)(10m-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvedWitness {
    pub m: BigInt,
    pub root: BigInt,
}

pub fn halved_witness(n: &BigInt) -> Result<HalvedWitness> {
    if n.is_odd() || !n.is_positive() {
        return Err(Error::InvalidParameters(format!("{n} is not a positive even integer")));
    }
    if square_witnesses(n) == SquareWitness::NotSquare {
        return Err(Error::InvalidParameters(format!("(n-1)(5n-1) is not a square for n = {n}")));
    }
    let m = n / 2;
    let product = (BigInt::from(2) * &m - 1) * (BigInt::from(10) * &m - 1);
    let root = exact_sqrt(&product)
        .ok_or_else(|| Error::Unsupported(format!("(2m-1)(10m-1) = {product} is not a square for m = {m}")))?;
    Ok(HalvedWitness { m, root })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibLucasRow {
    /// 1-based index into the merged sequence.
    pub index: usize,
    pub n: BigInt,
    pub fib: BigInt,
    pub lucas: BigInt,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibLucasReport {
    pub ok: bool,
    pub rows: Vec<FibLucasRow>,
}

/// Checks `sqrt(n_i - 1) = F_{2(i-1)}` and `sqrt(5 n_i - 1) = L_{2(i-1)}`.
pub fn fib_lucas_check(count: usize) -> FibLucasReport {
    let rows: Vec<FibLucasRow> = merged_sequence(count)
        .into_iter()
        .enumerate()
        .map(|(k, n)| {
            let (fib, lucas) = (fibonacci(2 * k as u64), lucas(2 * k as u64));
            let ok = square_witnesses(&n) == SquareWitness::Square(fib.clone(), lucas.clone());
            FibLucasRow { index: k + 1, n, fib, lucas, ok }
        })
        .collect();
    FibLucasReport { ok: rows.iter().all(|r| r.ok), rows }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareRow {
    pub n: BigInt,
    pub sqrt_n_minus_1: BigInt,
    pub sqrt_5n_minus_1: BigInt,
    pub half: Option<BigInt>,
}

pub fn square_table(rows: usize) -> Vec<SquareRow> {
    merged_sequence(rows)
        .into_iter()
        .map(|n| {
            let SquareWitness::Square(a, b) = square_witnesses(&n) else {
                unreachable!("sequence term {n} fails the square test")
            };
            let half = n.is_even().then(|| &n / 2);
            SquareRow { n, sqrt_n_minus_1: a, sqrt_5n_minus_1: b, half }
        })
        .collect()
}

pub const SQUARE_TABLE_HEADER: [&str; 4] = ["n", "sqrt(n-1)", "sqrt(5n-1)", "n/2"];

/// The table as CSV; odd `n` leave the last cell empty.
pub fn square_table_csv(rows: usize) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Unsupported(format!("csv: {e}"));
    w.write_record(SQUARE_TABLE_HEADER).map_err(err)?;
    for r in square_table(rows) {
        let half = r.half.map(|h| h.to_string()).unwrap_or_default();
        w.write_record([r.n.to_string(), r.sqrt_n_minus_1.to_string(), r.sqrt_5n_minus_1.to_string(), half])
            .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Unsupported(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Every `n <= limit` with `(n-1)(5n-1)` a perfect square, by direct search.
pub fn scan_squares(limit: u64) -> Vec<u64> {
    (1..=limit)
        .filter(|&n| {
            let v = (n as u128 - 1) * (5 * n as u128 - 1);
            let r = v.sqrt();
            r * r == v
        })
        .collect()
}

/// The nine integrality statements, each a complete multipartite shape
/// built from a sequence term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntegralCase {
    /// `V_8m` with `m = n_i/2` odd: `K_{(2m).2, 1.(4m-2)}`.
    A,
    /// `SD_8n`, `n = n_i` odd: `K_{n.4, 1.(4n-4)}`.
    B,
    /// `m = n_i/2`: `K_{(2m).2, 1.(4m-2)}`.
    C,
    /// `G/Z = D_2n` with `n = n_i`: `K_{n.z, 1.((n-1)z)}`.
    D { z: u64 },
    /// `M_2rs`, `r = n_i` odd: `K_{r.s, 1.(s(r-1))}`.
    E { s: u64 },
    /// `M_2rs`, `r = 2 n_i`: `K_{n_i.(2s), 1.(2s(n_i-1))}`.
    F { s: u64 },
    /// `D_2n`, `n = n_i` odd: `K_{n.1, 1.(n-1)}`.
    G,
    /// `D_2m`, `m = 2 n_i`: `K_{n_i.2, 1.(2(n_i-1))}`.
    H,
    /// `Q_4n`, `n = n_i`: `K_{n.2, 1.(2(n-1))}`.
    I,
}

impl IntegralCase {
    /// All cases, with the scaled ones at `z = s = 1, 2, 3`.
    pub fn all() -> Vec<IntegralCase> {
        use IntegralCase::*;
        let mut out = vec![A, B, C];
        out.extend((1..=3).map(|z| D { z }));
        out.extend((1..=3).map(|s| E { s }));
        out.extend((1..=3).map(|s| F { s }));
        out.extend([G, H, I]);
        out
    }

    pub fn letter(self) -> char {
        use IntegralCase::*;
        match self {
            A => 'a',
            B => 'b',
            C => 'c',
            D { .. } => 'd',
            E { .. } => 'e',
            F { .. } => 'f',
            G => 'g',
            H => 'h',
            I => 'i',
        }
    }

    /// The group whose non-commuting graph has this shape at `n_i`, when the
    /// group exists and is small enough to index with `u64`.
    pub fn group(self, n: &BigInt) -> Option<GroupFamilySpec> {
        use IntegralCase::*;
        let n = n.to_u64()?;
        match self {
            A if n % 4 == 2 => Some(GroupFamilySpec::V { n: n / 2 }),
            B if n % 2 == 1 && n >= 3 => Some(GroupFamilySpec::SemiDihedral { n }),
            C if n % 4 == 0 => Some(GroupFamilySpec::SemiDihedral { n: n / 2 }),
            E { s } if n % 2 == 1 && n >= 3 => Some(GroupFamilySpec::M { r: n, s }),
            F { s } if n >= 2 => Some(GroupFamilySpec::M { r: 2 * n, s }),
            G if n % 2 == 1 && n >= 3 => Some(GroupFamilySpec::Dihedral { m: n }),
            H if n >= 2 => Some(GroupFamilySpec::Dihedral { m: 2 * n }),
            I if n >= 2 => Some(GroupFamilySpec::Quaternion { m: n }),
            _ => None,
        }
    }
}

impl fmt::Display for IntegralCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralCase::D { z } => write!(f, "d(|Z|={z})"),
            IntegralCase::E { s } | IntegralCase::F { s } => write!(f, "{}(s={s})", self.letter()),
            _ => write!(f, "{}", self.letter()),
        }
    }
}

fn to_u128(n: &BigInt) -> Result<u128> {
    n.to_u128().ok_or_else(|| Error::TooLarge { order: u128::MAX, cap: u128::MAX })
}

/// `K_{a.x, 1.y}`; a single part or an empty part means the case degenerates.
fn two_class(a: u128, x: u128, y: u128) -> Result<MultipartiteShape> {
    if y == 0 || x == 0 || a == 0 {
        return Err(Error::NotApplicable("the shape has a single part".into()));
    }
    MultipartiteShape::new([(x, a), (y, 1)])
}

/// The shape for `case` at the sequence term `n_index` (1-based).
pub fn integral_graph_instance(index: usize, case: IntegralCase) -> Result<MultipartiteShape> {
    use IntegralCase::*;
    if index == 0 {
        return Err(Error::InvalidParameters("sequence index starts at 1".into()));
    }
    let n_big = merged_sequence(index).pop().expect("index >= 1");
    let n = to_u128(&n_big)?;
    let odd = n % 2 == 1;
    let parity = |want_odd: bool| {
        if odd == want_odd {
            Ok(())
        } else {
            Err(Error::NotApplicable(format!("case {case} needs n_i {}, got {n}", if want_odd { "odd" } else { "even" })))
        }
    };
    match case {
        A => {
            parity(false)?;
            let m = n / 2;
            if m % 2 == 0 {
                return Err(Error::NotApplicable(format!("V_8m needs m = n_i/2 odd, got {m}")));
            }
            two_class(2 * m, 2, 4 * m - 2)
        }
        B => {
            parity(true)?;
            two_class(n, 4, 4 * n - 4)
        }
        C => {
            parity(false)?;
            let m = n / 2;
            two_class(2 * m, 2, 4 * m - 2)
        }
        D { z } => two_class(n, z as u128, (n - 1) * z as u128),
        E { s } => {
            parity(true)?;
            two_class(n, s as u128, s as u128 * (n - 1))
        }
        F { s } => two_class(n, 2 * s as u128, 2 * s as u128 * (n - 1)),
        G => {
            parity(true)?;
            two_class(n, 1, n - 1)
        }
        H | I => two_class(n, 2, 2 * (n - 1)),
    }
}

/// `(index, case, shape)` for every applicable case over the first `count`
/// sequence terms.
pub fn integral_graph_instances(count: usize) -> Vec<(usize, IntegralCase, MultipartiteShape)> {
    let mut out = Vec::new();
    for index in 1..=count {
        for case in IntegralCase::all() {
            if let Ok(shape) = integral_graph_instance(index, case) {
                out.push((index, case, shape));
            }
        }
    }
    out
}

/// The shape of the non-commuting graph for the families where it is known
/// in closed form.
pub fn catalog_shape(spec: &GroupFamilySpec) -> Option<MultipartiteShape> {
    use crate::closed_forms::quotient_data;
    use crate::groups::QuotientShape;
    let build = |a: u128, x: u128, y: u128| two_class(a, x, y).ok();
    match *spec {
        GroupFamilySpec::V { n } if n % 2 == 1 => build(2 * n as u128, 2, 4 * n as u128 - 2),
        GroupFamilySpec::SemiDihedral { n } if n % 2 == 1 && n >= 3 => build(n as u128, 4, 4 * n as u128 - 4),
        GroupFamilySpec::SemiDihedral { n } if n % 2 == 0 && n >= 2 => build(2 * n as u128, 2, 4 * n as u128 - 2),
        GroupFamilySpec::M { r, s } if r >= 3 && r % 2 == 1 => build(r as u128, s as u128, (s * (r - 1)) as u128),
        GroupFamilySpec::M { r, s } if r >= 4 && r % 2 == 0 => {
            build(r as u128 / 2, 2 * s as u128, 2 * s as u128 * (r as u128 / 2 - 1))
        }
        GroupFamilySpec::Dihedral { m } if m >= 3 && m % 2 == 1 => build(m as u128, 1, m as u128 - 1),
        GroupFamilySpec::Dihedral { m } if m >= 4 && m % 2 == 0 => build(m as u128 / 2, 2, 2 * (m as u128 / 2 - 1)),
        GroupFamilySpec::Quaternion { m } if m >= 2 => build(m as u128, 2, 2 * (m as u128 - 1)),
        _ => match quotient_data(spec)? {
            (QuotientShape::Dihedral(order), z) => {
                let m = order as u128 / 2;
                build(m, z as u128, (m - 1) * z as u128)
            }
            _ => None,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityCertificate {
    pub shape: MultipartiteShape,
    /// Characteristic polynomial of the class-reduced matrix; the full
    /// polynomial is `x^(N-r) prod (x+s)^(c-1)` times this.
    pub class_poly: IntPoly,
    /// Integer eigenvalues of the whole graph with multiplicities, ascending.
    pub roots: Vec<(BigInt, u128)>,
    pub integral: bool,
}

impl IntegralityCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape.to_json(),
            "class_poly": self.class_poly.to_string(),
            "roots": self.roots.iter().map(|(r, m)| json!({"value": r.to_string(), "mult": m.to_string()})).collect::<Vec<_>>(),
            "integral": self.integral,
        })
    }
}

/// Integer roots of a squarefree integer polynomial.
fn squarefree_integer_roots(f: &IntPoly) -> Vec<BigInt> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out = Vec::new();
    for (lo, hi) in isolate_real_roots(f) {
        let (lo, hi) = match refine(f, &lo, &hi, &half) {
            Refined::Exact(r) => (r.clone(), r),
            Refined::Interval(a, b) => (a, b),
        };
        let mut c = lo.ceil().to_integer();
        while BigRational::from_integer(c.clone()) <= hi {
            if f.eval(&c).is_zero() {
                out.push(c.clone());
            }
            c += 1;
        }
    }
    out
}

/// Decides integrality from the class-reduced matrix: the graph is integral
/// exactly when its characteristic polynomial is a product of monic linear
/// integer factors, which is checked by multiplying them back together.
pub fn certify_integral(shape: &MultipartiteShape) -> IntegralityCertificate {
    let p = class_poly(shape);
    let mut class_roots: Vec<(BigInt, u128)> = Vec::new();
    for (f, mult) in p.squarefree_factors() {
        for r in squarefree_integer_roots(&f) {
            class_roots.push((r, mult as u128));
        }
    }
    let product = class_roots.iter().fold(Poly::one(), |acc: IntPoly, (r, m)| {
        acc.mul(&Poly::linear_root(r.clone()).pow(*m as usize))
    });
    let integral = product == p;

    let mut roots: Vec<(BigInt, u128)> = Vec::new();
    let mut push = |v: BigInt, m: u128| {
        if m == 0 {
            return;
        }
        match roots.iter_mut().find(|(x, _)| *x == v) {
            Some(e) => e.1 += m,
            None => roots.push((v, m)),
        }
    };
    push(BigInt::zero(), shape.total_vertices() - shape.num_parts());
    for &(size, count) in shape.classes() {
        push(-BigInt::from(size), count - 1);
    }
    for (r, m) in class_roots {
        push(r, m);
    }
    roots.sort();
    IntegralityCertificate { shape: shape.clone(), class_poly: p, roots, integral }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[&str]) -> Vec<BigInt> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn branches() {
        assert_eq!(branch_sequence(1, 4).unwrap(), big(&["1", "65", "20737", "6677057"]));
        assert_eq!(branch_sequence(2, 3).unwrap(), big(&["2", "442", "142130"]));
        assert_eq!(branch_sequence(3, 3).unwrap(), big(&["10", "3026", "974170"]));
        assert!(branch_sequence(4, 3).is_err());
    }

    #[test]
    fn merged_terms() {
        assert_eq!(merged_sequence(7), big(&["1", "2", "10", "65", "442", "3026", "20737"]));
        assert_eq!(merged_sequence(28)[27], "7442093853169599697985".parse::<BigInt>().unwrap());
    }

    #[test]
    fn witnesses() {
        assert_eq!(square_witnesses(&65.into()), SquareWitness::Square(8.into(), 18.into()));
        assert_eq!(square_witnesses(&7.into()), SquareWitness::NotSquare);
        let h = halved_witness(&442.into()).unwrap();
        assert_eq!((h.m, h.root), (221.into(), 987.into()));
        assert_eq!(halved_witness(&10.into()).unwrap().root, 21.into());
        assert!(halved_witness(&65.into()).is_err());
    }

    #[test]
    fn csv_prefix() {
        let csv = square_table_csv(5).unwrap();
        assert_eq!(csv, "n,sqrt(n-1),sqrt(5n-1),n/2\n1,0,2,\n2,1,3,1\n10,3,7,5\n65,8,18,\n442,21,47,221\n");
    }

    #[test]
    fn scan_matches_sequence() {
        let found = scan_squares(1_000_000);
        let seq: Vec<u64> = merged_sequence(12).iter().filter_map(|n| n.to_u64()).filter(|&n| n <= 1_000_000).collect();
        assert_eq!(found, seq);
    }

    #[test]
    fn certificates() {
        let octa = certify_integral(&MultipartiteShape::from_part_sizes(&[2, 2, 2]).unwrap());
        assert!(octa.integral);
        assert_eq!(octa.roots, vec![((-2).into(), 2), (0.into(), 3), (4.into(), 1)]);
        let k32 = certify_integral(&MultipartiteShape::from_part_sizes(&[3, 2]).unwrap());
        assert!(!k32.integral);
        assert_eq!(k32.class_poly.to_string(), "x^2 - 6");
    }

    #[test]
    fn documented_instances() {
        let d = integral_graph_instance(4, IntegralCase::G).unwrap();
        assert_eq!(d.to_string(), "K_{1.64, 65.1}");
        assert!(certify_integral(&d).integral);
        assert!(matches!(integral_graph_instance(3, IntegralCase::G), Err(Error::NotApplicable(_))));
        let q = integral_graph_instance(2, IntegralCase::I).unwrap();
        assert_eq!(q, MultipartiteShape::from_part_sizes(&[2, 2, 2]).unwrap());
        assert_eq!(integral_graph_instance(2, IntegralCase::A).unwrap(), q);
        assert!(integral_graph_instance(1, IntegralCase::B).is_err());
    }

    #[test]
    fn huge_terms_certify() {
        let shape = integral_graph_instance(28, IntegralCase::G).unwrap();
        assert!(certify_integral(&shape).integral);
    }
}
