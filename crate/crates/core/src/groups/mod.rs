//! Finite groups as Cayley tables built from explicit product rules.

mod families;
pub mod gf;
mod perm;

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use families::{construct, frobenius_with_action, GroupFamilySpec, Order16Group, FAMILY_TAGS, MAX_GROUP_ORDER};
pub use gf::GaloisField;
pub use perm::{alternating_group, symmetric_group, Permutation};

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_MAX: usize = 256;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<u32>,
    labels: Vec<String>,
}

/// Centralizer data: every distinct centralizer, the ones belonging to
/// non-central elements, and whether those are all abelian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    pub all: Vec<Vec<usize>>,
    pub non_central: Vec<Vec<usize>>,
    pub ac_group: bool,
}

/// Isomorphism type of `G / Z(G)` among the shapes the closed forms need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientShape {
    /// `Z_p x Z_p`
    ZpXZp(u64),
    /// Dihedral of the given order `2m`.
    Dihedral(u64),
    Other,
}

impl FiniteGroup {
    /// Builds the Cayley table of `elements` under `mul`. Fails if the set is
    /// not closed or has no identity or inverses.
    pub fn from_elements<T, M, L>(name: impl Into<String>, elements: Vec<T>, mul: M, label: L) -> Result<Self>
    where
        T: Eq + Hash + Clone,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let name = name.into();
        let n = elements.len();
        let index: HashMap<&T, u32> = elements.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
        if index.len() != n {
            return Err(Error::InvalidParameters(format!("{name}: duplicate elements")));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let c = mul(a, b);
                let &k = index
                    .get(&c)
                    .ok_or_else(|| Error::InvalidParameters(format!("{name}: product leaves the element set")))?;
                table.push(k);
            }
        }
        let labels = elements.iter().map(label).collect();
        FiniteGroup::from_table(name, table, labels)
    }

    /// Wraps a Cayley table, locating the identity and inverses.
    pub fn from_table(name: impl Into<String>, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        let name = name.into();
        let n = labels.len();
        if table.len() != n * n || n == 0 {
            return Err(Error::InvalidParameters(format!("{name}: table size mismatch")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidParameters(format!("{name}: no identity")))?;
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x * n + y] as usize == identity && table[y * n + x] as usize == identity)
                    .map(|y| y as u32)
            })
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::InvalidParameters(format!("{name}: missing inverse")))?;
        Ok(FiniteGroup { name, order: n, table, identity, inverses, labels })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn power(&self, a: usize, k: u64) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    /// Associativity (exhaustive up to [`EXHAUSTIVE_ASSOC_MAX`], sampled above),
    /// identity and inverse laws.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        let ok = if n <= EXHAUSTIVE_ASSOC_MAX {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            (0..SAMPLED_TRIPLES).all(|_| assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        };
        if !ok {
            return Err(Error::InvalidParameters(format!("{}: product is not associative", self.name)));
        }
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::InvalidParameters(format!("{}: identity law fails", self.name)));
            }
            let y = self.inverse(x);
            if self.mul(x, y) != self.identity || self.mul(y, x) != self.identity {
                return Err(Error::InvalidParameters(format!("{}: inverse law fails", self.name)));
            }
        }
        Ok(())
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|x| self.commutes(z, x))).collect()
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order).filter(|&y| self.commutes(x, y)).collect()
    }

    fn is_abelian_subset(&self, s: &[usize]) -> bool {
        s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    pub fn distinct_centralizers(&self) -> CentralizerReport {
        let center: HashSet<usize> = self.center().into_iter().collect();
        let mut seen = HashSet::new();
        let mut all = Vec::new();
        let mut non_central = Vec::new();
        for x in 0..self.order {
            let c = self.centralizer(x);
            if center.contains(&x) {
                if seen.insert(c.clone()) {
                    all.push(c);
                }
                continue;
            }
            if seen.insert(c.clone()) {
                all.push(c.clone());
                non_central.push(c);
            } else if !non_central.contains(&c) {
                non_central.push(c);
            }
        }
        let ac_group = non_central.iter().all(|c| self.is_abelian_subset(c));
        CentralizerReport { all, non_central, ac_group }
    }

    /// `#{(x, y) : xy = yx} / |G|^2`, reduced.
    pub fn commuting_probability(&self) -> BigRational {
        let n = self.order;
        let pairs = (0..n).map(|a| (0..n).filter(|&b| self.commutes(a, b)).count()).sum::<usize>();
        BigRational::new(BigInt::from(pairs), BigInt::from(n * n))
    }

    /// `G / Z(G)` as a group, with cosets labelled by a representative.
    pub fn central_quotient(&self) -> Result<FiniteGroup> {
        let center = self.center();
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let k = reps.len();
            for &z in &center {
                coset_of[self.mul(x, z)] = k;
            }
            reps.push(x);
        }
        let m = reps.len();
        let table: Vec<u32> =
            (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| coset_of[self.mul(reps[i], reps[j])] as u32).collect();
        let labels = reps.iter().map(|&r| format!("{}Z", self.labels[r])).collect();
        FiniteGroup::from_table(format!("{}/Z", self.name), table, labels)
    }

    /// Recognizes `G/Z(G)` as `Z_p x Z_p` (checked first) or dihedral.
    pub fn central_quotient_shape(&self) -> QuotientShape {
        let Ok(q) = self.central_quotient() else { return QuotientShape::Other };
        let k = q.order();
        if q.is_abelian() {
            let p = (k as f64).sqrt().round() as usize;
            if p * p == k && crate::numtheory::is_prime(p as u64) && (0..k).all(|x| q.power(x, p as u64) == q.identity()) {
                return QuotientShape::ZpXZp(p as u64);
            }
            if k != 4 {
                return QuotientShape::Other;
            }
        }
        if k < 4 || k % 2 == 1 {
            return QuotientShape::Other;
        }
        let m = k / 2;
        let Some(r) = (0..k).find(|&x| q.element_order(x) == m) else { return QuotientShape::Other };
        let rotations: HashSet<usize> = (0..m as u64).map(|i| q.power(r, i)).collect();
        let r_inv = q.inverse(r);
        let dihedral = (0..k).any(|s| {
            !rotations.contains(&s) && q.element_order(s) == 2 && q.mul(q.mul(s, r), q.inverse(s)) == r_inv
        });
        if dihedral {
            QuotientShape::Dihedral(k as u64)
        } else {
            QuotientShape::Other
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: u64) -> FiniteGroup {
        construct(&GroupFamilySpec::Dihedral { m }).unwrap()
    }

    #[test]
    fn dihedral_basics() {
        let g = d(3);
        assert_eq!(g.order(), 6);
        g.check_axioms().unwrap();
        assert_eq!(g.center(), vec![g.identity()]);
        assert_eq!(g.commuting_probability(), BigRational::new(1.into(), 2.into()));
        assert_eq!(d(4).commuting_probability(), BigRational::new(5.into(), 8.into()));
    }

    #[test]
    fn quotient_shapes() {
        assert_eq!(d(4).central_quotient_shape(), QuotientShape::ZpXZp(2));
        assert_eq!(d(5).central_quotient_shape(), QuotientShape::Dihedral(10));
        assert_eq!(d(6).central_quotient_shape(), QuotientShape::Dihedral(6));
        let s4 = construct(&GroupFamilySpec::Symmetric { n: 4 }).unwrap();
        assert_eq!(s4.central_quotient_shape(), QuotientShape::Other);
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let g = d(5);
        assert_eq!(g.centralizer(g.identity()).len(), 10);
    }
}
