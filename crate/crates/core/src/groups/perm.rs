use super::FiniteGroup;
use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as the image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    /// `(self * other)(x) = self(other(x))`
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn is_even(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    /// Cycle notation on points `1..=n`, e.g. `(1,2)(3,4)`; identity is `()`.
    pub fn cycle_label(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.0[x] as usize;
            }
            out.push_str(&format!("({})", cycle.join(",")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    heap_permute(n, &mut cur, &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn heap_permute(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation(cur.clone()));
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        let j = if k % 2 == 0 { i } else { 0 };
        cur.swap(j, k - 1);
    }
}

fn check_degree(n: u64) -> Result<usize> {
    if !(1..=7).contains(&n) {
        return Err(Error::InvalidParameters(format!("permutation degree {n} outside 1..=7")));
    }
    Ok(n as usize)
}

pub fn symmetric_group(n: u64) -> Result<FiniteGroup> {
    let n = check_degree(n)?;
    FiniteGroup::from_elements(format!("S{n}"), all_permutations(n), |a, b| a.compose(b), |p| p.cycle_label())
}

pub fn alternating_group(n: u64) -> Result<FiniteGroup> {
    let n = check_degree(n)?;
    let even: Vec<Permutation> = all_permutations(n).into_iter().filter(|p| p.is_even()).collect();
    FiniteGroup::from_elements(format!("A{n}"), even, |a, b| a.compose(b), |p| p.cycle_label())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert_eq!(alternating_group(4).unwrap().order(), 12);
        assert_eq!(alternating_group(5).unwrap().order(), 60);
    }

    #[test]
    fn labels() {
        let p = Permutation(vec![1, 0, 3, 2]);
        assert_eq!(p.cycle_label(), "(1,2)(3,4)");
        assert!(p.is_even());
        assert!(!Permutation(vec![1, 0, 2]).is_even());
        assert_eq!(Permutation(vec![0, 1]).cycle_label(), "()");
    }
}
