use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Part sizes of a complete multipartite graph as `(size, count)` classes,
/// largest size first, one class per distinct size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultipartiteShape {
    classes: Vec<(u128, u128)>,
}

impl MultipartiteShape {
    pub fn new(classes: impl IntoIterator<Item = (u128, u128)>) -> Result<Self> {
        let mut merged: Vec<(u128, u128)> = Vec::new();
        for (size, count) in classes {
            if size == 0 {
                return Err(Error::InvalidParameters("part sizes must be positive".into()));
            }
            if count == 0 {
                continue;
            }
            match merged.iter_mut().find(|(s, _)| *s == size) {
                Some(c) => c.1 += count,
                None => merged.push((size, count)),
            }
        }
        merged.sort_by(|a, b| b.0.cmp(&a.0));
        let shape = MultipartiteShape { classes: merged };
        if shape.num_parts() < 2 {
            return Err(Error::TooFewParts);
        }
        Ok(shape)
    }

    pub fn from_part_sizes(sizes: &[u128]) -> Result<Self> {
        MultipartiteShape::new(sizes.iter().map(|&s| (s, 1)))
    }

    pub fn classes(&self) -> &[(u128, u128)] {
        &self.classes
    }

    pub fn num_parts(&self) -> u128 {
        self.classes.iter().map(|(_, c)| c).sum()
    }

    pub fn total_vertices(&self) -> u128 {
        self.classes.iter().map(|(s, c)| s * c).sum()
    }

    pub fn edge_count(&self) -> u128 {
        let n = self.total_vertices();
        let within: u128 = self.classes.iter().map(|(s, c)| c * s * s).sum();
        (n * n - within) / 2
    }

    /// Part sizes expanded one per part, largest first.
    pub fn part_sizes(&self) -> Vec<u128> {
        self.classes.iter().flat_map(|&(s, c)| std::iter::repeat(s).take(c as usize)).collect()
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> =
            self.classes.iter().map(|(s, c)| json!({"size": s.to_string(), "count": c.to_string()})).collect();
        json!({"notation": self.to_string(), "classes": classes})
    }
}

/// `K_{count.size, ...}`
impl fmt::Display for MultipartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.classes.iter().map(|(s, c)| format!("{c}.{s}")).collect();
        write!(f, "K_{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a4_shape() {
        let s = MultipartiteShape::from_part_sizes(&[2, 3, 2, 2, 2]).unwrap();
        assert_eq!(s.to_string(), "K_{1.3, 4.2}");
        assert_eq!(s.total_vertices(), 11);
        assert_eq!(s.edge_count(), 48);
    }

    #[test]
    fn rejects_single_part() {
        assert_eq!(MultipartiteShape::new([(5, 1)]), Err(Error::TooFewParts));
    }
}
