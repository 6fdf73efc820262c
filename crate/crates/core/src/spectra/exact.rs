//! Exact spectra from characteristic polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::algebraic::{roots_of_squarefree, AlgebraicValue};
use super::charpoly::char_poly_exact;
use super::jacobi::numeric_eigenvalues;
use super::spectrum::{SpectrumKind, SpectrumMultiset};
use crate::error::Result;
use crate::poly::IntPoly;
use crate::IntegerMatrix;

/// Largest matrix handled by the dense exact path.
pub const DENSE_EXACT_MAX_DIM: usize = 1000;

/// Splits a monic integer polynomial into exact roots with multiplicities.
///
/// `hints` are approximate roots; integers near them are tried first by exact
/// deflation, which keeps the squarefree step small for highly degenerate
/// spectra.
pub fn spectrum_from_char_poly(p: &IntPoly, kind: SpectrumKind, hints: &[f64]) -> Result<SpectrumMultiset> {
    let mut s = SpectrumMultiset::new(kind);
    let z = p.zero_root_multiplicity();
    s.push(AlgebraicValue::zero(), z as u128);
    let mut rest = p.shift_down(z);

    let mut candidates: Vec<i64> =
        hints.iter().filter(|h| (*h - h.round()).abs() < 1e-4).map(|h| h.round() as i64).filter(|&c| c != 0).collect();
    candidates.sort_unstable();
    candidates.dedup();
    for c in candidates {
        let c = BigInt::from(c);
        let mut mult = 0u128;
        while let Some(q) = rest.deflate(&c) {
            rest = q;
            mult += 1;
        }
        s.push(AlgebraicValue::Rational(BigRational::from_integer(c)), mult);
    }

    for (factor, mult) in rest.squarefree_factors() {
        for root in roots_of_squarefree(&factor)? {
            s.push(root, mult as u128);
        }
    }
    Ok(s)
}

/// Exact spectrum of a symmetric integer matrix, using the numeric
/// eigenvalues only as deflation hints.
pub fn exact_spectrum(m: &IntegerMatrix, kind: SpectrumKind) -> Result<SpectrumMultiset> {
    let hints = numeric_eigenvalues(m, 1e-10)?.values;
    let p = char_poly_exact(m);
    spectrum_from_char_poly(&p, kind, &hints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::poly::int_poly;

    #[test]
    fn a4_char_poly_factors() {
        // x^6 (x+2)^3 (x^2 - 6x - 24)
        let p = int_poly(&[0, 0, 0, 0, 0, 0, 1]).mul(&int_poly(&[2, 1]).pow(3)).mul(&int_poly(&[-24, -6, 1]));
        let s = spectrum_from_char_poly(&p, SpectrumKind::Adjacency, &[]).unwrap();
        assert_eq!(s.total(), 11);
        assert_eq!(s.multiplicity(&AlgebraicValue::int(-2)), 3);
        assert_eq!(s.multiplicity(&AlgebraicValue::zero()), 6);
        assert_eq!(s.entries().len(), 4);
    }

    #[test]
    fn octahedron_matrix() {
        let m: IntegerMatrix = Matrix::from_fn(6, |i, j| (i / 2 != j / 2) as i64);
        let s = exact_spectrum(&m, SpectrumKind::Adjacency).unwrap();
        assert_eq!(s.to_string(), "{(-2)^2, 0^3, 4^1}");
    }
}
