//! Spectra of complete multipartite graphs, block matrices and Kronecker
//! products.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::algebraic::AlgebraicValue;
use super::charpoly::berkowitz;
use super::exact::spectrum_from_char_poly;
use super::spectrum::{SpectrumKind, SpectrumMultiset};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncgraph::MultipartiteShape;
use crate::poly::IntPoly;

fn int(n: u128) -> BigInt {
    BigInt::from(n)
}

fn neg_int(n: u128) -> AlgebraicValue {
    AlgebraicValue::integer(-int(n))
}

/// The class-reduced matrix: `C[i][j] = s_j c_j` off the diagonal and
/// `s_i (c_i - 1)` on it.
pub fn class_matrix(shape: &MultipartiteShape) -> Matrix<BigInt> {
    let cl = shape.classes();
    Matrix::from_fn(cl.len(), |i, j| {
        let (s, c) = cl[j];
        if i == j {
            int(s) * int(c - 1)
        } else {
            int(s) * int(c)
        }
    })
}

/// Characteristic polynomial of the class-reduced matrix.
pub fn class_poly(shape: &MultipartiteShape) -> IntPoly {
    berkowitz(&class_matrix(shape))
}

/// Adjacency spectrum of a complete multipartite graph: `0^(N-r)`,
/// `(-s)^(c-1)` per class, and the roots of the class polynomial.
pub fn multipartite_adjacency_spectrum(shape: &MultipartiteShape) -> Result<SpectrumMultiset> {
    let n = shape.total_vertices();
    let r = shape.num_parts();
    let mut s = spectrum_from_char_poly(&class_poly(shape), SpectrumKind::Adjacency, &[])?;
    s.push(AlgebraicValue::zero(), n - r);
    for &(size, count) in shape.classes() {
        s.push(neg_int(size), count - 1);
    }
    Ok(s)
}

/// Laplacian spectrum: `0`, `(N - s)^(s-1)` per part, `N^(r-1)`.
pub fn multipartite_laplacian_spectrum(shape: &MultipartiteShape) -> Result<SpectrumMultiset> {
    let n = shape.total_vertices();
    let r = shape.num_parts();
    let mut s = SpectrumMultiset::new(SpectrumKind::Laplacian);
    s.push(AlgebraicValue::zero(), 1);
    for &(size, count) in shape.classes() {
        s.push(AlgebraicValue::integer(int(n - size)), (size - 1) * count);
    }
    s.push(AlgebraicValue::integer(int(n)), r - 1);
    Ok(s)
}

/// Spectrum of the block matrix `[[0_m, J], [J, J_n - I_n]]`:
/// `0^(m-1)`, `(-1)^(n-1)` and the roots of `x^2 - (n-1)x - mn`.
pub fn block_b_spectrum(m: u128, n: u128) -> Result<SpectrumMultiset> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters("block sizes must be positive".into()));
    }
    let mut s = SpectrumMultiset::new(SpectrumKind::Adjacency);
    s.push(AlgebraicValue::zero(), m - 1);
    s.push(AlgebraicValue::int(-1), n - 1);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let a = BigRational::from_integer(int(n) - 1) * &half;
    let disc: BigInt = (int(n) - 1u32) * (int(n) - 1u32) + BigInt::from(4) * int(m) * int(n);
    s.push(AlgebraicValue::surd(a.clone(), -half.clone(), disc.clone())?, 1);
    s.push(AlgebraicValue::surd(a, half, disc)?, 1);
    Ok(s)
}

/// The explicit block matrix behind [`block_b_spectrum`].
pub fn block_b_matrix(m: usize, n: usize) -> Matrix<i64> {
    Matrix::from_fn(m + n, |i, j| match (i < m, j < m) {
        (true, true) => 0,
        (false, false) => (i != j) as i64,
        _ => 1,
    })
}

/// Spectrum of `J_k`: `0^(k-1), k^1`.
pub fn all_ones_spectrum(k: u128) -> SpectrumMultiset {
    SpectrumMultiset::from_entries(
        SpectrumKind::Adjacency,
        [(AlgebraicValue::zero(), k - 1), (AlgebraicValue::integer(int(k)), 1)],
    )
}

/// Eigenvalues of `X (x) Y` are the pairwise products. Products that cannot be
/// kept exact are carried as floats and flagged.
pub fn kron_spectrum(x: &SpectrumMultiset, y: &SpectrumMultiset) -> Result<SpectrumMultiset> {
    if x.kind() != SpectrumKind::Adjacency || y.kind() != SpectrumKind::Adjacency {
        return Err(Error::KindMismatch("adjacency"));
    }
    let mut out = SpectrumMultiset::new(SpectrumKind::Adjacency);
    for (a, ma) in x.entries() {
        for (b, mb) in y.entries() {
            let (v, flagged) = a.mul(b);
            if flagged {
                out.add_flag(format!("product {a} * {b} kept numeric"));
            }
            out.push(v, ma * mb);
        }
    }
    for f in x.flags().iter().chain(y.flags()) {
        out.add_flag(f.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron() {
        let shape = MultipartiteShape::from_part_sizes(&[2, 2, 2]).unwrap();
        let s = multipartite_adjacency_spectrum(&shape).unwrap();
        assert_eq!(s.to_string(), "{(-2)^2, 0^3, 4^1}");
        let l = multipartite_laplacian_spectrum(&shape).unwrap();
        assert_eq!(l.to_string(), "{0^1, 4^3, 6^2}");
    }

    #[test]
    fn a4_laplacian() {
        let shape = MultipartiteShape::new([(3, 1), (2, 4)]).unwrap();
        let l = multipartite_laplacian_spectrum(&shape).unwrap();
        assert_eq!(l.to_string(), "{0^1, 8^2, 9^4, 11^4}");
    }

    #[test]
    fn block_b_small_cases() {
        assert_eq!(block_b_spectrum(1, 2).unwrap().to_string(), "{(-1)^2, 2^1}");
        assert_eq!(block_b_spectrum(2, 3).unwrap().to_string(), "{(1 - sqrt(7))^1, (-1)^2, 0^1, (1 + sqrt(7))^1}");
    }

    #[test]
    fn kron_with_all_ones() {
        let x = SpectrumMultiset::from_entries(
            SpectrumKind::Adjacency,
            [(AlgebraicValue::int(-1), 2), (AlgebraicValue::int(2), 1)],
        );
        let k = kron_spectrum(&x, &all_ones_spectrum(3)).unwrap();
        assert_eq!(k.to_string(), "{(-3)^2, 0^6, 6^1}");
    }
}
