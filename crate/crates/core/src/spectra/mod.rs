//! Exact and numeric eigenvalue machinery.

pub mod algebraic;
pub mod charpoly;
pub mod energy;
pub mod exact;
pub mod jacobi;
pub mod multipartite;
pub mod roots;
pub mod spectrum;

pub use algebraic::{AlgebraicValue, PolyRoot, SurdSum};
pub use charpoly::{berkowitz, char_poly_exact, CharPoly};
pub use energy::{compare_energies, energy, laplacian_energy, mean_degree, EnergyReport, EnergyValue, Verdict};
pub use exact::{exact_spectrum, spectrum_from_char_poly};
pub use jacobi::{numeric_eigenvalues, symmetric_eigenvalues, NumericSpectrum};
pub use multipartite::{
    all_ones_spectrum, block_b_matrix, block_b_spectrum, class_matrix, class_poly, kron_spectrum,
    multipartite_adjacency_spectrum, multipartite_laplacian_spectrum,
};
pub use spectrum::{PowerSum, SpectrumKind, SpectrumMultiset};
