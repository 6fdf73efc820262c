//! Brute-force spectral data of a concrete group, computed without any of the
//! closed forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, QuotientShape};
use crate::ncgraph::{adjacency_matrix, build_graph, laplacian_matrix, multipartite_shape, MultipartiteShape};
use crate::spectra::{
    energy, exact_spectrum, laplacian_energy, multipartite_adjacency_spectrum, multipartite_laplacian_spectrum,
    EnergyValue, SpectrumKind, SpectrumMultiset,
};

/// Graphs up to this many vertices are diagonalized from the full matrix.
pub const DENSE_ORACLE_MAX_VERTICES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMethod {
    /// Exact characteristic polynomial of the full adjacency and Laplacian.
    Dense,
    /// Part sizes measured from the centralizers (and checked against the
    /// commutation relation), then the class-reduced matrix.
    ClassReduced,
}

impl OracleMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleMethod::Dense => "dense",
            OracleMethod::ClassReduced => "class-reduced",
        }
    }
}

impl fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct BruteForce {
    pub order: usize,
    pub center_order: usize,
    pub quotient: QuotientShape,
    pub vertices: u128,
    pub edges: u128,
    pub shape: Option<MultipartiteShape>,
    pub method: OracleMethod,
    pub adjacency: SpectrumMultiset,
    pub laplacian: SpectrumMultiset,
    pub energy: EnergyValue,
    pub laplacian_energy: EnergyValue,
}

/// Spectra and energies of the non-commuting graph of `g`.
pub fn brute_force(g: &FiniteGroup) -> Result<BruteForce> {
    let center_order = g.center().len();
    if center_order == g.order() {
        return Err(Error::AbelianGroup);
    }
    let vertices = g.order() - center_order;
    let shape = multipartite_shape(g).shape().cloned();
    let (method, adjacency, laplacian, edges) = if vertices <= DENSE_ORACLE_MAX_VERTICES {
        let gr = build_graph(g)?;
        let adj = exact_spectrum(&adjacency_matrix(&gr), SpectrumKind::Adjacency)?;
        let lap = exact_spectrum(&laplacian_matrix(&gr), SpectrumKind::Laplacian)?;
        (OracleMethod::Dense, adj, lap, gr.edge_count() as u128)
    } else if let Some(sh) = &shape {
        let adj = multipartite_adjacency_spectrum(sh)?;
        let lap = multipartite_laplacian_spectrum(sh)?;
        (OracleMethod::ClassReduced, adj, lap, sh.edge_count())
    } else {
        return Err(Error::Unsupported(format!(
            "{} has {vertices} non-central elements and is not an AC-group",
            g.name()
        )));
    };
    let e = energy(&adjacency)?;
    let le = laplacian_energy(&laplacian, edges, vertices as u128)?;
    Ok(BruteForce {
        order: g.order(),
        center_order,
        quotient: g.central_quotient_shape(),
        vertices: vertices as u128,
        edges,
        shape,
        method,
        adjacency,
        laplacian,
        energy: e,
        laplacian_energy: le,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupFamilySpec};

    #[test]
    fn a4_dense() {
        let g = construct(&GroupFamilySpec::Alternating { n: 4 }).unwrap();
        let b = brute_force(&g).unwrap();
        assert_eq!((b.vertices, b.edges, b.method), (11, 48, OracleMethod::Dense));
        assert_eq!(b.energy.to_string(), "6 + 2*sqrt(33)");
        assert_eq!(b.laplacian_energy.to_string(), "224/11");
    }
}
