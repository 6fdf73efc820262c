//! Non-commuting graphs: vertices are the non-central elements, edges join
//! pairs that do not commute.

mod shape;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::matrix::Matrix;
use crate::IntegerMatrix;

pub use shape::MultipartiteShape;

/// Largest synthetic multipartite graph that will be materialized.
pub const MAX_MATERIALIZED_VERTICES: u128 = 20_000;

#[derive(Clone, Debug)]
pub struct NonCommutingGraph {
    labels: Vec<String>,
    adjacency: Vec<bool>,
    edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultipartiteResult {
    /// Parts as lists of group element indices, in vertex order.
    Multipartite { shape: MultipartiteShape, parts: Vec<Vec<usize>> },
    NotMultipartite,
}

impl MultipartiteResult {
    pub fn shape(&self) -> Option<&MultipartiteShape> {
        match self {
            MultipartiteResult::Multipartite { shape, .. } => Some(shape),
            MultipartiteResult::NotMultipartite => None,
        }
    }
}

impl NonCommutingGraph {
    fn from_predicate(labels: Vec<String>, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut adjacency = vec![false; n * n];
        let mut edges = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    adjacency[i * n + j] = true;
                    adjacency[j * n + i] = true;
                    edges += 1;
                }
            }
        }
        NonCommutingGraph { labels, adjacency, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.labels.len() + j]
    }

    pub fn degree(&self, i: usize) -> usize {
        let n = self.labels.len();
        self.adjacency[i * n..(i + 1) * n].iter().filter(|&&a| a).count()
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let n = self.labels.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.adjacent(i, j)).collect()
    }

    /// One `u v` pair of vertex labels per line.
    pub fn edge_list_text(&self) -> String {
        self.edge_list().iter().map(|&(i, j)| format!("{} {}\n", self.labels[i], self.labels[j])).collect()
    }

    /// Adjacency matrix as CSV with a header row and a label column.
    pub fn matrix_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Unsupported(format!("csv: {e}"));
        let header: Vec<&str> = std::iter::once("").chain(self.labels.iter().map(String::as_str)).collect();
        w.write_record(&header).map_err(csv_err)?;
        let n = self.labels.len();
        for i in 0..n {
            let row: Vec<String> = std::iter::once(self.labels[i].clone())
                .chain((0..n).map(|j| (self.adjacent(i, j) as u8).to_string()))
                .collect();
            w.write_record(&row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Unsupported(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Vertex list: the multipartite part order for AC-groups, label order
/// otherwise.
pub fn build_graph(g: &FiniteGroup) -> Result<NonCommutingGraph> {
    let center: HashSet<usize> = g.center().into_iter().collect();
    if center.len() == g.order() {
        return Err(Error::AbelianGroup);
    }
    let vertices: Vec<usize> = match multipartite_shape(g) {
        MultipartiteResult::Multipartite { parts, .. } => parts.into_iter().flatten().collect(),
        MultipartiteResult::NotMultipartite => {
            let mut v: Vec<usize> = (0..g.order()).filter(|x| !center.contains(x)).collect();
            v.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
            v
        }
    };
    let labels = vertices.iter().map(|&x| g.label(x).to_string()).collect();
    Ok(NonCommutingGraph::from_predicate(labels, |i, j| !g.commutes(vertices[i], vertices[j])))
}

/// For AC-groups, the parts `X_i \ Z(G)` sorted by (size desc, first label),
/// each part sorted by label. The complete multipartite structure is checked
/// against the commutation relation before it is returned.
pub fn multipartite_shape(g: &FiniteGroup) -> MultipartiteResult {
    let report = g.distinct_centralizers();
    if !report.ac_group || report.non_central.is_empty() {
        return MultipartiteResult::NotMultipartite;
    }
    let center: HashSet<usize> = g.center().into_iter().collect();
    let mut parts: Vec<Vec<usize>> = report
        .non_central
        .iter()
        .map(|c| {
            let mut p: Vec<usize> = c.iter().copied().filter(|x| !center.contains(x)).collect();
            p.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
            p
        })
        .collect();
    parts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| g.label(a[0]).cmp(g.label(b[0]))));

    let mut part_of = vec![usize::MAX; g.order()];
    for (k, p) in parts.iter().enumerate() {
        for &x in p {
            if part_of[x] != usize::MAX {
                return MultipartiteResult::NotMultipartite;
            }
            part_of[x] = k;
        }
    }
    let non_central: Vec<usize> = (0..g.order()).filter(|x| !center.contains(x)).collect();
    if non_central.iter().any(|&x| part_of[x] == usize::MAX) {
        return MultipartiteResult::NotMultipartite;
    }
    let consistent = non_central
        .iter()
        .all(|&x| non_central.iter().all(|&y| g.commutes(x, y) == (part_of[x] == part_of[y])));
    if !consistent {
        return MultipartiteResult::NotMultipartite;
    }
    match MultipartiteShape::from_part_sizes(&parts.iter().map(|p| p.len() as u128).collect::<Vec<_>>()) {
        Ok(shape) => MultipartiteResult::Multipartite { shape, parts },
        Err(_) => MultipartiteResult::NotMultipartite,
    }
}

pub fn adjacency_matrix(gr: &NonCommutingGraph) -> IntegerMatrix {
    Matrix::from_fn(gr.vertex_count(), |i, j| gr.adjacent(i, j) as i64)
}

/// `L = D - A`
pub fn laplacian_matrix(gr: &NonCommutingGraph) -> IntegerMatrix {
    let degrees: Vec<i64> = (0..gr.vertex_count()).map(|i| gr.degree(i) as i64).collect();
    Matrix::from_fn(gr.vertex_count(), |i, j| if i == j { degrees[i] } else { -(gr.adjacent(i, j) as i64) })
}

/// The complete multipartite graph with the given parts, vertices labelled
/// `p<part>.<k>`, largest parts first.
pub fn multipartite_graph(shape: &MultipartiteShape) -> Result<NonCommutingGraph> {
    let n = shape.total_vertices();
    if n > MAX_MATERIALIZED_VERTICES {
        return Err(Error::TooLarge { order: n, cap: MAX_MATERIALIZED_VERTICES });
    }
    let mut part_of = Vec::with_capacity(n as usize);
    let mut labels = Vec::with_capacity(n as usize);
    for (p, size) in shape.part_sizes().into_iter().enumerate() {
        for k in 0..size {
            part_of.push(p);
            labels.push(format!("p{}.{}", p + 1, k + 1));
        }
    }
    Ok(NonCommutingGraph::from_predicate(labels, |i, j| part_of[i] != part_of[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupFamilySpec};

    #[test]
    fn d6_graph() {
        let g = construct(&GroupFamilySpec::Dihedral { m: 3 }).unwrap();
        let gr = build_graph(&g).unwrap();
        assert_eq!(gr.vertex_count(), 5);
        assert_eq!(gr.edge_count(), 9);
        let mut degrees: Vec<usize> = (0..5).map(|i| gr.degree(i)).collect();
        degrees.sort();
        assert_eq!(degrees, vec![3, 3, 4, 4, 4]);
        let l = laplacian_matrix(&gr);
        assert!(l.row_sums().iter().all(|&s| s == 0));
    }

    #[test]
    fn abelian_rejected() {
        let g = construct(&GroupFamilySpec::Cyclic { n: 6 }).unwrap();
        assert!(matches!(build_graph(&g), Err(Error::AbelianGroup)));
    }

    #[test]
    fn octahedron() {
        let gr = multipartite_graph(&MultipartiteShape::from_part_sizes(&[2, 2, 2]).unwrap()).unwrap();
        assert_eq!((gr.vertex_count(), gr.edge_count()), (6, 12));
    }

    #[test]
    fn exports() {
        let gr = multipartite_graph(&MultipartiteShape::from_part_sizes(&[1, 1]).unwrap()).unwrap();
        assert_eq!(gr.edge_list_text(), "p1.1 p2.1\n");
        assert_eq!(gr.matrix_csv().unwrap(), ",p1.1,p2.1\np1.1,0,1\np2.1,1,0\n");
    }
}
