//! Colored-graph encoding of orthogonal arrays: `t` type-1 vertices for the
//! coordinates, `t·n` type-2 vertices for the symbols of each coordinate,
//! `n²` type-3 vertices for the rows. Color-preserving graph isomorphism
//! then captures paratopy (one color per type) or isotopy (each type-1
//! vertex individually colored).

use crate::oa::OrthogonalArray;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphMode {
    Paratopy,
    Isotopy,
    Autotopy,
}

#[derive(Clone)]
pub struct ColoredGraph {
    pub adjacency: Vec<Vec<u32>>,
    pub colors: Vec<u32>,
    pub mode: GraphMode,
}

impl ColoredGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)], colors: Vec<u32>, mode: GraphMode) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        ColoredGraph {
            adjacency,
            colors,
            mode,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }
}

/// Vertex ids of the three blocks for a `t`-coordinate array of order `n`.
pub fn type1_vertex(coord: usize) -> usize {
    coord
}

pub fn type2_vertex(t: usize, n: usize, coord: usize, symbol: usize) -> usize {
    t + coord * n + symbol
}

pub fn type3_offset(t: usize, n: usize) -> usize {
    t + t * n
}

pub fn mols_graph(array: &OrthogonalArray, mode: GraphMode) -> ColoredGraph {
    let n = array.order();
    let t = array.coordinates();
    let vertex_count = t + t * n + n * n;
    let mut edges = Vec::with_capacity(t * n + t * n * n);
    for c in 0..t {
        for s in 0..n {
            edges.push((type1_vertex(c), type2_vertex(t, n, c, s)));
        }
    }
    let off = type3_offset(t, n);
    for (ridx, row) in array.rows().iter().enumerate() {
        for c in 0..t {
            edges.push((off + ridx, type2_vertex(t, n, c, row[c] as usize)));
        }
    }
    let mut colors = vec![0u32; vertex_count];
    for c in 0..t {
        colors[c] = match mode {
            GraphMode::Paratopy => 0,
            // isotopy and autotopy pin every coordinate role
            GraphMode::Isotopy | GraphMode::Autotopy => c as u32,
        };
    }
    let (c2, c3) = match mode {
        GraphMode::Paratopy => (1, 2),
        _ => (t as u32, t as u32 + 1),
    };
    for v in t..off {
        colors[v] = c2;
    }
    for v in off..vertex_count {
        colors[v] = c3;
    }
    ColoredGraph::new(vertex_count, &edges, colors, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::LatinSquare;

    fn square_graph(n: usize, mode: GraphMode) -> ColoredGraph {
        let sq = LatinSquare::from_fn(n, |i, j| (i + j) % n).unwrap();
        mols_graph(&OrthogonalArray::from_square(&sq), mode)
    }

    #[test]
    fn vertex_and_edge_counts() {
        // t = 3, n = 6: 3 + 18 + 36 vertices, 18 + 108 edges
        let g = square_graph(6, GraphMode::Paratopy);
        assert_eq!(g.vertex_count(), 57);
        assert_eq!(g.edge_count(), 126);
        // t = 3, n = 2: 3 + 6 + 4 vertices, 6 + 12 edges
        let g = square_graph(2, GraphMode::Paratopy);
        assert_eq!(g.vertex_count(), 13);
        assert_eq!(g.edge_count(), 18);
    }

    #[test]
    fn four_coordinate_counts() {
        use crate::mols::MolsSet;
        let set = MolsSet::new(vec![
            LatinSquare::from_fn(5, |i, j| (i + j) % 5).unwrap(),
            LatinSquare::from_fn(5, |i, j| (i + 2 * j) % 5).unwrap(),
        ])
        .unwrap();
        let g = mols_graph(&OrthogonalArray::from_mols(&set), GraphMode::Paratopy);
        assert_eq!(g.vertex_count(), 4 + 20 + 25);
    }

    #[test]
    fn isotopy_mode_pins_coordinates() {
        let g = square_graph(3, GraphMode::Isotopy);
        assert_eq!(&g.colors[..3], &[0, 1, 2]);
        assert!(g.colors[3..12].iter().all(|&c| c == 3));
        assert!(g.colors[12..].iter().all(|&c| c == 4));
    }
}
