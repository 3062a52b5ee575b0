//! Canonical labeling by iterated color refinement with
//! individualization-refinement backtracking. Certificates are canonical
//! byte strings; automorphisms fall out of the same search as leaf
//! collisions and prune it via orbits.

use std::collections::HashMap;

use crate::graph::ColoredGraph;
use crate::perm::Perm;

/// Canonical byte-string invariant of a colored graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    pub bytes: Vec<u8>,
}

impl Certificate {
    pub fn hex(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(&self.bytes);
        digest[..16].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Debug for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Certificate({})", self.hex())
    }
}

type Cells = Vec<Vec<u32>>;

/// Splits cells by neighbor-count signatures until the partition is
/// equitable. New sub-cells replace their cell in place, ordered by
/// signature, so the evolution is isomorphism-invariant.
fn refine(adj: &[Vec<u32>], mut cells: Cells) -> Cells {
    let n = adj.len();
    let mut cell_of = vec![0u32; n];
    loop {
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v as usize] = ci as u32;
            }
        }
        let ncells = cells.len();
        let mut next: Cells = Vec::with_capacity(ncells);
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<u32>, u32)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u32; ncells];
                    for &u in &adj[v as usize] {
                        counts[cell_of[u as usize] as usize] += 1;
                    }
                    (counts, v)
                })
                .collect();
            sigs.sort();
            let mut pieces = 0;
            let mut start = 0;
            for i in 1..=sigs.len() {
                if i == sigs.len() || sigs[i].0 != sigs[start].0 {
                    next.push(sigs[start..i].iter().map(|(_, v)| *v).collect());
                    pieces += 1;
                    start = i;
                }
            }
            if pieces > 1 {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn leaf_certificate(adj: &[Vec<u32>], cells: &Cells) -> (Vec<u8>, Vec<u32>) {
    let n = adj.len();
    let mut label = vec![0u32; n];
    for (pos, cell) in cells.iter().enumerate() {
        label[cell[0] as usize] = pos as u32;
    }
    let mut bits = vec![0u8; (n * n + 7) / 8];
    for (v, nbrs) in adj.iter().enumerate() {
        let lv = label[v] as usize;
        for &u in nbrs {
            let lu = label[u as usize] as usize;
            if lv < lu {
                let idx = lv * n + lu;
                bits[idx >> 3] |= 1 << (idx & 7);
            }
        }
    }
    (bits, label)
}

fn orbit_reps(cell: &[u32], base: &[u32], autos: &[Vec<u32>], n: usize) -> Vec<u32> {
    let usable: Vec<&Vec<u32>> = autos
        .iter()
        .filter(|a| base.iter().all(|&b| a[b as usize] == b))
        .collect();
    if usable.is_empty() {
        return cell.to_vec();
    }
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for a in usable {
        for &v in cell {
            let u = a[v as usize];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru as usize] = rv;
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    cell.iter()
        .filter(|&&v| seen.insert(find(&mut parent, v)))
        .copied()
        .collect()
}

struct Search<'a> {
    adj: &'a [Vec<u32>],
    best: Option<Vec<u8>>,
    leaves: HashMap<Vec<u8>, Vec<u32>>,
    autos: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn run(&mut self, cells: Cells, base: &mut Vec<u32>) {
        // first largest non-singleton cell
        let mut target: Option<usize> = None;
        for (i, c) in cells.iter().enumerate() {
            if c.len() > 1 && target.map_or(true, |t| c.len() > cells[t].len()) {
                target = Some(i);
            }
        }
        let Some(target) = target else {
            let (cert, label) = leaf_certificate(self.adj, &cells);
            if let Some(prev) = self.leaves.get(&cert) {
                // composition prev^{-1} ∘ label is an automorphism
                let n = self.adj.len();
                let mut inv = vec![0u32; n];
                for (v, &p) in prev.iter().enumerate() {
                    inv[p as usize] = v as u32;
                }
                let auto: Vec<u32> = (0..n).map(|v| inv[label[v] as usize]).collect();
                if auto.iter().enumerate().any(|(v, &u)| v as u32 != u) {
                    debug_assert!(is_automorphism(self.adj, &auto));
                    self.autos.push(auto);
                }
            } else {
                self.leaves.insert(cert.clone(), label);
            }
            if self.best.as_ref().map_or(true, |b| cert < *b) {
                self.best = Some(cert);
            }
            return;
        };
        let cell = cells[target].clone();
        for v in orbit_reps(&cell, base, &self.autos, self.adj.len()) {
            let mut next: Cells = Vec::with_capacity(cells.len() + 1);
            for (ci, c) in cells.iter().enumerate() {
                if ci == target {
                    next.push(vec![v]);
                    next.push(c.iter().copied().filter(|&u| u != v).collect());
                } else {
                    next.push(c.clone());
                }
            }
            base.push(v);
            let refined = refine(self.adj, next);
            self.run(refined, base);
            base.pop();
        }
    }
}

fn is_automorphism(adj: &[Vec<u32>], a: &[u32]) -> bool {
    for (v, nbrs) in adj.iter().enumerate() {
        let iv = a[v] as usize;
        let mut mapped: Vec<u32> = nbrs.iter().map(|&u| a[u as usize]).collect();
        mapped.sort_unstable();
        if mapped != adj[iv] {
            return false;
        }
    }
    true
}

/// Canonical certificate plus generators of the color-preserving
/// automorphism group.
pub fn canonical_form(graph: &ColoredGraph) -> (Certificate, Vec<Perm>) {
    let n = graph.vertex_count();
    let mut by_color: Vec<(u32, Vec<u32>)> = Vec::new();
    let mut sorted: Vec<u32> = (0..n as u32).collect();
    sorted.sort_by_key(|&v| (graph.colors[v as usize], v));
    for v in sorted {
        match by_color.last_mut() {
            Some((c, cell)) if *c == graph.colors[v as usize] => cell.push(v),
            _ => by_color.push((graph.colors[v as usize], vec![v])),
        }
    }
    let mut prefix: Vec<u8> = Vec::new();
    prefix.extend_from_slice(&(n as u32).to_le_bytes());
    prefix.extend_from_slice(&(by_color.len() as u32).to_le_bytes());
    for (c, cell) in &by_color {
        prefix.extend_from_slice(&c.to_le_bytes());
        prefix.extend_from_slice(&(cell.len() as u32).to_le_bytes());
    }
    let cells: Cells = by_color.into_iter().map(|(_, cell)| cell).collect();
    let mut search = Search {
        adj: &graph.adjacency,
        best: None,
        leaves: HashMap::new(),
        autos: Vec::new(),
    };
    let refined = refine(&graph.adjacency, cells);
    search.run(refined, &mut Vec::new());
    let mut bytes = prefix;
    bytes.extend_from_slice(&search.best.unwrap());
    let autos = search
        .autos
        .iter()
        .map(|a| Perm::from_images(a.iter().map(|&x| x as u16).collect()).unwrap())
        .collect();
    (Certificate { bytes }, autos)
}

/// Exact order of the group generated by permutations, by closure; `None`
/// once more than `cap` elements appear.
pub fn generated_group_order(generators: &[Perm], degree: usize, cap: usize) -> Option<usize> {
    let mut set = std::collections::HashSet::new();
    set.insert(Perm::identity(degree));
    let mut frontier = vec![Perm::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = g.compose(&x);
            if !set.contains(&y) {
                if set.len() >= cap {
                    return None;
                }
                set.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Some(set.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphMode;

    fn path_graph(colors: Vec<u32>) -> ColoredGraph {
        let n = colors.len();
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        ColoredGraph::new(n, &edges, colors, GraphMode::Paratopy)
    }

    #[test]
    fn path_automorphism() {
        // uncolored path on 4 vertices: one nontrivial automorphism
        let g = path_graph(vec![0, 0, 0, 0]);
        let (_, autos) = canonical_form(&g);
        assert_eq!(generated_group_order(&autos, 4, 100), Some(2));
        // distinct end colors kill it
        let g = path_graph(vec![1, 0, 0, 2]);
        let (_, autos) = canonical_form(&g);
        assert!(autos.is_empty());
    }

    #[test]
    fn relabeled_graphs_share_certificates() {
        let g1 = ColoredGraph::new(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
            vec![0; 5],
            GraphMode::Paratopy,
        );
        // same 5-cycle, vertices permuted
        let g2 = ColoredGraph::new(
            5,
            &[(2, 4), (4, 1), (1, 3), (3, 0), (0, 2)],
            vec![0; 5],
            GraphMode::Paratopy,
        );
        let (c1, autos) = canonical_form(&g1);
        let (c2, _) = canonical_form(&g2);
        assert_eq!(c1, c2);
        // dihedral symmetry of the 5-cycle
        assert_eq!(generated_group_order(&autos, 5, 100), Some(10));
        // a path is not a cycle
        let g3 = path_graph(vec![0; 5]);
        let (c3, _) = canonical_form(&g3);
        assert_ne!(c1, c3);
    }
}
