//! Group packets and their discovery: a packet is `(G, H_1..H_t, K)` with
//! `H_i ∩ H_j = K` for `i ≠ j` and `[G:H_i] = [H_i:K] = n`. Packets of
//! `t = q+2` subgroups correspond to sets of `q` MOLS of order `n`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{
    coset_action, direct_product, embed_left, embed_right, intersect_subgroups, normal_core,
    PermGroup, Subgroup,
};
use crate::perm::Perm;
use crate::Limits;

#[derive(Clone)]
pub struct GroupPacket {
    pub group: PermGroup,
    pub subgroups: Vec<Subgroup>,
    pub core: Subgroup,
    pub n: usize,
    pub k: usize,
}

impl GroupPacket {
    /// Disjoint packets (`K` trivial) are the ones producing simply
    /// transitive MOLS.
    pub fn is_disjoint(&self) -> bool {
        self.k == 1
    }

    /// Stable identifier: hex fingerprints of the sorted subgroup keys.
    pub fn reference(&self) -> String {
        let mut keys: Vec<String> = self.subgroups.iter().map(|s| s.key_hex()).collect();
        keys.sort();
        keys.join("-")
    }
}

/// Checks every packet condition, reporting the first violation.
pub fn validate_packet(
    group: &PermGroup,
    subgroups: &[Subgroup],
    core: &Subgroup,
) -> Result<GroupPacket> {
    if subgroups.len() < 3 {
        return Err(Error::SizeTooSmall(subgroups.len()));
    }
    if !core.is_subgroup_of_group(group) {
        return Err(Error::NotASubgroup);
    }
    for h in subgroups {
        if !h.is_subgroup_of_group(group) {
            return Err(Error::NotASubgroup);
        }
    }
    let k = core.order();
    let order = group.order();
    if order % k != 0 {
        return Err(Error::SizeViolation {
            group_order: order,
            expected: k,
        });
    }
    let n2 = order / k;
    let n = (n2 as f64).sqrt().round() as usize;
    if n * n != n2 {
        return Err(Error::SizeViolation {
            group_order: order,
            expected: k * n * n,
        });
    }
    for (i, h) in subgroups.iter().enumerate() {
        if order / h.order() != n {
            return Err(Error::IndexViolation {
                index: i,
                expected: n,
                found: order / h.order(),
            });
        }
        if h.order() / k != n || !h.contains_subgroup(core) {
            return Err(Error::IndexViolation {
                index: i,
                expected: n,
                found: h.order() / k,
            });
        }
    }
    for i in 0..subgroups.len() {
        for j in i + 1..subgroups.len() {
            let meet = intersect_subgroups(&subgroups[i], &subgroups[j])?;
            if meet.elements() != core.elements() {
                return Err(Error::IntersectionViolation { i, j });
            }
        }
    }
    Ok(GroupPacket {
        group: group.clone(),
        subgroups: subgroups.to_vec(),
        core: core.clone(),
        n,
        k,
    })
}

/// The graph `Γ_K`: vertices are the subgroups of order `|K|·n` containing
/// `K`, edges join pairs intersecting exactly in `K`.
pub struct IntersectionGraph {
    pub group: PermGroup,
    pub core: Subgroup,
    pub n: usize,
    pub vertices: Vec<Subgroup>,
    adj: Vec<bool>,
}

impl IntersectionGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.vertices.len() + j]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

pub fn intersection_graph(
    group: &PermGroup,
    core: &Subgroup,
    n: usize,
    limits: &Limits,
) -> Result<IntersectionGraph> {
    if n < 2 {
        return Err(Error::UnsupportedParameter("n must be at least 2".into()));
    }
    let k = core.order();
    if k * n * n != group.order() {
        return Err(Error::SizeMismatch {
            expected: k * n * n,
            found: group.order(),
        });
    }
    if !core.is_subgroup_of_group(group) {
        return Err(Error::NotASubgroup);
    }
    let vertices: Vec<Subgroup> = group
        .subgroups_of_order(k * n, limits)?
        .into_iter()
        .filter(|h| h.contains_subgroup(core))
        .collect();
    let v = vertices.len();
    let mut adj = vec![false; v * v];
    for i in 0..v {
        for j in i + 1..v {
            let meet = intersect_subgroups(&vertices[i], &vertices[j])?;
            if meet.elements() == core.elements() {
                adj[i * v + j] = true;
                adj[j * v + i] = true;
            }
        }
    }
    Ok(IntersectionGraph {
        group: group.clone(),
        core: core.clone(),
        n,
        vertices,
        adj,
    })
}

/// What to extract from `Γ_K`: cliques of one size, or maximum cliques.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliqueRequest {
    Exact(usize),
    Max,
}

/// Enumerates cliques and validates each as a packet. Cliques are emitted
/// in lexicographic vertex order; `Max` returns all cliques of the largest
/// size found (packets need at least 3 subgroups, so smaller maxima yield
/// an empty list).
pub fn find_packets(graph: &IntersectionGraph, request: CliqueRequest) -> Result<Vec<GroupPacket>> {
    let cliques = match request {
        CliqueRequest::Exact(size) => {
            if size < 3 {
                return Err(Error::SizeTooSmall(size));
            }
            cliques_of_size(graph, size)
        }
        CliqueRequest::Max => {
            let mut maximal = Vec::new();
            let all: Vec<usize> = (0..graph.vertex_count()).collect();
            bron_kerbosch(graph, &mut Vec::new(), all, Vec::new(), &mut maximal);
            let best = maximal.iter().map(|c| c.len()).max().unwrap_or(0);
            if best < 3 {
                Vec::new()
            } else {
                let mut keep: Vec<Vec<usize>> = maximal
                    .into_iter()
                    .filter(|c| c.len() == best)
                    .map(|mut c| {
                        c.sort();
                        c
                    })
                    .collect();
                keep.sort();
                keep.dedup();
                keep
            }
        }
    };
    cliques
        .into_iter()
        .map(|clique| {
            let subgroups: Vec<Subgroup> =
                clique.iter().map(|&i| graph.vertices[i].clone()).collect();
            validate_packet(&graph.group, &subgroups, &graph.core)
        })
        .collect()
}

fn cliques_of_size(graph: &IntersectionGraph, size: usize) -> Vec<Vec<usize>> {
    let v = graph.vertex_count();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn extend(
        graph: &IntersectionGraph,
        v: usize,
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for cand in start..v {
            if current.iter().all(|&u| graph.has_edge(u, cand)) {
                current.push(cand);
                extend(graph, v, size, cand + 1, current, out);
                current.pop();
            }
        }
    }
    extend(graph, v, size, 0, &mut current, &mut out);
    out
}

fn bron_kerbosch(
    graph: &IntersectionGraph,
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&w| graph.has_edge(u, w)).count());
    let candidates: Vec<usize> = match pivot {
        Some(u) => p.iter().copied().filter(|&w| !graph.has_edge(u, w)).collect(),
        None => p.clone(),
    };
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let np: Vec<usize> = p.iter().copied().filter(|&w| graph.has_edge(v, w)).collect();
        let nx: Vec<usize> = x.iter().copied().filter(|&w| graph.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(graph, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Collapses the packet by the normal core of `K`: the image packet under
/// the coset action of `G` on `G/K_0` has a faithful group and the same `n`.
/// Idempotent; disjoint packets come back unchanged.
pub fn reduce_packet(packet: &GroupPacket) -> Result<GroupPacket> {
    let core0 = normal_core(&packet.group, &packet.core)?;
    if core0.is_trivial() {
        return Ok(packet.clone());
    }
    let action = coset_action(&packet.group, &core0)?;
    let image_of = |sub: &Subgroup| -> Result<Subgroup> {
        let mut elems: Vec<Perm> = sub
            .elements()
            .iter()
            .map(|p| action.images[packet.group.element_index(p).unwrap()].clone())
            .collect();
        elems.sort();
        elems.dedup();
        action.group.subgroup_from_elements(elems)
    };
    let subgroups: Vec<Subgroup> = packet
        .subgroups
        .iter()
        .map(|h| image_of(h))
        .collect::<Result<_>>()?;
    let core = image_of(&packet.core)?;
    validate_packet(&action.group, &subgroups, &core)
}

/// Componentwise product packet over the direct product group.
pub fn product_packets(p1: &GroupPacket, p2: &GroupPacket) -> Result<GroupPacket> {
    if p1.subgroups.len() != p2.subgroups.len() {
        return Err(Error::ArityMismatch);
    }
    let group = direct_product(&p1.group, &p2.group);
    let d1 = p1.group.degree();
    let d2 = p2.group.degree();
    let pair_subgroup = |a: &Subgroup, b: &Subgroup| -> Result<Subgroup> {
        let mut elems = Vec::with_capacity(a.order() * b.order());
        for x in a.elements() {
            let left = embed_left(x, d2);
            for y in b.elements() {
                elems.push(left.compose(&embed_right(y, d1)));
            }
        }
        group.subgroup_from_elements(elems)
    };
    let subgroups: Vec<Subgroup> = p1
        .subgroups
        .iter()
        .zip(&p2.subgroups)
        .map(|(a, b)| pair_subgroup(a, b))
        .collect::<Result<_>>()?;
    let core = pair_subgroup(&p1.core, &p2.core)?;
    validate_packet(&group, &subgroups, &core)
}

/// The Cayley packet `(G×G, {e}×G, G×{e}, ΔG)` of a group; its square is in
/// the main class of the Cayley table.
pub fn cayley_packet(group: &PermGroup) -> Result<GroupPacket> {
    let product = direct_product(group, group);
    let d = group.degree();
    let left: Vec<Perm> = group.generators().iter().map(|g| embed_left(g, d)).collect();
    let right: Vec<Perm> = group.generators().iter().map(|g| embed_right(g, d)).collect();
    let diag: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| embed_left(g, d).compose(&embed_right(g, d)))
        .collect();
    let h1 = product.subgroup_generated_by(&right)?; // {e} x G
    let h2 = product.subgroup_generated_by(&left)?; // G x {e}
    let h3 = product.subgroup_generated_by(&diag)?; // ΔG
    let core = product.trivial_subgroup();
    validate_packet(&product, &[h1, h2, h3], &core)
}

/// Convenience: all `(K, Γ_K)` contexts for a group at the given `n`, i.e.
/// one per subgroup of order `|G| / n²`, in deterministic order.
pub fn packet_contexts(
    group: &PermGroup,
    n: usize,
    limits: &Limits,
) -> Result<Vec<IntersectionGraph>> {
    if n < 2 || group.order() % (n * n) != 0 {
        return Err(Error::SizeMismatch {
            expected: n * n,
            found: group.order(),
        });
    }
    let k = group.order() / (n * n);
    let mut graphs = Vec::new();
    for core in group.subgroups_of_order(k, limits)? {
        graphs.push(intersection_graph(group, &core, n, limits)?);
    }
    Ok(graphs)
}

/// Keys of the subgroups seen across packets, useful for deduplication.
pub fn distinct_subgroup_keys(packets: &[GroupPacket]) -> usize {
    let mut keys: HashSet<Vec<u8>> = HashSet::new();
    for p in packets {
        for h in &p.subgroups {
            keys.insert(h.element_key());
        }
    }
    keys.len()
}
