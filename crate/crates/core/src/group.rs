//! Permutation groups given by generators with enumerated elements:
//! closure, standard constructors, products, cosets, subgroup search.

use std::collections::{HashSet, VecDeque};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::Limits;

/// A finite permutation group with its full element list.
///
/// `elements` is sorted lexicographically on image sequences; that order is
/// the canonical element order and is stable across runs.
#[derive(Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

/// A subgroup of some parent [`PermGroup`], tagged with a fingerprint of the
/// parent's element list so cross-parent operations can be rejected.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    degree: usize,
    parent_key: u64,
    elements: Vec<Perm>,
    generators: Vec<Perm>,
}

#[derive(Clone)]
pub struct Coset {
    /// Minimal element of the coset; the canonical representative.
    pub rep: Perm,
    pub members: Vec<Perm>,
}

#[derive(Clone)]
pub struct CosetSpace {
    pub cosets: Vec<Coset>,
    pub index: usize,
    pub subgroup_order: usize,
}

/// The left-translation action of a group on a coset space, with the image
/// permutation of every group element (aligned with the parent's element
/// order).
pub struct CosetAction {
    pub group: PermGroup,
    pub images: Vec<Perm>,
    pub cosets: CosetSpace,
}

pub(crate) fn serialize_elements(elements: &[Perm]) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(elements.len() * elements.first().map_or(0, |p| p.degree()) * 2);
    for p in elements {
        for &x in p.images() {
            bytes.extend_from_slice(&x.to_le_bytes());
        }
    }
    bytes
}

pub(crate) fn element_fingerprint(elements: &[Perm]) -> u64 {
    let digest = Sha256::digest(serialize_elements(elements));
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// Closure of a generator set under composition, bailing out once the size
/// exceeds `cap`.
fn closure_with_cap(generators: &[Perm], degree: usize, cap: Option<usize>) -> Option<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut set: HashSet<Perm> = HashSet::new();
    set.insert(id.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in generators {
                let y = g.compose(x);
                if !set.contains(&y) {
                    if let Some(cap) = cap {
                        if set.len() >= cap {
                            return None;
                        }
                    }
                    set.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<Perm> = set.into_iter().collect();
    elements.sort();
    Some(elements)
}

/// Greedy minimal generating sequence for a closed element set.
fn minimal_generators(elements: &[Perm], degree: usize) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut have: HashSet<Perm> = HashSet::new();
    have.insert(Perm::identity(degree));
    for p in elements {
        if !have.contains(p) {
            gens.push(p.clone());
            let closed = closure_with_cap(&gens, degree, None).unwrap();
            have = closed.into_iter().collect();
            if have.len() == elements.len() {
                break;
            }
        }
    }
    gens
}

impl PermGroup {
    /// Closure of the generators; `generate_group` of the module contract.
    pub fn generate(degree: usize, generators: &[Perm]) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let elements = closure_with_cap(generators, degree, None).unwrap();
        Ok(PermGroup {
            degree,
            generators: generators.to_vec(),
            elements,
        })
    }

    /// Like [`PermGroup::generate`] with the degree taken from the generators.
    pub fn from_generators(generators: &[Perm]) -> Result<Self> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or(Error::EmptyGeneratorSet)?;
        Self::generate(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Perm::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn fingerprint(&self) -> u64 {
        element_fingerprint(&self.elements)
    }

    /// Sanity check: closed under composition, closed under inverse,
    /// contains the identity.
    pub fn verify_closure(&self) -> bool {
        if !self.contains(&Perm::identity(self.degree)) {
            return false;
        }
        for a in &self.elements {
            if !self.contains(&a.inverse()) {
                return false;
            }
            for b in &self.elements {
                if !self.contains(&a.compose(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Wraps a closed element subset as a [`Subgroup`] of this group.
    pub fn subgroup_from_elements(&self, mut elements: Vec<Perm>) -> Result<Subgroup> {
        elements.sort();
        elements.dedup();
        for p in &elements {
            if !self.contains(p) {
                return Err(Error::NotASubgroup);
            }
        }
        let generators = minimal_generators(&elements, self.degree);
        Ok(Subgroup {
            degree: self.degree,
            parent_key: self.fingerprint(),
            elements,
            generators,
        })
    }

    /// The subgroup generated inside this group by the given elements.
    pub fn subgroup_generated_by(&self, generators: &[Perm]) -> Result<Subgroup> {
        for g in generators {
            if !self.contains(g) {
                return Err(Error::NotASubgroup);
            }
        }
        let elements = closure_with_cap(generators, self.degree, None).unwrap();
        Ok(Subgroup {
            degree: self.degree,
            parent_key: self.fingerprint(),
            elements,
            generators: generators.to_vec(),
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_generated_by(&[]).unwrap()
    }

    pub fn full_subgroup(&self) -> Subgroup {
        self.subgroup_from_elements(self.elements.clone()).unwrap()
    }

    /// All subgroups of order exactly `m`, by cyclic-extension search:
    /// seed with cyclic subgroups, then adjoin one element at a time,
    /// pruning closures whose order exceeds or fails to divide `m`.
    pub fn subgroups_of_order(&self, m: usize, limits: &Limits) -> Result<Vec<Subgroup>> {
        if self.order() > limits.max_group_order {
            return Err(Error::GroupTooLarge {
                order: self.order(),
                cap: limits.max_group_order,
            });
        }
        if m == 0 || self.order() % m != 0 {
            return Err(Error::OrderDoesNotDivide {
                order: m,
                group_order: self.order(),
            });
        }
        let trivial = vec![Perm::identity(self.degree)];
        if m == 1 {
            return Ok(vec![self.subgroup_from_elements(trivial)?]);
        }
        let mut found: HashSet<Vec<u8>> = HashSet::new();
        let mut results: Vec<Vec<Perm>> = Vec::new();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue: VecDeque<(Vec<Perm>, Vec<Perm>)> = VecDeque::new();

        let admit = |elems: Vec<Perm>,
                         gens: Vec<Perm>,
                         found: &mut HashSet<Vec<u8>>,
                         results: &mut Vec<Vec<Perm>>,
                         seen: &mut HashSet<Vec<u8>>,
                         queue: &mut VecDeque<(Vec<Perm>, Vec<Perm>)>| {
            let key = serialize_elements(&elems);
            if elems.len() == m {
                if found.insert(key) {
                    results.push(elems);
                }
            } else if seen.insert(key) {
                queue.push_back((elems, gens));
            }
        };

        admit(
            trivial,
            Vec::new(),
            &mut found,
            &mut results,
            &mut seen,
            &mut queue,
        );
        while let Some((elems, gens)) = queue.pop_front() {
            let member: HashSet<&Perm> = elems.iter().collect();
            for g in &self.elements {
                if member.contains(g) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.push(g.clone());
                if let Some(closed) = closure_with_cap(&next_gens, self.degree, Some(m)) {
                    if m % closed.len() == 0 {
                        admit(
                            closed,
                            next_gens,
                            &mut found,
                            &mut results,
                            &mut seen,
                            &mut queue,
                        );
                    }
                }
            }
        }
        results.sort_by(|a, b| serialize_elements(a).cmp(&serialize_elements(b)));
        results
            .into_iter()
            .map(|elems| self.subgroup_from_elements(elems))
            .collect()
    }
}

impl Subgroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn parent_key(&self) -> u64 {
        self.parent_key
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Serialized sorted element list; the canonical subgroup identifier.
    pub fn element_key(&self) -> Vec<u8> {
        serialize_elements(&self.elements)
    }

    /// Short hex fingerprint of the element key, for reports.
    pub fn key_hex(&self) -> String {
        let digest = Sha256::digest(self.element_key());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn is_subgroup_of_group(&self, group: &PermGroup) -> bool {
        self.parent_key == group.fingerprint()
            && self.elements.iter().all(|p| group.contains(p))
    }

    /// Treats this subgroup as a group in its own right.
    pub fn to_group(&self) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
        }
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.elements.iter().all(|p| self.contains(p))
    }
}

/// `standard_group` kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Cyclic,
    Dihedral,
    Symmetric,
}

pub fn standard_group(kind: StandardKind, n: usize) -> Result<PermGroup> {
    match kind {
        StandardKind::Cyclic => {
            if n < 1 {
                return Err(Error::UnsupportedParameter("cyclic(n) needs n >= 1".into()));
            }
            if n == 1 {
                return Ok(PermGroup::trivial(1));
            }
            let rot = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect())?;
            PermGroup::generate(n, &[rot])
        }
        StandardKind::Dihedral => {
            if n < 3 {
                return Err(Error::UnsupportedParameter(
                    "dihedral(n) needs n >= 3".into(),
                ));
            }
            let rot = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect())?;
            let refl = Perm::from_images((0..n).map(|i| ((n - i) % n) as u16).collect())?;
            PermGroup::generate(n, &[rot, refl])
        }
        StandardKind::Symmetric => {
            if n < 1 {
                return Err(Error::UnsupportedParameter(
                    "symmetric(n) needs n >= 1".into(),
                ));
            }
            if n == 1 {
                return Ok(PermGroup::trivial(1));
            }
            let mut gens = vec![Perm::from_cycles(&[vec![0, 1]], n)?];
            if n > 2 {
                gens.push(Perm::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect())?);
            }
            PermGroup::generate(n, &gens)
        }
    }
}

pub fn cyclic_group(n: usize) -> PermGroup {
    standard_group(StandardKind::Cyclic, n).unwrap()
}

pub fn dihedral_group(n: usize) -> PermGroup {
    standard_group(StandardKind::Dihedral, n).unwrap()
}

pub fn symmetric_group(n: usize) -> PermGroup {
    standard_group(StandardKind::Symmetric, n).unwrap()
}

/// Embeds a permutation on the left factor's points into degree `d1 + d2`.
pub fn embed_left(p: &Perm, d2: usize) -> Perm {
    let d = p.degree() + d2;
    let mut images: Vec<u16> = (0..d as u16).collect();
    for (i, &x) in p.images().iter().enumerate() {
        images[i] = x;
    }
    Perm::from_images(images).unwrap()
}

/// Embeds a permutation on the right factor's points into degree `d1 + d2`.
pub fn embed_right(p: &Perm, d1: usize) -> Perm {
    let d = d1 + p.degree();
    let mut images: Vec<u16> = (0..d as u16).collect();
    for (i, &x) in p.images().iter().enumerate() {
        images[d1 + i] = d1 as u16 + x;
    }
    Perm::from_images(images).unwrap()
}

/// Direct product acting on the disjoint union of the two point sets.
/// Elements are formed directly as pairs, so the order is exactly
/// `|g| * |h|`.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let d1 = g.degree();
    let d2 = h.degree();
    let mut elements = Vec::with_capacity(g.order() * h.order());
    for a in g.elements() {
        let left = embed_left(a, d2);
        for b in h.elements() {
            elements.push(left.compose(&embed_right(b, d1)));
        }
    }
    elements.sort();
    let mut generators: Vec<Perm> = g.generators().iter().map(|p| embed_left(p, d2)).collect();
    generators.extend(h.generators().iter().map(|p| embed_right(p, d1)));
    PermGroup {
        degree: d1 + d2,
        generators,
        elements,
    }
}

/// Left cosets of `subgroup` in `group`, each with its minimal element as
/// canonical representative, in order of first appearance while scanning the
/// sorted element list (so representatives are increasing).
pub fn left_cosets(group: &PermGroup, subgroup: &Subgroup) -> Result<CosetSpace> {
    if !subgroup.is_subgroup_of_group(group) {
        return Err(Error::NotASubgroup);
    }
    let mut assigned = vec![false; group.order()];
    let mut cosets = Vec::with_capacity(group.order() / subgroup.order());
    for (i, g) in group.elements().iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut members: Vec<Perm> = subgroup.elements().iter().map(|h| g.compose(h)).collect();
        members.sort();
        for m in &members {
            assigned[group.element_index(m).unwrap()] = true;
        }
        cosets.push(Coset {
            rep: members[0].clone(),
            members,
        });
    }
    let index = cosets.len();
    Ok(CosetSpace {
        cosets,
        index,
        subgroup_order: subgroup.order(),
    })
}

impl CosetSpace {
    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: &Perm) -> Option<usize> {
        self.cosets
            .iter()
            .position(|c| c.members.binary_search(g).is_ok())
    }
}

/// The left-translation action of `group` on `group/subgroup`. The image is
/// a permutation group of degree `[G:H]`; its kernel is the normal core of
/// `subgroup`, so the action is faithful exactly when the core is trivial.
pub fn coset_action(group: &PermGroup, subgroup: &Subgroup) -> Result<CosetAction> {
    let cosets = left_cosets(group, subgroup)?;
    let index = cosets.index;
    // coset index of every group element
    let mut coset_of = vec![0usize; group.order()];
    for (ci, coset) in cosets.cosets.iter().enumerate() {
        for m in &coset.members {
            coset_of[group.element_index(m).unwrap()] = ci;
        }
    }
    let mut images = Vec::with_capacity(group.order());
    for g in group.elements() {
        let mut img = vec![0u16; index];
        for (ci, coset) in cosets.cosets.iter().enumerate() {
            let moved = g.compose(&coset.rep);
            img[ci] = coset_of[group.element_index(&moved).unwrap()] as u16;
        }
        images.push(Perm::from_images(img).unwrap());
    }
    let mut unique: Vec<Perm> = images.clone();
    unique.sort();
    unique.dedup();
    let gen_images: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| images[group.element_index(g).unwrap()].clone())
        .collect();
    let action_group = PermGroup {
        degree: index,
        generators: minimal_generators(&unique, index.max(1)),
        elements: unique,
    };
    debug_assert!(gen_images.iter().all(|p| action_group.contains(p)));
    Ok(CosetAction {
        group: action_group,
        images,
        cosets,
    })
}

/// Element-wise intersection of two subgroups of the same parent.
pub fn intersect_subgroups(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if a.parent_key != b.parent_key {
        return Err(Error::ParentMismatch);
    }
    let elements: Vec<Perm> = a
        .elements
        .iter()
        .filter(|p| b.contains(p))
        .cloned()
        .collect();
    let generators = minimal_generators(&elements, a.degree);
    Ok(Subgroup {
        degree: a.degree,
        parent_key: a.parent_key,
        elements,
        generators,
    })
}

/// Largest normal subgroup of `group` contained in `subgroup`: the
/// intersection of all conjugates.
pub fn normal_core(group: &PermGroup, subgroup: &Subgroup) -> Result<Subgroup> {
    if !subgroup.is_subgroup_of_group(group) {
        return Err(Error::NotASubgroup);
    }
    let mut core: HashSet<Perm> = subgroup.elements().iter().cloned().collect();
    for g in group.elements() {
        let gi = g.inverse();
        let conj: HashSet<Perm> = subgroup
            .elements()
            .iter()
            .map(|x| g.compose(x).compose(&gi))
            .collect();
        core.retain(|p| conj.contains(p));
        if core.len() == 1 {
            break;
        }
    }
    let mut elements: Vec<Perm> = core.into_iter().collect();
    elements.sort();
    let generators = minimal_generators(&elements, group.degree());
    Ok(Subgroup {
        degree: group.degree(),
        parent_key: group.fingerprint(),
        elements,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_cyclic_and_symmetric() {
        let c3 = PermGroup::generate(3, &[Perm::parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
        assert_eq!(c3.order(), 3);
        let s3 = PermGroup::generate(
            3,
            &[
                Perm::parse_cycles("(1,2)", 3).unwrap(),
                Perm::parse_cycles("(1,2,3)", 3).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.verify_closure());
    }

    #[test]
    fn standard_orders() {
        assert_eq!(cyclic_group(5).order(), 5);
        assert_eq!(dihedral_group(5).order(), 10);
        assert_eq!(symmetric_group(3).order(), 6);
        assert!(standard_group(StandardKind::Dihedral, 2).is_err());
    }

    #[test]
    fn direct_product_orders() {
        let s3 = symmetric_group(3);
        let p = direct_product(&s3, &s3);
        assert_eq!(p.order(), 36);
        assert_eq!(p.degree(), 6);
        let d5 = dihedral_group(5);
        assert_eq!(direct_product(&d5, &d5).order(), 100);
        let c1 = cyclic_group(1);
        let q = direct_product(&c1, &s3);
        assert_eq!(q.order(), 6);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = PermGroup::generate(4, &[Perm::parse_cycles("(1,2,3)", 3).unwrap()]);
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
        assert!(matches!(
            PermGroup::from_generators(&[]),
            Err(Error::EmptyGeneratorSet)
        ));
    }

    #[test]
    fn s3_unique_sylow3() {
        let s3 = symmetric_group(3);
        let subs = s3.subgroups_of_order(3, &Limits::default()).unwrap();
        assert_eq!(subs.len(), 1);
        assert!(subs[0].contains(&Perm::parse_cycles("(1,2,3)", 3).unwrap()));
    }

    #[test]
    fn subgroup_order_must_divide() {
        let s3 = symmetric_group(3);
        assert!(matches!(
            s3.subgroups_of_order(4, &Limits::default()),
            Err(Error::OrderDoesNotDivide { .. })
        ));
    }

    #[test]
    fn cosets_partition() {
        let s3 = symmetric_group(3);
        let a3 = s3
            .subgroup_generated_by(&[Perm::parse_cycles("(1,2,3)", 3).unwrap()])
            .unwrap();
        let cs = left_cosets(&s3, &a3).unwrap();
        assert_eq!(cs.index, 2);
        assert!(cs.cosets.iter().all(|c| c.members.len() == 3));
        let full = left_cosets(&s3, &s3.full_subgroup()).unwrap();
        assert_eq!(full.index, 1);
        // union of cosets = all elements, pairwise disjoint
        let mut all: Vec<Perm> = cs.cosets.iter().flat_map(|c| c.members.clone()).collect();
        all.sort();
        assert_eq!(all, s3.elements());
    }

    #[test]
    fn coset_action_kernel_and_order() {
        let c4 = cyclic_group(4);
        let sq = c4
            .subgroup_generated_by(&[Perm::parse_cycles("(1,3)(2,4)", 4).unwrap()])
            .unwrap();
        let act = coset_action(&c4, &sq).unwrap();
        assert_eq!(act.group.degree(), 2);
        assert_eq!(act.group.order(), 2);

        let s3 = symmetric_group(3);
        let act = coset_action(&s3, &s3.trivial_subgroup()).unwrap();
        assert_eq!(act.group.order(), 6); // regular representation

        let h = s3
            .subgroup_generated_by(&[Perm::parse_cycles("(1,2)", 3).unwrap()])
            .unwrap();
        let act = coset_action(&s3, &h).unwrap();
        assert_eq!(act.group.degree(), 3);
        assert_eq!(act.group.order(), 6); // faithful: core of <(1,2)> is trivial
    }

    #[test]
    fn normal_core_examples() {
        let s3 = symmetric_group(3);
        let a3 = s3
            .subgroup_generated_by(&[Perm::parse_cycles("(1,2,3)", 3).unwrap()])
            .unwrap();
        let core = normal_core(&s3, &a3).unwrap();
        assert_eq!(core.order(), 3); // normal subgroup is its own core
        let h = s3
            .subgroup_generated_by(&[Perm::parse_cycles("(1,2)", 3).unwrap()])
            .unwrap();
        assert_eq!(normal_core(&s3, &h).unwrap().order(), 1);
    }

    #[test]
    fn intersection_idempotent_and_checked() {
        let s3 = symmetric_group(3);
        let a3 = s3
            .subgroup_generated_by(&[Perm::parse_cycles("(1,2,3)", 3).unwrap()])
            .unwrap();
        let i = intersect_subgroups(&a3, &a3).unwrap();
        assert_eq!(i.elements(), a3.elements());
        let other = symmetric_group(4);
        let h = other
            .subgroup_generated_by(&[Perm::parse_cycles("(1,2)", 4).unwrap()])
            .unwrap();
        assert!(matches!(
            intersect_subgroups(&a3, &h),
            Err(Error::ParentMismatch)
        ));
    }

    #[test]
    fn lagrange_for_enumerated_subgroups() {
        let s3s3 = direct_product(&symmetric_group(3), &symmetric_group(3));
        for m in [1, 2, 3, 4, 6] {
            for sub in s3s3.subgroups_of_order(m, &Limits::default()).unwrap() {
                assert_eq!(sub.order(), m);
                assert_eq!(s3s3.order() % sub.order(), 0);
            }
        }
    }
}
