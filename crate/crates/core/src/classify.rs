//! Autotopy groups and the four-way transitivity classification.
//!
//! The autotopy group of an array is computed as the color-preserving
//! automorphism group of the isotopy-mode graph, restricted to the type-3
//! (row) vertices, where the action is faithful for index-1 arrays.

use serde::Serialize;

use crate::canon::{canonical_form, Certificate};
use crate::error::{Error, Result};
use crate::graph::{mols_graph, type3_offset, GraphMode};
use crate::group::PermGroup;
use crate::latin::LatinSquare;
use crate::oa::OrthogonalArray;
use crate::perm::Perm;
use crate::Limits;

pub struct AutotopyGroup {
    /// Faithful action on the `n²` rows of the array.
    pub cell_group: PermGroup,
    /// For each generator of `cell_group`, the induced action on the `n`
    /// symbols of each coordinate.
    pub coordinate_actions: Vec<Vec<Perm>>,
    pub order: usize,
}

/// Four-way classification of a Latin square by its autotopy group action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitivityClass {
    GroupBased,
    SimplyTransitiveNotGroup,
    TransitiveNotSimply,
    NonTransitive,
}

impl std::fmt::Display for TransitivityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TransitivityClass::GroupBased => "group_based",
            TransitivityClass::SimplyTransitiveNotGroup => "simply_transitive_not_group",
            TransitivityClass::TransitiveNotSimply => "transitive_not_simply",
            TransitivityClass::NonTransitive => "non_transitive",
        };
        f.write_str(s)
    }
}

/// Paratopy-mode certificate: equal iff the squares are in the same main
/// class.
pub fn paratopy_certificate(square: &LatinSquare) -> Certificate {
    let array = OrthogonalArray::from_square(square);
    canonical_form(&mols_graph(&array, GraphMode::Paratopy)).0
}

pub fn array_paratopy_certificate(array: &OrthogonalArray) -> Certificate {
    canonical_form(&mols_graph(array, GraphMode::Paratopy)).0
}

pub fn isotopy_certificate(array: &OrthogonalArray) -> Certificate {
    canonical_form(&mols_graph(array, GraphMode::Isotopy)).0
}

/// Equality of isotopy-mode certificates.
pub fn are_isotopic(a: &OrthogonalArray, b: &OrthogonalArray) -> Result<bool> {
    if a.order() != b.order() || a.coordinates() != b.coordinates() {
        return Err(Error::ShapeMismatch);
    }
    Ok(isotopy_certificate(a) == isotopy_certificate(b))
}

pub fn autotopy_group(array: &OrthogonalArray) -> AutotopyGroup {
    let n = array.order();
    let t = array.coordinates();
    let graph = mols_graph(array, GraphMode::Autotopy);
    let (_, autos) = canonical_form(&graph);
    let off = type3_offset(t, n);
    let nn = n * n;
    let mut cell_gens: Vec<Perm> = Vec::new();
    let mut coordinate_actions: Vec<Vec<Perm>> = Vec::new();
    for a in &autos {
        let cell: Vec<u16> = (0..nn).map(|r| (a.apply(off + r) - off) as u16).collect();
        let cell = Perm::from_images(cell).unwrap();
        if cell.is_identity() {
            // faithful on rows for index-1 arrays, so this is the identity
            continue;
        }
        let mut per_coord = Vec::with_capacity(t);
        for c in 0..t {
            let base = t + c * n;
            let sym: Vec<u16> = (0..n).map(|s| (a.apply(base + s) - base) as u16).collect();
            per_coord.push(Perm::from_images(sym).unwrap());
        }
        cell_gens.push(cell);
        coordinate_actions.push(per_coord);
    }
    let cell_group = PermGroup::generate(nn, &cell_gens).unwrap();
    let order = cell_group.order();
    AutotopyGroup {
        cell_group,
        coordinate_actions,
        order,
    }
}

/// Single-orbit test on the rows, straight from the generators.
pub fn is_transitive(array: &OrthogonalArray) -> bool {
    let aut = autotopy_group(array);
    group_is_transitive(&aut.cell_group)
}

fn group_is_transitive(group: &PermGroup) -> bool {
    let nn = group.degree();
    let mut seen = vec![false; nn];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in group.generators() {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == nn
}

/// Searches the autotopy group for a subgroup of order `n²` acting
/// regularly on the rows. A regular subgroup consists of the identity and
/// fixed-point-free elements only, so closures are grown from those.
pub fn is_simply_transitive(array: &OrthogonalArray, limits: &Limits) -> Result<bool> {
    let aut = autotopy_group(array);
    has_regular_subgroup(&aut, array.order() * array.order(), limits)
}

pub fn has_regular_subgroup(aut: &AutotopyGroup, nn: usize, limits: &Limits) -> Result<bool> {
    if aut.order > limits.max_aut_enumeration {
        return Err(Error::GroupTooLargeForRegularSearch {
            order: aut.order,
            cap: limits.max_aut_enumeration,
        });
    }
    if aut.order < nn || aut.order % nn != 0 {
        return Ok(false);
    }
    let elements = aut.cell_group.elements();
    let fpf: Vec<&Perm> = elements
        .iter()
        .filter(|p| p.is_fixed_point_free())
        .collect();
    if fpf.len() + 1 < nn {
        return Ok(false);
    }
    // closure over the fixed-point-free pool, capped at nn
    let grow = |gens: &[&Perm]| -> Option<Vec<Perm>> {
        let id = Perm::identity(nn);
        let mut set = std::collections::HashSet::new();
        set.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.compose(&x);
                if !set.contains(&y) {
                    if !y.is_fixed_point_free() && !y.is_identity() {
                        return None;
                    }
                    if set.len() >= nn {
                        return None;
                    }
                    set.insert(y.clone());
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<Perm> = set.into_iter().collect();
        out.sort();
        Some(out)
    };
    let mut seen: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    // states carry their generator sets; depth-first so hits come early
    let mut stack: Vec<(Vec<Perm>, Vec<&Perm>)> = Vec::new();
    for &g in &fpf {
        if let Some(c) = grow(&[g]) {
            if nn % c.len() == 0 {
                if c.len() == nn {
                    return Ok(true);
                }
                let key = crate::group::serialize_elements(&c);
                if seen.insert(key) {
                    stack.push((c, vec![g]));
                }
            }
        }
    }
    while let Some((sub, gens)) = stack.pop() {
        for &g in &fpf {
            if sub.binary_search(g).is_ok() {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(g);
            if let Some(c) = grow(&next_gens) {
                if nn % c.len() == 0 && c.len() > sub.len() {
                    if c.len() == nn {
                        return Ok(true);
                    }
                    let key = crate::group::serialize_elements(&c);
                    if seen.insert(key) {
                        stack.push((c, next_gens));
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Classification per the autotopy-group action:
/// group-based iff the quadrangle criterion holds, then simply transitive
/// iff a regular subgroup exists, then transitive iff the action has one
/// orbit.
pub fn classify_square(square: &LatinSquare, limits: &Limits) -> Result<TransitivityClass> {
    if square.quadrangle_criterion() {
        return Ok(TransitivityClass::GroupBased);
    }
    let array = OrthogonalArray::from_square(square);
    let aut = autotopy_group(&array);
    if !group_is_transitive(&aut.cell_group) {
        return Ok(TransitivityClass::NonTransitive);
    }
    let nn = square.order() * square.order();
    if has_regular_subgroup(&aut, nn, limits)? {
        Ok(TransitivityClass::SimplyTransitiveNotGroup)
    } else {
        Ok(TransitivityClass::TransitiveNotSimply)
    }
}

/// Classification report for one square, CLI- and JSON-friendly.
#[derive(Serialize)]
pub struct ClassificationReport {
    pub schema: &'static str,
    pub order: usize,
    pub certificate_hex: String,
    pub autotopy_order: usize,
    pub class: TransitivityClass,
    pub orbit_count: usize,
    pub regular_subgroup_found: bool,
}

pub fn classification_report(square: &LatinSquare, limits: &Limits) -> Result<ClassificationReport> {
    let array = OrthogonalArray::from_square(square);
    let aut = autotopy_group(&array);
    let nn = square.order() * square.order();
    let orbit_count = orbit_count(&aut.cell_group);
    let regular = has_regular_subgroup(&aut, nn, limits)?;
    let class = if square.quadrangle_criterion() {
        TransitivityClass::GroupBased
    } else if orbit_count > 1 {
        TransitivityClass::NonTransitive
    } else if regular {
        TransitivityClass::SimplyTransitiveNotGroup
    } else {
        TransitivityClass::TransitiveNotSimply
    };
    Ok(ClassificationReport {
        schema: "classify-v1",
        order: square.order(),
        certificate_hex: paratopy_certificate(square).hex(),
        autotopy_order: aut.order,
        class,
        orbit_count,
        regular_subgroup_found: regular,
    })
}

fn orbit_count(group: &PermGroup) -> usize {
    let nn = group.degree();
    let mut seen = vec![false; nn];
    let mut orbits = 0;
    for start in 0..nn {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for g in group.generators() {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, direct_product, symmetric_group};
    use crate::latin::cayley_square;

    fn table(n: usize) -> LatinSquare {
        LatinSquare::from_fn(n, |i, j| (i + j) % n).unwrap()
    }

    #[test]
    fn cayley_autotopy_orders() {
        let limits = Limits::default();
        // |Aut(L)| = |G|^2 * |Aut(G)|
        let cases: Vec<(PermGroup, usize)> = vec![
            (cyclic_group(2), 4),
            (cyclic_group(3), 18),
            (cyclic_group(4), 32),
            (direct_product(&cyclic_group(2), &cyclic_group(2)), 96),
        ];
        for (g, expected) in cases {
            let sq = cayley_square(&g, &limits).unwrap();
            let aut = autotopy_group(&OrthogonalArray::from_square(&sq));
            assert_eq!(aut.order, expected, "group of order {}", g.order());
        }
    }

    #[test]
    fn cayley_tables_are_group_based_and_transitive() {
        let limits = Limits::default();
        for g in [cyclic_group(4), symmetric_group(3)] {
            let sq = cayley_square(&g, &limits).unwrap();
            assert_eq!(
                classify_square(&sq, &limits).unwrap(),
                TransitivityClass::GroupBased
            );
            let array = OrthogonalArray::from_square(&sq);
            assert!(is_transitive(&array));
            assert!(is_simply_transitive(&array, &limits).unwrap());
        }
    }

    #[test]
    fn isotopic_vs_distinct_arrays() {
        let limits = Limits::default();
        let z4 = cayley_square(&cyclic_group(4), &limits).unwrap();
        let v4 = cayley_square(
            &direct_product(&cyclic_group(2), &cyclic_group(2)),
            &limits,
        )
        .unwrap();
        let a = OrthogonalArray::from_square(&z4);
        let b = OrthogonalArray::from_square(&v4);
        assert!(!are_isotopic(&a, &b).unwrap());
        assert_ne!(paratopy_certificate(&z4), paratopy_certificate(&v4));
        // row permutation is an isotopy
        let shuffled = z4.apply_isotopy(
            &Perm::parse_cycles("(1,3,2)", 4).unwrap(),
            &Perm::identity(4),
            &Perm::identity(4),
        );
        let c = OrthogonalArray::from_square(&shuffled);
        assert!(are_isotopic(&a, &c).unwrap());
        assert_eq!(paratopy_certificate(&z4), paratopy_certificate(&shuffled));
    }

    #[test]
    fn z3_table_report() {
        let report = classification_report(&table(3), &Limits::default()).unwrap();
        assert_eq!(report.autotopy_order, 18);
        assert_eq!(report.orbit_count, 1);
        assert!(report.regular_subgroup_found);
        assert_eq!(report.class, TransitivityClass::GroupBased);
    }
}
